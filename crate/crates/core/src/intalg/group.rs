use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{smith_normal_form, IntegerMatrix};
use super::IntalgError;

/// A finitely generated abelian group `Z/t_1 + ... + Z/t_k + Z^rank`
/// with `t_1 | t_2 | ... | t_k` and every `t_i >= 2`.
///
/// Elements are integer vectors of length `k + rank`: the torsion
/// coordinates come first (in the order of `torsion`), then the free ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<i64>,
}

impl FgAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<i64>) -> Result<Self, IntalgError> {
        if let Some(&bad) = torsion.iter().find(|&&t| t < 2) {
            return Err(IntalgError::InvalidTorsion(format!(
                "coefficient {bad} is < 2"
            )));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(IntalgError::InvalidTorsion(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(Self { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/o_1 + ... + Z/o_k + Z^rank` for arbitrary orders `o_i >= 1`,
    /// brought into invariant-factor form.
    pub fn from_orders(rank: usize, orders: &[i64]) -> Result<Self, IntalgError> {
        if let Some(&bad) = orders.iter().find(|&&o| o < 1) {
            return Err(IntalgError::InvalidTorsion(format!("order {bad} is < 1")));
        }
        let snf = smith_normal_form(&IntegerMatrix::from_diagonal(orders));
        let torsion = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| *d > BigInt::from(1))
            .map(|d| d.to_i64().ok_or(IntalgError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rank, torsion)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.rank
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().map(|&t| BigInt::from(t)).product())
    }

    /// Order of generator `j` (`None` for free generators).
    pub fn generator_order(&self, j: usize) -> Option<i64> {
        self.torsion.get(j).copied()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, IntalgError> {
        let mut orders = self.torsion.clone();
        orders.extend_from_slice(&other.torsion);
        Self::from_orders(self.rank + other.rank, &orders)
    }

    pub fn check_element(&self, x: &[i64]) -> Result<(), IntalgError> {
        if x.len() != self.num_generators() {
            return Err(IntalgError::ElementShapeMismatch {
                expected: self.num_generators(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Canonical representative: torsion coordinates reduced into `[0, t_i)`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        x.iter()
            .enumerate()
            .map(|(i, v)| match self.torsion.get(i) {
                Some(&t) => v.mod_floor(&BigInt::from(t)),
                None => v.clone(),
            })
            .collect()
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// Relation matrix: one column `t_i e_i` per torsion coordinate.
    pub(crate) fn relation_matrix(&self) -> IntegerMatrix {
        let g = self.num_generators();
        let mut m = IntegerMatrix::zeros(g, self.torsion.len());
        for (i, &t) in self.torsion.iter().enumerate() {
            m[(i, i)] = BigInt::from(t);
        }
        m
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homomorphism given by an integer matrix acting on generator coordinates
/// (`codomain.num_generators()` rows, `domain.num_generators()` columns).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupHom {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: IntegerMatrix,
}

impl GroupHom {
    pub fn new(
        domain: FgAbelianGroup,
        codomain: FgAbelianGroup,
        matrix: IntegerMatrix,
    ) -> Result<Self, IntalgError> {
        if matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators() {
            return Err(IntalgError::HomShapeMismatch {
                expected: (codomain.num_generators(), domain.num_generators()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        for (j, &k) in domain.torsion().iter().enumerate() {
            let image: Vec<BigInt> = matrix.column(j).into_iter().map(|v| v * k).collect();
            if !codomain.is_zero_element(&image) {
                return Err(IntalgError::TorsionViolation {
                    generator: j,
                    order: k,
                });
            }
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn from_i64(
        domain: FgAbelianGroup,
        codomain: FgAbelianGroup,
        rows: &[Vec<i64>],
    ) -> Result<Self, IntalgError> {
        let cols = domain.num_generators();
        let matrix = IntegerMatrix::from_rows(rows, cols).ok_or(IntalgError::HomShapeMismatch {
            expected: (codomain.num_generators(), cols),
            found: (rows.len(), rows.iter().map(Vec::len).max().unwrap_or(0)),
        })?;
        if rows.is_empty() && codomain.num_generators() == 0 {
            return Self::new(domain, codomain, IntegerMatrix::zeros(0, cols));
        }
        Self::new(domain, codomain, matrix)
    }

    pub fn identity(group: &FgAbelianGroup) -> Self {
        let n = group.num_generators();
        Self {
            domain: group.clone(),
            codomain: group.clone(),
            matrix: IntegerMatrix::identity(n),
        }
    }

    pub fn zero(domain: FgAbelianGroup, codomain: FgAbelianGroup) -> Self {
        let matrix = IntegerMatrix::zeros(codomain.num_generators(), domain.num_generators());
        Self {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<BigInt>, IntalgError> {
        self.domain.check_element(x)?;
        let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        Ok(self.codomain.reduce(&self.matrix.mul_vec(&x)))
    }

    /// `[M | T]`: the matrix augmented with the codomain torsion relations.
    fn augmented(&self) -> IntegerMatrix {
        self.matrix.hconcat(&self.codomain.relation_matrix())
    }

    /// Some `x` with `h(x) = y`, if one exists.
    pub fn preimage(&self, y: &[i64]) -> Result<Option<Vec<BigInt>>, IntalgError> {
        self.codomain.check_element(y)?;
        let a = self.augmented();
        let snf = smith_normal_form(&a);
        let y: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        let uy = snf.u.mul_vec(&y);
        let factors = snf.invariant_factors();
        let mut z = vec![BigInt::zero(); a.cols()];
        for (i, target) in uy.iter().enumerate() {
            match factors.get(i) {
                Some(d) => {
                    if !target.is_multiple_of(d) {
                        return Ok(None);
                    }
                    z[i] = target / d;
                }
                None => {
                    if !target.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
        let w = snf.v.mul_vec(&z);
        Ok(Some(w[..self.matrix.cols()].to_vec()))
    }

    /// Whether `y` lies in the image, decided exactly.
    pub fn in_image(&self, y: &[i64]) -> Result<bool, IntalgError> {
        Ok(self.preimage(y)?.is_some())
    }

    /// `codomain / image` in invariant-factor form.
    pub fn cokernel(&self) -> Result<FgAbelianGroup, IntalgError> {
        let a = self.augmented();
        let snf = smith_normal_form(&a);
        let factors = snf.invariant_factors();
        let torsion = factors
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .map(|d| d.to_i64().ok_or(IntalgError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        FgAbelianGroup::new(a.rows() - factors.len(), torsion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::free(1)
    }

    #[test]
    fn doubling_on_z() {
        let h = GroupHom::from_i64(z(), z(), &[vec![2]]).unwrap();
        assert!(h.in_image(&[4]).unwrap());
        assert!(!h.in_image(&[3]).unwrap());
        assert_eq!(
            h.cokernel().unwrap(),
            FgAbelianGroup::new(0, vec![2]).unwrap()
        );
    }

    #[test]
    fn identity_surjective() {
        let g = FgAbelianGroup::free(2);
        let h = GroupHom::identity(&g);
        for y in [[0, 0], [5, -3], [-7, 11]] {
            assert!(h.in_image(&y).unwrap());
        }
        assert!(GroupHom::identity(&FgAbelianGroup::free(3))
            .cokernel()
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn mixed_torsion_codomain() {
        // Z^2 -> Z/4 + Z, e1 -> (2, 0), e2 -> (0, 3)
        let cod = FgAbelianGroup::new(1, vec![4]).unwrap();
        let h =
            GroupHom::from_i64(FgAbelianGroup::free(2), cod, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert!(h.in_image(&[2, 3]).unwrap());
        assert!(!h.in_image(&[1, 3]).unwrap());
        let x = h.preimage(&[2, 3]).unwrap().unwrap();
        let x: Vec<i64> = x.iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(h.apply(&x).unwrap(), vec![BigInt::from(2), BigInt::from(3)]);
    }

    #[test]
    fn cokernel_of_two_by_two() {
        let h = GroupHom::from_i64(
            FgAbelianGroup::free(2),
            FgAbelianGroup::free(2),
            &[vec![2, 4], vec![6, 8]],
        )
        .unwrap();
        assert_eq!(
            h.cokernel().unwrap(),
            FgAbelianGroup::new(0, vec![2, 4]).unwrap()
        );
    }

    #[test]
    fn shape_and_torsion_validation() {
        let h = GroupHom::from_i64(z(), z(), &[vec![2]]).unwrap();
        assert!(matches!(
            h.in_image(&[1, 2]),
            Err(IntalgError::ElementShapeMismatch { .. })
        ));
        assert!(GroupHom::from_i64(z(), z(), &[vec![1, 2]]).is_err());
        // Z/2 -> Z can only be zero.
        let z2 = FgAbelianGroup::new(0, vec![2]).unwrap();
        assert!(matches!(
            GroupHom::from_i64(z2.clone(), z(), &[vec![1]]),
            Err(IntalgError::TorsionViolation { .. })
        ));
        // Z/2 -> Z/4, 1 -> 2 is fine; 1 -> 1 is not.
        let z4 = FgAbelianGroup::new(0, vec![4]).unwrap();
        assert!(GroupHom::from_i64(z2.clone(), z4.clone(), &[vec![2]]).is_ok());
        assert!(GroupHom::from_i64(z2, z4, &[vec![1]]).is_err());
    }

    #[test]
    fn group_validation_and_display() {
        assert!(FgAbelianGroup::new(0, vec![2, 3]).is_err());
        assert!(FgAbelianGroup::new(0, vec![1]).is_err());
        let g = FgAbelianGroup::from_orders(2, &[2, 3, 1]).unwrap();
        assert_eq!(g.torsion(), &[6]);
        assert_eq!(g.to_string(), "Z/6 + Z^2");
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        let s = FgAbelianGroup::free(1)
            .direct_sum(&FgAbelianGroup::new(0, vec![2]).unwrap())
            .unwrap();
        assert_eq!(s.to_string(), "Z/2 + Z");
    }

    #[test]
    fn maps_into_trivial_group() {
        let h = GroupHom::zero(FgAbelianGroup::free(2), FgAbelianGroup::trivial());
        assert!(h.in_image(&[]).unwrap());
        assert!(h.cokernel().unwrap().is_trivial());
    }
}
