use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::SymplecticError;
use crate::cxmat::ComplexSquareMatrix;

const I: Complex64 = Complex64::new(0.0, 1.0);
const HERMITIAN_TOL: f64 = 1e-12;

/// A smooth function on `C^n` with a closed-form gradient.
///
/// Gradients use the complex packing `g_k = df/dx_k + i df/dy_k`.
pub trait Hamiltonian {
    fn dim(&self) -> usize;
    fn value(&self, z: &DVector<Complex64>) -> f64;
    fn gradient(&self, z: &DVector<Complex64>) -> DVector<Complex64>;

    /// `X_f = -J grad f`; satisfies `df = omega(X_f, .)`.
    fn field(&self, z: &DVector<Complex64>) -> DVector<Complex64> {
        self.gradient(z) * (-I)
    }
}

/// `f = c + sum (b_i z_i + conj) + sum a_ij z_i conj(z_j)` with `a` Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianQuadratic {
    c: f64,
    b: DVector<Complex64>,
    a: DMatrix<Complex64>,
}

impl HermitianQuadratic {
    pub fn new(
        c: f64,
        b: DVector<Complex64>,
        a: DMatrix<Complex64>,
    ) -> Result<Self, SymplecticError> {
        let n = b.len();
        if a.nrows() != n || a.ncols() != n {
            return Err(SymplecticError::DimensionMismatch {
                expected: n,
                found: a.nrows(),
            });
        }
        let defect = (&a - a.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if defect > HERMITIAN_TOL * (1.0 + a.norm()) {
            return Err(SymplecticError::NotHermitian { defect });
        }
        Ok(Self { c, b, a })
    }

    pub fn constant(&self) -> f64 {
        self.c
    }

    pub fn linear(&self) -> &DVector<Complex64> {
        &self.b
    }

    pub fn quadratic(&self) -> &DMatrix<Complex64> {
        &self.a
    }

    pub fn trace(&self) -> Complex64 {
        self.a.trace()
    }
}

impl Hamiltonian for HermitianQuadratic {
    fn dim(&self) -> usize {
        self.b.len()
    }

    fn value(&self, z: &DVector<Complex64>) -> f64 {
        let lin: Complex64 = self.b.iter().zip(z.iter()).map(|(b, z)| b * z).sum();
        let quad = (z.transpose() * &self.a * z.conjugate())[(0, 0)];
        self.c + 2.0 * lin.re + quad.re
    }

    fn gradient(&self, z: &DVector<Complex64>) -> DVector<Complex64> {
        (self.b.conjugate() + self.a.transpose() * z) * Complex64::new(2.0, 0.0)
    }
}

/// Harmonic Hermitian quadratic: a [`HermitianQuadratic`] whose `a` is traceless.
#[derive(Debug, Clone, PartialEq)]
pub struct HermQuad(HermitianQuadratic);

impl HermQuad {
    pub fn new(
        c: f64,
        b: DVector<Complex64>,
        a: DMatrix<Complex64>,
    ) -> Result<Self, SymplecticError> {
        let q = HermitianQuadratic::new(c, b, a)?;
        let trace = q.trace().norm();
        if trace > HERMITIAN_TOL * (1.0 + q.a.norm()) {
            return Err(SymplecticError::NotTraceless { trace });
        }
        Ok(Self(q))
    }

    pub fn zero(n: usize) -> Self {
        Self(HermitianQuadratic {
            c: 0.0,
            b: DVector::zeros(n),
            a: DMatrix::zeros(n, n),
        })
    }

    /// Moment map of the linear field `v = M z` for `M` in `su(n)`,
    /// vanishing at the origin.
    pub fn for_linear_field(m: &ComplexSquareMatrix) -> Result<Self, SymplecticError> {
        let m = m.as_matrix();
        let defect = (m + m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if defect > HERMITIAN_TOL * (1.0 + m.norm()) {
            return Err(SymplecticError::NotHermitian { defect });
        }
        let a = m.transpose() * Complex64::new(0.0, 0.5);
        Self::new(0.0, DVector::zeros(m.nrows()), a)
    }

    /// Moment map `z -> omega(w, z)` of the translation field `v = w`.
    pub fn for_translation(w: &DVector<Complex64>) -> Self {
        let n = w.len();
        Self(HermitianQuadratic {
            c: 0.0,
            b: w.conjugate() * Complex64::new(0.0, -0.5),
            a: DMatrix::zeros(n, n),
        })
    }

    pub fn inner(&self) -> &HermitianQuadratic {
        &self.0
    }
}

impl Hamiltonian for HermQuad {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn value(&self, z: &DVector<Complex64>) -> f64 {
        self.0.value(z)
    }

    fn gradient(&self, z: &DVector<Complex64>) -> DVector<Complex64> {
        self.0.gradient(z)
    }
}

/// `X_f = -J grad f`, packed as a complex vector.
pub fn hamiltonian_field<H: Hamiltonian + ?Sized>(
    f: &H,
    z: &DVector<Complex64>,
) -> DVector<Complex64> {
    f.field(z)
}

/// The `n(n+2)` generators of the harmonic Hermitian quadratics on `C^n`:
/// `1`, `x_k`, `y_k`, then `a = E_kk - E_{k+1,k+1}`, `E_jk + E_kj`, `i E_jk - i E_kj`.
pub fn harmonic_basis(n: usize) -> Vec<(String, HermQuad)> {
    let zb = || DVector::<Complex64>::zeros(n);
    let za = || DMatrix::<Complex64>::zeros(n, n);
    let mut out = vec![(
        "1".to_string(),
        HermQuad(HermitianQuadratic {
            c: 1.0,
            b: zb(),
            a: za(),
        }),
    )];
    for k in 0..n {
        let mut b = zb();
        b[k] = Complex64::new(0.5, 0.0);
        out.push((
            format!("x{}", k + 1),
            HermQuad(HermitianQuadratic { c: 0.0, b, a: za() }),
        ));
        let mut b = zb();
        b[k] = Complex64::new(0.0, -0.5);
        out.push((
            format!("y{}", k + 1),
            HermQuad(HermitianQuadratic { c: 0.0, b, a: za() }),
        ));
    }
    for k in 0..n.saturating_sub(1) {
        let mut a = za();
        a[(k, k)] = Complex64::new(1.0, 0.0);
        a[(k + 1, k + 1)] = Complex64::new(-1.0, 0.0);
        out.push((
            format!("E{0}{0}-E{1}{1}", k + 1, k + 2),
            HermQuad(HermitianQuadratic { c: 0.0, b: zb(), a }),
        ));
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut a = za();
            a[(j, k)] = Complex64::new(1.0, 0.0);
            a[(k, j)] = Complex64::new(1.0, 0.0);
            out.push((
                format!("E{0}{1}+E{1}{0}", j + 1, k + 1),
                HermQuad(HermitianQuadratic { c: 0.0, b: zb(), a }),
            ));
            let mut a = za();
            a[(j, k)] = I;
            a[(k, j)] = -I;
            out.push((
                format!("iE{0}{1}-iE{1}{0}", j + 1, k + 1),
                HermQuad(HermitianQuadratic { c: 0.0, b: zb(), a }),
            ));
        }
    }
    out
}

/// Real coordinate direction `a` of `C^n`: `x_{a/2+1}` for even `a`, `y_{a/2+1}` for odd `a`.
fn real_basis(n: usize, a: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(n);
    v[a / 2] = if a.is_multiple_of(2) {
        Complex64::new(1.0, 0.0)
    } else {
        I
    };
    v
}

/// `(iota_X Im Omega)(w_1, ..., w_{n-1}) = Im det[X, w_1, ..., w_{n-1}]`.
fn contracted_im_omega(x: &DVector<Complex64>, ws: &[DVector<Complex64>]) -> f64 {
    let mut cols = Vec::with_capacity(ws.len() + 1);
    cols.push(x.clone());
    cols.extend(ws.iter().cloned());
    DMatrix::from_columns(&cols).determinant().im
}

fn subsets(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, total: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..total {
            cur.push(a);
            go(a + 1, total, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, total, k, &mut Vec::new(), &mut out);
    out
}

/// Components of `d(iota_{X_f} Im Omega)` at `z` on every increasing
/// `n`-tuple of real coordinate directions, by central differences with step `h`:
/// `d eta(e_1..e_n) = sum_i (-1)^i D_{e_i} eta(e_1..^e_i..e_n)`.
pub fn fu_exterior_derivative<H: Hamiltonian + ?Sized>(
    f: &H,
    z: &DVector<Complex64>,
    h: f64,
) -> Vec<(Vec<usize>, f64)> {
    let n = f.dim();
    let basis: Vec<_> = (0..2 * n).map(|a| real_basis(n, a)).collect();
    let hc = Complex64::new(h, 0.0);
    subsets(2 * n, n)
        .into_iter()
        .map(|tuple| {
            let mut total = 0.0;
            for (i, &a) in tuple.iter().enumerate() {
                let rest: Vec<_> = tuple
                    .iter()
                    .filter(|&&b| b != a)
                    .map(|&b| basis[b].clone())
                    .collect();
                let plus = contracted_im_omega(&f.field(&(z + &basis[a] * hc)), &rest);
                let minus = contracted_im_omega(&f.field(&(z - &basis[a] * hc)), &rest);
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                total += sign * (plus - minus) / (2.0 * h);
            }
            (tuple, total)
        })
        .collect()
}

/// `max |d(iota_{X_f} Im Omega)|` over all coordinate `n`-tuples.
pub fn fu_condition_residual<H: Hamiltonian + ?Sized>(
    f: &H,
    z: &DVector<Complex64>,
    h: f64,
) -> f64 {
    fu_exterior_derivative(f, z, h)
        .into_iter()
        .map(|(_, v)| v.abs())
        .fold(0.0, f64::max)
}

/// One quadrature node on a parametrized closed `(n-1)`-manifold: the
/// point, the `n-1` partial derivatives of the parametrization, and the
/// parameter-space weight.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSample {
    pub point: DVector<Complex64>,
    pub partials: Vec<DVector<Complex64>>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentResidual {
    pub label: String,
    pub value: f64,
}

/// `int_Sigma iota_{X_f} Im Omega` for each harmonic basis quadratic `f`.
pub fn sl_moment_residuals(
    n: usize,
    samples: &[SurfaceSample],
) -> Result<Vec<MomentResidual>, SymplecticError> {
    if let Some(s) = samples
        .iter()
        .find(|s| s.point.len() != n || s.partials.len() + 1 != n)
    {
        return Err(SymplecticError::DimensionMismatch {
            expected: n,
            found: s.partials.len() + 1,
        });
    }
    Ok(harmonic_basis(n)
        .into_iter()
        .map(|(label, f)| {
            let value = samples
                .iter()
                .map(|s| s.weight * contracted_im_omega(&f.field(&s.point), &s.partials))
                .sum();
            MomentResidual { label, value }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cxmat::omega;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> DVector<Complex64> {
        DVector::from_fn(n, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn random_hhq(rng: &mut ChaCha8Rng, n: usize) -> HermQuad {
        let m = DMatrix::from_fn(n, n, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let mut a = (&m + m.adjoint()) * c(0.5, 0.0);
        let tr = a.trace() / c(n as f64, 0.0);
        for i in 0..n {
            a[(i, i)] -= tr;
        }
        HermQuad::new(rng.random_range(-1.0..1.0), random_vec(rng, n), a).unwrap()
    }

    /// `f(z + h v) - f(z - h v)) / 2h`.
    fn directional(f: &impl Hamiltonian, z: &DVector<Complex64>, v: &DVector<Complex64>) -> f64 {
        let h = c(1e-5, 0.0);
        (f.value(&(z + v * h)) - f.value(&(z - v * h))) / 2e-5
    }

    #[test]
    fn field_generates_moment_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2, 3] {
            for _ in 0..100 {
                let f = random_hhq(&mut rng, n);
                let z = random_vec(&mut rng, n);
                let v = random_vec(&mut rng, n);
                let lhs = directional(&f, &z, &v);
                let rhs = omega(&hamiltonian_field(&f, &z), &v);
                assert!((lhs - rhs).abs() < 1e-8, "{lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn field_examples() {
        let z = DVector::from_column_slice(&[c(0.3, 0.1), c(-0.2, 0.7)]);
        assert_eq!(hamiltonian_field(&HermQuad::zero(2), &z).norm(), 0.0);
        let basis = harmonic_basis(2);
        let x1 = &basis[1].1;
        let expected = DVector::from_column_slice(&[c(0.0, -1.0), c(0.0, 0.0)]);
        assert!((hamiltonian_field(x1, &z) - &expected).norm() < 1e-15);
        // |z1|^2 - |z2|^2 rotates z1 at (1, 0).
        let a = DMatrix::from_diagonal(&DVector::from_column_slice(&[c(1.0, 0.0), c(-1.0, 0.0)]));
        let f = HermQuad::new(0.0, DVector::zeros(2), a).unwrap();
        let p = DVector::from_column_slice(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let x = hamiltonian_field(&f, &p);
        assert!(x[1].norm() < 1e-15 && x[0].re.abs() < 1e-15 && x[0].im.abs() > 1.0);
    }

    #[test]
    fn validation() {
        let b = DVector::zeros(2);
        let not_herm =
            DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            HermQuad::new(0.0, b.clone(), not_herm),
            Err(SymplecticError::NotHermitian { .. })
        ));
        let traced = DMatrix::identity(2, 2);
        assert!(matches!(
            HermQuad::new(0.0, b.clone(), traced.clone()),
            Err(SymplecticError::NotTraceless { .. })
        ));
        assert!(HermitianQuadratic::new(0.0, b, traced).is_ok());
    }

    #[test]
    fn basis_dimension() {
        assert_eq!(harmonic_basis(3).len(), 15);
        assert_eq!(harmonic_basis(4).len(), 24);
        assert_eq!(subsets(6, 3).len(), 20);
    }

    #[test]
    fn moment_of_linear_field_and_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 3;
        let raw = DMatrix::from_fn(n, n, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let mut m = (&raw - raw.adjoint()) * c(0.5, 0.0);
        let tr = m.trace() / c(n as f64, 0.0);
        for i in 0..n {
            m[(i, i)] -= tr;
        }
        let f = HermQuad::for_linear_field(&ComplexSquareMatrix::new(m.clone()).unwrap()).unwrap();
        let z = random_vec(&mut rng, n);
        assert!((hamiltonian_field(&f, &z) - &m * &z).norm() < 1e-13);
        assert_eq!(f.value(&DVector::zeros(n)), 0.0);
        let w = random_vec(&mut rng, n);
        let t = HermQuad::for_translation(&w);
        assert!((hamiltonian_field(&t, &z) - &w).norm() < 1e-14);
        assert!((t.value(&z) - omega(&w, &z)).abs() < 1e-14);
    }

    #[test]
    fn fu_residual_small_for_harmonic_quadratics() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let f = random_hhq(&mut rng, 3);
            let z = random_vec(&mut rng, 3);
            assert!(fu_condition_residual(&f, &z, 1e-3) < 1e-5);
        }
        assert_eq!(
            fu_condition_residual(&HermQuad::zero(3), &DVector::zeros(3), 1e-3),
            0.0
        );
    }

    #[test]
    fn fu_residual_plateaus_for_traced_quadratic() {
        let mut a = DMatrix::zeros(3, 3);
        a[(0, 0)] = c(1.0, 0.0);
        let f = HermitianQuadratic::new(0.0, DVector::zeros(3), a).unwrap();
        let z = DVector::from_column_slice(&[c(0.2, 0.1), c(-0.4, 0.3), c(0.5, -0.6)]);
        for h in [1e-2, 1e-3, 1e-4] {
            let r = fu_condition_residual(&f, &z, h);
            assert!((r - 2.0).abs() < 1e-6, "{r}");
        }
    }

    /// `|z_1|^4`: the contracted form is cubic, so the difference quotient has an O(h^2) error.
    struct Quartic;

    impl Hamiltonian for Quartic {
        fn dim(&self) -> usize {
            3
        }
        fn value(&self, z: &DVector<Complex64>) -> f64 {
            z[0].norm_sqr().powi(2)
        }
        fn gradient(&self, z: &DVector<Complex64>) -> DVector<Complex64> {
            let mut g = DVector::zeros(3);
            g[0] = z[0] * (4.0 * z[0].norm_sqr());
            g
        }
    }

    #[test]
    fn difference_quotients_converge_at_second_order() {
        let z = DVector::from_column_slice(&[c(0.7, -0.4), c(0.1, 0.2), c(-0.3, 0.5)]);
        let comp = |h: f64| fu_exterior_derivative(&Quartic, &z, h);
        let (a, b, cc) = (comp(1e-2), comp(5e-3), comp(2.5e-3));
        let k = (0..a.len())
            .max_by(|&i, &j| (a[i].1 - b[i].1).abs().total_cmp(&(a[j].1 - b[j].1).abs()))
            .unwrap();
        let ratio = (a[k].1 - b[k].1) / (b[k].1 - cc[k].1);
        assert!((ratio - 4.0).abs() < 0.05, "{ratio}");
    }
}
