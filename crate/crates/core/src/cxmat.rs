//! Dense complex linear algebra.
//!
//! Square complex matrices with determinant, adjoint and the polar
//! retraction `GL(n,C) -> U(n)`, plus real frames in `C^n` read through the
//! fixed convention that the real coordinates `(x_1, y_1, ..., x_n, y_n)`
//! describe the complex vector with entries `x_i + i y_i`.

use std::fmt;
use std::ops::Mul;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

/// Default tolerance for unitarity checks.
pub const TOL_UNITARY: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CxError {
    #[error("matrix is singular (|det| = {det_abs:e} <= {tol:e})")]
    SingularMatrix { det_abs: f64, tol: f64 },
    #[error("parameter {0} is outside [0, 1]")]
    OutOfRange(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix must be square and non-empty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix or vector has non-finite entries")]
    NonFinite,
    #[error("frame is degenerate: rank {rank} < {expected}")]
    DegenerateFrame { rank: usize, expected: usize },
}

/// An `n x n` complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexSquareMatrix {
    inner: DMatrix<Complex64>,
}

impl fmt::Debug for ComplexSquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexSquareMatrix{}", self.inner)
    }
}

/// `M = P U` with `P` positive Hermitian and `U` unitary.
#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    pub positive: ComplexSquareMatrix,
    pub unitary: ComplexSquareMatrix,
}

impl ComplexSquareMatrix {
    pub fn new(inner: DMatrix<Complex64>) -> Result<Self, CxError> {
        if inner.nrows() != inner.ncols() || inner.nrows() == 0 {
            return Err(CxError::NotSquare {
                rows: inner.nrows(),
                cols: inner.ncols(),
            });
        }
        if inner.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CxError::NonFinite);
        }
        Ok(Self { inner })
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_slice(n: usize, entries: &[Complex64]) -> Result<Self, CxError> {
        if entries.len() != n * n {
            return Err(CxError::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(n, n, entries))
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: DMatrix::identity(n, n),
        }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self, CxError> {
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn n(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.inner
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn determinant(&self) -> Complex64 {
        self.inner.clone().determinant()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            inner: self.inner.transpose(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            inner: self.inner.map(|z| z * s),
        }
    }

    /// Largest Euclidean norm of a column.
    pub fn max_column_norm(&self) -> f64 {
        self.inner
            .column_iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// `1e-10 * (max column norm)^n`.
    pub fn tol_singular(&self) -> f64 {
        1e-10 * self.max_column_norm().powi(self.n() as i32)
    }

    pub fn is_invertible(&self) -> bool {
        self.determinant().norm() > self.tol_singular()
    }

    /// Max-entry norm of `M M* - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.n();
        let prod = &self.inner * self.inner.adjoint();
        (prod - DMatrix::<Complex64>::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.is_unitary(tol) && (self.determinant() - Complex64::new(1.0, 0.0)).norm() <= tol
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n(), other.n(), "size mismatch");
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn try_inverse(&self) -> Result<Self, CxError> {
        self.check_invertible()?;
        self.inner
            .clone()
            .try_inverse()
            .map(|inner| Self { inner })
            .ok_or(CxError::SingularMatrix {
                det_abs: 0.0,
                tol: self.tol_singular(),
            })
    }

    fn check_invertible(&self) -> Result<(), CxError> {
        let det_abs = self.determinant().norm();
        let tol = self.tol_singular();
        if det_abs <= tol {
            return Err(CxError::SingularMatrix { det_abs, tol });
        }
        Ok(())
    }

    /// Polar decomposition through the Hermitian eigendecomposition of `M M*`.
    pub fn polar_decompose(&self) -> Result<PolarDecomposition, CxError> {
        self.check_invertible()?;
        let gram = &self.inner * self.inner.adjoint();
        let eig = SymmetricEigen::new(gram);
        let vecs = &eig.eigenvectors;
        let n = self.n();
        let mut sqrt_diag = DMatrix::<Complex64>::zeros(n, n);
        let mut inv_sqrt_diag = DMatrix::<Complex64>::zeros(n, n);
        for (i, &lam) in eig.eigenvalues.iter().enumerate() {
            // M invertible, so M M* is positive definite; clamp round-off only.
            let s = lam.max(f64::MIN_POSITIVE).sqrt();
            sqrt_diag[(i, i)] = Complex64::new(s, 0.0);
            inv_sqrt_diag[(i, i)] = Complex64::new(1.0 / s, 0.0);
        }
        let positive = vecs * sqrt_diag * vecs.adjoint();
        let positive_inv = vecs * inv_sqrt_diag * vecs.adjoint();
        let unitary = positive_inv * &self.inner;
        Ok(PolarDecomposition {
            positive: Self {
                inner: hermitian_part(&positive),
            },
            unitary: Self { inner: unitary },
        })
    }

    /// The deformation retraction `rho_t(M) = (t I + (1 - t) P) U` of `GL(n,C)`
    /// onto `U(n)`, where `M = P U`.
    pub fn polar_retract(&self, t: f64) -> Result<Self, CxError> {
        if !(0.0..=1.0).contains(&t) || t.is_nan() {
            return Err(CxError::OutOfRange(t));
        }
        let polar = self.polar_decompose()?;
        if t == 0.0 {
            // P U = M by construction.
            return Ok(self.clone());
        }
        let n = self.n();
        let path = DMatrix::<Complex64>::identity(n, n) * Complex64::new(t, 0.0)
            + polar.positive.inner * Complex64::new(1.0 - t, 0.0);
        Ok(Self {
            inner: path * polar.unitary.inner,
        })
    }

    /// The unitary polar factor, `polar_retract(M, 1)`.
    pub fn unitary_part(&self) -> Result<Self, CxError> {
        Ok(self.polar_decompose()?.unitary)
    }
}

fn hermitian_part(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()).map(|z| z * 0.5)
}

impl Mul for &ComplexSquareMatrix {
    type Output = ComplexSquareMatrix;

    fn mul(self, rhs: &ComplexSquareMatrix) -> ComplexSquareMatrix {
        assert_eq!(self.n(), rhs.n(), "size mismatch in matrix product");
        ComplexSquareMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl Mul for ComplexSquareMatrix {
    type Output = ComplexSquareMatrix;

    fn mul(self, rhs: ComplexSquareMatrix) -> ComplexSquareMatrix {
        &self * &rhs
    }
}

/// Real inner product `Re <u, v>` on `C^n = R^{2n}`.
pub fn real_inner(u: &DVector<Complex64>, v: &DVector<Complex64>) -> f64 {
    u.iter()
        .zip(v.iter())
        .map(|(a, b)| a.re * b.re + a.im * b.im)
        .sum()
}

/// Standard symplectic form `omega(u, v) = Im <u, v>`, i.e. `sum dx_j ^ dy_j`.
pub fn omega(u: &DVector<Complex64>, v: &DVector<Complex64>) -> f64 {
    u.iter()
        .zip(v.iter())
        .map(|(a, b)| a.re * b.im - a.im * b.re)
        .sum()
}

/// An ordered list of real tangent vectors in `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealFrame {
    n: usize,
    vectors: Vec<DVector<Complex64>>,
}

impl RealFrame {
    /// Frame from real coordinates `(x_1, y_1, ..., x_n, y_n)`.
    pub fn from_real_coords(n: usize, vectors: &[Vec<f64>]) -> Result<Self, CxError> {
        let complex = vectors
            .iter()
            .map(|v| {
                if v.len() != 2 * n {
                    return Err(CxError::DimensionMismatch {
                        expected: 2 * n,
                        found: v.len(),
                    });
                }
                Ok(DVector::from_iterator(
                    n,
                    v.chunks(2).map(|xy| Complex64::new(xy[0], xy[1])),
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_complex(n, complex)
    }

    pub fn from_complex(n: usize, vectors: Vec<DVector<Complex64>>) -> Result<Self, CxError> {
        if vectors.len() > 2 * n {
            return Err(CxError::DimensionMismatch {
                expected: 2 * n,
                found: vectors.len(),
            });
        }
        for v in &vectors {
            if v.len() != n {
                return Err(CxError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(CxError::NonFinite);
            }
            if v.norm() == 0.0 {
                return Err(CxError::DegenerateFrame {
                    rank: 0,
                    expected: 1,
                });
            }
        }
        Ok(Self { n, vectors })
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[DVector<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> &DVector<Complex64> {
        &self.vectors[j]
    }

    pub fn real_coords(&self, j: usize) -> Vec<f64> {
        self.vectors[j].iter().flat_map(|z| [z.re, z.im]).collect()
    }

    /// Gram-Schmidt with respect to the real inner product (two passes).
    /// Fails if some vector is dependent on its predecessors to within `tol`.
    pub fn orthonormalize(&self, tol: f64) -> Result<Self, CxError> {
        let mut out: Vec<DVector<Complex64>> = Vec::with_capacity(self.len());
        for (k, v) in self.vectors.iter().enumerate() {
            let scale = v.norm();
            let mut w = v.clone();
            for _ in 0..2 {
                for u in &out {
                    let c = real_inner(u, &w);
                    w -= u * Complex64::new(c, 0.0);
                }
            }
            let norm = w.norm();
            if norm <= tol * scale.max(1.0) {
                return Err(CxError::DegenerateFrame {
                    rank: k,
                    expected: self.len(),
                });
            }
            out.push(w / Complex64::new(norm, 0.0));
        }
        Ok(Self {
            n: self.n,
            vectors: out,
        })
    }

    /// Largest deviation of the real Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((real_inner(u, v) - target).abs());
            }
        }
        worst
    }

    /// Determinant of the complex matrix whose columns are the frame vectors.
    pub fn complex_determinant(&self) -> Result<Complex64, CxError> {
        if self.len() != self.n {
            return Err(CxError::DimensionMismatch {
                expected: self.n,
                found: self.len(),
            });
        }
        Ok(self.as_column_matrix().determinant())
    }

    pub fn as_column_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_columns(&self.vectors)
    }

    /// Frame with vectors `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut vectors = self.vectors.clone();
        vectors.swap(i, j);
        Self { n: self.n, vectors }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unitary_input_is_fixed_by_retraction() {
        let theta: f64 = 0.7;
        let u = ComplexSquareMatrix::from_row_slice(
            2,
            &[
                c(theta.cos(), 0.0),
                c(-theta.sin(), 0.0),
                c(0.0, theta.sin()),
                c(0.0, theta.cos()),
            ],
        )
        .unwrap();
        assert!(u.is_unitary(1e-12));
        for t in [0.0, 0.3, 1.0] {
            assert!(u.polar_retract(t).unwrap().max_abs_diff(&u) < 1e-12);
        }
    }

    #[test]
    fn diagonal_positive_interpolates() {
        let m = ComplexSquareMatrix::from_diagonal(&[c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = m.polar_retract(0.5).unwrap();
        let expected = ComplexSquareMatrix::from_diagonal(&[c(1.5, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(r.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn unitary_part_examples() {
        let id = ComplexSquareMatrix::identity(3);
        assert!(id.unitary_part().unwrap().max_abs_diff(&id) < 1e-12);

        let d = ComplexSquareMatrix::from_diagonal(&[c(3.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert!(
            d.unitary_part()
                .unwrap()
                .max_abs_diff(&ComplexSquareMatrix::identity(2))
                < 1e-12
        );

        let phase = Complex64::from_polar(1.0, PI / 3.0);
        let d = ComplexSquareMatrix::from_diagonal(&[phase * 2.0, c(1.0, 0.0)]).unwrap();
        let expected = ComplexSquareMatrix::from_diagonal(&[phase, c(1.0, 0.0)]).unwrap();
        assert!(d.unitary_part().unwrap().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn singular_and_out_of_range() {
        let m = ComplexSquareMatrix::from_row_slice(
            2,
            &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            m.polar_retract(0.5),
            Err(CxError::SingularMatrix { .. })
        ));
        assert!(matches!(
            m.unitary_part(),
            Err(CxError::SingularMatrix { .. })
        ));
        let id = ComplexSquareMatrix::identity(2);
        assert_eq!(id.polar_retract(1.5).unwrap_err(), CxError::OutOfRange(1.5));
        assert!(id.polar_retract(-0.1).is_err());
    }

    #[test]
    fn non_square_and_non_finite_rejected() {
        assert!(matches!(
            ComplexSquareMatrix::new(DMatrix::zeros(2, 3)),
            Err(CxError::NotSquare { .. })
        ));
        assert_eq!(
            ComplexSquareMatrix::from_diagonal(&[c(f64::NAN, 0.0)]).unwrap_err(),
            CxError::NonFinite
        );
    }

    #[test]
    fn real_matrix_gives_orthogonal_factor() {
        let m = ComplexSquareMatrix::from_row_slice(
            3,
            &[
                c(1.0, 0.0),
                c(2.0, 0.0),
                c(0.5, 0.0),
                c(-1.0, 0.0),
                c(0.3, 0.0),
                c(2.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(1.5, 0.0),
            ],
        )
        .unwrap();
        let u = m.unitary_part().unwrap();
        assert!(u.as_matrix().iter().all(|z| z.im.abs() < 1e-12));
        assert!(u.is_unitary(1e-10));
    }

    #[test]
    fn determinant_of_standard_and_rotated_frames() {
        let n = 3;
        let std: Vec<_> = (0..n)
            .map(|j| DVector::from_fn(n, |i, _| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }))
            .collect();
        let frame = RealFrame::from_complex(n, std.clone()).unwrap();
        assert!((frame.complex_determinant().unwrap() - c(1.0, 0.0)).norm() < 1e-15);

        let alpha = 0.4;
        let rot = Complex64::from_polar(1.0, alpha);
        let rotated = RealFrame::from_complex(n, std.iter().map(|v| v * rot).collect()).unwrap();
        let expected = Complex64::from_polar(1.0, n as f64 * alpha);
        assert!((rotated.complex_determinant().unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn schoen_wolfson_frame_determinant() {
        // Oracle: expanding the 2x2 determinant of (gamma, gamma'/|gamma'|) for
        // gamma_{p,q} gives sqrt(pq) e^{i(p-q)theta} / |gamma'| with |gamma'| = sqrt(pq).
        let (p, q) = (1.0_f64, 2.0_f64);
        let theta = PI / 4.0;
        let s = (p + q).sqrt();
        let g = DVector::from_vec(vec![
            Complex64::from_polar(q.sqrt() / s, p * theta),
            c(0.0, 1.0) * Complex64::from_polar(p.sqrt() / s, -q * theta),
        ]);
        let dg = DVector::from_vec(vec![
            c(0.0, p) * Complex64::from_polar(q.sqrt() / s, p * theta),
            c(0.0, 1.0) * c(0.0, -q) * Complex64::from_polar(p.sqrt() / s, -q * theta),
        ]);
        let dg = &dg / Complex64::new(dg.norm(), 0.0);
        let frame = RealFrame::from_complex(2, vec![g, dg]).unwrap();
        let det = frame.complex_determinant().unwrap();
        assert!((det - Complex64::from_polar(1.0, -PI / 4.0)).norm() < 1e-14);
    }

    #[test]
    fn frame_dimension_checks() {
        let frame = RealFrame::from_real_coords(2, &[vec![1.0, 0.0, 0.0, 0.0]]).unwrap();
        assert_eq!(
            frame.complex_determinant().unwrap_err(),
            CxError::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
        assert!(RealFrame::from_real_coords(2, &[vec![1.0, 0.0, 0.0]]).is_err());
        assert!(RealFrame::from_real_coords(2, &[vec![0.0; 4]]).is_err());
    }

    #[test]
    fn real_coordinate_convention() {
        let frame = RealFrame::from_real_coords(2, &[vec![1.0, 2.0, 3.0, 4.0]]).unwrap();
        assert_eq!(frame.vector(0)[0], c(1.0, 2.0));
        assert_eq!(frame.vector(0)[1], c(3.0, 4.0));
        assert_eq!(frame.real_coords(0), vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn orthonormalize_detects_rank_deficiency() {
        let frame =
            RealFrame::from_real_coords(2, &[vec![1.0, 0.0, 1.0, 0.0], vec![2.0, 0.0, 2.0, 0.0]])
                .unwrap();
        assert!(matches!(
            frame.orthonormalize(1e-10),
            Err(CxError::DegenerateFrame { rank: 1, .. })
        ));
        let frame =
            RealFrame::from_real_coords(2, &[vec![1.0, 0.0, 1.0, 0.0], vec![0.0, 1.0, 2.0, 0.0]])
                .unwrap();
        let on = frame.orthonormalize(1e-10).unwrap();
        assert!(on.orthonormality_defect() < 1e-14);
    }
}
