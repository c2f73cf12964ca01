use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::SymplecticError;
use crate::cxmat::{self, RealFrame};

/// Tolerance for "is Lagrangian" and "lies on the unit sphere" checks.
pub const TOL_GEOMETRY: f64 = 1e-8;

/// The constant forms of `C^n`.
///
/// `lambda = 1/2 sum (x dy - y dx)` is a primitive of `omega = sum dx ^ dy`;
/// the contact form on the sphere is the unhalved `sum (x dy - y dx)`, so
/// `contact(p)(v) = 2 lambda(p)(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmbientForms {
    pub n: usize,
}

impl AmbientForms {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn omega(&self, u: &DVector<Complex64>, v: &DVector<Complex64>) -> f64 {
        cxmat::omega(u, v)
    }

    pub fn liouville(&self, p: &DVector<Complex64>, v: &DVector<Complex64>) -> f64 {
        0.5 * cxmat::omega(p, v)
    }

    pub fn contact(&self, p: &DVector<Complex64>, v: &DVector<Complex64>) -> f64 {
        cxmat::omega(p, v)
    }

    /// `Omega(u_1, ..., u_n) = det[u_1 ... u_n]` for `Omega = dz_1 ^ ... ^ dz_n`.
    pub fn holomorphic_volume(
        &self,
        vectors: &[DVector<Complex64>],
    ) -> Result<Complex64, SymplecticError> {
        if vectors.len() != self.n || vectors.iter().any(|v| v.len() != self.n) {
            return Err(SymplecticError::DimensionMismatch {
                expected: self.n,
                found: vectors.len(),
            });
        }
        Ok(DMatrix::from_columns(vectors).determinant())
    }
}

/// `max_{i<j} |omega(v_i, v_j)|`; zero for frames with fewer than two vectors.
pub fn isotropy_residual(frame: &RealFrame) -> f64 {
    let v = frame.vectors();
    let mut worst: f64 = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            worst = worst.max(cxmat::omega(&v[i], &v[j]).abs());
        }
    }
    worst
}

/// Phase `e^{i theta}` of an oriented Lagrangian plane: `Omega` evaluated
/// on an orthonormal frame.
pub fn phase(frame: &RealFrame) -> Result<Complex64, SymplecticError> {
    phase_with_tol(frame, TOL_GEOMETRY)
}

pub fn phase_with_tol(frame: &RealFrame, tol: f64) -> Result<Complex64, SymplecticError> {
    let n = frame.complex_dim();
    if frame.len() != n {
        return Err(SymplecticError::DimensionMismatch {
            expected: n,
            found: frame.len(),
        });
    }
    let ortho = frame.orthonormalize(tol)?;
    let residual = isotropy_residual(&ortho);
    if residual > tol {
        return Err(SymplecticError::NotLagrangian { residual });
    }
    Ok(ortho.complex_determinant()?)
}

/// `max_i |contact(p)(v_i)|` for `p` on the unit sphere.
pub fn legendrian_residual(
    point: &DVector<Complex64>,
    frame: &RealFrame,
) -> Result<f64, SymplecticError> {
    let norm = point.norm();
    if (norm - 1.0).abs() > TOL_GEOMETRY {
        return Err(SymplecticError::NotOnSphere { norm });
    }
    Ok(frame
        .vectors()
        .iter()
        .map(|v| cxmat::omega(point, v).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dv(v: &[Complex64]) -> DVector<Complex64> {
        DVector::from_column_slice(v)
    }

    fn standard(n: usize) -> RealFrame {
        let vs = (0..n)
            .map(|k| DVector::from_fn(n, |i, _| if i == k { c(1.0, 0.0) } else { c(0.0, 0.0) }))
            .collect();
        RealFrame::from_complex(n, vs).unwrap()
    }

    /// Schoen–Wolfson curve and its unit tangent.
    fn sw(p: f64, q: f64, t: f64) -> (DVector<Complex64>, DVector<Complex64>) {
        let s = (p + q).sqrt();
        let z = dv(&[
            c(0.0, p * t).exp() * (q.sqrt() / s),
            c(0.0, 1.0) * c(0.0, -q * t).exp() * (p.sqrt() / s),
        ]);
        let dz = dv(&[
            c(0.0, p) * c(0.0, p * t).exp() * (q.sqrt() / s),
            c(0.0, 1.0) * c(0.0, -q) * c(0.0, -q * t).exp() * (p.sqrt() / s),
        ]);
        let speed = dz.norm();
        (z, dz / c(speed, 0.0))
    }

    #[test]
    fn isotropy_examples() {
        assert_eq!(isotropy_residual(&standard(3)), 0.0);
        let e1 = dv(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let je1 = dv(&[c(0.0, 1.0), c(0.0, 0.0)]);
        let f = RealFrame::from_complex(2, vec![e1, je1]).unwrap();
        assert!((isotropy_residual(&f) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phase_of_standard_and_rotated_planes() {
        assert!((phase(&standard(3)).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        let alpha: f64 = 0.4;
        let rot = standard(3)
            .vectors()
            .iter()
            .map(|v| v * c(0.0, alpha).exp())
            .collect();
        let f = RealFrame::from_complex(3, rot).unwrap();
        assert!((phase(&f).unwrap() - c(0.0, 3.0 * alpha).exp()).norm() < 1e-13);
        assert!(phase(&RealFrame::from_complex(1, vec![dv(&[c(1.0, 0.0)])]).unwrap()).is_ok());
    }

    #[test]
    fn swapping_vectors_flips_phase() {
        let (z, t) = sw(1.0, 2.0, 0.3);
        let f = RealFrame::from_complex(2, vec![z, t]).unwrap();
        let a = phase(&f).unwrap();
        let b = phase(&f.swapped(0, 1)).unwrap();
        assert!((a + b).norm() < 1e-13);
    }

    #[test]
    fn schoen_wolfson_phase_is_e_to_minus_i_theta() {
        for k in 0..12 {
            let theta = 2.0 * PI * f64::from(k) / 12.0;
            let (z, t) = sw(1.0, 2.0, theta);
            let f = RealFrame::from_complex(2, vec![z, t]).unwrap();
            assert!((phase(&f).unwrap() - c(0.0, -theta).exp()).norm() < 1e-12);
        }
    }

    #[test]
    fn non_lagrangian_rejected() {
        let f = RealFrame::from_complex(
            2,
            vec![
                dv(&[c(1.0, 0.0), c(0.0, 0.0)]),
                dv(&[c(0.0, 1.0), c(0.0, 0.0)]),
            ],
        )
        .unwrap();
        assert!(matches!(
            phase(&f),
            Err(SymplecticError::NotLagrangian { .. })
        ));
    }

    #[test]
    fn legendrian_examples() {
        for k in 0..8 {
            let theta = f64::from(k) * 0.7;
            let (z, t) = sw(2.0, 3.0, theta);
            let f = RealFrame::from_complex(2, vec![t]).unwrap();
            assert!(legendrian_residual(&z, &f).unwrap() < 1e-10);
            let circle = dv(&[c(0.0, theta).exp(), c(0.0, 0.0)]);
            let tangent = RealFrame::from_complex(
                2,
                vec![dv(&[c(0.0, 1.0) * c(0.0, theta).exp(), c(0.0, 0.0)])],
            )
            .unwrap();
            assert!((legendrian_residual(&circle, &tangent).unwrap() - 1.0).abs() < 1e-14);
        }
        let off = dv(&[c(2.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            legendrian_residual(&off, &standard(2)),
            Err(SymplecticError::NotOnSphere { .. })
        ));
    }

    #[test]
    fn d_lambda_is_omega() {
        // For constant fields u, v: d lambda(u, v) = D_u[lambda(v)] - D_v[lambda(u)].
        let forms = AmbientForms::new(2);
        let p = dv(&[c(0.3, -0.2), c(1.1, 0.4)]);
        let u = dv(&[c(0.5, 0.1), c(-0.7, 0.2)]);
        let v = dv(&[c(-0.3, 0.9), c(0.2, 0.6)]);
        let mut errs = Vec::new();
        for h in [1e-2, 5e-3] {
            let hc = c(h, 0.0);
            let du = (forms.liouville(&(&p + &u * hc), &v) - forms.liouville(&(&p - &u * hc), &v))
                / (2.0 * h);
            let dv_ = (forms.liouville(&(&p + &v * hc), &u) - forms.liouville(&(&p - &v * hc), &u))
                / (2.0 * h);
            errs.push((du - dv_ - forms.omega(&u, &v)).abs());
        }
        assert!(errs.iter().all(|e| *e < 1e-12), "{errs:?}");
        assert!((forms.contact(&p, &u) - 2.0 * forms.liouville(&p, &u)).abs() < 1e-15);
    }

    #[test]
    fn holomorphic_volume_is_determinant() {
        let forms = AmbientForms::new(2);
        let v = [
            dv(&[c(1.0, 0.0), c(0.0, 0.0)]),
            dv(&[c(0.0, 0.0), c(0.0, 1.0)]),
        ];
        assert!((forms.holomorphic_volume(&v).unwrap() - c(0.0, 1.0)).norm() < 1e-15);
        assert!(forms.holomorphic_volume(&v[..1]).is_err());
    }
}
