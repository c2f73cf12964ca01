//! Two-ended smoothings `L_t = { z sigma : sigma in Sigma, Im z^N = t, arg z in (0, pi/N) }`
//! of a special Lagrangian cone over the link `Sigma`.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;

use super::{link_tangents, sample_link_point, ConeError, ConeSpec, LinkParameter};
use crate::cxmat::RealFrame;

const BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingFamily {
    pub cone: ConeSpec,
    pub t: f64,
}

/// Which end of `L_t`: asymptotic to the cone itself or to `e^{i pi/N} C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    NearZero,
    NearPiOverN,
}

impl SmoothingFamily {
    /// Requires a special Lagrangian cone and `t != 0`.
    pub fn new(cone: ConeSpec, t: f64) -> Result<Self, ConeError> {
        if !cone.is_special_lagrangian() {
            return Err(ConeError::NotSpecialLagrangian(cone));
        }
        if !t.is_finite() {
            return Err(ConeError::InvalidParameter(format!("t = {t}")));
        }
        Ok(Self { cone, t })
    }

    /// Real dimension `N` of the cone.
    pub fn dimension(&self) -> usize {
        self.cone.ambient_dim()
    }

    /// Decay rate `2 - N`.
    pub fn rate(&self) -> f64 {
        2.0 - self.dimension() as f64
    }

    /// Argument `alpha` with `r^N sin(N alpha) = t`, found by bisection.
    ///
    /// For `t < 0` the mirrored sector `(-pi/N, 0)` is used.
    pub fn argument(&self, r: f64, branch: Branch) -> Result<f64, ConeError> {
        let n = self.dimension() as i32;
        let nf = f64::from(n);
        let t = self.t.abs();
        let rn = r.powi(n);
        if t == 0.0 || !r.is_finite() || r <= 0.0 || !rn.is_finite() || rn < t {
            return Err(ConeError::NoBranchSolution { r, t: self.t });
        }
        let g = |a: f64| rn * (nf * a).sin() - t;
        let (mut lo, mut hi) = match branch {
            Branch::NearZero => (0.0, PI / (2.0 * nf)),
            Branch::NearPiOverN => (PI / (2.0 * nf), PI / nf),
        };
        let increasing = branch == Branch::NearZero;
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if (g(mid) < 0.0) == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let alpha = 0.5 * (lo + hi);
        Ok(if self.t < 0.0 { -alpha } else { alpha })
    }

    /// The complex factor `z` with `|z| = r`.
    pub fn factor(&self, r: f64, branch: Branch) -> Result<Complex64, ConeError> {
        Ok(Complex64::from_polar(r, self.argument(r, branch)?))
    }
}

/// The point `z sigma` of `L_t`.
pub fn smoothing_point(
    family: &SmoothingFamily,
    r: f64,
    branch: Branch,
    param: &LinkParameter,
) -> Result<DVector<Complex64>, ConeError> {
    let z = family.factor(r, branch)?;
    Ok(sample_link_point(&family.cone, param)? * z)
}

/// Tangent frame of `L_t` at `z sigma`: `z` times the link tangents, then
/// `conj(z)^(N-1) sigma`, the direction along the curve `Im z^N = t`.
pub fn smoothing_frame(
    family: &SmoothingFamily,
    r: f64,
    branch: Branch,
    param: &LinkParameter,
) -> Result<RealFrame, ConeError> {
    let z = family.factor(r, branch)?;
    let n = family.dimension();
    let sigma = sample_link_point(&family.cone, param)?;
    let mut vectors: Vec<_> = link_tangents(&family.cone, param)?
        .into_iter()
        .map(|v| v * z)
        .collect();
    let along = z.conj().powi(n as i32 - 1);
    vectors.push(sigma * (along / along.norm()));
    Ok(RealFrame::from_complex(n, vectors)?.orthonormalize(1e-10)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    /// `rate - 1 = 1 - N`.
    pub expected: f64,
    /// `(r, distance)` pairs.
    pub points: Vec<(f64, f64)>,
}

/// Least-squares slope of `log dist(L_t, C)` against `log r` on the
/// near-zero branch, where the distance is measured to the nearer of the
/// rays through `sigma` and `e^{i pi/N} sigma`.
pub fn decay_rate_fit(
    family: &SmoothingFamily,
    radii: &[f64],
    param: &LinkParameter,
) -> Result<DecayFit, ConeError> {
    let (min, max) = radii
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    let decades = if radii.is_empty() || min <= 0.0 {
        0.0
    } else {
        (max / min).log10()
    };
    if radii.len() < 5 || decades < 2.0 {
        return Err(ConeError::InsufficientRange {
            count: radii.len(),
            decades,
        });
    }
    let sigma = sample_link_point(&family.cone, param)?;
    let other = &sigma * Complex64::from_polar(1.0, PI / family.dimension() as f64);
    let points = radii
        .iter()
        .map(|&r| {
            let p = smoothing_point(family, r, Branch::NearZero, param)?;
            Ok((r, ray_distance(&p, &sigma).min(ray_distance(&p, &other))))
        })
        .collect::<Result<Vec<_>, ConeError>>()?;
    let xs: Vec<f64> = points.iter().map(|(r, _)| r.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, d)| d.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(DecayFit {
        slope,
        intercept: my - slope * mx,
        expected: family.rate() - 1.0,
        points,
    })
}

/// Distance from `p` to the ray `{ s u : s >= 0 }` for a unit vector `u`.
fn ray_distance(p: &DVector<Complex64>, u: &DVector<Complex64>) -> f64 {
    let s = u
        .iter()
        .zip(p.iter())
        .map(|(a, b)| (a.conj() * b).re)
        .sum::<f64>()
        .max(0.0);
    (p - u * Complex64::new(s, 0.0)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::phase;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn geometric(lo: f64, hi: f64, k: usize) -> Vec<f64> {
        (0..k)
            .map(|i| lo * (hi / lo).powf(i as f64 / (k - 1) as f64))
            .collect()
    }

    #[test]
    fn argument_matches_closed_form() {
        let fam = SmoothingFamily::new(ConeSpec::Clifford(3), 1.0).unwrap();
        let a = fam.argument(10.0, Branch::NearZero).unwrap();
        assert!((a - (1e-3f64).asin() / 3.0).abs() < 1e-15);
        let b = fam.argument(10.0, Branch::NearPiOverN).unwrap();
        assert!((b - (PI - (1e-3f64).asin()) / 3.0).abs() < 1e-14);
    }

    #[test]
    fn points_satisfy_the_level_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for cone in [
            ConeSpec::Clifford(2),
            ConeSpec::Clifford(3),
            ConeSpec::SuSo(2),
        ] {
            let fam = SmoothingFamily::new(cone, 1.0).unwrap();
            let n = fam.dimension() as i32;
            for branch in [Branch::NearZero, Branch::NearPiOverN] {
                for r in [1.5, 10.0, 300.0] {
                    let z = fam.factor(r, branch).unwrap();
                    assert!(
                        (z.powi(n).im - 1.0).abs() < 1e-10 * r.powi(n).max(1.0),
                        "{cone} {r}"
                    );
                    let p =
                        smoothing_point(&fam, r, branch, &cone.random_parameter(&mut rng)).unwrap();
                    assert!((p.norm() - r).abs() < 1e-9 * r);
                }
            }
        }
    }

    #[test]
    fn degenerate_levels_rejected() {
        let fam = SmoothingFamily::new(ConeSpec::Clifford(3), 0.0).unwrap();
        assert!(matches!(
            fam.argument(10.0, Branch::NearZero),
            Err(ConeError::NoBranchSolution { .. })
        ));
        let fam = SmoothingFamily::new(ConeSpec::Clifford(3), 10.0).unwrap();
        assert!(fam.argument(2.0, Branch::NearZero).is_err());
        assert!(SmoothingFamily::new(ConeSpec::SchoenWolfson { p: 1, q: 2 }, 1.0).is_err());
    }

    #[test]
    fn negative_levels_mirror() {
        let fam = SmoothingFamily::new(ConeSpec::Clifford(3), -1.0).unwrap();
        let z = fam.factor(5.0, Branch::NearZero).unwrap();
        assert!((z.powi(3).im + 1.0).abs() < 1e-10);
    }

    #[test]
    fn decay_slopes() {
        for (cone, expected) in [(ConeSpec::Clifford(2), -1.0), (ConeSpec::Clifford(3), -2.0)] {
            let fam = SmoothingFamily::new(cone, 1.0).unwrap();
            let param = LinkParameter::Angles(vec![0.4; cone.ambient_dim() - 1]);
            let fit = decay_rate_fit(&fam, &geometric(10.0, 1000.0, 9), &param).unwrap();
            assert_eq!(fit.expected, expected);
            assert!((fit.slope - expected).abs() < 0.1, "{fit:?}");
            // Analytic offset t / (N r^(N-1)).
            for (r, d) in &fit.points {
                let oracle = 1.0
                    / (f64::from(cone.ambient_dim() as u32)
                        * r.powi(cone.ambient_dim() as i32 - 1));
                assert!((d / oracle - 1.0).abs() < 1e-3);
            }
        }
        let fam = SmoothingFamily::new(ConeSpec::Clifford(3), 1.0).unwrap();
        let p = LinkParameter::Angles(vec![0.0, 0.0]);
        assert!(matches!(
            decay_rate_fit(&fam, &geometric(10.0, 100.0, 6), &p),
            Err(ConeError::InsufficientRange { .. })
        ));
        let flat = SmoothingFamily { t: 0.0, ..fam };
        assert!(matches!(
            decay_rate_fit(&flat, &geometric(10.0, 1000.0, 6), &p),
            Err(ConeError::NoBranchSolution { .. })
        ));
    }

    #[test]
    fn smoothing_has_constant_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for cone in [ConeSpec::Clifford(3), ConeSpec::SuSo(3), ConeSpec::Su(3)] {
            let fam = SmoothingFamily::new(cone, 1.0).unwrap();
            let mut phases = Vec::new();
            for k in 0..40 {
                let r = 1.2 + f64::from(k) * 0.5;
                let branch = if k % 2 == 0 {
                    Branch::NearZero
                } else {
                    Branch::NearPiOverN
                };
                let frame =
                    smoothing_frame(&fam, r, branch, &cone.random_parameter(&mut rng)).unwrap();
                phases.push(phase(&frame).unwrap());
            }
            let spread = phases
                .iter()
                .map(|w| (w - phases[0]).norm())
                .fold(0.0, f64::max);
            assert!(spread < 1e-6, "{cone}: {spread}");
        }
    }
}
