use std::f64::consts::{FRAC_PI_2, TAU};

use nalgebra::DVector;
use num_complex::Complex64;

use super::forms::phase;
use super::SymplecticError;
use crate::cxmat::{self, RealFrame};

/// Fewest intervals accepted by [`loop_liouville_integral`].
pub const MIN_LOOP_SAMPLES: usize = 64;

/// Largest sample count tried by [`maslov_index_adaptive`].
pub const MAX_LOOP_SAMPLES: usize = 1 << 20;

const CLOSURE_TOL: f64 = 1e-9;

/// A closed loop sampled on the uniform grid `theta_k = 2 pi k / m`,
/// `k = 0..=m`, with a tangent frame at every sample. The last sample
/// repeats the first.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopTrace {
    points: Vec<DVector<Complex64>>,
    frames: Vec<RealFrame>,
}

impl LoopTrace {
    pub fn new(
        points: Vec<DVector<Complex64>>,
        frames: Vec<RealFrame>,
    ) -> Result<Self, SymplecticError> {
        if points.len() != frames.len() {
            return Err(SymplecticError::DimensionMismatch {
                expected: points.len(),
                found: frames.len(),
            });
        }
        check_closed(&points)?;
        let (first, last) = (&frames[0], &frames[frames.len() - 1]);
        let frame_gap = first
            .vectors()
            .iter()
            .zip(last.vectors())
            .map(|(a, b)| (a - b).norm() / a.norm().max(1.0))
            .fold(0.0, f64::max);
        if first.len() != last.len() || frame_gap > CLOSURE_TOL {
            return Err(SymplecticError::NotClosed { gap: frame_gap });
        }
        Ok(Self { points, frames })
    }

    /// Samples `f(theta)` at `m + 1` grid points of `[0, 2 pi]`.
    pub fn sample<F>(m: usize, mut f: F) -> Result<Self, SymplecticError>
    where
        F: FnMut(f64) -> Result<(DVector<Complex64>, RealFrame), SymplecticError>,
    {
        let mut points = Vec::with_capacity(m + 1);
        let mut frames = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let (p, fr) = f(TAU * k as f64 / m as f64)?;
            points.push(p);
            frames.push(fr);
        }
        Self::new(points, frames)
    }

    /// Number of intervals `m`.
    pub fn intervals(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[DVector<Complex64>] {
        &self.points
    }

    pub fn frames(&self) -> &[RealFrame] {
        &self.frames
    }

    /// The same loop traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        let mut frames = self.frames.clone();
        points.reverse();
        frames.reverse();
        Self { points, frames }
    }
}

fn check_closed(points: &[DVector<Complex64>]) -> Result<(), SymplecticError> {
    let (Some(first), Some(last)) = (points.first(), points.last()) else {
        return Err(SymplecticError::NotClosed { gap: f64::INFINITY });
    };
    let gap = (first - last).norm();
    if points.len() < 2 || gap > CLOSURE_TOL * first.norm().max(1.0) {
        return Err(SymplecticError::NotClosed { gap });
    }
    Ok(())
}

/// Closed polygon integral of `lambda`: `1/2 sum_k Im <z_k, z_{k+1}>`.
fn polygon_liouville(points: &[DVector<Complex64>], stride: usize) -> f64 {
    let m = points.len() - 1;
    let mut sum = 0.0;
    let mut k = 0;
    while k < m {
        sum += cxmat::omega(&points[k], &points[k + stride]);
        k += stride;
    }
    0.5 * sum
}

/// Richardson-extrapolated loop integral.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvilleIntegral {
    pub value: f64,
    /// Difference between the two highest extrapolation levels.
    pub error_estimate: f64,
    /// Raw polygon values at `m/4`, `m/2` and `m` intervals.
    pub composite: [f64; 3],
    pub tol_exact: f64,
    pub exact: bool,
}

/// Absolute floor for the exactness tolerance, relative to `max |z|^2`.
pub const EXACT_FLOOR: f64 = 1e-12;

/// `oint lambda` over a closed sample list (`m + 1` points, last = first),
/// using the second-order polygon rule at `m/4`, `m/2`, `m` intervals and
/// two Richardson steps. The loop counts as exact when
/// `|value| <= max(10 * error_estimate, EXACT_FLOOR * max|z|^2)`.
pub fn loop_liouville_integral(
    points: &[DVector<Complex64>],
) -> Result<LiouvilleIntegral, SymplecticError> {
    check_closed(points)?;
    let m = points.len() - 1;
    if m < MIN_LOOP_SAMPLES || !m.is_multiple_of(4) {
        return Err(SymplecticError::TooFewSamples {
            found: m,
            min: MIN_LOOP_SAMPLES,
        });
    }
    let s1 = polygon_liouville(points, 4);
    let s2 = polygon_liouville(points, 2);
    let s3 = polygon_liouville(points, 1);
    let r1a = (4.0 * s2 - s1) / 3.0;
    let r1b = (4.0 * s3 - s2) / 3.0;
    let value = (16.0 * r1b - r1a) / 15.0;
    let error_estimate = (value - r1b).abs();
    let scale = points.iter().map(|p| p.norm_squared()).fold(0.0, f64::max);
    let tol_exact = (10.0 * error_estimate).max(EXACT_FLOOR * scale.max(1.0));
    Ok(LiouvilleIntegral {
        value,
        error_estimate,
        composite: [s1, s2, s3],
        tol_exact,
        exact: value.abs() <= tol_exact,
    })
}

/// Samples a parametric loop `c: [0, 2 pi] -> C^n` at `m` intervals and integrates `lambda`.
pub fn curve_liouville_integral<F>(m: usize, curve: F) -> Result<LiouvilleIntegral, SymplecticError>
where
    F: Fn(f64) -> DVector<Complex64>,
{
    let points: Vec<_> = (0..=m).map(|k| curve(TAU * k as f64 / m as f64)).collect();
    loop_liouville_integral(&points)
}

/// Winding number of the phase along the loop.
///
/// Fails with [`SymplecticError::PhaseJump`] when two consecutive phases
/// differ by `pi/2` or more; [`maslov_index_adaptive`] refines in that case.
pub fn maslov_index(lp: &LoopTrace) -> Result<i64, SymplecticError> {
    let phases = lp
        .frames()
        .iter()
        .map(phase)
        .collect::<Result<Vec<_>, _>>()?;
    let mut total = 0.0;
    for (k, w) in phases.windows(2).enumerate() {
        let jump = (w[1] / w[0]).arg();
        if jump.abs() >= FRAC_PI_2 {
            return Err(SymplecticError::PhaseJump { index: k, jump });
        }
        total += jump;
    }
    let winding = total / TAU;
    let rounded = winding.round();
    if (winding - rounded).abs() > 1e-6 {
        return Err(SymplecticError::NotClosed {
            gap: (winding - rounded).abs() * TAU,
        });
    }
    Ok(rounded as i64)
}

/// Calls `generate(m)` for `m = m0, 2 m0, ...` until the phase steps are
/// all below `pi/2`, then returns the index and the sample count used.
pub fn maslov_index_adaptive<G>(
    m0: usize,
    max_m: usize,
    mut generate: G,
) -> Result<(i64, usize), SymplecticError>
where
    G: FnMut(usize) -> Result<LoopTrace, SymplecticError>,
{
    let mut m = m0.max(4);
    loop {
        match maslov_index(&generate(m)?) {
            Ok(k) => return Ok((k, m)),
            Err(SymplecticError::PhaseJump { .. }) if m * 2 <= max_m => m *= 2,
            Err(SymplecticError::PhaseJump { .. }) => {
                return Err(SymplecticError::RefinementExhausted { samples: m })
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle(t: f64) -> DVector<Complex64> {
        DVector::from_column_slice(&[c(0.0, t).exp(), c(0.0, 0.0)])
    }

    fn sw_point(p: f64, q: f64, t: f64) -> DVector<Complex64> {
        let s = (p + q).sqrt();
        DVector::from_column_slice(&[
            c(0.0, p * t).exp() * (q.sqrt() / s),
            c(0.0, 1.0) * c(0.0, -q * t).exp() * (p.sqrt() / s),
        ])
    }

    fn sw_loop(p: f64, q: f64, m: usize) -> Result<LoopTrace, SymplecticError> {
        LoopTrace::sample(m, |t| {
            let z = sw_point(p, q, t);
            let s = (p + q).sqrt();
            let dz = DVector::from_column_slice(&[
                c(0.0, p) * c(0.0, p * t).exp() * (q.sqrt() / s),
                c(q, 0.0) * c(0.0, -q * t).exp() * (p.sqrt() / s),
            ]);
            Ok((z.clone(), RealFrame::from_complex(2, vec![z, dz])?))
        })
    }

    #[test]
    fn circle_encloses_pi() {
        let r = curve_liouville_integral(256, circle).unwrap();
        assert!((r.value - PI).abs() < 1e-6, "{r:?}");
        assert!(!r.exact);
    }

    #[test]
    fn polygon_rule_is_second_order() {
        let e = |m| (curve_liouville_integral(m, circle).unwrap().composite[2] - PI).abs();
        let ratio = e(128) / e(256);
        assert!((ratio - 4.0).abs() < 0.05, "{ratio}");
        let est = |m| curve_liouville_integral(m, circle).unwrap().error_estimate;
        assert!(est(256) < 0.5 * est(128));
    }

    #[test]
    fn legendrian_curve_is_exact() {
        let r = curve_liouville_integral(256, |t| sw_point(1.0, 2.0, t)).unwrap();
        assert!(r.value.abs() < 1e-8 && r.exact, "{r:?}");
    }

    #[test]
    fn dilation_scales_quadratically() {
        let base = curve_liouville_integral(128, circle).unwrap().value;
        let scaled = curve_liouville_integral(128, |t| circle(t) * c(3.0, 0.0))
            .unwrap()
            .value;
        assert!((scaled - 9.0 * base).abs() < 1e-9);
    }

    #[test]
    fn open_or_short_loops_rejected() {
        let open: Vec<_> = (0..=64).map(|k| circle(f64::from(k) * 0.05)).collect();
        assert!(matches!(
            loop_liouville_integral(&open),
            Err(SymplecticError::NotClosed { .. })
        ));
        assert!(matches!(
            curve_liouville_integral(32, circle),
            Err(SymplecticError::TooFewSamples { .. })
        ));
    }

    #[test]
    fn schoen_wolfson_maslov() {
        for (p, q) in [(1.0, 2.0), (2.0, 3.0), (3.0, 5.0), (1.0, 1.0)] {
            let (k, _) = maslov_index_adaptive(64, MAX_LOOP_SAMPLES, |m| sw_loop(p, q, m)).unwrap();
            assert_eq!(k, (p - q) as i64);
        }
    }

    #[test]
    fn reversal_negates_maslov() {
        let lp = sw_loop(1.0, 2.0, 256).unwrap();
        assert_eq!(maslov_index(&lp).unwrap(), -1);
        assert_eq!(maslov_index(&lp.reversed()).unwrap(), 1);
    }

    #[test]
    fn coarse_grid_is_refined() {
        // (1, 12) winds 11 times; 8 intervals are far too coarse.
        assert!(matches!(
            maslov_index(&sw_loop(1.0, 12.0, 8).unwrap()),
            Err(SymplecticError::PhaseJump { .. })
        ));
        let (k, m) = maslov_index_adaptive(8, 1 << 12, |m| sw_loop(1.0, 12.0, m)).unwrap();
        assert_eq!(k, -11);
        assert!(m > 8);
        assert!(matches!(
            maslov_index_adaptive(8, 16, |m| sw_loop(1.0, 12.0, m)),
            Err(SymplecticError::RefinementExhausted { samples: 16 })
        ));
    }
}
