use std::f64::consts::TAU;
use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    clifford_partials, clifford_point, link_tangents, sample_link_loop, sample_link_point,
    symmetry_generators, tangent_frame, ConeError, ConeSpec, LinkParameter,
};
use crate::cxmat::RealFrame;
use crate::symplectic::{
    isotropy_residual, legendrian_residual, phase, Hamiltonian, HermQuad, LoopTrace, SurfaceSample,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeVerdict {
    SpecialLagrangian,
    LagrangianOnly,
    NotLagrangian,
}

impl fmt::Display for ConeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConeVerdict::SpecialLagrangian => "SpecialLagrangian",
            ConeVerdict::LagrangianOnly => "LagrangianOnly",
            ConeVerdict::NotLagrangian => "NotLagrangian",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub cone: ConeSpec,
    pub samples: usize,
    pub seed: u64,
    /// `max | |p| - 1 |`.
    pub sphere_residual: f64,
    pub legendrian_residual: f64,
    pub isotropy_residual: f64,
    /// Mean of the unit phases `e^{i theta}`.
    pub phase_mean: Complex64,
    /// `sqrt(mean |e^{i theta_k} - phase_mean|^2)`.
    pub phase_stddev: f64,
    pub verdict: ConeVerdict,
}

impl VerifyReport {
    /// Whether the verdict agrees with the catalog flag.
    pub fn matches_catalog(&self) -> bool {
        let expected = if self.cone.is_special_lagrangian() {
            ConeVerdict::SpecialLagrangian
        } else {
            ConeVerdict::LagrangianOnly
        };
        self.verdict == expected
    }
}

/// Samples `samples` random link points (at least 10) and measures how far
/// the cone is from being Legendrian, Lagrangian and special Lagrangian.
pub fn verify_cone(
    cone: &ConeSpec,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<VerifyReport, ConeError> {
    let samples = samples.max(10);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cone.ambient_dim();
    let (mut sphere, mut legendrian, mut isotropy) = (0.0f64, 0.0f64, 0.0f64);
    let mut phases = Vec::with_capacity(samples);
    for _ in 0..samples {
        let param = cone.random_parameter(&mut rng);
        let p = sample_link_point(cone, &param)?;
        sphere = sphere.max((p.norm() - 1.0).abs());
        let tangents =
            RealFrame::from_complex(n, link_tangents(cone, &param)?)?.orthonormalize(1e-10)?;
        legendrian = legendrian.max(legendrian_residual(
            &(&p / Complex64::new(p.norm(), 0.0)),
            &tangents,
        )?);
        let frame = tangent_frame(cone, &param)?;
        let iso = isotropy_residual(&frame);
        isotropy = isotropy.max(iso);
        if let Ok(w) = phase(&frame) {
            phases.push(w);
        }
    }
    let (phase_mean, phase_stddev) = if phases.len() == samples {
        let mean = phases.iter().sum::<Complex64>() / samples as f64;
        let var = phases.iter().map(|w| (w - mean).norm_sqr()).sum::<f64>() / samples as f64;
        (mean, var.sqrt())
    } else {
        (Complex64::new(f64::NAN, f64::NAN), f64::INFINITY)
    };
    let lagrangian = sphere <= tol && legendrian <= tol && isotropy <= tol;
    let verdict = match (lagrangian, phase_stddev <= tol) {
        (true, true) => ConeVerdict::SpecialLagrangian,
        (true, false) => ConeVerdict::LagrangianOnly,
        _ => ConeVerdict::NotLagrangian,
    };
    Ok(VerifyReport {
        cone: *cone,
        samples,
        seed,
        sphere_residual: sphere,
        legendrian_residual: legendrian,
        isotropy_residual: isotropy,
        phase_mean,
        phase_stddev,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    /// Generator labels, in evaluation order.
    pub generators: Vec<String>,
    /// `max |mu|` per generator over all samples.
    pub per_generator: Vec<f64>,
    pub max_abs: f64,
}

fn moment_report(
    cone: &ConeSpec,
    generators: Vec<(String, HermQuad)>,
    samples: usize,
    seed: u64,
) -> Result<MomentReport, ConeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..samples)
        .map(|_| sample_link_point(cone, &cone.random_parameter(&mut rng)))
        .collect::<Result<Vec<_>, _>>()?;
    let per_generator: Vec<f64> = generators
        .iter()
        .map(|(_, f)| points.iter().map(|p| f.value(p).abs()).fold(0.0, f64::max))
        .collect();
    Ok(MomentReport {
        generators: generators.into_iter().map(|(l, _)| l).collect(),
        max_abs: per_generator.iter().copied().fold(0.0, f64::max),
        per_generator,
    })
}

/// `max |mu|` over random link points for the moment maps of the cone's
/// linear symmetry algebra (each vanishing at the origin). Cones without a
/// special unitary symmetry report an empty generator list and `0`.
pub fn moment_level_check(
    cone: &ConeSpec,
    samples: usize,
    seed: u64,
) -> Result<MomentReport, ConeError> {
    let generators = symmetry_generators(cone)
        .into_iter()
        .map(|(label, m)| Ok((label, HermQuad::for_linear_field(&m)?)))
        .collect::<Result<Vec<_>, ConeError>>()?;
    moment_report(cone, generators, samples, seed)
}

/// Moment values of the translations by the coordinate vectors `e_k` and
/// `i e_k`; these are linear functions and do not vanish on the cone.
pub fn translation_moment_check(
    cone: &ConeSpec,
    samples: usize,
    seed: u64,
) -> Result<MomentReport, ConeError> {
    let n = cone.ambient_dim();
    let mut generators = Vec::with_capacity(2 * n);
    for k in 0..n {
        for (name, unit) in [
            ("", Complex64::new(1.0, 0.0)),
            ("i", Complex64::new(0.0, 1.0)),
        ] {
            let mut w = DVector::zeros(n);
            w[k] = unit;
            generators.push((
                format!("translate {name}e{}", k + 1),
                HermQuad::for_translation(&w),
            ));
        }
    }
    moment_report(cone, generators, samples, seed)
}

/// Link loop through `base` sampled at `m` intervals, with cone tangent frames.
pub fn link_loop(cone: &ConeSpec, base: &LinkParameter, m: usize) -> Result<LoopTrace, ConeError> {
    sample_link_loop(cone, base, m)
}

/// The Clifford torus link of `clifford(n)` shifted by `offset`, as a
/// quadrature grid of `m^(n-1)` samples for surface moment integrals.
pub fn clifford_surface(
    n: usize,
    m: usize,
    offset: &DVector<Complex64>,
) -> Result<Vec<SurfaceSample>, ConeError> {
    let cone = ConeSpec::clifford(n)?;
    if offset.len() != n || m == 0 {
        return Err(ConeError::InvalidParameter(format!(
            "{cone}: offset needs {n} entries and the grid at least one point"
        )));
    }
    let k = n - 1;
    let total = m.pow(k as u32);
    let weight = (TAU / m as f64).powi(k as i32);
    Ok((0..total)
        .map(|mut idx| {
            let angles: Vec<f64> = (0..k)
                .map(|_| {
                    let a = TAU * (idx % m) as f64 / m as f64;
                    idx /= m;
                    a
                })
                .collect();
            SurfaceSample {
                point: clifford_point(n, &angles) + offset,
                partials: clifford_partials(n, &angles),
                weight,
            }
        })
        .collect())
}
