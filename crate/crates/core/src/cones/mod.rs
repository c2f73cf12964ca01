//! Catalog of explicit special Lagrangian and Lagrangian cones.
//!
//! Each cone is the cone over a Legendrian link in the unit sphere of
//! `C^N`. The three homogeneous families live in matrix spaces with the
//! inner product `Tr(A B^*)`, read in fixed orthonormal coordinates:
//!
//! * `su(n)`: `A / sqrt(n)` in `gl(n, C)`, coordinates = entries row by row;
//! * `su-so(n)`: `A A^T / sqrt(n)` in `Sym(n, C)`, coordinates `B_ii` then
//!   `sqrt(2) B_ij` for `i < j`;
//! * `su-sp(n)`: `A J_n A^T / sqrt(2n)` in `so(2n, C)`, coordinates
//!   `sqrt(2) B_ij` for `i < j`.
//!
//! `sw(p,q)` is the Schoen–Wolfson curve in `C^2` and `clifford(n)` the cone
//! over the Legendrian Clifford torus `(e^{i theta_1}, ..., e^{i theta_n}) / sqrt(n)`
//! with `sum theta_j = 0`.

mod smoothing;
mod verify;

use std::f64::consts::SQRT_2;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_integer::Integer;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::cxmat::{ComplexSquareMatrix, CxError, RealFrame};
use crate::symplectic::{LoopTrace, SymplecticError};

pub use smoothing::{
    decay_rate_fit, smoothing_frame, smoothing_point, Branch, DecayFit, SmoothingFamily,
};
pub use verify::{
    clifford_surface, link_loop, moment_level_check, translation_moment_check, verify_cone,
    ConeVerdict, MomentReport, VerifyReport,
};

/// Largest matrix size accepted for the homogeneous families.
pub const MAX_GROUP_SIZE: usize = 8;

const FRAME_TOL: f64 = 1e-10;
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("invalid cone parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse cone id '{text}': {reason}")]
    Parse { text: String, reason: String },
    #[error("no solution of Im z^N = {t} with |z| = {r} on this branch")]
    NoBranchSolution { r: f64, t: f64 },
    #[error("need at least 5 radii spanning 2 decades, got {count} spanning {decades:.2}")]
    InsufficientRange { count: usize, decades: f64 },
    #[error("{0} is not special Lagrangian")]
    NotSpecialLagrangian(ConeSpec),
    #[error(transparent)]
    Linear(#[from] CxError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeSpec {
    /// `SU(n)` in `gl(n, C)`.
    Su(usize),
    /// `SU(n)/SO(n)` in `Sym(n, C)`.
    SuSo(usize),
    /// `SU(2n)/Sp(n)` in `so(2n, C)`.
    SuSp(usize),
    SchoenWolfson {
        p: u32,
        q: u32,
    },
    Clifford(usize),
}

impl fmt::Display for ConeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConeSpec::Su(n) => write!(f, "su({n})"),
            ConeSpec::SuSo(n) => write!(f, "su-so({n})"),
            ConeSpec::SuSp(n) => write!(f, "su-sp({n})"),
            ConeSpec::SchoenWolfson { p, q } => write!(f, "sw({p},{q})"),
            ConeSpec::Clifford(n) => write!(f, "clifford({n})"),
        }
    }
}

/// Point of the link's parameter space: a group element for the
/// homogeneous families, angles for the curve and the torus.
#[derive(Debug, Clone, PartialEq)]
pub enum LinkParameter {
    Group(ComplexSquareMatrix),
    Angles(Vec<f64>),
}

impl ConeSpec {
    pub fn su(n: usize) -> Result<Self, ConeError> {
        Self::Su(n).validated()
    }

    pub fn su_so(n: usize) -> Result<Self, ConeError> {
        Self::SuSo(n).validated()
    }

    pub fn su_sp(n: usize) -> Result<Self, ConeError> {
        Self::SuSp(n).validated()
    }

    pub fn schoen_wolfson(p: u32, q: u32) -> Result<Self, ConeError> {
        Self::SchoenWolfson { p, q }.validated()
    }

    pub fn clifford(n: usize) -> Result<Self, ConeError> {
        Self::Clifford(n).validated()
    }

    fn validated(self) -> Result<Self, ConeError> {
        let bad = |msg: String| Err(ConeError::InvalidParameter(msg));
        match self {
            ConeSpec::Su(n) | ConeSpec::SuSo(n) if !(2..=MAX_GROUP_SIZE).contains(&n) => {
                bad(format!("{self}: n must lie in 2..={MAX_GROUP_SIZE}"))
            }
            ConeSpec::SuSp(n) if !(2..=MAX_GROUP_SIZE / 2).contains(&n) => {
                bad(format!("{self}: n must lie in 2..={}", MAX_GROUP_SIZE / 2))
            }
            ConeSpec::Clifford(n) if !(2..=MAX_GROUP_SIZE).contains(&n) => {
                bad(format!("{self}: n must lie in 2..={MAX_GROUP_SIZE}"))
            }
            ConeSpec::SchoenWolfson { p, q } if p == 0 || q == 0 => {
                bad(format!("{self}: p and q must be positive"))
            }
            ConeSpec::SchoenWolfson { p, q } if p.gcd(&q) != 1 => {
                bad(format!("{self}: p and q must be coprime"))
            }
            _ => Ok(self),
        }
    }

    /// Parses `su(n)`, `su-so(n)`, `su-sp(n)`, `sw(p,q)` or `clifford(n)`.
    pub fn parse(text: &str) -> Result<Self, ConeError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| ConeError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let open = compact.find('(').ok_or_else(|| err("expected '('"))?;
        let inner = compact[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| err("expected ')' at the end"))?;
        let name = compact[..open].to_ascii_lowercase();
        let args = inner
            .split(',')
            .map(|s| {
                s.parse::<i64>()
                    .map_err(|_| err(&format!("'{s}' is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let one = |args: &[i64]| -> Result<usize, ConeError> {
            match args {
                [n] if *n >= 0 => Ok(*n as usize),
                [n] => Err(ConeError::InvalidParameter(format!(
                    "{name}({n}): n must be positive"
                ))),
                _ => Err(err("expected exactly one argument")),
            }
        };
        match name.as_str() {
            "su" => Self::su(one(&args)?),
            "su-so" => Self::su_so(one(&args)?),
            "su-sp" => Self::su_sp(one(&args)?),
            "clifford" => Self::clifford(one(&args)?),
            "sw" => match args[..] {
                [p, q] => {
                    let p = u32::try_from(p)
                        .map_err(|_| ConeError::InvalidParameter(format!("sw: p = {p}")))?;
                    let q = u32::try_from(q)
                        .map_err(|_| ConeError::InvalidParameter(format!("sw: q = {q}")))?;
                    Self::schoen_wolfson(p, q)
                }
                _ => Err(err("expected two arguments p,q")),
            },
            _ => Err(err(
                "unknown cone family; expected su, su-so, su-sp, sw or clifford",
            )),
        }
    }

    /// Complex dimension `N` of the ambient space, equal to the real dimension of the cone.
    pub fn ambient_dim(&self) -> usize {
        match *self {
            ConeSpec::Su(n) => n * n,
            ConeSpec::SuSo(n) => n * (n + 1) / 2,
            ConeSpec::SuSp(n) => n * (2 * n - 1),
            ConeSpec::SchoenWolfson { .. } => 2,
            ConeSpec::Clifford(n) => n,
        }
    }

    pub fn link_dim(&self) -> usize {
        self.ambient_dim() - 1
    }

    pub fn is_special_lagrangian(&self) -> bool {
        match *self {
            ConeSpec::SchoenWolfson { p, q } => p == q,
            _ => true,
        }
    }

    /// Size `m` of the matrices in the parameter group `SU(m)`.
    pub fn group_size(&self) -> Option<usize> {
        match *self {
            ConeSpec::Su(n) | ConeSpec::SuSo(n) => Some(n),
            ConeSpec::SuSp(n) => Some(2 * n),
            _ => None,
        }
    }

    /// Number of angles for the curve and torus links.
    pub fn angle_count(&self) -> Option<usize> {
        match *self {
            ConeSpec::SchoenWolfson { .. } => Some(1),
            ConeSpec::Clifford(n) => Some(n - 1),
            _ => None,
        }
    }

    pub fn advisory(&self) -> Option<String> {
        match *self {
            ConeSpec::Su(2) | ConeSpec::SuSo(2) => Some(format!(
                "{self}: the family is stated for n >= 3; n = 2 is computed but not part of it"
            )),
            _ => None,
        }
    }

    /// Catalog note on one-ended smoothings of the homogeneous cones.
    pub fn nonsmoothability_note(&self) -> Option<&'static str> {
        match self {
            ConeSpec::Su(_) | ConeSpec::SuSo(_) | ConeSpec::SuSp(_) => Some(
                "the ACSL smoothing problem with decay is not solvable for this cone: any ACSL smoothing \
                 with rate <= 0 is invariant under the symmetry group, and the only invariant SL \
                 submanifolds are the cone and its two-ended smoothings",
            ),
            _ => None,
        }
    }

    pub fn random_parameter<R: Rng + ?Sized>(&self, rng: &mut R) -> LinkParameter {
        match (self.group_size(), self.angle_count()) {
            (Some(m), _) => LinkParameter::Group(random_special_unitary(m, rng)),
            (_, Some(k)) => LinkParameter::Angles(
                (0..k)
                    .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
                    .collect(),
            ),
            _ => unreachable!("every cone has a group or angle parameter"),
        }
    }

    fn group_element<'a>(
        &self,
        param: &'a LinkParameter,
    ) -> Result<&'a DMatrix<Complex64>, ConeError> {
        let m = self.group_size().expect("homogeneous cone");
        match param {
            LinkParameter::Group(a) if a.n() == m && a.is_special_unitary(1e-9) => {
                Ok(a.as_matrix())
            }
            LinkParameter::Group(a) => Err(ConeError::InvalidParameter(format!(
                "{self} needs an element of SU({m}), got a {0}x{0} matrix",
                a.n()
            ))),
            LinkParameter::Angles(_) => Err(ConeError::InvalidParameter(format!(
                "{self} needs a group element"
            ))),
        }
    }

    fn angles<'a>(&self, param: &'a LinkParameter) -> Result<&'a [f64], ConeError> {
        let k = self.angle_count().expect("curve or torus cone");
        match param {
            LinkParameter::Angles(a) if a.len() == k && a.iter().all(|x| x.is_finite()) => Ok(a),
            _ => Err(ConeError::InvalidParameter(format!(
                "{self} needs {k} finite angle(s)"
            ))),
        }
    }

    /// Coordinates of an ambient matrix.
    fn embed(&self, b: &DMatrix<Complex64>) -> DVector<Complex64> {
        let s = Complex64::new(SQRT_2, 0.0);
        let m = b.nrows();
        match self {
            ConeSpec::Su(_) => {
                DVector::from_iterator(m * m, (0..m).flat_map(|i| (0..m).map(move |j| b[(i, j)])))
            }
            ConeSpec::SuSo(_) => {
                let mut v: Vec<Complex64> = (0..m).map(|i| b[(i, i)]).collect();
                for i in 0..m {
                    for j in i + 1..m {
                        v.push(b[(i, j)] * s);
                    }
                }
                DVector::from_vec(v)
            }
            ConeSpec::SuSp(_) => {
                let mut v = Vec::new();
                for i in 0..m {
                    for j in i + 1..m {
                        v.push(b[(i, j)] * s);
                    }
                }
                DVector::from_vec(v)
            }
            _ => unreachable!("only matrix cones are embedded"),
        }
    }

    /// Matrix with the given coordinates.
    fn unembed(&self, c: &DVector<Complex64>) -> DMatrix<Complex64> {
        let m = self.group_size().expect("homogeneous cone");
        let s = Complex64::new(1.0 / SQRT_2, 0.0);
        let mut b = DMatrix::zeros(m, m);
        match self {
            ConeSpec::Su(_) => {
                for i in 0..m {
                    for j in 0..m {
                        b[(i, j)] = c[i * m + j];
                    }
                }
            }
            ConeSpec::SuSo(_) => {
                for i in 0..m {
                    b[(i, i)] = c[i];
                }
                let mut k = m;
                for i in 0..m {
                    for j in i + 1..m {
                        b[(i, j)] = c[k] * s;
                        b[(j, i)] = c[k] * s;
                        k += 1;
                    }
                }
            }
            ConeSpec::SuSp(_) => {
                let mut k = 0;
                for i in 0..m {
                    for j in i + 1..m {
                        b[(i, j)] = c[k] * s;
                        b[(j, i)] = -c[k] * s;
                        k += 1;
                    }
                }
            }
            _ => unreachable!("only matrix cones are embedded"),
        }
        b
    }

    /// Value of the orbit map before embedding.
    fn orbit_matrix(&self, a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        match *self {
            ConeSpec::Su(n) => a * Complex64::new(1.0 / (n as f64).sqrt(), 0.0),
            ConeSpec::SuSo(n) => a * a.transpose() * Complex64::new(1.0 / (n as f64).sqrt(), 0.0),
            ConeSpec::SuSp(n) => {
                a * symplectic_j(n)
                    * a.transpose()
                    * Complex64::new(1.0 / ((2 * n) as f64).sqrt(), 0.0)
            }
            _ => unreachable!("only matrix cones have an orbit map"),
        }
    }

    /// Infinitesimal action of `x` in `su(m)` on the ambient matrix `b`.
    fn act(&self, x: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        match self {
            ConeSpec::Su(_) => x * b,
            _ => x * b + b * x.transpose(),
        }
    }

    /// Lie-algebra directions whose orbit derivatives span the link tangent space.
    fn complement_basis(&self) -> Vec<DMatrix<Complex64>> {
        match *self {
            ConeSpec::Su(n) => su_basis(n),
            ConeSpec::SuSo(n) => symmetric_traceless_basis(n)
                .into_iter()
                .map(|s| s * I)
                .collect(),
            ConeSpec::SuSp(n) => sp_complement_basis(n),
            _ => Vec::new(),
        }
    }
}

/// `J_n = [[0, -I], [I, 0]]`.
pub fn symplectic_j(n: usize) -> DMatrix<Complex64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(k, n + k)] = Complex64::new(-1.0, 0.0);
        j[(n + k, k)] = Complex64::new(1.0, 0.0);
    }
    j
}

/// Basis of `su(m)`: `i(E_kk - E_{k+1,k+1})`, `E_jk - E_kj`, `i(E_jk + E_kj)`.
pub fn su_basis(m: usize) -> Vec<DMatrix<Complex64>> {
    let mut out = Vec::with_capacity(m * m - 1);
    for k in 0..m - 1 {
        let mut x = DMatrix::zeros(m, m);
        x[(k, k)] = I;
        x[(k + 1, k + 1)] = -I;
        out.push(x);
    }
    for j in 0..m {
        for k in j + 1..m {
            let mut x = DMatrix::zeros(m, m);
            x[(j, k)] = Complex64::new(1.0, 0.0);
            x[(k, j)] = Complex64::new(-1.0, 0.0);
            out.push(x);
            let mut y = DMatrix::zeros(m, m);
            y[(j, k)] = I;
            y[(k, j)] = I;
            out.push(y);
        }
    }
    out
}

/// Basis of real symmetric traceless matrices.
fn symmetric_traceless_basis(m: usize) -> Vec<DMatrix<Complex64>> {
    let one = Complex64::new(1.0, 0.0);
    let mut out = Vec::new();
    for k in 0..m - 1 {
        let mut s = DMatrix::zeros(m, m);
        s[(k, k)] = one;
        s[(k + 1, k + 1)] = -one;
        out.push(s);
    }
    for j in 0..m {
        for k in j + 1..m {
            let mut s = DMatrix::zeros(m, m);
            s[(j, k)] = one;
            s[(k, j)] = one;
            out.push(s);
        }
    }
    out
}

/// Orthonormal basis of the `-1` eigenspace of `X -> J X^T J` on `su(2n)`,
/// the complement of `sp(n)`.
fn sp_complement_basis(n: usize) -> Vec<DMatrix<Complex64>> {
    let j = symplectic_j(n);
    let mut out: Vec<DMatrix<Complex64>> = Vec::new();
    for y in su_basis(2 * n) {
        let mut x = (&y - &j * y.transpose() * &j) * Complex64::new(0.5, 0.0);
        for _ in 0..2 {
            for u in &out {
                let c = matrix_inner(u, &x);
                x -= u * Complex64::new(c, 0.0);
            }
        }
        let norm = matrix_inner(&x, &x).sqrt();
        if norm > 1e-9 {
            out.push(x / Complex64::new(norm, 0.0));
        }
    }
    out
}

/// `Re Tr(A B^*)`.
fn matrix_inner(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x * y.conj()).re).sum()
}

/// Haar-like random element of `SU(m)`: unitary part of a complex Gaussian
/// matrix with the first column divided by the determinant.
pub fn random_special_unitary<R: Rng + ?Sized>(m: usize, rng: &mut R) -> ComplexSquareMatrix {
    loop {
        let g = DMatrix::from_fn(m, m, |_, _| {
            Complex64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        });
        let Ok(g) = ComplexSquareMatrix::new(g) else {
            continue;
        };
        let Ok(u) = g.unitary_part() else { continue };
        let det = u.determinant();
        let mut inner = u.into_inner();
        for i in 0..m {
            inner[(i, 0)] /= det;
        }
        if let Ok(a) = ComplexSquareMatrix::new(inner) {
            return a;
        }
    }
}

/// Point of the link in `C^N` (unit length).
pub fn sample_link_point(
    cone: &ConeSpec,
    param: &LinkParameter,
) -> Result<DVector<Complex64>, ConeError> {
    match *cone {
        ConeSpec::SchoenWolfson { p, q } => {
            let t = cone.angles(param)?[0];
            Ok(sw_point(p, q, t))
        }
        ConeSpec::Clifford(n) => Ok(clifford_point(n, cone.angles(param)?)),
        _ => {
            let a = cone.group_element(param)?;
            Ok(cone.embed(&cone.orbit_matrix(a)))
        }
    }
}

fn sw_point(p: u32, q: u32, t: f64) -> DVector<Complex64> {
    let (p, q) = (f64::from(p), f64::from(q));
    let s = (p + q).sqrt();
    DVector::from_column_slice(&[
        Complex64::from_polar(q.sqrt() / s, p * t),
        I * Complex64::from_polar(p.sqrt() / s, -q * t),
    ])
}

fn sw_velocity(p: u32, q: u32, t: f64) -> DVector<Complex64> {
    let (p, q) = (f64::from(p), f64::from(q));
    let s = (p + q).sqrt();
    DVector::from_column_slice(&[
        I * p * Complex64::from_polar(q.sqrt() / s, p * t),
        q * Complex64::from_polar(p.sqrt() / s, -q * t),
    ])
}

fn clifford_angles(n: usize, angles: &[f64]) -> Vec<f64> {
    let mut all = angles.to_vec();
    all.push(-angles.iter().sum::<f64>());
    debug_assert_eq!(all.len(), n);
    all
}

fn clifford_point(n: usize, angles: &[f64]) -> DVector<Complex64> {
    let r = 1.0 / (n as f64).sqrt();
    DVector::from_iterator(
        n,
        clifford_angles(n, angles)
            .into_iter()
            .map(|t| Complex64::from_polar(r, t)),
    )
}

/// `d/d theta_j` of the Clifford torus point, `j < n - 1`.
fn clifford_partials(n: usize, angles: &[f64]) -> Vec<DVector<Complex64>> {
    let z = clifford_point(n, angles);
    (0..n - 1)
        .map(|j| {
            let mut v = DVector::zeros(n);
            v[j] = I * z[j];
            v[n - 1] = -I * z[n - 1];
            v
        })
        .collect()
}

/// Tangent vectors of the link (not orthonormalized), in a fixed order.
pub fn link_tangents(
    cone: &ConeSpec,
    param: &LinkParameter,
) -> Result<Vec<DVector<Complex64>>, ConeError> {
    match *cone {
        ConeSpec::SchoenWolfson { p, q } => Ok(vec![sw_velocity(p, q, cone.angles(param)?[0])]),
        ConeSpec::Clifford(n) => Ok(clifford_partials(n, cone.angles(param)?)),
        _ => {
            let a = cone.group_element(param)?;
            Ok(cone
                .complement_basis()
                .iter()
                .map(|x| match cone {
                    ConeSpec::Su(_) => cone.embed(&cone.orbit_matrix(&(x * a))),
                    _ => {
                        // d/dt phi(A exp(tX)) = A (X M + M X^T) A^T / c for phi(A) = A M A^T / c.
                        let phi_id = cone.orbit_matrix(&DMatrix::identity(a.nrows(), a.ncols()));
                        cone.embed(&(a * (x * &phi_id + &phi_id * x.transpose()) * a.transpose()))
                    }
                })
                .collect())
        }
    }
}

/// Orthonormal frame of the cone's tangent space at the link point:
/// orbit directions first, radial direction last.
pub fn tangent_frame(cone: &ConeSpec, param: &LinkParameter) -> Result<RealFrame, ConeError> {
    let n = cone.ambient_dim();
    let mut vectors = link_tangents(cone, param)?;
    vectors.push(sample_link_point(cone, param)?);
    let frame = RealFrame::from_complex(n, vectors)?;
    if frame.len() != n {
        return Err(CxError::DegenerateFrame {
            rank: frame.len(),
            expected: n,
        }
        .into());
    }
    Ok(frame.orthonormalize(FRAME_TOL)?)
}

/// The symmetry algebra acting linearly on `C^N`, as antihermitian traceless
/// `N x N` matrices.
pub fn symmetry_generators(cone: &ConeSpec) -> Vec<(String, ComplexSquareMatrix)> {
    let n = cone.ambient_dim();
    let wrap =
        |m: DMatrix<Complex64>| ComplexSquareMatrix::new(m).expect("finite square generator");
    match *cone {
        ConeSpec::SchoenWolfson { p, q } if p == q => {
            let m = DMatrix::from_diagonal(&DVector::from_column_slice(&[I, -I]));
            vec![("diag(i,-i)".into(), wrap(m))]
        }
        ConeSpec::SchoenWolfson { .. } => Vec::new(),
        ConeSpec::Clifford(_) => (0..n - 1)
            .map(|j| {
                let mut m = DMatrix::zeros(n, n);
                m[(j, j)] = I;
                m[(n - 1, n - 1)] = -I;
                (format!("i(E{0}{0}-E{1}{1})", j + 1, n), wrap(m))
            })
            .collect(),
        _ => su_basis(cone.group_size().expect("homogeneous cone"))
            .into_iter()
            .enumerate()
            .map(|(k, x)| {
                let cols: Vec<DVector<Complex64>> = (0..n)
                    .map(|j| {
                        let mut e = DVector::zeros(n);
                        e[j] = Complex64::new(1.0, 0.0);
                        cone.embed(&cone.act(&x, &cone.unembed(&e)))
                    })
                    .collect();
                (format!("X{}", k + 1), wrap(DMatrix::from_columns(&cols)))
            })
            .collect(),
    }
}

/// Loop in the link through `base`, closing after `2 pi`.
fn loop_parameter(
    cone: &ConeSpec,
    base: &LinkParameter,
    theta: f64,
) -> Result<LinkParameter, ConeError> {
    match base {
        LinkParameter::Angles(a) => {
            let mut a = a.clone();
            a[0] += theta;
            Ok(LinkParameter::Angles(a))
        }
        LinkParameter::Group(g) => {
            let m = cone.group_size().expect("homogeneous cone");
            let mut d = vec![Complex64::new(1.0, 0.0); m];
            d[0] = Complex64::from_polar(1.0, theta);
            d[1] = Complex64::from_polar(1.0, -theta);
            Ok(LinkParameter::Group(
                g * &ComplexSquareMatrix::from_diagonal(&d)?,
            ))
        }
    }
}

/// Samples the link loop through `base` with `m` intervals.
pub fn sample_link_loop(
    cone: &ConeSpec,
    base: &LinkParameter,
    m: usize,
) -> Result<LoopTrace, ConeError> {
    let mut failure = None;
    let trace = LoopTrace::sample(m, |theta| {
        let built = loop_parameter(cone, base, theta)
            .and_then(|p| Ok((sample_link_point(cone, &p)?, tangent_frame(cone, &p)?)));
        built.map_err(|e| {
            failure = Some(e.clone());
            SymplecticError::NotClosed { gap: f64::NAN }
        })
    });
    match (trace, failure) {
        (_, Some(e)) => Err(e),
        (t, None) => Ok(t?),
    }
}
