//! Decision procedure for the prescribed boundary problem of exact
//! Lagrangian immersions, driven by user-supplied topological data.
//!
//! The input is the boundary data `f` of an exact Lagrangian collar of
//! `Sigma = dL` in `C^n`: its Maslov class `mu_f` in `H^1(Sigma)`, and for
//! `n = 4, 5` the pulled-back generator `theta_f` in `H^3(Sigma)`. A
//! compatible trivialization exists if and only if these classes come from
//! `L` under restriction; from `n = 6` on further obstructions appear and
//! the engine answers `Undecided`.

mod schema;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::intalg::{FgAbelianGroup, GroupHom, IntalgError};

pub use schema::{parse_instance, InstanceDocument, SchemaError, SCHEMA_VERSION};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObstructionError {
    #[error("boundary data is not exact")]
    NotExact,
    #[error("L is not orientable; only oriented fillings are supported")]
    NotOrientable,
    #[error("missing field {0}")]
    MissingField(&'static str),
    #[error("complex dimension n = {0} is below 2")]
    DimensionTooSmall(usize),
    #[error("{field}: {source}")]
    Algebra {
        field: &'static str,
        #[source]
        source: IntalgError,
    },
    #[error("{0}")]
    Inconsistent(String),
}

fn algebra(field: &'static str) -> impl Fn(IntalgError) -> ObstructionError {
    move |source| ObstructionError::Algebra { field, source }
}

/// Topological data of one instance. Group elements are integer vectors in
/// torsion-first generator coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PbpInstance {
    pub n: usize,
    pub sigma_connected: bool,
    pub l_orientable: bool,
    pub exact_data: bool,
    pub h1_l: FgAbelianGroup,
    pub h1_sigma: FgAbelianGroup,
    pub h3_l: Option<FgAbelianGroup>,
    pub h3_sigma: Option<FgAbelianGroup>,
    /// Restriction `H^1(L) -> H^1(Sigma)`.
    pub i1: GroupHom,
    /// Restriction `H^3(L) -> H^3(Sigma)`.
    pub i3: Option<GroupHom>,
    pub maslov_class: Vec<i64>,
    pub su_class: Option<Vec<i64>>,
    /// `H^1(L, Sigma; Z)`.
    pub h1_rel: Option<FgAbelianGroup>,
    pub b1_sigma: Option<usize>,
}

impl PbpInstance {
    /// Instance with the given `H^1` data; the remaining flags default to an
    /// exact, orientable filling with connected boundary.
    pub fn new(n: usize, i1: GroupHom, maslov_class: Vec<i64>) -> Self {
        Self {
            n,
            sigma_connected: true,
            l_orientable: true,
            exact_data: true,
            h1_l: i1.domain().clone(),
            h1_sigma: i1.codomain().clone(),
            h3_l: None,
            h3_sigma: None,
            i1,
            i3: None,
            maslov_class,
            su_class: None,
            h1_rel: None,
            b1_sigma: None,
        }
    }

    /// The disk `(D^n, S^{n-1})` with Maslov class `mu` (meaningful for `n = 2`).
    pub fn disk(n: usize, mu: i64) -> Self {
        let h1_sigma = if n == 2 {
            FgAbelianGroup::free(1)
        } else {
            FgAbelianGroup::trivial()
        };
        let i1 = GroupHom::zero(FgAbelianGroup::trivial(), h1_sigma);
        let mut inst = Self::new(n, i1, if n == 2 { vec![mu] } else { Vec::new() });
        if n == 4 || n == 5 {
            let h3_sigma = if n == 4 {
                FgAbelianGroup::free(1)
            } else {
                FgAbelianGroup::trivial()
            };
            inst.h3_l = Some(FgAbelianGroup::trivial());
            inst.i3 = Some(GroupHom::zero(FgAbelianGroup::trivial(), h3_sigma.clone()));
            inst.su_class = Some(vec![0; h3_sigma.num_generators()]);
            inst.h3_sigma = Some(h3_sigma);
        }
        inst.h1_rel = Some(FgAbelianGroup::trivial());
        inst.b1_sigma = Some(usize::from(n == 2));
        inst
    }

    pub fn with_su_data(mut self, i3: GroupHom, su_class: Vec<i64>) -> Self {
        self.h3_l = Some(i3.domain().clone());
        self.h3_sigma = Some(i3.codomain().clone());
        self.i3 = Some(i3);
        self.su_class = Some(su_class);
        self
    }

    /// Structural checks: shapes of `i1`/`i3` against the groups, element lengths.
    pub fn check(&self) -> Result<(), ObstructionError> {
        if self.n < 2 {
            return Err(ObstructionError::DimensionTooSmall(self.n));
        }
        if self.i1.domain() != &self.h1_l || self.i1.codomain() != &self.h1_sigma {
            return Err(ObstructionError::Inconsistent(
                "i1 must map h1_L to h1_Sigma".into(),
            ));
        }
        self.h1_sigma
            .check_element(&self.maslov_class)
            .map_err(algebra("maslov_class"))?;
        if let Some(i3) = &self.i3 {
            if Some(i3.domain()) != self.h3_l.as_ref()
                || Some(i3.codomain()) != self.h3_sigma.as_ref()
            {
                return Err(ObstructionError::Inconsistent(
                    "i3 must map h3_L to h3_Sigma".into(),
                ));
            }
        }
        if let (Some(theta), Some(h3)) = (&self.su_class, &self.h3_sigma) {
            h3.check_element(theta).map_err(algebra("su_class"))?;
        }
        Ok(())
    }

    pub fn maslov_is_zero(&self) -> bool {
        let mu: Vec<BigInt> = self.maslov_class.iter().map(|&v| BigInt::from(v)).collect();
        self.h1_sigma.is_zero_element(&mu)
    }
}

/// Which condition of the decision procedure failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCondition {
    /// `mu_f` is not in the image of `i1`.
    Maslov,
    /// `n = 2` with connected boundary: `mu_f` must vanish.
    MaslovNonzeroConnectedBoundary,
    /// `theta_f` is not in the image of `i3`.
    SpecialUnitary,
    /// `n = 4` with connected boundary and orientable `L`: `theta_f` must vanish.
    SuClassNonzeroConnectedBoundary,
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailedCondition::Maslov => "Maslov class not in the image of H^1(L) -> H^1(Sigma)",
            FailedCondition::MaslovNonzeroConnectedBoundary => {
                "Maslov class must vanish for connected boundary"
            }
            FailedCondition::SpecialUnitary => "SU class not in the image of H^3(L) -> H^3(Sigma)",
            FailedCondition::SuClassNonzeroConnectedBoundary => {
                "SU class must vanish for connected boundary"
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PbpVerdict {
    Solvable { maslov_zero_possible: bool },
    Unsolvable { failed: FailedCondition },
    Undecided { reason: String },
}

impl PbpVerdict {
    /// CLI exit code: 0 solvable, 3 unsolvable, 4 undecided.
    pub fn exit_code(&self) -> i32 {
        match self {
            PbpVerdict::Solvable { .. } => 0,
            PbpVerdict::Unsolvable { .. } => 3,
            PbpVerdict::Undecided { .. } => 4,
        }
    }

    pub fn is_solvable(&self) -> bool {
        matches!(self, PbpVerdict::Solvable { .. })
    }
}

impl fmt::Display for PbpVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbpVerdict::Solvable {
                maslov_zero_possible,
            } => {
                write!(
                    f,
                    "Solvable (Maslov-zero solution possible: {maslov_zero_possible})"
                )
            }
            PbpVerdict::Unsolvable { failed } => write!(f, "Unsolvable: {failed}"),
            PbpVerdict::Undecided { reason } => write!(f, "Undecided: {reason}"),
        }
    }
}

/// Whether the connected-boundary refinements for `n = 2` and `n = 4` apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rules {
    pub connected_boundary: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Self {
            connected_boundary: true,
        }
    }
}

pub const HIGHER_OBSTRUCTIONS: &str =
    "n >= 6: there are further obstructions beyond the Maslov and SU classes; no decision is attempted";

/// Decides the instance with the connected-boundary refinements active.
pub fn decide_pbp(inst: &PbpInstance) -> Result<PbpVerdict, ObstructionError> {
    decide_pbp_with(inst, Rules::default())
}

pub fn decide_pbp_with(inst: &PbpInstance, rules: Rules) -> Result<PbpVerdict, ObstructionError> {
    if !inst.exact_data {
        return Err(ObstructionError::NotExact);
    }
    if !inst.l_orientable {
        return Err(ObstructionError::NotOrientable);
    }
    inst.check()?;
    if inst.n >= 6 {
        return Ok(PbpVerdict::Undecided {
            reason: HIGHER_OBSTRUCTIONS.into(),
        });
    }
    let solvable = PbpVerdict::Solvable {
        maslov_zero_possible: inst.maslov_is_zero(),
    };
    let unsolvable = |failed| Ok(PbpVerdict::Unsolvable { failed });

    if !inst
        .i1
        .in_image(&inst.maslov_class)
        .map_err(algebra("maslov_class"))?
    {
        return unsolvable(FailedCondition::Maslov);
    }
    if inst.n == 2 && rules.connected_boundary && inst.sigma_connected && !inst.maslov_is_zero() {
        return unsolvable(FailedCondition::MaslovNonzeroConnectedBoundary);
    }
    if inst.n <= 3 {
        return Ok(solvable);
    }

    let i3 = inst
        .i3
        .as_ref()
        .ok_or(ObstructionError::MissingField("i3"))?;
    let theta = inst
        .su_class
        .as_ref()
        .ok_or(ObstructionError::MissingField("su_class"))?;
    if !i3.in_image(theta).map_err(algebra("su_class"))? {
        return unsolvable(FailedCondition::SpecialUnitary);
    }
    if inst.n == 4 && rules.connected_boundary && inst.sigma_connected {
        let theta: Vec<BigInt> = theta.iter().map(|&v| BigInt::from(v)).collect();
        if !i3.codomain().is_zero_element(&theta) {
            return unsolvable(FailedCondition::SuClassNonzeroConnectedBoundary);
        }
    }
    Ok(solvable)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiskVerdict {
    /// `n` odd: `pi_{n-1}(U(n)) = 0`, every disk instance is solvable.
    AlwaysSolvable,
    /// `n = 2`: solvable iff the Maslov class of the boundary loop is zero.
    ConditionalOnMaslov,
    /// `n` even `>= 4`: solvable iff a class in `pi_{n-1}(U(n)) = Z` vanishes.
    ConditionalOnIntegerClass,
}

impl fmt::Display for DiskVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiskVerdict::AlwaysSolvable => "AlwaysSolvable",
            DiskVerdict::ConditionalOnMaslov => "ConditionalOnMaslov",
            DiskVerdict::ConditionalOnIntegerClass => {
                "ConditionalOnIntegerClass (pi_{n-1}(U(n)) = Z)"
            }
        })
    }
}

/// The disk case `(D^n, S^{n-1}, f)`.
pub fn decide_disk(n: usize) -> Result<DiskVerdict, ObstructionError> {
    match n {
        0 | 1 => Err(ObstructionError::DimensionTooSmall(n)),
        2 => Ok(DiskVerdict::ConditionalOnMaslov),
        n if n % 2 == 1 => Ok(DiskVerdict::AlwaysSolvable),
        _ => Ok(DiskVerdict::ConditionalOnIntegerClass),
    }
}

/// The group parameterizing compatible trivializations of a solvable
/// instance: `H^1(L, Sigma)` plus `0` for `n = 2` or `Z` for `n = 3`.
pub fn count_extensions(inst: &PbpInstance) -> Result<FgAbelianGroup, ObstructionError> {
    let h1_rel = inst
        .h1_rel
        .as_ref()
        .ok_or(ObstructionError::MissingField("h1_rel"))?;
    let su_part = match inst.n {
        2 => FgAbelianGroup::trivial(),
        3 => FgAbelianGroup::free(1),
        n => {
            return Err(ObstructionError::Inconsistent(format!(
                "extension count is only available for n = 2, 3, got {n}"
            )))
        }
    };
    if !decide_pbp(inst)?.is_solvable() {
        return Err(ObstructionError::Inconsistent(
            "instance is not solvable".into(),
        ));
    }
    h1_rel.direct_sum(&su_part).map_err(algebra("h1_rel"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Warning(String),
    Note(String),
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validation::Warning(s) => write!(f, "warning: {s}"),
            Validation::Note(s) => write!(f, "note: {s}"),
        }
    }
}

/// Consistency warnings and notes on which refinements are active.
pub fn validate_instance(inst: &PbpInstance) -> Vec<Validation> {
    let mut out = Vec::new();
    if let Err(e) = inst.check() {
        out.push(Validation::Warning(format!("malformed instance: {e}")));
    }
    if !inst.exact_data {
        out.push(Validation::Warning(
            "boundary data is not exact; decide will refuse it".into(),
        ));
    }
    if !inst.l_orientable {
        out.push(Validation::Warning(
            "L is not orientable; decide will refuse it".into(),
        ));
    }
    if let (3, true, Some(b1)) = (inst.n, inst.sigma_connected, inst.b1_sigma) {
        let rank = inst.h1_l.rank();
        if 2 * rank < b1 {
            out.push(Validation::Warning(format!(
                "inconsistent data: rank H^1(L) = {rank} < b1(Sigma)/2 = {}; a 3-manifold bounding Sigma has rank at least half of b1(Sigma)",
                b1 as f64 / 2.0
            )));
        }
    }
    if let Some(b1) = inst.b1_sigma {
        if b1 != inst.h1_sigma.rank() {
            out.push(Validation::Warning(format!(
                "b1_Sigma = {b1} differs from rank h1_Sigma = {}",
                inst.h1_sigma.rank()
            )));
        }
    }
    if inst.l_orientable && inst.sigma_connected {
        match inst.n {
            2 => out.push(Validation::Note(
                "orientable L with connected boundary: delta* is an isomorphism, Maslov class must vanish".into(),
            )),
            4 => out.push(Validation::Note(
                "orientable L with connected boundary: delta* is an isomorphism, SU class must vanish".into(),
            )),
            _ => {}
        }
    }
    if inst.n >= 6 {
        out.push(Validation::Note(HIGHER_OBSTRUCTIONS.into()));
    }
    out
}

/// An isolated singular point of an exact Lagrangian, described by its
/// link `Sigma_i` and the local filling data.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityModel {
    pub label: String,
    pub link: PbpInstance,
    pub local_exact: bool,
    pub local_maslov_zero: bool,
    pub link_connected: bool,
    pub is_sl: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesingularizationVerdict {
    MaslovZeroDesingularizationExists,
    DesingularizationExists,
    Unsolvable {
        label: String,
        failed: FailedCondition,
    },
    Undecided {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesingularizationReport {
    pub per_model: Vec<(String, PbpVerdict)>,
    pub aggregate: DesingularizationVerdict,
    pub notes: Vec<String>,
}

pub const AC_EXACTNESS_NOTE: &str =
    "initial data coming from an asymptotically conical end with rate lambda < 0 is automatically exact";

/// Per-singularity verdicts and whether the whole configuration can be
/// smoothed by exact Lagrangians with zero Maslov class.
pub fn desingularization_advisor(
    models: &[SingularityModel],
    n: usize,
) -> Result<DesingularizationReport, ObstructionError> {
    let notes = vec![AC_EXACTNESS_NOTE.to_string()];
    if models.iter().any(|m| !m.local_exact || !m.link.exact_data) {
        return Err(ObstructionError::NotExact);
    }
    if n >= 4 {
        return Ok(DesingularizationReport {
            per_model: Vec::new(),
            aggregate: DesingularizationVerdict::Undecided {
                reason: format!("n = {n}: requires theta (H^3) data for each link"),
            },
            notes,
        });
    }
    if n < 2 {
        return Err(ObstructionError::DimensionTooSmall(n));
    }
    let mut per_model = Vec::with_capacity(models.len());
    let mut failure = None;
    for m in models {
        if m.link.n != n {
            return Err(ObstructionError::Inconsistent(format!(
                "model {} has n = {}, expected {n}",
                m.label, m.link.n
            )));
        }
        let verdict = decide_pbp(&m.link)?;
        if let (None, PbpVerdict::Unsolvable { failed }) = (&failure, &verdict) {
            failure = Some(DesingularizationVerdict::Unsolvable {
                label: m.label.clone(),
                failed: *failed,
            });
        }
        per_model.push((m.label.clone(), verdict));
    }
    let aggregate = failure.unwrap_or_else(|| {
        if models
            .iter()
            .all(|m| (m.link_connected || m.is_sl) && m.local_maslov_zero)
        {
            DesingularizationVerdict::MaslovZeroDesingularizationExists
        } else {
            DesingularizationVerdict::DesingularizationExists
        }
    });
    Ok(DesingularizationReport {
        per_model,
        aggregate,
        notes,
    })
}
