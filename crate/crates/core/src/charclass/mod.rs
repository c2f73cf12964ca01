//! Characteristic classes and numbers of catalog manifolds.
//!
//! Expressions such as `"CP(2) + -CP(2)"` or `"RP(3) * S(1)"` are parsed into
//! a [`ManifoldExpr`], flattened into signed products of atoms, and evaluated
//! either in a truncated cohomology ring or from a quoted table of numbers.
//! On top of that sit the cobordism test (all Stiefel–Whitney and Pontrjagin
//! numbers vanish), the Lagrangian immersion tests `w^2 = 1` and `p = 1`, and
//! the Euler characteristic test for Lagrangian embeddings.

mod catalog;
mod graded;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use catalog::{class_data, product_ring, ClassData, CohomologyModel, NumberTable, RingModel};
pub use graded::{Coefficients, Generator, GradedClass};
pub use parse::{parse_manifold_expr, Atom, Component, ManifoldExpr, MAX_PARAMETER};

/// Upper bound on the number of monomials enumerated for one table.
pub const MAX_MONOMIALS: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharclassError {
    #[error("parse error at byte {pos}: expected {}, found {found}", expected.join(" or "))]
    Parse {
        pos: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown atom '{name}' at byte {pos}")]
    UnknownAtom { pos: usize, name: String },
    #[error("'+' at byte {pos} joins manifolds of dimension {left} and {right}")]
    DimensionMismatch { pos: usize, left: u32, right: u32 },
    #[error("{0} has no cohomology ring model, only quoted characteristic numbers")]
    NoRingModel(Atom),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0} is not orientable")]
    NonOrientable(String),
}

impl CharclassError {
    /// Byte offset into the source text, for errors raised by the parser.
    pub fn position(&self) -> Option<usize> {
        match self {
            CharclassError::Parse { pos, .. }
            | CharclassError::UnknownAtom { pos, .. }
            | CharclassError::DimensionMismatch { pos, .. } => Some(*pos),
            _ => None,
        }
    }

    /// The source line with a caret under the offending byte.
    pub fn caret_diagnostic(&self, source: &str) -> String {
        match self.position() {
            Some(pos) => {
                let col = source[..pos.min(source.len())].chars().count();
                format!("{source}\n{}^\n{self}", " ".repeat(col))
            }
            None => self.to_string(),
        }
    }
}

fn orientable(c: &Component) -> bool {
    c.atoms.iter().all(|a| class_data(*a).orientable)
}

fn stably_parallelizable_factor(c: &Component) -> bool {
    c.atoms.iter().any(|a| class_data(*a).stably_parallelizable)
}

/// Total Stiefel–Whitney class of each connected product in `e`.
pub fn total_sw_class(e: &ManifoldExpr) -> Result<Vec<GradedClass>, CharclassError> {
    e.components()
        .iter()
        .map(|c| component_ring(c).map(|r| r.sw))
        .collect()
}

fn component_ring(c: &Component) -> Result<RingModel, CharclassError> {
    product_ring(&c.atoms).ok_or_else(|| {
        let atom = c
            .atoms
            .iter()
            .copied()
            .find(|a| matches!(class_data(*a).model, CohomologyModel::Table(_)));
        CharclassError::NoRingModel(atom.unwrap_or(Atom::Point))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumberKind {
    StiefelWhitney,
    Pontrjagin,
}

/// Characteristic numbers indexed by monomials `w_{i_1}...w_{i_k}` (or
/// `p_{i_1}...p_{i_k}`), stored as the ascending index list. Only nonzero
/// values are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharNumbers {
    pub kind: NumberKind,
    pub dimension: u32,
    pub nonzero: BTreeMap<Vec<u32>, BigInt>,
}

impl CharNumbers {
    fn empty(kind: NumberKind, dimension: u32) -> Self {
        Self {
            kind,
            dimension,
            nonzero: BTreeMap::new(),
        }
    }

    pub fn get(&self, monomial: &[u32]) -> BigInt {
        let mut key = monomial.to_vec();
        key.sort_unstable();
        self.nonzero.get(&key).cloned().unwrap_or_default()
    }

    pub fn all_zero(&self) -> bool {
        self.nonzero.is_empty()
    }

    pub fn monomial_name(&self, monomial: &[u32]) -> String {
        monomial_name(self.kind, monomial)
    }

    fn accumulate(&mut self, key: Vec<u32>, value: BigInt) {
        let mut total = self.nonzero.remove(&key).unwrap_or_default() + value;
        if self.kind == NumberKind::StiefelWhitney {
            total = total.mod_floor(&BigInt::from(2));
        }
        if !total.is_zero() {
            self.nonzero.insert(key, total);
        }
    }
}

impl fmt::Display for CharNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nonzero.is_empty() {
            return write!(f, "all zero");
        }
        let parts: Vec<String> = self
            .nonzero
            .iter()
            .map(|(k, v)| format!("{} = {v}", self.monomial_name(k)))
            .collect();
        write!(f, "{} (all others zero)", parts.join(", "))
    }
}

pub fn monomial_name(kind: NumberKind, monomial: &[u32]) -> String {
    if monomial.is_empty() {
        return "#points".into();
    }
    let letter = match kind {
        NumberKind::StiefelWhitney => "w",
        NumberKind::Pontrjagin => "p",
    };
    let mut out = String::new();
    let mut i = 0;
    while i < monomial.len() {
        let j = monomial[i..]
            .iter()
            .take_while(|&&m| m == monomial[i])
            .count();
        out.push_str(&format!("{letter}{}", monomial[i]));
        if j > 1 {
            out.push_str(&format!("^{j}"));
        }
        i += j;
    }
    out
}

/// Pairs every monomial in the homogeneous parts of `class` against the
/// fundamental class. Part `i` has degree `step * i`.
fn numbers_from_class(
    class: &GradedClass,
    kind: NumberKind,
    dimension: u32,
    step: u32,
) -> Result<CharNumbers, CharclassError> {
    let target = dimension / step;
    let parts: Vec<(u32, GradedClass)> = (1..=target)
        .map(|i| (i, class.homogeneous(i * step)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let mut out = CharNumbers::empty(kind, dimension);
    let unit = class.homogeneous(0);
    let mut visited = 0usize;
    let mut stack: Vec<u32> = Vec::new();
    dfs(&parts, 0, target, &unit, &mut stack, &mut out, &mut visited)?;
    Ok(out)
}

fn dfs(
    parts: &[(u32, GradedClass)],
    from: usize,
    remaining: u32,
    acc: &GradedClass,
    stack: &mut Vec<u32>,
    out: &mut CharNumbers,
    visited: &mut usize,
) -> Result<(), CharclassError> {
    *visited += 1;
    if *visited > MAX_MONOMIALS {
        return Err(CharclassError::Unsupported(format!(
            "more than {MAX_MONOMIALS} monomials to evaluate"
        )));
    }
    if remaining == 0 {
        out.accumulate(stack.clone(), acc.evaluate());
        return Ok(());
    }
    for (k, (i, part)) in parts.iter().enumerate().skip(from) {
        if *i > remaining {
            break;
        }
        let next = acc.mul(part);
        if next.is_zero() {
            continue;
        }
        stack.push(*i);
        dfs(parts, k, remaining - i, &next, stack, out, visited)?;
        stack.pop();
    }
    Ok(())
}

/// Stiefel–Whitney numbers; disjoint unions add componentwise mod 2.
pub fn sw_numbers(e: &ManifoldExpr) -> Result<CharNumbers, CharclassError> {
    let dim = e.dimension();
    let mut total = CharNumbers::empty(NumberKind::StiefelWhitney, dim);
    for c in e.components() {
        for (k, v) in component_sw_numbers(&c)?.nonzero {
            total.accumulate(k, v);
        }
    }
    Ok(total)
}

fn single_table(c: &Component) -> Option<NumberTable> {
    match c.atoms.as_slice() {
        [atom] => match class_data(*atom).model {
            CohomologyModel::Table(t) => Some(t),
            CohomologyModel::Ring(_) => None,
        },
        _ => None,
    }
}

fn component_sw_numbers(c: &Component) -> Result<CharNumbers, CharclassError> {
    let dim = c.dimension();
    if let Some(t) = single_table(c) {
        let mut out = CharNumbers::empty(NumberKind::StiefelWhitney, dim);
        for (k, v) in t.sw {
            out.accumulate(k, BigInt::from(v));
        }
        return Ok(out);
    }
    let r = component_ring(c)?;
    numbers_from_class(&r.sw, NumberKind::StiefelWhitney, dim, 1)
}

/// Pontrjagin numbers; orientation reversal negates them.
pub fn pontrjagin_numbers(e: &ManifoldExpr) -> Result<CharNumbers, CharclassError> {
    let dim = e.dimension();
    if !dim.is_multiple_of(4) {
        return Err(CharclassError::Unsupported(format!(
            "Pontrjagin numbers need dimension divisible by 4, got {dim}"
        )));
    }
    let mut total = CharNumbers::empty(NumberKind::Pontrjagin, dim);
    for c in e.components() {
        if !orientable(&c) {
            return Err(CharclassError::Unsupported(format!(
                "{c} is not orientable"
            )));
        }
        let sign = if c.reversed {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for (k, v) in component_pontrjagin_numbers(&c)?.nonzero {
            total.accumulate(k, v * &sign);
        }
    }
    Ok(total)
}

fn component_pontrjagin_numbers(c: &Component) -> Result<CharNumbers, CharclassError> {
    let dim = c.dimension();
    if let Some(t) = single_table(c) {
        let mut out = CharNumbers::empty(NumberKind::Pontrjagin, dim);
        for (k, v) in t.pontrjagin {
            out.accumulate(k, v);
        }
        return Ok(out);
    }
    let r = component_ring(c)?;
    let p = r.pontrjagin.ok_or_else(|| {
        CharclassError::Unsupported(format!("{c} has torsion in integral cohomology"))
    })?;
    numbers_from_class(&p, NumberKind::Pontrjagin, dim, 4)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: NumberKind,
    pub monomial: Vec<u32>,
    pub value: BigInt,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = monomial_name(self.kind, &self.monomial);
        match self.kind {
            NumberKind::StiefelWhitney => write!(f, "{name}"),
            NumberKind::Pontrjagin => write!(f, "{name} = {}", self.value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundsReason {
    /// Every Stiefel–Whitney and Pontrjagin number vanishes.
    NumbersVanish,
    /// Every component has a stably parallelizable factor of positive dimension.
    StablyParallelizableFactor,
    /// The oriented cobordism group in this dimension is zero.
    TrivialCobordismGroup(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nullcobordism {
    Bounds(BoundsReason),
    DoesNotBound(Witness),
    Undecided(Vec<String>),
}

impl fmt::Display for Nullcobordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nullcobordism::Bounds(_) => write!(f, "Bounds"),
            Nullcobordism::DoesNotBound(w) => write!(f, "DoesNotBound({w})"),
            Nullcobordism::Undecided(m) => write!(f, "Undecided({})", m.join("; ")),
        }
    }
}

/// Dimensions in which every closed oriented manifold bounds.
pub const TRIVIAL_COBORDISM_DIMENSIONS: [u32; 5] = [1, 2, 3, 6, 7];

/// Decides whether an oriented closed manifold bounds, from its
/// characteristic numbers.
pub fn is_nullcobordant(e: &ManifoldExpr) -> Result<Nullcobordism, CharclassError> {
    let comps = e.components();
    if let Some(c) = comps.iter().find(|c| !orientable(c)) {
        return Err(CharclassError::NonOrientable(c.to_string()));
    }
    let dim = e.dimension();
    let live: Vec<Component> = comps
        .into_iter()
        .filter(|c| !stably_parallelizable_factor(c))
        .collect();
    if live.is_empty() {
        return Ok(Nullcobordism::Bounds(
            BoundsReason::StablyParallelizableFactor,
        ));
    }

    let mut missing = Vec::new();
    let mut pont = CharNumbers::empty(NumberKind::Pontrjagin, dim);
    let mut sw = CharNumbers::empty(NumberKind::StiefelWhitney, dim);
    for c in &live {
        if dim.is_multiple_of(4) {
            match component_pontrjagin_numbers(c) {
                Ok(t) => {
                    let sign = if c.reversed {
                        -BigInt::one()
                    } else {
                        BigInt::one()
                    };
                    for (k, v) in t.nonzero {
                        pont.accumulate(k, v * &sign);
                    }
                }
                Err(err) => missing.push(format!("Pontrjagin numbers of {c}: {err}")),
            }
        }
        match component_sw_numbers(c) {
            Ok(t) => {
                for (k, v) in t.nonzero {
                    sw.accumulate(k, v);
                }
            }
            Err(err) => missing.push(format!("Stiefel-Whitney numbers of {c}: {err}")),
        }
    }

    // A number that is nonzero with every component accounted for is a witness.
    if missing.is_empty() {
        if let Some((k, v)) = pont
            .nonzero
            .iter()
            .next()
            .or_else(|| sw.nonzero.iter().next())
        {
            let kind = if pont.nonzero.is_empty() {
                NumberKind::StiefelWhitney
            } else {
                NumberKind::Pontrjagin
            };
            return Ok(Nullcobordism::DoesNotBound(Witness {
                kind,
                monomial: k.clone(),
                value: v.clone(),
            }));
        }
        return Ok(Nullcobordism::Bounds(BoundsReason::NumbersVanish));
    }
    if TRIVIAL_COBORDISM_DIMENSIONS.contains(&dim) {
        return Ok(Nullcobordism::Bounds(BoundsReason::TrivialCobordismGroup(
            dim,
        )));
    }
    Ok(Nullcobordism::Undecided(missing))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail,
    Unknown,
}

impl Check {
    fn and(self, other: Check) -> Check {
        match (self, other) {
            (Check::Fail, _) | (_, Check::Fail) => Check::Fail,
            (Check::Unknown, _) | (_, Check::Unknown) => Check::Unknown,
            _ => Check::Pass,
        }
    }

    fn from_bool(ok: bool) -> Check {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImmersionVerdict {
    Obstructed(Vec<String>),
    NecessaryConditionsPass,
    Inconclusive(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersionReport {
    /// `w(TL)^2 = 1`.
    pub sw_square_ok: Check,
    /// `p(TL) = 1`.
    pub pontrjagin_trivial_ok: Check,
    /// Every component is stably parallelizable, so `TL ⊗ C` is trivial and
    /// Lagrangian immersions exist.
    pub immersion_exists: bool,
    pub verdict: ImmersionVerdict,
}

/// Necessary conditions for a Lagrangian immersion `L -> C^n`: the
/// complexified tangent bundle must be trivial, so `w(TL)^2 = 1` and `p(TL) = 1`.
pub fn lagrangian_immersion_obstructions(e: &ManifoldExpr) -> ImmersionReport {
    let mut sw_ok = Check::Pass;
    let mut p_ok = Check::Pass;
    let mut exists = true;
    for c in e.components() {
        let all_sp = c.atoms.iter().all(|a| class_data(*a).stably_parallelizable);
        exists &= all_sp;
        if all_sp {
            continue;
        }
        let (s, p) = if let Some(t) = single_table(&c) {
            let p = if t.pontrjagin.values().any(|v| !v.is_zero()) {
                Check::Fail
            } else {
                Check::Unknown
            };
            (Check::Unknown, p)
        } else {
            match product_ring(&c.atoms) {
                Some(r) => (
                    Check::from_bool(r.sw.mul(&r.sw).is_one()),
                    r.pontrjagin
                        .map_or(Check::Unknown, |p| Check::from_bool(p.is_one())),
                ),
                None => (Check::Unknown, Check::Unknown),
            }
        };
        sw_ok = sw_ok.and(s);
        p_ok = p_ok.and(p);
    }
    let mut reasons = Vec::new();
    if sw_ok == Check::Fail {
        reasons.push("w(TL)^2 != 1".to_string());
    }
    if p_ok == Check::Fail {
        reasons.push("p(TL) != 1".to_string());
    }
    let verdict = if !reasons.is_empty() {
        ImmersionVerdict::Obstructed(reasons)
    } else if sw_ok == Check::Unknown || p_ok == Check::Unknown {
        let mut unknown = Vec::new();
        if sw_ok == Check::Unknown {
            unknown.push("w(TL)^2 not computable from catalog data".to_string());
        }
        if p_ok == Check::Unknown {
            unknown.push("p(TL) not computable from catalog data".to_string());
        }
        ImmersionVerdict::Inconclusive(unknown)
    } else {
        ImmersionVerdict::NecessaryConditionsPass
    };
    ImmersionReport {
        sw_square_ok: sw_ok,
        pontrjagin_trivial_ok: p_ok,
        immersion_exists: exists,
        verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    pub chi: BigInt,
    pub embedding_possible: bool,
    pub notes: Vec<String>,
}

pub const NO_EXACT_EMBEDDINGS_NOTE: &str =
    "chi = 0 is only necessary; there are no exact Lagrangian embeddings of closed manifolds into C^n";

/// A Lagrangian embedding into `C^n` forces `chi(L) = 0`.
pub fn euler_embedding_obstruction(e: &ManifoldExpr) -> EulerReport {
    let chi: BigInt = e
        .components()
        .iter()
        .map(|c| {
            c.atoms
                .iter()
                .map(|a| class_data(*a).euler_characteristic)
                .product::<BigInt>()
        })
        .sum();
    let embedding_possible = chi.is_zero();
    let mut notes = Vec::new();
    if embedding_possible {
        notes.push(NO_EXACT_EMBEDDINGS_NOTE.to_string());
    }
    EulerReport {
        chi,
        embedding_possible,
        notes,
    }
}
