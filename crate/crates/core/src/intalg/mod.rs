//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups and image membership for homomorphisms between them.
//!
//! Entries are arbitrary-size integers, so elimination never wraps. The only
//! overflow that can surface is when a result has to be handed back as `i64`.

mod group;
mod matrix;

use thiserror::Error;

pub use group::{FgAbelianGroup, GroupHom};
pub use matrix::{smith_normal_form, IntegerMatrix, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntalgError {
    #[error("integer result does not fit into 64 bits")]
    Overflow,
    #[error("element has {found} coordinates, group has {expected} generators")]
    ElementShapeMismatch { expected: usize, found: usize },
    #[error("matrix shape {found:?} does not match generators {expected:?}")]
    HomShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("invalid torsion coefficients: {0}")]
    InvalidTorsion(String),
    #[error("generator {generator} has order {order} but its image does not")]
    TorsionViolation { generator: usize, order: i64 },
}
