//! Newton-Puiseux expansion of a product of generators, tracking in which
//! generator (and with which multiplicity) every branch lies.

mod branch;
mod expand;
mod polygon;

pub use branch::{coincidence, BranchKind, BranchRecord, ChartStep, PuiseuxBranch};
pub use expand::{advance_tracked_factors, expand_product, substitute, ChartChange, TrackedFactor};
pub use polygon::{newton_polygon, NewtonPolygonSide};

use crate::algebra::{AlgebraError, Split};

#[derive(Clone, Debug, thiserror::Error)]
pub enum PuiseuxError {
    #[error("polynomial does not vanish at the origin")]
    NotVanishingAtOrigin,
    #[error("zero polynomial among the generators")]
    ZeroGenerator,
    #[error("branches are not separated")]
    NotSeparated,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<Split> for PuiseuxError {
    fn from(s: Split) -> Self {
        PuiseuxError::Algebra(AlgebraError::Split(s))
    }
}
