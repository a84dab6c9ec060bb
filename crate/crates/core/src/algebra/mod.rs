//! Exact coefficient arithmetic and polynomial operations.

pub mod bipoly;
pub mod field;
pub mod gcd;
pub mod resultant;
pub mod tower;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use field::{rat, rat_frac, Field, Rational};
pub use gcd::{associated, div_exact, gcd, gcd_many, lcm, normalize, reduced_part, squarefree_factorization};
pub use resultant::{intersection_multiplicity, Intersection};
pub use tower::{adjoin_root, ExtensionTower, Split, TowerElement};
pub use unipoly::UniPoly;

#[derive(Clone, Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("constant polynomial where a non-constant one is required")]
    ConstantInput,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error(transparent)]
    Split(#[from] Split),
}
