//! Base points of ideals in the local ring of a smooth surface point.
//!
//! Given generators of an ideal `a` of `C{x, y}` (polynomials with rational
//! coefficients), [`basepoints::base_points`] computes the weighted cluster of
//! base points of `a`, which encodes the exceptional part of its minimal
//! log-resolution. The pipeline runs a Newton-Puiseux expansion of the product
//! of the generators that also tracks the square-free factors of each
//! generator, builds the cluster of singular points of the reduced product,
//! and completes it with the free and satellite points where the minimum of
//! the generator values is not forced by the proximity relations.

pub mod algebra;
pub mod basepoints;
pub mod cluster;
pub mod puiseux;
