//! Edge-colored complete graphs at desk scale.
//!
//! The crate models k-colorings of the edges of `K_n` and provides:
//!
//! * structure classification of colorings with no rainbow path on 4 or
//!   5 vertices (cases A/B and A-F, with witnesses),
//! * decision procedures for rainbow paths, monochromatic pattern
//!   embeddings, vertex-disjoint packings, and connected-supergraph
//!   membership,
//! * generators for the extremal block colorings used as lower-bound
//!   witnesses, each validated against the detectors,
//! * exact Ramsey, set-Ramsey and Gallai-Ramsey number computation by
//!   symmetry-reduced exhaustive search, cross-checked by a naive oracle.

pub mod canon;
pub mod classify;
pub mod coloring;
pub mod construct;
pub mod detect;
pub mod enumerate;
pub mod pattern;
pub mod search;
pub mod suites;

#[cfg(test)]
pub(crate) mod testutil;

pub use coloring::{Color, EdgeColoring};
pub use pattern::Pattern;
