//! Exact computational toolkit for tropical plane curves.
//!
//! Everything is computed over exact rationals: univariate roots and
//! factorizations, dual subdivisions and the curves they describe, stable
//! intersections, combinatorial patchworking, floor diagrams and refined
//! counts, one-dimensional fans with their intersection numbers, matroid
//! fans, and the (p,q)-cohomology of metric graphs.

pub mod cli;
pub mod curve;
pub mod error;
pub mod geom;
pub mod graph;
pub mod intersect;
pub mod json;
pub mod fan;
pub mod floor;
pub mod lattice;
pub mod laurent;
pub mod matroid;
pub mod patchwork;
pub mod poly1;
pub mod poly2;
pub mod rat;
pub mod semiring;
pub mod subdivision;
pub mod svg;

pub use cli::cli_main;
pub use error::{Result, TropError};
