//! Independence complexes of lexicographic products of graphs.
//!
//! Three independent routes to the homotopy type of `I(G ∘ H)`:
//!
//! * brute force: enumerate the complex and compute reduced Betti numbers over
//!   prime fields ([`complex`], [`homology`]);
//! * a symbolic calculus of disjoint unions of sphere wedges that follows the
//!   leaf-splitting recursion for forests, plus the closed form for paths
//!   ([`spheres`]);
//! * the independent domination number of a forest, which predicts the
//!   homological connectivity when `H` is complete ([`domination`]).
//!
//! The [`harness`] module cross-checks the routes against each other.

pub mod bitset;
pub mod complex;
pub mod domination;
pub mod error;
pub mod graph;
pub mod harness;
pub mod homology;
pub mod limits;
pub mod spheres;

pub use bitset::VertexSet;
pub use complex::{independence_complex, FaceCensus, SimplicialComplex};
pub use error::{Error, Result};
pub use graph::{parse_graph_expr, Graph, GraphExpr};
pub use homology::{betti, betti_multi_field, conn_h, BettiVector, Coefficients, Connectivity};
pub use limits::Limits;

pub use spheres::{Component, SphereSpace};
