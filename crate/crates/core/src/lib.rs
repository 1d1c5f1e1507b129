//! Invariants of Leavitt path algebras `L(E)` of finite directed graphs:
//! `K₀` with order unit via Smith normal form, the graded `K₀` as a
//! stationary inductive limit, the graph monoid, symbolic arithmetic in
//! `L(E)` and in its corner skew Laurent realization, and checks of strong
//! grading and of the sequence `K₀^gr → K₀^gr → K₀ → 0`.

pub mod corpus;
pub mod cskl;
pub mod graph;
pub mod intlin;
mod json;
pub mod ktheory;
pub mod lpa;
pub mod monoid;
pub mod report;

pub use cskl::{realize, strongly_graded_via_cskl, CsklElement, CsklRealization};
pub use graph::{Edge, EdgeSpec, Graph, GraphError};
pub use intlin::{snf, AbGroupPresentation, IntMatrix, IntVector, SnfResult};
pub use ktheory::{compute_k0, compute_kgr, K0Group, KgrElement, KgrModule};
pub use lpa::{Lpa, LpaElement, PathMonomial};
pub use monoid::{monoid_equal, MonoidElement, MonoidVerdict};
