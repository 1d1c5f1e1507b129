//! K₀ with order unit, the graded K₀ as a stationary inductive limit, the
//! maps of the exact sequence `K₀^gr --φ--> K₀^gr --U--> K₀ --> 0`, and
//! isomorphism tests for `(K₀, [1])` pairs.

mod exact;
mod iso;
mod k0;
mod kgr;

use thiserror::Error;

pub use exact::{
    verify_exact_sequence, CokernelClause, ExactnessReport, GroupSummary, ShiftRelationClause, ShiftWitness,
    SurjectivityClause, UPhiClause,
};
pub use iso::{k0_pair_isomorphic, verify_iso_witness, PairIsoVerdict, FINITE_SEARCH_LIMIT};
pub use k0::{compute_k0, k0_class, K0Group, K0Summary};
pub use kgr::{
    compute_kgr, find_module_isomorphism, forgetful_u, phi, iterated_expansion, shift_relation_check, KgrElement, KgrModule, Positivity,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KtError {
    #[error("graph has sinks {0:?}; the graded model requires a sink-free graph")]
    HasSinks(Vec<String>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("objects come from different graphs")]
    GraphMismatch,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
}
