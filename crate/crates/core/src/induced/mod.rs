//! Induced modules `Ind(V) = U(R) ⊗_{U(b)} V`.
//!
//! A vector is a finite sum `Σ G^k L^i ⊗ v_{k,i}` over [`IndexPair`]s, with
//! `v_{k,i}` in the base module. [`IndexPair`] carries the principal order
//! (weight, then reverse-lexicographic on `k`, then on `i`), and the degree of
//! a vector is the largest pair in its support.
//!
//! On top of the action this module provides the descent procedure
//! ([`reduce_to_base`]), desk-scale simplicity certificates
//! ([`simplicity_certificate`]) and Verma singular vectors
//! ([`singular_vectors`]).

mod certificate;
mod index;
mod module;
mod reduce;
mod singular;

pub use certificate::{
    effective_level, injectivity, vanishing_check, run_summary, simplicity_certificate, CertificateOptions,
    Injectivity, VanishingReport, ReductionRun, RunSource, SimplicityReport, Verdict,
};
pub use index::{cmp_principal, cmp_revlex, pairs_of_weight, IndexPair};
pub use module::{level_dimension, InducedModule, ModuleVector};
pub use reduce::{reduce_to_base, Reduction, ReductionStep, StepKind};
pub use singular::{generation_check, singular_vectors};
