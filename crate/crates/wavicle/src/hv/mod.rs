//! Finite hidden-variable theories with intrinsic wave/particle labels.
//!
//! The class is defined by adequacy (the model reproduces the quantum
//! table) and realism (particles are phase-insensitive in an open
//! interferometer, waves interfere in a closed one); determinism fixes the
//! b and c outcomes from the hidden variables. [`model_distribution`] runs
//! a model forward, [`check_adequacy`] measures its residual against a
//! target table, and [`reduce_constraints`] builds the linear systems the
//! feasibility engine decides.

mod assumptions;
mod constraints;
mod model;

pub use assumptions::{Assumption, AssumptionSet, Determinism};
pub use constraints::{
    enumerate_branches, reduce_constraints, reduce_constraints_delayed, reduce_constraints_product,
    Constraint, ConstraintSystem, DiscreteAssignment, ReductionMode, SystemMetadata, Variable,
};

/// The C-outcome marginal of the maximally entangled controlling pair,
/// q₀ = q(c = 0) = 1/2 for every (φ, α).
pub const Q0_MAXIMALLY_ENTANGLED: f64 = 0.5;
pub use model::{
    check_adequacy, check_adequacy_at_phis, construct_nonlocal_model,
    construct_weak_nonlocal_model, model_distribution, AdequacyReport, HVModel, ADEQUACY_TOL,
    PRIOR_TOL,
};

use thiserror::Error;

use crate::quantum::QuantumError;

#[derive(Debug, Error)]
pub enum HvError {
    #[error("{field} has length {got}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("priors sum to {sum}, expected 1")]
    PriorNormalization { sum: f64 },
    #[error("{field} value {value} outside its admissible range")]
    ValueOutOfRange { field: &'static str, value: f64 },
    #[error("{field} value {value} must be exactly 0 or 1 under strong determinism")]
    NotBinary { field: &'static str, value: f64 },
    #[error("partition entries must be 0 or 1")]
    InvalidPartition,
    #[error("need at least {needed} hidden-variable indices, got {got}")]
    TooFewIndices { needed: usize, got: usize },
    #[error("constructed witness misses the quantum table by {residual}")]
    WitnessInadequate { residual: f64 },
    #[error("tolerance {tol} must be positive")]
    InvalidTolerance { tol: f64 },
    #[error("q0 = {q0} outside [0, 1]")]
    InvalidQ0 { q0: f64 },
    #[error("inputs must be finite")]
    NonFiniteInput,
    #[error("no input values supplied")]
    EmptyInput,
    #[error("unknown assumption label '{label}'")]
    UnknownAssumption { label: String },
    #[error("strong and weak determinism are mutually exclusive")]
    ConflictingDeterminism,
    #[error("this operation requires a determinism assumption (strong-det or weak-det)")]
    MissingDeterminism,
    #[error("weak determinism requires the joint-outcome encoding (z = v per index)")]
    WeakEncodingViolated,
    #[error("constraint references undeclared variable {index}")]
    UndeclaredVariable { index: usize },
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}
