//! Feasibility engine: decides whether the hidden-variable constraint
//! systems admit solutions, returning explicit model witnesses or
//! infeasibility certificates.

mod checks;
mod report;
mod simplex;

pub use checks::{
    check_assumptions, check_delayed_choice, check_delayed_choice_with, check_independence,
    check_independence_with, lp_feasible, DEFAULT_F_GRID, DEGENERATE_TOL, MAX_ENUMERATION_N,
};
pub use report::{Certificate, Evidence, FeasibilityReport, Settings, Verdict};
pub use simplex::{solve_feasibility, LpSolution, LpStatus, FEAS_TOL};

use thiserror::Error;

use crate::hv::HvError;

#[derive(Debug, Error)]
pub enum FeasibilityError {
    #[error(transparent)]
    Hv(#[from] HvError),
    #[error("simplex iteration limit exceeded")]
    IterationLimit,
    #[error("unbounded auxiliary objective; the system is malformed")]
    UnboundedAuxiliary,
    #[error("numerical fault: {detail}")]
    NumericalFault { detail: String },
    #[error("N = {n} outside the enumerable range 2..={max}")]
    EnumerationBound { n: usize, max: usize },
    #[error("independence scan needs at least {min} grid points, got {grid}")]
    GridTooCoarse { grid: usize, min: usize },
    #[error("a delayed-choice check needs the pair of rotation angles (alpha1, alpha2)")]
    DelayedNeedsPair,
}
