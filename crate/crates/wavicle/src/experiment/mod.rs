//! Finite-statistics emulation of the proposed experiment: seeded sampling,
//! detector losses, goodness-of-fit testing, and the spacetime timing plan.

mod rng;
mod sampling;
mod spacetime;
mod stats;

pub use rng::SplitMix64;
pub use sampling::{apply_inefficiency, sample_outcomes, CountTable, DetectorModel};
pub use spacetime::{
    spacelike_separated, timing_plan, FiberLengths, Geometry, SpacetimeEvent, TimingPlan,
    DEFAULT_FIBER_INDEX, SPEED_OF_LIGHT,
};
pub use stats::{
    chi_square_survival, chi_square_test, regularized_upper_gamma, ChiSquareReport, ZERO_CELL_TOL,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("trial count must be at least 1")]
    InvalidTrialCount,
    #[error("detector efficiency {value} outside (0, 1]")]
    InvalidEfficiency { value: f64 },
    #[error(
        "dark rate {dark_rate} must be nonnegative and below the smallest efficiency {min_eta}"
    )]
    InvalidDarkRate { dark_rate: f64, min_eta: f64 },
    #[error("chi-square needs at least {need} detected trials, got {got}")]
    MinimumSample { got: u64, need: u64 },
    #[error("expected count {expected:.3} in cell {cell} below the chi-square minimum of 5")]
    ExpectedCountTooSmall { cell: String, expected: f64 },
    #[error("spacetime events must have finite coordinates")]
    NonFiniteEvent,
    #[error("geometry JSON malformed: {detail}")]
    MalformedGeometry { detail: String },
    #[error("geometry has no lab labeled '{label}'")]
    MissingLab { label: String },
    #[error("fiber length {value} must be positive and finite")]
    InvalidFiberLength { value: f64 },
    #[error("fiber index {value} must be at least 1")]
    InvalidFiberIndex { value: f64 },
    #[error("switch duration {value} must be nonnegative")]
    InvalidSwitchDuration { value: f64 },
    #[error("arm {arm} would need the negative delay {required:.3e} s; geometry infeasible")]
    GeometryInfeasible { arm: char, required: f64 },
}
