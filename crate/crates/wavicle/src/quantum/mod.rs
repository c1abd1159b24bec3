//! Exact statevector simulation of the delayed-choice networks and the
//! closed-form joint outcome distribution q(a, b, c).
//!
//! All operations are pure functions of their inputs; parameter sweeps can
//! partition the (φ, α) grid across workers freely.

mod circuit;
mod distribution;
mod gate;
mod state;

pub use circuit::{
    build_circuit, canonical_angle, entanglement_assisted_state, Circuit, CircuitBuild,
    CircuitVariant,
};
pub use distribution::{
    analytic_distribution, analytic_pair_distribution, simulate_distribution, wave_particle_states,
    JointDistribution, PairDistribution, VariantDistribution, WaveParticleAmplitudes, PROB_TOL,
};
pub use gate::{apply_gate, Gate, GateKind};
pub use state::{StateVector, NORM_TOL};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("qubit index {qubit} out of range for {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit {qubit} used as both control and target")]
    OverlappingControlTarget { qubit: usize },
    #[error("{kind} expects {expected} control(s), got {got}")]
    WrongControlCount {
        kind: String,
        expected: usize,
        got: usize,
    },
    #[error("amplitude vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state norm drifted to {norm}; numeric fault")]
    NormDrift { norm: f64 },
    #[error("non-finite amplitude produced; numeric fault")]
    NonFiniteAmplitude,
    #[error("angle must be finite")]
    NonFiniteAngle,
    #[error("expected a {expected}-qubit state, got {got} qubits")]
    WrongQubitCount { expected: usize, got: usize },
    #[error("probability entries must be finite and nonnegative")]
    InvalidProbability,
}
