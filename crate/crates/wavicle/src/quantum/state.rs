//! Dense statevector representation for small qubit registers.

use num_complex::Complex64;

use super::QuantumError;

/// Absolute tolerance on the squared norm of a state vector.
pub const NORM_TOL: f64 = 1e-12;

/// A pure quantum state over `n_qubits` qubits, stored as a dense vector of
/// 2^n complex amplitudes.
///
/// Qubit 0 is the most significant bit of the basis index, so for the
/// three-qubit register (A, B, C) the amplitude of |abc⟩ lives at index
/// `a << 2 | b << 1 | c`. Global phase is kept as produced by the gate
/// sequence; comparisons should use squared magnitudes or
/// [`StateVector::fidelity`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros computational basis state |0...0⟩. The networks here
    /// never need more than four qubits; the register stays dense.
    pub fn zero(n_qubits: usize) -> Self {
        assert!((1..=8).contains(&n_qubits), "unsupported qubit count");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self {
            n_qubits,
            amplitudes,
        }
    }

    /// Builds a state from explicit amplitudes. The vector must have length
    /// 2^n and unit squared norm within [`NORM_TOL`].
    pub fn from_amplitudes(
        n_qubits: usize,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self, QuantumError> {
        if amplitudes.len() != 1 << n_qubits {
            return Err(QuantumError::DimensionMismatch {
                expected: 1 << n_qubits,
                got: amplitudes.len(),
            });
        }
        let state = Self {
            n_qubits,
            amplitudes,
        };
        state.check_normalized()?;
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Squared norm Σ|ψ_k|².
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Born-rule probability of the basis state with the given index.
    pub fn probability(&self, basis_index: usize) -> f64 {
        self.amplitudes[basis_index].norm_sqr()
    }

    /// |⟨other|self⟩|²; equals 1 for states equal up to a global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        let overlap: Complex64 = self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| b.conj() * a)
            .sum();
        overlap.norm_sqr()
    }

    /// Largest componentwise amplitude difference |ψ_k − φ_k|.
    pub fn max_amplitude_deviation(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_normalized(&self) -> Result<(), QuantumError> {
        if self
            .amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(QuantumError::NonFiniteAmplitude);
        }
        let norm = self.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QuantumError::NormDrift { norm });
        }
        Ok(())
    }
}
