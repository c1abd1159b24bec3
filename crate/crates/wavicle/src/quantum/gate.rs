//! Gate definitions and their action on dense statevectors.

use num_complex::Complex64;

use super::state::StateVector;
use super::QuantumError;

/// The gate alphabet used by the delayed-choice networks.
///
/// `RotationY(α)` is e^{iασ_y} = [[cos α, sin α], [−sin α, cos α]], the
/// convention in which measuring along −α equals rotating by α before a
/// computational-basis readout. `ControlledHadamard` and `ControlledZ` carry
/// their control in [`Gate::controls`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    Hadamard,
    PhaseShift(f64),
    RotationY(f64),
    ControlledHadamard,
    ControlledZ,
    PauliX,
}

impl GateKind {
    /// The 2x2 matrix acting on the target qubit (row-major).
    pub fn target_matrix(&self) -> [[Complex64; 2]; 2] {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match *self {
            GateKind::Hadamard | GateKind::ControlledHadamard => {
                let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                [[h, h], [h, -h]]
            }
            GateKind::PhaseShift(phi) => [[one, zero], [zero, Complex64::from_polar(1.0, phi)]],
            GateKind::RotationY(alpha) => {
                let c = Complex64::new(alpha.cos(), 0.0);
                let s = Complex64::new(alpha.sin(), 0.0);
                [[c, s], [-s, c]]
            }
            GateKind::ControlledZ => [[one, zero], [zero, -one]],
            GateKind::PauliX => [[zero, one], [one, zero]],
        }
    }

    fn required_controls(&self) -> usize {
        match self {
            GateKind::ControlledHadamard | GateKind::ControlledZ => 1,
            _ => 0,
        }
    }
}

/// A gate bound to concrete qubit indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<usize>,
}

impl Gate {
    pub fn h(target: usize) -> Self {
        Gate {
            kind: GateKind::Hadamard,
            target,
            controls: vec![],
        }
    }

    pub fn phase(phi: f64, target: usize) -> Self {
        Gate {
            kind: GateKind::PhaseShift(phi),
            target,
            controls: vec![],
        }
    }

    pub fn ry(alpha: f64, target: usize) -> Self {
        Gate {
            kind: GateKind::RotationY(alpha),
            target,
            controls: vec![],
        }
    }

    pub fn ch(control: usize, target: usize) -> Self {
        Gate {
            kind: GateKind::ControlledHadamard,
            target,
            controls: vec![control],
        }
    }

    pub fn cz(control: usize, target: usize) -> Self {
        Gate {
            kind: GateKind::ControlledZ,
            target,
            controls: vec![control],
        }
    }

    pub fn x(target: usize) -> Self {
        Gate {
            kind: GateKind::PauliX,
            target,
            controls: vec![],
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<(), QuantumError> {
        if self.target >= n_qubits {
            return Err(QuantumError::QubitOutOfRange {
                qubit: self.target,
                n_qubits,
            });
        }
        for &c in &self.controls {
            if c >= n_qubits {
                return Err(QuantumError::QubitOutOfRange { qubit: c, n_qubits });
            }
            if c == self.target {
                return Err(QuantumError::OverlappingControlTarget { qubit: c });
            }
        }
        if self.controls.len() != self.kind.required_controls() {
            return Err(QuantumError::WrongControlCount {
                kind: format!("{:?}", self.kind),
                expected: self.kind.required_controls(),
                got: self.controls.len(),
            });
        }
        if let GateKind::PhaseShift(a) | GateKind::RotationY(a) = self.kind {
            if !a.is_finite() {
                return Err(QuantumError::NonFiniteAngle);
            }
        }
        Ok(())
    }
}

/// Applies `gate` to `state`, returning the evolved state.
///
/// The norm is re-checked after application; drift past
/// [`NORM_TOL`](super::NORM_TOL) signals a numeric fault and is reported as
/// an error rather than renormalized.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector, QuantumError> {
    gate.validate(state.n_qubits())?;
    let n = state.n_qubits();
    // Qubit 0 is the most significant bit of the basis index.
    let target_bit = 1usize << (n - 1 - gate.target);
    let control_mask: usize = gate
        .controls
        .iter()
        .map(|&c| 1usize << (n - 1 - c))
        .fold(0, |m, b| m | b);

    let m = gate.kind.target_matrix();
    let mut out = state.clone();
    let amps = out.amplitudes_mut();
    for i in 0..amps.len() {
        if i & target_bit != 0 {
            continue; // handled together with its partner
        }
        if i & control_mask != control_mask {
            continue; // a control bit is 0: identity
        }
        let j = i | target_bit;
        let a0 = amps[i];
        let a1 = amps[j];
        amps[i] = m[0][0] * a0 + m[0][1] * a1;
        amps[j] = m[1][0] * a0 + m[1][1] * a1;
    }
    out.check_normalized()?;
    Ok(out)
}
