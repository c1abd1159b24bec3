//! The three delayed-choice network variants and their circuit builder.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use super::gate::{apply_gate, Gate};
use super::state::StateVector;
use super::QuantumError;

/// Reduces an angle into [0, 2π), rejecting non-finite input.
pub fn canonical_angle(angle: f64) -> Result<f64, QuantumError> {
    if !angle.is_finite() {
        return Err(QuantumError::NonFiniteAngle);
    }
    let r = angle.rem_euclid(TAU);
    // rem_euclid can return 2π itself when angle is a tiny negative number.
    Ok(if r >= TAU { 0.0 } else { r })
}

/// Which delayed-choice network to build.
///
/// * `ClassicalControl`: a Mach-Zehnder interferometer whose second
///   beamsplitter is inserted (`closed`) or not (`open`) by a classical fair
///   coin drawn at sampling time. The coin outcome plays the role of `b`.
/// * `QuantumControl`: the second beamsplitter is controlled by an ancilla
///   prepared in cos α|0⟩ + sin α|1⟩.
/// * `EntanglementAssisted`: the control qubit B is half of an EPR pair; its
///   partner C is rotated by R_y(α) and read out remotely.
///
/// Angles are canonicalized into [0, 2π) at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitVariant {
    ClassicalControl { phi: f64 },
    QuantumControl { phi: f64, alpha: f64 },
    EntanglementAssisted { phi: f64, alpha: f64 },
}

impl CircuitVariant {
    pub fn classical_control(phi: f64) -> Result<Self, QuantumError> {
        Ok(CircuitVariant::ClassicalControl {
            phi: canonical_angle(phi)?,
        })
    }

    pub fn quantum_control(phi: f64, alpha: f64) -> Result<Self, QuantumError> {
        Ok(CircuitVariant::QuantumControl {
            phi: canonical_angle(phi)?,
            alpha: canonical_angle(alpha)?,
        })
    }

    pub fn entanglement_assisted(phi: f64, alpha: f64) -> Result<Self, QuantumError> {
        Ok(CircuitVariant::EntanglementAssisted {
            phi: canonical_angle(phi)?,
            alpha: canonical_angle(alpha)?,
        })
    }

    pub fn phi(&self) -> f64 {
        match *self {
            CircuitVariant::ClassicalControl { phi }
            | CircuitVariant::QuantumControl { phi, .. }
            | CircuitVariant::EntanglementAssisted { phi, .. } => phi,
        }
    }

    /// α is meaningless for the classical-control variant (the coin is fair).
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            CircuitVariant::ClassicalControl { .. } => None,
            CircuitVariant::QuantumControl { alpha, .. }
            | CircuitVariant::EntanglementAssisted { alpha, .. } => Some(alpha),
        }
    }
}

/// An initial state plus an ordered gate list, with terminal
/// computational-basis readout implied.
#[derive(Debug, Clone)]
pub struct Circuit {
    pub initial: StateVector,
    pub gates: Vec<Gate>,
}

impl Circuit {
    /// Applies the gate list to the initial state.
    pub fn run(&self) -> Result<StateVector, QuantumError> {
        let mut state = self.initial.clone();
        for gate in &self.gates {
            state = apply_gate(&state, gate)?;
        }
        Ok(state)
    }
}

/// The product of [`build_circuit`]: either one deterministic circuit or, for
/// the classical-control variant, the open/closed pair selected by a fair
/// coin at sampling time (coin = b, with b = 1 meaning the second
/// beamsplitter is inserted).
#[derive(Debug, Clone)]
pub enum CircuitBuild {
    Deterministic(Circuit),
    CoinMixture { open: Circuit, closed: Circuit },
}

/// Builds the network for `variant`.
///
/// For the entanglement-assisted network the register order is (A, B, C),
/// the initial state is (1/√2)|0⟩_A(|00⟩+|11⟩)_BC, and the gate order is
/// H(A), φ(A), C(H) on A controlled by B, R_y(α) on C. The phase shifter
/// follows the first beamsplitter.
pub fn build_circuit(variant: &CircuitVariant) -> CircuitBuild {
    match *variant {
        CircuitVariant::ClassicalControl { phi } => CircuitBuild::CoinMixture {
            open: Circuit {
                initial: StateVector::zero(1),
                gates: vec![Gate::h(0), Gate::phase(phi, 0)],
            },
            closed: Circuit {
                initial: StateVector::zero(1),
                gates: vec![Gate::h(0), Gate::phase(phi, 0), Gate::h(0)],
            },
        },
        CircuitVariant::QuantumControl { phi, alpha } => CircuitBuild::Deterministic(Circuit {
            // R_y(−α)|0⟩ = cos α|0⟩ + sin α|1⟩ prepares the control ancilla.
            initial: StateVector::zero(2),
            gates: vec![
                Gate::ry(-alpha, 1),
                Gate::h(0),
                Gate::phase(phi, 0),
                Gate::ch(1, 0),
            ],
        }),
        CircuitVariant::EntanglementAssisted { phi, alpha } => {
            let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
            let zero = Complex64::new(0.0, 0.0);
            // (1/√2)|0⟩_A (|00⟩ + |11⟩)_BC → indices 000 and 011.
            let initial =
                StateVector::from_amplitudes(3, vec![h, zero, zero, h, zero, zero, zero, zero])
                    .expect("EPR initial state is normalized");
            CircuitBuild::Deterministic(Circuit {
                initial,
                gates: vec![
                    Gate::h(0),
                    Gate::phase(phi, 0),
                    Gate::ch(1, 0),
                    Gate::ry(alpha, 2),
                ],
            })
        }
    }
}

/// Convenience: the final three-qubit state of the entanglement-assisted
/// network at the given (already canonicalized or raw) angles.
pub fn entanglement_assisted_state(phi: f64, alpha: f64) -> Result<StateVector, QuantumError> {
    let variant = CircuitVariant::entanglement_assisted(phi, alpha)?;
    match build_circuit(&variant) {
        CircuitBuild::Deterministic(c) => c.run(),
        CircuitBuild::CoinMixture { .. } => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::wave_particle_states;
    use std::f64::consts::PI;

    /// Eq.-style reference: assemble the expected final state directly from
    /// the |p⟩/|w⟩ amplitudes and the four (B, C) tensor blocks.
    fn reference_state(phi: f64, alpha: f64) -> Vec<Complex64> {
        let wp = wave_particle_states(phi);
        let (p, w) = (wp.particle, wp.wave);
        let r = FRAC_1_SQRT_2;
        let (ca, sa) = (alpha.cos(), alpha.sin());
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        for a in 0..2 {
            // |a b c⟩ at index a<<2 | b<<1 | c.
            amps[a << 2] = r * ca * p[a]; // b=0, c=0
            amps[a << 2 | 1] = -r * sa * p[a]; // b=0, c=1
            amps[a << 2 | 2] = r * sa * w[a]; // b=1, c=0
            amps[a << 2 | 3] = r * ca * w[a]; // b=1, c=1
        }
        amps
    }

    #[test]
    fn entanglement_assisted_state_matches_reference_expansion() {
        let (phi, alpha) = (0.7, 0.3);
        let state = entanglement_assisted_state(phi, alpha).unwrap();
        let expected = reference_state(phi, alpha);
        for (got, want) in state.amplitudes().iter().zip(expected.iter()) {
            assert!((got - want).norm() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn entanglement_assisted_at_zero_angles_has_frozen_amplitudes() {
        // (1/√2)(|p⟩|00⟩ + |w⟩|11⟩) with |w⟩ = |0⟩ at φ = α = 0:
        // amp(000) = amp(100) = 1/2, amp(011) = 1/√2.
        let state = entanglement_assisted_state(0.0, 0.0).unwrap();
        let a = state.amplitudes();
        assert!((a[0] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((a[4] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((a[3] - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        for idx in [1, 2, 5, 6, 7] {
            assert!(a[idx].norm() < 1e-15);
        }
    }

    #[test]
    fn quantum_control_with_idle_ancilla_is_open_interferometer() {
        let variant = CircuitVariant::quantum_control(1.1, 0.0).unwrap();
        let CircuitBuild::Deterministic(circuit) = build_circuit(&variant) else {
            panic!("quantum control is deterministic");
        };
        let state = circuit.run().unwrap();
        // Ancilla stays |0⟩; A keeps particle statistics (1/2, 1/2).
        let p_a0 = state.probability(0b00) + state.probability(0b01);
        let p_a1 = state.probability(0b10) + state.probability(0b11);
        assert!((p_a0 - 0.5).abs() < 1e-12);
        assert!((p_a1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn classical_control_open_and_closed_statistics() {
        let variant = CircuitVariant::classical_control(0.6).unwrap();
        let CircuitBuild::CoinMixture { open, closed } = build_circuit(&variant) else {
            panic!("classical control is a coin mixture");
        };
        let open = open.run().unwrap();
        assert!((open.probability(0) - 0.5).abs() < 1e-12);
        let closed = closed.run().unwrap();
        let half = 0.3_f64; // φ/2
        assert!((closed.probability(0) - half.cos().powi(2)).abs() < 1e-12);
        assert!((closed.probability(1) - half.sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn angles_are_canonicalized_into_zero_two_pi() {
        let v = CircuitVariant::entanglement_assisted(-0.5, 7.0).unwrap();
        assert!((v.phi() - (TAU - 0.5)).abs() < 1e-12);
        assert!((v.alpha().unwrap() - (7.0 - TAU)).abs() < 1e-12);
        assert!(CircuitVariant::entanglement_assisted(f64::NAN, 0.0).is_err());
        assert!(CircuitVariant::quantum_control(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn canonicalized_negative_phase_gives_same_distribution() {
        let a = entanglement_assisted_state(
            canonical_angle(-1.3).unwrap(),
            canonical_angle(0.4).unwrap(),
        )
        .unwrap();
        let b = entanglement_assisted_state(TAU - 1.3, 0.4).unwrap();
        assert!(a.max_amplitude_deviation(&b) < 1e-12);
    }

    #[test]
    fn ea_network_norm_stays_unit_on_a_grid() {
        for i in 0..8 {
            for j in 0..8 {
                let phi = TAU * i as f64 / 8.0;
                let alpha = PI * j as f64 / 8.0;
                let s = entanglement_assisted_state(phi, alpha).unwrap();
                assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }
}
