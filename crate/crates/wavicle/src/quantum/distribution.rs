//! Outcome distributions of the delayed-choice networks.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use super::circuit::{build_circuit, CircuitBuild, CircuitVariant};
use super::state::StateVector;
use super::QuantumError;

/// Tolerance on probability-table normalization.
pub const PROB_TOL: f64 = 1e-12;

/// Joint probability table over outcome triples (a, b, c) ∈ {0,1}³.
///
/// Cell (a, b, c) lives at index `a<<2 | b<<1 | c`, mirroring the qubit
/// order of the statevector.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    probs: [f64; 8],
}

impl JointDistribution {
    /// Wraps a raw table, validating nonnegativity and normalization.
    pub fn new(probs: [f64; 8]) -> Result<Self, QuantumError> {
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(QuantumError::InvalidProbability);
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PROB_TOL {
            return Err(QuantumError::NormDrift { norm: total });
        }
        Ok(Self { probs })
    }

    /// Born-rule readout of a three-qubit state in register order (A, B, C).
    pub fn from_state(state: &StateVector) -> Result<Self, QuantumError> {
        if state.n_qubits() != 3 {
            return Err(QuantumError::WrongQubitCount {
                expected: 3,
                got: state.n_qubits(),
            });
        }
        let mut probs = [0.0; 8];
        for (i, p) in probs.iter_mut().enumerate() {
            *p = state.probability(i);
        }
        Self::new(probs)
    }

    pub fn prob(&self, a: u8, b: u8, c: u8) -> f64 {
        self.probs[((a as usize) << 2) | ((b as usize) << 1) | c as usize]
    }

    pub fn as_array(&self) -> &[f64; 8] {
        &self.probs
    }

    /// Marginal probability of the C outcome.
    pub fn marginal_c(&self, c: u8) -> f64 {
        (0..2u8)
            .flat_map(|a| (0..2u8).map(move |b| (a, b)))
            .map(|(a, b)| self.prob(a, b, c))
            .sum()
    }

    /// Marginal probability of the (b, c) pair.
    pub fn marginal_bc(&self, b: u8, c: u8) -> f64 {
        self.prob(0, b, c) + self.prob(1, b, c)
    }

    /// Marginal (a, b) table, summing out c.
    pub fn marginal_ab(&self) -> PairDistribution {
        let mut probs = [0.0; 4];
        for a in 0..2u8 {
            for b in 0..2u8 {
                probs[((a as usize) << 1) | b as usize] = self.prob(a, b, 0) + self.prob(a, b, 1);
            }
        }
        PairDistribution { probs }
    }

    /// P(a = 0 | b, c), or `None` when the conditioning event has
    /// probability below `PROB_TOL`.
    pub fn conditional_a0_given(&self, b: u8, c: u8) -> Option<f64> {
        let mass = self.marginal_bc(b, c);
        if mass < PROB_TOL {
            None
        } else {
            Some(self.prob(0, b, c) / mass)
        }
    }

    /// (a, b) table conditioned on the C outcome, or `None` if P(c) ≈ 0.
    pub fn conditional_ab_given_c(&self, c: u8) -> Option<PairDistribution> {
        let mass = self.marginal_c(c);
        if mass < PROB_TOL {
            return None;
        }
        let mut probs = [0.0; 4];
        for a in 0..2u8 {
            for b in 0..2u8 {
                probs[((a as usize) << 1) | b as usize] = self.prob(a, b, c) / mass;
            }
        }
        Some(PairDistribution { probs })
    }

    /// Largest cellwise deviation from `other`.
    pub fn max_deviation(&self, other: &JointDistribution) -> f64 {
        self.probs
            .iter()
            .zip(other.probs.iter())
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }

    /// JSON object keyed by the outcome string "abc", values rendered with
    /// 18 significant digits so the table round-trips exactly.
    pub fn to_json_string(&self) -> String {
        let cells: Vec<String> = (0..8)
            .map(|i| {
                format!(
                    "\"{}{}{}\": {:.17e}",
                    (i >> 2) & 1,
                    (i >> 1) & 1,
                    i & 1,
                    self.probs[i]
                )
            })
            .collect();
        format!("{{{}}}", cells.join(", "))
    }
}

/// Probability table over (a, b) pairs, used by the two-outcome variants and
/// for conditioned/marginalized views of the three-qubit table.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDistribution {
    probs: [f64; 4],
}

impl PairDistribution {
    pub fn prob(&self, a: u8, b: u8) -> f64 {
        self.probs[((a as usize) << 1) | b as usize]
    }

    pub fn as_array(&self) -> &[f64; 4] {
        &self.probs
    }

    pub fn max_deviation(&self, other: &PairDistribution) -> f64 {
        self.probs
            .iter()
            .zip(other.probs.iter())
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }
}

/// The single-qubit particle and wave output states at phase φ:
/// |p⟩ = (|0⟩ + e^{iφ}|1⟩)/√2 and |w⟩ = e^{iφ/2}(cos(φ/2)|0⟩ − i sin(φ/2)|1⟩).
/// The global phase e^{iφ/2} on |w⟩ is retained as produced by the network.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveParticleAmplitudes {
    pub particle: [Complex64; 2],
    pub wave: [Complex64; 2],
    pub phi: f64,
}

pub fn wave_particle_states(phi: f64) -> WaveParticleAmplitudes {
    let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let half = phi / 2.0;
    let global = Complex64::from_polar(1.0, half);
    WaveParticleAmplitudes {
        particle: [r, r * Complex64::from_polar(1.0, phi)],
        wave: [
            global * Complex64::new(half.cos(), 0.0),
            global * Complex64::new(0.0, -half.sin()),
        ],
        phi,
    }
}

/// Closed-form q(a, b, c) for the entanglement-assisted network, read off
/// the pre-detection state componentwise:
///
/// q(a,0,0) = ¼cos²α            q(a,0,1) = ¼sin²α
/// q(0,1,0) = ½sin²α·cos²(φ/2)  q(1,1,0) = ½sin²α·sin²(φ/2)
/// q(0,1,1) = ½cos²α·cos²(φ/2)  q(1,1,1) = ½cos²α·sin²(φ/2)
///
/// Cross-checked against the statevector simulation in the test suite.
pub fn analytic_distribution(phi: f64, alpha: f64) -> Result<JointDistribution, QuantumError> {
    if !phi.is_finite() || !alpha.is_finite() {
        return Err(QuantumError::NonFiniteAngle);
    }
    let (ca2, sa2) = (alpha.cos().powi(2), alpha.sin().powi(2));
    let (cw2, sw2) = ((phi / 2.0).cos().powi(2), (phi / 2.0).sin().powi(2));
    let mut probs = [0.0; 8];
    for a in 0..2usize {
        probs[a << 2] = 0.25 * ca2; // (a, 0, 0)
        probs[a << 2 | 1] = 0.25 * sa2; // (a, 0, 1)
    }
    probs[0b010] = 0.5 * sa2 * cw2;
    probs[0b110] = 0.5 * sa2 * sw2;
    probs[0b011] = 0.5 * ca2 * cw2;
    probs[0b111] = 0.5 * ca2 * sw2;
    JointDistribution::new(probs)
}

/// Closed-form (a, b) table for the quantum-control network: the control
/// fires with probability sin²α, giving wave statistics on A.
pub fn analytic_pair_distribution(phi: f64, alpha: f64) -> Result<PairDistribution, QuantumError> {
    if !phi.is_finite() || !alpha.is_finite() {
        return Err(QuantumError::NonFiniteAngle);
    }
    let (ca2, sa2) = (alpha.cos().powi(2), alpha.sin().powi(2));
    let (cw2, sw2) = ((phi / 2.0).cos().powi(2), (phi / 2.0).sin().powi(2));
    Ok(PairDistribution {
        probs: [0.5 * ca2, sa2 * cw2, 0.5 * ca2, sa2 * sw2],
    })
}

/// Outcome distribution of any network variant: the joint three-outcome
/// table for the entanglement-assisted network, the (a, b) pair table for
/// the two control variants (b = coin outcome for the classical network).
#[derive(Debug, Clone, PartialEq)]
pub enum VariantDistribution {
    Joint(JointDistribution),
    Pair(PairDistribution),
}

/// Simulates `variant` and reads out its exact outcome distribution.
pub fn simulate_distribution(
    variant: &CircuitVariant,
) -> Result<VariantDistribution, QuantumError> {
    match build_circuit(variant) {
        CircuitBuild::Deterministic(circuit) => {
            let state = circuit.run()?;
            match state.n_qubits() {
                3 => Ok(VariantDistribution::Joint(JointDistribution::from_state(
                    &state,
                )?)),
                2 => {
                    let mut probs = [0.0; 4];
                    for (i, p) in probs.iter_mut().enumerate() {
                        *p = state.probability(i);
                    }
                    Ok(VariantDistribution::Pair(PairDistribution { probs }))
                }
                n => Err(QuantumError::WrongQubitCount {
                    expected: 3,
                    got: n,
                }),
            }
        }
        CircuitBuild::CoinMixture { open, closed } => {
            let open = open.run()?;
            let closed = closed.run()?;
            // Fair coin: b = 0 keeps the interferometer open.
            let probs = [
                0.5 * open.probability(0),
                0.5 * closed.probability(0),
                0.5 * open.probability(1),
                0.5 * closed.probability(1),
            ];
            Ok(VariantDistribution::Pair(PairDistribution { probs }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::circuit::entanglement_assisted_state;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn joint_distribution_requires_three_qubits() {
        let err = JointDistribution::from_state(&StateVector::zero(2));
        assert!(matches!(
            err,
            Err(QuantumError::WrongQubitCount {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn zero_angles_give_quarter_quarter_half_table() {
        let state = entanglement_assisted_state(0.0, 0.0).unwrap();
        let q = JointDistribution::from_state(&state).unwrap();
        assert!((q.prob(0, 0, 0) - 0.25).abs() < 1e-15);
        assert!((q.prob(1, 0, 0) - 0.25).abs() < 1e-15);
        assert!((q.prob(0, 1, 1) - 0.5).abs() < 1e-15);
        let named = q.prob(0, 0, 0) + q.prob(1, 0, 0) + q.prob(0, 1, 1);
        assert!((named - 1.0).abs() < 1e-15);
    }

    #[test]
    fn any_simulated_state_sums_to_one() {
        for i in 0..16 {
            let state = entanglement_assisted_state(0.37 * i as f64, 0.23 * i as f64).unwrap();
            let q = JointDistribution::from_state(&state).unwrap();
            let total: f64 = q.as_array().iter().sum();
            assert!((total - 1.0).abs() < PROB_TOL);
        }
    }

    #[test]
    fn analytic_matches_frozen_wave_dominated_tables() {
        // (φ=0, α=π/2): q(0,1,0) = 1/2, q(a,0,1) = 1/4 each, rest 0.
        let q = analytic_distribution(0.0, FRAC_PI_2).unwrap();
        assert!((q.prob(0, 1, 0) - 0.5).abs() < 1e-15);
        assert!((q.prob(0, 0, 1) - 0.25).abs() < 1e-15);
        assert!((q.prob(1, 0, 1) - 0.25).abs() < 1e-15);
        for (a, b, c) in [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1)] {
            assert!(q.prob(a, b, c) < 1e-15);
        }
        // (φ=π, α=π/2): the wave antinode flips output port: q(1,1,0) = 1/2.
        let q = analytic_distribution(PI, FRAC_PI_2).unwrap();
        assert!((q.prob(1, 1, 0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn analytic_equals_simulation_on_a_grid() {
        for i in 0..32 {
            for j in 0..32 {
                let phi = 2.0 * PI * i as f64 / 32.0;
                let alpha = 2.0 * PI * j as f64 / 32.0;
                let simulated = JointDistribution::from_state(
                    &entanglement_assisted_state(phi, alpha).unwrap(),
                )
                .unwrap();
                let analytic = analytic_distribution(phi, alpha).unwrap();
                assert!(
                    simulated.max_deviation(&analytic) < 1e-12,
                    "deviation at φ={phi}, α={alpha}"
                );
            }
        }
    }

    #[test]
    fn c_marginal_is_half_for_all_angles() {
        for i in 0..16 {
            for j in 0..16 {
                let q = analytic_distribution(0.41 * i as f64, 0.39 * j as f64).unwrap();
                assert!((q.marginal_c(0) - 0.5).abs() < 1e-12);
                assert!((q.marginal_c(1) - 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wave_particle_amplitudes_at_reference_phases() {
        // φ = 0: |p⟩ = (1,1)/√2, |w⟩ = (1,0).
        let wp = wave_particle_states(0.0);
        assert!((wp.particle[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((wp.particle[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((wp.wave[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(wp.wave[1].norm() < 1e-15);
        // φ = π: |w⟩ squared magnitudes (0, 1).
        let wp = wave_particle_states(PI);
        assert!(wp.wave[0].norm_sqr() < 1e-15);
        assert!((wp.wave[1].norm_sqr() - 1.0).abs() < 1e-15);
        // φ = π/2: both states have squared magnitudes (1/2, 1/2).
        let wp = wave_particle_states(FRAC_PI_2);
        for amp in wp.particle.iter().chain(wp.wave.iter()) {
            assert!((amp.norm_sqr() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn wave_squared_magnitudes_follow_cos_sin_of_half_phi() {
        for i in 0..64 {
            let phi = 2.0 * PI * i as f64 / 64.0;
            let wp = wave_particle_states(phi);
            assert!((wp.wave[0].norm_sqr() - (phi / 2.0).cos().powi(2)).abs() < 1e-12);
            assert!((wp.wave[1].norm_sqr() - (phi / 2.0).sin().powi(2)).abs() < 1e-12);
            assert!((wp.particle[0].norm_sqr() - 0.5).abs() < 1e-12);
            assert!((wp.particle[1].norm_sqr() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn quantum_control_matches_ea_conditioned_on_c0() {
        for i in 1..8 {
            let (phi, alpha) = (0.5 * i as f64, 0.19 * i as f64);
            let variant = CircuitVariant::quantum_control(phi, alpha).unwrap();
            let VariantDistribution::Pair(qc) = simulate_distribution(&variant).unwrap() else {
                panic!("pair expected");
            };
            let ea = analytic_distribution(phi, alpha).unwrap();
            let conditioned = ea.conditional_ab_given_c(0).unwrap();
            assert!(qc.max_deviation(&conditioned) < 1e-12);
            // Conditioning on c = 1 swaps the roles of cos α and sin α.
            let swapped = analytic_pair_distribution(phi, FRAC_PI_2 - alpha).unwrap();
            let conditioned1 = ea.conditional_ab_given_c(1).unwrap();
            assert!(swapped.max_deviation(&conditioned1) < 1e-12);
        }
    }

    #[test]
    fn classical_control_matches_ea_marginalized_over_c() {
        // Tracing out C leaves a fair open/closed mixture, exactly the
        // classical-coin network, whatever α was.
        for i in 0..8 {
            let phi = 0.7 * i as f64;
            let variant = CircuitVariant::classical_control(phi).unwrap();
            let VariantDistribution::Pair(cc) = simulate_distribution(&variant).unwrap() else {
                panic!("pair expected");
            };
            let ea = analytic_distribution(phi, 0.91).unwrap();
            assert!(cc.max_deviation(&ea.marginal_ab()) < 1e-12);
        }
    }

    #[test]
    fn quantum_control_closed_form_matches_simulation() {
        for i in 0..8 {
            for j in 0..8 {
                let (phi, alpha) = (0.79 * i as f64, 0.41 * j as f64);
                let variant = CircuitVariant::quantum_control(phi, alpha).unwrap();
                let VariantDistribution::Pair(sim) = simulate_distribution(&variant).unwrap()
                else {
                    panic!("pair expected");
                };
                let analytic = analytic_pair_distribution(phi, alpha).unwrap();
                assert!(sim.max_deviation(&analytic) < 1e-12);
            }
        }
    }

    #[test]
    fn json_rendering_has_full_precision_and_sorted_keys() {
        let q = analytic_distribution(0.7, 0.3).unwrap();
        let json = q.to_json_string();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        let obj = parsed.as_object().unwrap();
        assert_eq!(obj.len(), 8);
        for (i, key) in obj.keys().enumerate() {
            let expected = format!("{}{}{}", (i >> 2) & 1, (i >> 1) & 1, i & 1);
            assert_eq!(key, &expected);
        }
        for i in 0..8u8 {
            let key = format!("{}{}{}", (i >> 2) & 1, (i >> 1) & 1, i & 1);
            let value = obj[&key].as_f64().unwrap();
            assert_eq!(value, q.prob((i >> 2) & 1, (i >> 1) & 1, i & 1));
        }
    }
}
