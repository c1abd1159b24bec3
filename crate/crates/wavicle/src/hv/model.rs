//! The finite hidden-variable model class and its forward distribution.

use serde::{Deserialize, Serialize};

use super::HvError;
use crate::quantum::{analytic_distribution, JointDistribution};

/// Tolerance on prior normalization Σᵢ(f_p + f_w) = 1.
pub const PRIOR_TOL: f64 = 1e-12;

/// Default adequacy tolerance: well above accumulated simulator rounding,
/// far below any physically meaningful gap.
pub const ADEQUACY_TOL: f64 = 1e-9;

/// A hidden-variable theory over the label λ ∈ {particle, wave} and a finite
/// auxiliary index i ∈ {0, …, N−1}.
///
/// * `f_particle\[i\]`, `f_wave\[i\]` — prior weights of (λ, i); together they
///   sum to 1.
/// * `x\[i\]` — P(a = 0) for a wave crossing an open interferometer (b = 0);
///   unconstrained by the wave/particle definitions.
/// * `y\[i\]` — P(a = 0) for a particle in a closed interferometer (b = 1).
/// * `z\[i\]` — P(b = 0 | particle, i); `v\[i\]` — P(b = 0 | wave, i). Both are
///   exactly 0 or 1 under strong determinism.
/// * `partition\[i\]` — the deterministic C outcome assigned to index i; the
///   index sets I₀/I₁ are the preimages of 0/1.
///
/// A particle in an open interferometer always has outcome statistics
/// (1/2, 1/2); a wave in a closed one has (cos²(φ/2), sin²(φ/2)). Those two
/// conditionals define the labels and are not model parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HVModel {
    #[serde(rename = "N")]
    pub n: usize,
    pub f_particle: Vec<f64>,
    pub f_wave: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub v: Vec<f64>,
    pub partition: Vec<u8>,
}

impl HVModel {
    /// Checks lengths, ranges and prior normalization.
    pub fn validate(&self) -> Result<(), HvError> {
        let n = self.n;
        if n == 0 {
            return Err(HvError::TooFewIndices { needed: 1, got: 0 });
        }
        for (name, len) in [
            ("f_particle", self.f_particle.len()),
            ("f_wave", self.f_wave.len()),
            ("x", self.x.len()),
            ("y", self.y.len()),
            ("z", self.z.len()),
            ("v", self.v.len()),
            ("partition", self.partition.len()),
        ] {
            if len != n {
                return Err(HvError::LengthMismatch {
                    field: name,
                    expected: n,
                    got: len,
                });
            }
        }
        for (name, values) in [("f_particle", &self.f_particle), ("f_wave", &self.f_wave)] {
            for &w in values.iter() {
                if !w.is_finite() || w < 0.0 {
                    return Err(HvError::ValueOutOfRange {
                        field: name,
                        value: w,
                    });
                }
            }
        }
        for (name, values) in [
            ("x", &self.x),
            ("y", &self.y),
            ("z", &self.z),
            ("v", &self.v),
        ] {
            for &w in values.iter() {
                if !w.is_finite() || !(0.0..=1.0).contains(&w) {
                    return Err(HvError::ValueOutOfRange {
                        field: name,
                        value: w,
                    });
                }
            }
        }
        if self.partition.iter().any(|&c| c > 1) {
            return Err(HvError::InvalidPartition);
        }
        let total: f64 = self.f_particle.iter().chain(self.f_wave.iter()).sum();
        if (total - 1.0).abs() > PRIOR_TOL {
            return Err(HvError::PriorNormalization { sum: total });
        }
        Ok(())
    }

    /// Additionally requires z and v to be exactly binary.
    pub fn validate_strong_determinism(&self) -> Result<(), HvError> {
        self.validate()?;
        for (name, values) in [("z", &self.z), ("v", &self.v)] {
            for &w in values.iter() {
                if w != 0.0 && w != 1.0 {
                    return Err(HvError::NotBinary {
                        field: name,
                        value: w,
                    });
                }
            }
        }
        Ok(())
    }

    /// True when the model lies in the joint-outcome encoding: b is decided
    /// by the index alone, i.e. z\[i\] = v\[i\] ∈ {0, 1} for every i.
    pub fn is_weak_encoded(&self) -> bool {
        self.z
            .iter()
            .zip(self.v.iter())
            .all(|(&z, &v)| z == v && (z == 0.0 || z == 1.0))
    }

    /// Prior mass Σ_{i ∈ I_c}(f_p + f_w) of a partition cell.
    pub fn cell_mass(&self, c: u8) -> f64 {
        (0..self.n)
            .filter(|&i| self.partition[i] == c)
            .map(|i| self.f_particle[i] + self.f_wave[i])
            .sum()
    }
}

/// The model's predicted joint distribution p(a, b, c) at phase φ, obtained
/// by summing p(a|b,λ,i)·p(b|λ,i)·p(c|λ,i)·f_λ^i over all hidden variables.
pub fn model_distribution(model: &HVModel, phi: f64) -> Result<JointDistribution, HvError> {
    model.validate()?;
    if !phi.is_finite() {
        return Err(HvError::NonFiniteInput);
    }
    let cw2 = (phi / 2.0).cos().powi(2);
    let sw2 = (phi / 2.0).sin().powi(2);
    let mut probs = [0.0; 8];
    for i in 0..model.n {
        let (fp, fw) = (model.f_particle[i], model.f_wave[i]);
        let (xi, yi, zi, vi) = (model.x[i], model.y[i], model.z[i], model.v[i]);
        let c = model.partition[i] as usize;
        // b = 0: particles are phase-insensitive, waves follow x_i.
        probs[c] += 0.5 * zi * fp + xi * vi * fw;
        probs[0b100 | c] += 0.5 * zi * fp + (1.0 - xi) * vi * fw;
        // b = 1: waves interfere, particles follow y_i.
        probs[0b010 | c] += yi * (1.0 - zi) * fp + cw2 * (1.0 - vi) * fw;
        probs[0b110 | c] += (1.0 - yi) * (1.0 - zi) * fp + sw2 * (1.0 - vi) * fw;
    }
    Ok(JointDistribution::new(probs)?)
}

/// Per-cell and maximum absolute deviation between a model prediction and a
/// target distribution.
#[derive(Debug, Clone, Serialize)]
pub struct AdequacyReport {
    pub max_residual: f64,
    pub per_cell: [f64; 8],
    pub tol: f64,
}

impl AdequacyReport {
    pub fn passes(&self) -> bool {
        self.max_residual < self.tol
    }
}

/// Compares the model's forward distribution at φ against `q`.
pub fn check_adequacy(
    model: &HVModel,
    phi: f64,
    q: &JointDistribution,
    tol: f64,
) -> Result<AdequacyReport, HvError> {
    if tol <= 0.0 || tol.is_nan() {
        return Err(HvError::InvalidTolerance { tol });
    }
    let predicted = model_distribution(model, phi)?;
    let mut per_cell = [0.0; 8];
    for (idx, cell) in per_cell.iter_mut().enumerate() {
        *cell = (predicted.as_array()[idx] - q.as_array()[idx]).abs();
    }
    let max_residual = per_cell.iter().copied().fold(0.0, f64::max);
    Ok(AdequacyReport {
        max_residual,
        per_cell,
        tol,
    })
}

/// Adequacy of one fixed model against the quantum table at several phases
/// simultaneously (the priors are not allowed to vary with φ here).
pub fn check_adequacy_at_phis(
    model: &HVModel,
    alpha: f64,
    phis: &[f64],
    tol: f64,
) -> Result<AdequacyReport, HvError> {
    let mut worst: Option<AdequacyReport> = None;
    for &phi in phis {
        let q = analytic_distribution(phi, alpha)?;
        let report = check_adequacy(model, phi, &q, tol)?;
        worst = Some(match worst {
            Some(w) if w.max_residual >= report.max_residual => w,
            _ => report,
        });
    }
    worst.ok_or(HvError::EmptyInput)
}

/// Builds the explicit strongly deterministic model that reproduces the
/// quantum table at rotation α: all particles see an open interferometer
/// (z ≡ 1), no wave carries b = 0 weight (v ≡ 0), and the partition splits
/// the particle mass as ½cos²α in I₀ and ½sin²α in I₁.
///
/// Even indices land in I₀ and odd in I₁; indices past the first pair carry
/// zero prior. The wave statistics x and y are unconstrained and set to 1/2.
pub fn construct_nonlocal_model(alpha: f64, phi: f64, n: usize) -> Result<HVModel, HvError> {
    if n < 2 {
        return Err(HvError::TooFewIndices { needed: 2, got: n });
    }
    if !alpha.is_finite() || !phi.is_finite() {
        return Err(HvError::NonFiniteInput);
    }
    let c2 = alpha.cos().powi(2);
    let s2 = alpha.sin().powi(2);
    let mut f_particle = vec![0.0; n];
    let mut f_wave = vec![0.0; n];
    f_particle[0] = 0.5 * c2;
    f_wave[0] = 0.5 * s2;
    f_particle[1] = 0.5 * s2;
    f_wave[1] = 0.5 * c2;
    let model = HVModel {
        n,
        f_particle,
        f_wave,
        x: vec![0.5; n],
        y: vec![0.5; n],
        z: vec![1.0; n],
        v: vec![0.0; n],
        partition: (0..n).map(|i| (i % 2) as u8).collect(),
    };
    model.validate_strong_determinism()?;
    verify_witness(&model, alpha, phi)?;
    Ok(model)
}

/// Constructed witnesses must reproduce the quantum table; anything else is
/// a construction bug and surfaces as an error, never a silent pass.
fn verify_witness(model: &HVModel, alpha: f64, phi: f64) -> Result<(), HvError> {
    let q = analytic_distribution(phi, alpha)?;
    let report = check_adequacy(model, phi, &q, ADEQUACY_TOL)?;
    if !report.passes() {
        return Err(HvError::WitnessInadequate {
            residual: report.max_residual,
        });
    }
    Ok(())
}

/// The joint-outcome-encoding counterpart of [`construct_nonlocal_model`]:
/// b is decided by the index alone (z\[i\] = v\[i\]), so particle and wave
/// weight live on separate indices and four cells are needed.
pub fn construct_weak_nonlocal_model(alpha: f64, phi: f64, n: usize) -> Result<HVModel, HvError> {
    if n < 4 {
        return Err(HvError::TooFewIndices { needed: 4, got: n });
    }
    if !alpha.is_finite() || !phi.is_finite() {
        return Err(HvError::NonFiniteInput);
    }
    let c2 = alpha.cos().powi(2);
    let s2 = alpha.sin().powi(2);
    let mut f_particle = vec![0.0; n];
    let mut f_wave = vec![0.0; n];
    // Index i sits in cell (b, c) = (i%4 >> 1, i%4 & 1). Particle mass may
    // only live where b = 0, wave mass where b = 1.
    f_particle[0] = 0.5 * c2; // (b=0, c=0)
    f_particle[1] = 0.5 * s2; // (b=0, c=1)
    f_wave[2] = 0.5 * s2; // (b=1, c=0)
    f_wave[3] = 0.5 * c2; // (b=1, c=1)
    let mut zv = vec![0.0; n];
    let mut partition = vec![0u8; n];
    for i in 0..n {
        let cell = (i % 4) as u8;
        zv[i] = 1.0 - f64::from(cell >> 1);
        partition[i] = cell & 1;
    }
    let model = HVModel {
        n,
        f_particle,
        f_wave,
        x: vec![0.5; n],
        y: vec![0.5; n],
        z: zv.clone(),
        v: zv,
        partition,
    };
    model.validate_strong_determinism()?;
    debug_assert!(model.is_weak_encoded());
    verify_witness(&model, alpha, phi)?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    fn single_particle_model() -> HVModel {
        HVModel {
            n: 1,
            f_particle: vec![1.0],
            f_wave: vec![0.0],
            x: vec![0.5],
            y: vec![0.5],
            z: vec![1.0],
            v: vec![0.0],
            partition: vec![0],
        }
    }

    #[test]
    fn single_deterministic_particle_branch() {
        let p = model_distribution(&single_particle_model(), 0.4).unwrap();
        assert!((p.prob(0, 0, 0) - 0.5).abs() < 1e-15);
        assert!((p.prob(1, 0, 0) - 0.5).abs() < 1e-15);
        let rest: f64 = p.as_array().iter().sum::<f64>() - p.prob(0, 0, 0) - p.prob(1, 0, 0);
        assert!(rest.abs() < 1e-15);
    }

    #[test]
    fn single_wave_branch_at_interference_maximum() {
        let model = HVModel {
            n: 1,
            f_particle: vec![0.0],
            f_wave: vec![1.0],
            x: vec![0.5],
            y: vec![0.5],
            z: vec![1.0],
            v: vec![0.0], // closed interferometer for the wave
            partition: vec![1],
        };
        let p = model_distribution(&model, 0.0).unwrap();
        assert!((p.prob(0, 1, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constructed_witness_is_adequate() {
        let alpha = FRAC_PI_3;
        let phi = 0.9;
        let model = construct_nonlocal_model(alpha, phi, 4).unwrap();
        let q = analytic_distribution(phi, alpha).unwrap();
        let report = check_adequacy(&model, phi, &q, ADEQUACY_TOL).unwrap();
        assert!(report.passes(), "max residual {}", report.max_residual);
    }

    #[test]
    fn adequacy_is_reflexive() {
        let model = construct_nonlocal_model(0.8, 0.3, 4).unwrap();
        let p = model_distribution(&model, 0.3).unwrap();
        let report = check_adequacy(&model, 0.3, &p, 1e-12).unwrap();
        assert_eq!(report.max_residual, 0.0);
    }

    #[test]
    fn single_particle_model_fails_adequacy_grossly() {
        let q = analytic_distribution(0.7, FRAC_PI_3).unwrap();
        let report = check_adequacy(&single_particle_model(), 0.7, &q, 1e-9).unwrap();
        assert!(report.max_residual >= 0.25);
    }

    #[test]
    fn witness_sector_masses_follow_half_cos_sin() {
        // α = π/3: particle masses 1/8 in I₀ and 3/8 in I₁.
        let model = construct_nonlocal_model(FRAC_PI_3, 0.0, 4).unwrap();
        let i0_particles: f64 = (0..model.n)
            .filter(|&i| model.partition[i] == 0)
            .map(|i| model.f_particle[i])
            .sum();
        let i1_particles: f64 = (0..model.n)
            .filter(|&i| model.partition[i] == 1)
            .map(|i| model.f_particle[i])
            .sum();
        assert!((i0_particles - 0.125).abs() < 1e-15);
        assert!((i1_particles - 0.375).abs() < 1e-15);
        // α = π/4: both quarter weights.
        let model = construct_nonlocal_model(FRAC_PI_4, 0.0, 2).unwrap();
        assert!((model.f_particle[0] - 0.25).abs() < 1e-15);
        assert!((model.f_particle[1] - 0.25).abs() < 1e-15);
        // α = 0: no particle weight in I₁.
        let model = construct_nonlocal_model(0.0, 0.0, 4).unwrap();
        let i1: f64 = (0..4)
            .filter(|&i| model.partition[i] == 1)
            .map(|i| model.f_particle[i])
            .sum();
        assert_eq!(i1, 0.0);
    }

    #[test]
    fn cell_masses_cover_the_whole_prior() {
        let model = construct_nonlocal_model(0.77, 1.3, 6).unwrap();
        assert!((model.cell_mass(0) + model.cell_mass(1) - 1.0).abs() < 1e-15);
        assert!((model.cell_mass(0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn weak_witness_is_adequate_and_weak_encoded() {
        for &alpha in &[0.0, 0.3, FRAC_PI_4, FRAC_PI_3, 1.4] {
            let model = construct_weak_nonlocal_model(alpha, 0.7, 4).unwrap();
            assert!(model.is_weak_encoded());
            let q = analytic_distribution(0.7, alpha).unwrap();
            let report = check_adequacy(&model, 0.7, &q, ADEQUACY_TOL).unwrap();
            assert!(report.passes());
        }
        // The strong witness mixes particle and wave weight on one index,
        // which the joint-outcome encoding forbids.
        let strong = construct_nonlocal_model(0.6, 0.0, 4).unwrap();
        assert!(!strong.is_weak_encoded());
    }

    #[test]
    fn witness_is_adequate_at_many_phases_simultaneously() {
        let model = construct_nonlocal_model(1.1, 0.0, 4).unwrap();
        let phis = [0.0, 0.5, 1.0, 2.0, 3.0, 5.5];
        let report = check_adequacy_at_phis(&model, 1.1, &phis, ADEQUACY_TOL).unwrap();
        assert!(report.passes());
    }

    #[test]
    fn wave_weight_on_open_arm_breaks_adequacy() {
        // v·f_w > 0 with x ≠ 1/2 shifts the open-arm statistics.
        let mut model = construct_nonlocal_model(FRAC_PI_3, 1.0, 4).unwrap();
        model.v[0] = 1.0;
        model.x[0] = 0.9;
        let q = analytic_distribution(1.0, FRAC_PI_3).unwrap();
        let report = check_adequacy(&model, 1.0, &q, 1e-9).unwrap();
        assert!(report.max_residual > 1e-4);
    }

    #[test]
    fn validation_rejects_malformed_models() {
        let mut model = single_particle_model();
        model.x[0] = 1.5;
        assert!(matches!(
            model.validate(),
            Err(HvError::ValueOutOfRange { field: "x", .. })
        ));

        let mut model = single_particle_model();
        model.f_particle[0] = 0.7;
        assert!(matches!(
            model.validate(),
            Err(HvError::PriorNormalization { .. })
        ));

        let mut model = single_particle_model();
        model.partition[0] = 2;
        assert!(matches!(model.validate(), Err(HvError::InvalidPartition)));

        let mut model = single_particle_model();
        model.z[0] = 0.3;
        assert!(model.validate().is_ok());
        assert!(matches!(
            model.validate_strong_determinism(),
            Err(HvError::NotBinary { field: "z", .. })
        ));
    }

    #[test]
    fn model_round_trips_through_json() {
        let model = construct_nonlocal_model(0.9, 0.2, 4).unwrap();
        let json = serde_json::to_string(&model).unwrap();
        assert!(json.contains("\"N\":4"));
        let back: HVModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, model);
    }
}
