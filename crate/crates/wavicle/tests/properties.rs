//! Cross-module invariants, exercised with seeded randomized batteries.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_8};

use wavicle::experiment::SplitMix64;
use wavicle::feasibility::{
    check_assumptions, check_delayed_choice, check_delayed_choice_with, check_independence,
    check_independence_with, Verdict,
};
use wavicle::hv::{
    check_adequacy, check_adequacy_at_phis, model_distribution, AssumptionSet, Determinism, HVModel,
};
use wavicle::quantum::{analytic_distribution, JointDistribution};

/// Any invariant-satisfying model must map to a valid probability table.
#[test]
fn model_distribution_is_always_a_distribution() {
    let mut rng = SplitMix64::new(0xBEEF);
    for _ in 0..500 {
        let n = 1 + (rng.next_u64() % 8) as usize;
        let mut raw: Vec<f64> = (0..2 * n).map(|_| rng.next_f64() + 1e-9).collect();
        let total: f64 = raw.iter().sum();
        raw.iter_mut().for_each(|w| *w /= total);
        let model = HVModel {
            n,
            f_particle: raw[..n].to_vec(),
            f_wave: raw[n..].to_vec(),
            x: (0..n).map(|_| rng.next_f64()).collect(),
            y: (0..n).map(|_| rng.next_f64()).collect(),
            z: (0..n).map(|_| rng.next_f64()).collect(),
            v: (0..n).map(|_| rng.next_f64()).collect(),
            partition: (0..n).map(|_| rng.next_bit()).collect(),
        };
        let phi = rng.next_f64() * 6.0;
        let p = model_distribution(&model, phi).unwrap();
        let total: f64 = p.as_array().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(p.as_array().iter().all(|&x| x >= 0.0));
    }
}

/// Feasible witnesses survive re-simulation at every setting they were
/// solved for, and at phases they were not.
#[test]
fn witnesses_are_sound_across_cardinalities() {
    let mut rng = SplitMix64::new(0xA11CE);
    for &n in &[2usize, 4, 6, 8] {
        let alpha = rng.next_f64() * FRAC_PI_2;
        let phi = rng.next_f64() * 2.0;
        let report = check_assumptions(alpha, phi, n, &AssumptionSet::baseline()).unwrap();
        assert_eq!(report.verdict, Verdict::Feasible, "n = {n}");
        let witness = report.witness().unwrap();
        let phis = [phi, 0.0, 1.0, 2.9, 5.1];
        let adequacy = check_adequacy_at_phis(witness, alpha, &phis, 1e-9).unwrap();
        assert!(adequacy.passes(), "witness drifts at n = {n}");
    }
}

/// Adding hidden-variable values never rescues an infeasible independence
/// or delayed-choice case.
#[test]
fn infeasibility_is_stable_in_cardinality() {
    for &n in &[2usize, 4, 6, 8] {
        for &alpha in &[0.0, 0.3, FRAC_PI_3, 1.2] {
            let report = check_independence(alpha, n, 101).unwrap();
            assert_eq!(report.verdict, Verdict::Infeasible, "alpha={alpha}, n={n}");
        }
        let delayed = check_delayed_choice(FRAC_PI_8, 3.0 * FRAC_PI_8, n).unwrap();
        assert_eq!(delayed.verdict, Verdict::Infeasible, "n={n}");
    }
}

/// Identical inputs give byte-identical serialized reports, whatever the
/// verdict or encoding.
#[test]
fn engine_reports_are_reproducible() {
    let runs: Vec<String> = (0..2)
        .map(|_| {
            let mut out = String::new();
            out += &check_assumptions(0.9, 0.4, 4, &AssumptionSet::baseline())
                .unwrap()
                .to_json_string();
            out += &check_independence(1.1, 4, 151).unwrap().to_json_string();
            out += &check_independence_with(1.1, 4, 151, Determinism::Weak)
                .unwrap()
                .to_json_string();
            out += &check_delayed_choice(0.2, 1.3, 4).unwrap().to_json_string();
            out += &check_delayed_choice_with(0.2, 1.3, 4, Determinism::Weak)
                .unwrap()
                .to_json_string();
            out
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

/// The closed-form table stays valid and oracle-consistent off the usual
/// grids: random angles, including far outside [0, 2π).
#[test]
fn analytic_distribution_is_valid_for_wild_angles() {
    let mut rng = SplitMix64::new(0x5EED);
    for _ in 0..2000 {
        let phi = (rng.next_f64() - 0.5) * 200.0;
        let alpha = (rng.next_f64() - 0.5) * 200.0;
        let q = analytic_distribution(phi, alpha).unwrap();
        let total: f64 = q.as_array().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((q.marginal_c(0) - 0.5).abs() < 1e-12);
    }
}

/// The explicit single-index failure mode: a wave with nontrivial open-arm
/// statistics and b = 0 weight contradicts the quantum table at generic φ.
#[test]
fn wave_weight_on_the_open_arm_is_detected() {
    let mut rng = SplitMix64::new(0xD15C);
    for _ in 0..200 {
        let alpha = 0.5 + rng.next_f64() * 0.5;
        let q = analytic_distribution(1.0, alpha).unwrap();
        let c2 = alpha.cos().powi(2);
        let s2 = alpha.sin().powi(2);
        let model = HVModel {
            n: 2,
            f_particle: vec![0.5 * c2, 0.5 * s2],
            f_wave: vec![0.5 * s2, 0.5 * c2],
            x: vec![0.5 + 0.4 * rng.next_f64() + 1e-3, 0.5],
            y: vec![0.5, 0.5],
            z: vec![1.0, 1.0],
            v: vec![1.0, 0.0], // wave weight leaks onto the open arm
            partition: vec![0, 1],
        };
        let report = check_adequacy(&model, 1.0, &q, 1e-9).unwrap();
        assert!(report.max_residual > 1e-6);
    }
}

/// model_distribution at the constructed witness equals the quantum table
/// cell by cell, not just within the adequacy tolerance.
#[test]
fn constructed_witness_matches_cellwise() {
    let mut rng = SplitMix64::new(0xC0DE);
    for _ in 0..200 {
        let alpha = rng.next_f64() * FRAC_PI_2;
        let phi = rng.next_f64() * 6.0;
        let witness = wavicle::hv::construct_nonlocal_model(alpha, phi, 4).unwrap();
        let predicted = model_distribution(&witness, phi).unwrap();
        let q = analytic_distribution(phi, alpha).unwrap();
        assert!(predicted.max_deviation(&q) < 1e-14);
        let _ = JointDistribution::new(*predicted.as_array()).unwrap();
    }
}
