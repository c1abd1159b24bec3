//! The feasibility checks: plain assumption sets, source independence, and
//! delayed rotation choice.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use crate::hv::{
    check_adequacy, enumerate_branches, reduce_constraints, reduce_constraints_delayed,
    reduce_constraints_product, Assumption, AssumptionSet, ConstraintSystem, Determinism,
    DiscreteAssignment, HVModel, ReductionMode, ADEQUACY_TOL, Q0_MAXIMALLY_ENTANGLED,
};
use crate::quantum::analytic_distribution;

use super::report::{Certificate, Evidence, FeasibilityReport, Settings, Verdict};
use super::simplex::{solve_feasibility, LpStatus};
use super::FeasibilityError;

/// Discrete assignments are enumerated exhaustively up to this cardinality.
pub const MAX_ENUMERATION_N: usize = 8;

/// Default resolution of the particle-fraction grid scanned by
/// [`check_independence`], on top of the two analytic candidates.
pub const DEFAULT_F_GRID: usize = 1001;

/// Two rotations count as degenerate when their cos² values agree to this.
pub const DEGENERATE_TOL: f64 = 1e-9;

/// Phases at which every returned witness is re-verified against the
/// quantum table (reduced-class witnesses are φ-independent).
const VERIFICATION_PHIS: [f64; 4] = [0.0, 0.7, FRAC_PI_2, 2.5];

/// Decides a standalone constraint system, reporting the satisfying
/// assignment or the violation the phase-1 simplex could not remove.
pub fn lp_feasible(system: &ConstraintSystem) -> Result<FeasibilityReport, FeasibilityError> {
    let solution = solve_feasibility(system)?;
    let settings = Settings {
        alpha: Some(system.metadata.alpha),
        phi: Some(system.metadata.phi),
        n: system.fixed_discrete.n(),
        assumptions: Vec::new(),
        encoding: if system.fixed_discrete.is_weak_encoded() {
            "weak".into()
        } else {
            "strong".into()
        },
        ..Default::default()
    };
    Ok(match solution.status {
        LpStatus::Feasible => {
            let assignment: BTreeMap<String, f64> = system
                .variables
                .iter()
                .zip(solution.assignment.iter())
                .map(|(v, &value)| (v.name.clone(), value))
                .collect();
            FeasibilityReport {
                verdict: Verdict::Feasible,
                degenerate: false,
                margin: solution.min_slack,
                scanned_branches: 1,
                settings,
                evidence: Evidence::Assignment(assignment),
                independence_f: system.metadata.product_f,
                note: None,
            }
        }
        LpStatus::Infeasible => FeasibilityReport {
            verdict: Verdict::Infeasible,
            degenerate: false,
            margin: solution.max_violation,
            scanned_branches: 1,
            settings,
            evidence: Evidence::Certificate(Certificate {
                description: format!(
                    "phase-1 minimum leaves total violation {:.3e}",
                    solution.total_violation
                ),
                forced_values: None,
                gap: None,
                min_violation: solution.max_violation,
            }),
            independence_f: system.metadata.product_f,
            note: None,
        },
    })
}

fn check_cardinality(n: usize) -> Result<(), FeasibilityError> {
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        return Err(FeasibilityError::EnumerationBound {
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    Ok(())
}

/// Reconstructs a hidden-variable model from an LP solution: priors from the
/// solved f_p/f_w (or f·F under the product form), the discrete data from
/// the branch, and the unconstrained statistics x = y = 1/2.
fn extract_witness(
    system: &ConstraintSystem,
    assignment: &[f64],
    discrete: &DiscreteAssignment,
) -> Result<HVModel, FeasibilityError> {
    let n = discrete.n();
    let mut f_particle = vec![0.0; n];
    let mut f_wave = vec![0.0; n];
    match system.metadata.product_f {
        Some(f) => {
            for i in 0..n {
                let idx = system
                    .variable_index(&format!("F[{i}]"))
                    .ok_or_else(|| fault(format!("missing F[{i}]")))?;
                let shared = assignment[idx].max(0.0);
                f_particle[i] = f * shared;
                f_wave[i] = (1.0 - f) * shared;
            }
        }
        None => {
            for i in 0..n {
                let p = system
                    .variable_index(&format!("f_p[{i}]"))
                    .ok_or_else(|| fault(format!("missing f_p[{i}]")))?;
                let w = system
                    .variable_index(&format!("f_w[{i}]"))
                    .ok_or_else(|| fault(format!("missing f_w[{i}]")))?;
                f_particle[i] = assignment[p].max(0.0);
                f_wave[i] = assignment[w].max(0.0);
            }
        }
    }
    // The LP pins the total at 1 within its own tolerance; rescale exactly.
    let total: f64 = f_particle.iter().chain(f_wave.iter()).sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(fault(format!("degenerate prior total {total}")));
    }
    for value in f_particle.iter_mut().chain(f_wave.iter_mut()) {
        *value /= total;
    }
    let model = HVModel {
        n,
        f_particle,
        f_wave,
        x: vec![0.5; n],
        y: vec![0.5; n],
        z: discrete.z.iter().map(|&b| f64::from(b)).collect(),
        v: discrete.v.iter().map(|&b| f64::from(b)).collect(),
        partition: discrete.partition.clone(),
    };
    model
        .validate_strong_determinism()
        .map_err(FeasibilityError::Hv)?;
    Ok(model)
}

fn fault(detail: String) -> FeasibilityError {
    FeasibilityError::NumericalFault { detail }
}

/// Every feasible verdict is re-simulated before it is reported: the witness
/// must reproduce the quantum table at each rotation it was solved for, at
/// several phases, and must satisfy the unreduced system (in particular the
/// closed-arm particle pair, which the reduction claims holds identically).
fn verify_witness(
    witness: &HVModel,
    alphas: &[f64],
    extra_phi: f64,
    assumptions: &AssumptionSet,
    discrete: &DiscreteAssignment,
) -> Result<(), FeasibilityError> {
    for &alpha in alphas {
        for phi in VERIFICATION_PHIS.iter().copied().chain([extra_phi]) {
            let q = analytic_distribution(phi, alpha).map_err(|e| fault(e.to_string()))?;
            let report =
                check_adequacy(witness, phi, &q, ADEQUACY_TOL).map_err(FeasibilityError::Hv)?;
            if !report.passes() {
                return Err(fault(format!(
                    "witness residual {:.3e} at alpha={alpha}, phi={phi}",
                    report.max_residual
                )));
            }
            let full = reduce_constraints(
                alpha,
                phi,
                Q0_MAXIMALLY_ENTANGLED,
                discrete,
                assumptions,
                ReductionMode::Substituted,
            )
            .map_err(FeasibilityError::Hv)?;
            let point = substituted_point(&full, witness)?;
            for constraint in full.equalities.iter() {
                let residual = (constraint.evaluate(&point) - constraint.rhs).abs();
                if residual > ADEQUACY_TOL {
                    return Err(fault(format!(
                        "witness violates '{}' by {residual:.3e}",
                        constraint.label
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Lifts a model into the substituted system's variable space, with
/// u = x·f_w and t = y·f_p.
fn substituted_point(
    system: &ConstraintSystem,
    model: &HVModel,
) -> Result<Vec<f64>, FeasibilityError> {
    let mut point = vec![0.0; system.variables.len()];
    for i in 0..model.n {
        for (name, value) in [
            (format!("f_p[{i}]"), model.f_particle[i]),
            (format!("f_w[{i}]"), model.f_wave[i]),
            (format!("u[{i}]"), model.x[i] * model.f_wave[i]),
            (format!("t[{i}]"), model.y[i] * model.f_particle[i]),
        ] {
            if let Some(idx) = system.variable_index(&name) {
                point[idx] = value;
            }
        }
    }
    Ok(point)
}

fn branch_label(determinism: Determinism) -> String {
    determinism.to_string()
}

/// Feasibility of the hidden-variable class under `assumptions` at the
/// given setting, via exhaustive branch enumeration (canonical up to index
/// permutation) over the reduced systems with q₀ = ½.
pub fn check_assumptions(
    alpha: f64,
    phi: f64,
    n: usize,
    assumptions: &AssumptionSet,
) -> Result<FeasibilityReport, FeasibilityError> {
    check_cardinality(n)?;
    let determinism = assumptions
        .require_determinism()
        .map_err(FeasibilityError::Hv)?;
    if assumptions.contains(Assumption::DelayedAlphaChoice) {
        return Err(FeasibilityError::DelayedNeedsPair);
    }
    if assumptions.contains(Assumption::Independence) {
        let mut report = independence_scan(alpha, n, DEFAULT_F_GRID, determinism)?;
        report.settings.phi = Some(phi);
        report.settings.assumptions = assumptions.labels();
        return Ok(report);
    }

    let q0 = Q0_MAXIMALLY_ENTANGLED;
    let mut best_violation = f64::INFINITY;
    let mut scanned = 0usize;
    for branch in enumerate_branches(n, determinism) {
        let system =
            reduce_constraints(alpha, phi, q0, &branch, assumptions, ReductionMode::Reduced)
                .map_err(FeasibilityError::Hv)?;
        let solution = solve_feasibility(&system)?;
        scanned += 1;
        if solution.status == LpStatus::Feasible {
            let witness = extract_witness(&system, &solution.assignment, &branch)?;
            verify_witness(&witness, &[alpha], phi, assumptions, &branch)?;
            return Ok(FeasibilityReport {
                verdict: Verdict::Feasible,
                degenerate: false,
                margin: solution.min_slack,
                scanned_branches: scanned,
                settings: Settings {
                    alpha: Some(alpha),
                    phi: Some(phi),
                    n,
                    assumptions: assumptions.labels(),
                    encoding: branch_label(determinism),
                    ..Default::default()
                },
                evidence: Evidence::Witness(witness),
                independence_f: None,
                note: None,
            });
        }
        best_violation = best_violation.min(solution.max_violation);
    }
    Ok(FeasibilityReport {
        verdict: Verdict::Infeasible,
        degenerate: false,
        margin: best_violation,
        scanned_branches: scanned,
        settings: Settings {
            alpha: Some(alpha),
            phi: Some(phi),
            n,
            assumptions: assumptions.labels(),
            encoding: branch_label(determinism),
            ..Default::default()
        },
        evidence: Evidence::Certificate(Certificate {
            description: format!(
                "no discrete assignment of {n} hidden-variable indices admits priors \
                 matching the quantum table"
            ),
            forced_values: None,
            gap: None,
            min_violation: best_violation,
        }),
        independence_f: None,
        note: Some("verdict holds for the scanned cardinality only".into()),
    })
}

/// Source independence: priors must factor as f_p = f·F, f_w = (1−f)·F.
/// For each particle fraction f on a uniform grid (plus the analytic
/// candidates cos²α and sin²α) the remaining system is linear in F and is
/// decided exactly; the verdict is Infeasible iff every f fails.
pub fn check_independence(
    alpha: f64,
    n: usize,
    grid: usize,
) -> Result<FeasibilityReport, FeasibilityError> {
    check_independence_with(alpha, n, grid, Determinism::Strong)
}

pub fn check_independence_with(
    alpha: f64,
    n: usize,
    grid: usize,
    determinism: Determinism,
) -> Result<FeasibilityReport, FeasibilityError> {
    let mut report = independence_scan(alpha, n, grid, determinism)?;
    report.settings.assumptions = AssumptionSet::new([
        match determinism {
            Determinism::Strong => Assumption::StrongDeterminism,
            Determinism::Weak => Assumption::WeakDeterminism,
        },
        Assumption::Independence,
    ])
    .map_err(FeasibilityError::Hv)?
    .labels();
    Ok(report)
}

fn independence_scan(
    alpha: f64,
    n: usize,
    grid: usize,
    determinism: Determinism,
) -> Result<FeasibilityReport, FeasibilityError> {
    check_cardinality(n)?;
    if grid < 101 {
        return Err(FeasibilityError::GridTooCoarse { grid, min: 101 });
    }
    let assumptions = AssumptionSet::new([match determinism {
        Determinism::Strong => Assumption::StrongDeterminism,
        Determinism::Weak => Assumption::WeakDeterminism,
    }])
    .map_err(FeasibilityError::Hv)?;

    let cos2 = alpha.cos().powi(2);
    let sin2 = alpha.sin().powi(2);
    let f_values: Vec<f64> = (0..grid)
        .map(|k| k as f64 / (grid - 1) as f64)
        .chain([cos2, sin2])
        .collect();

    // Under strong determinism every branch's product system shares the same
    // mass equations (the c-marginal plus the two sector rows force
    // f = cos²α = sin²α before any vanishing row is consulted), and extra
    // branches only pin F entries to zero. The all-open structure
    // (z ≡ 1, v ≡ 0, balanced partition) therefore dominates and is the one
    // branch scanned. The joint-outcome encoding has no dominating branch,
    // so there all branches are scanned.
    let branches: Vec<DiscreteAssignment> = match determinism {
        Determinism::Strong => vec![DiscreteAssignment::new(
            vec![1; n],
            vec![0; n],
            (0..n).map(|i| (i % 2) as u8).collect(),
        )
        .map_err(FeasibilityError::Hv)?],
        Determinism::Weak => enumerate_branches(n, Determinism::Weak),
    };

    let q0 = Q0_MAXIMALLY_ENTANGLED;
    let mut best_violation = f64::INFINITY;
    for &f in &f_values {
        for branch in &branches {
            let system = reduce_constraints_product(alpha, q0, branch, &assumptions, f)
                .map_err(FeasibilityError::Hv)?;
            let solution = solve_feasibility(&system)?;
            if solution.status == LpStatus::Feasible {
                let witness = extract_witness(&system, &solution.assignment, branch)?;
                verify_witness(&witness, &[alpha], 0.0, &assumptions, branch)?;
                return Ok(FeasibilityReport {
                    verdict: Verdict::Feasible,
                    degenerate: false,
                    margin: solution.min_slack,
                    scanned_branches: branches.len(),
                    settings: Settings {
                        alpha: Some(alpha),
                        n,
                        grid: Some(grid),
                        assumptions: assumptions.labels(),
                        encoding: branch_label(determinism),
                        ..Default::default()
                    },
                    evidence: Evidence::Witness(witness),
                    independence_f: Some(f),
                    note: None,
                });
            }
            best_violation = best_violation.min(solution.max_violation);
        }
    }
    Ok(FeasibilityReport {
        verdict: Verdict::Infeasible,
        degenerate: false,
        margin: best_violation,
        scanned_branches: branches.len(),
        settings: Settings {
            alpha: Some(alpha),
            n,
            grid: Some(grid),
            assumptions: assumptions.labels(),
            encoding: branch_label(determinism),
            ..Default::default()
        },
        evidence: Evidence::Certificate(Certificate {
            description: format!(
                "independent sources force the particle fraction to equal \
                 cos²α = {cos2:.15} and sin²α = {sin2:.15} simultaneously"
            ),
            forced_values: Some((cos2, sin2)),
            gap: Some((cos2 - sin2).abs()),
            min_violation: best_violation,
        }),
        independence_f: None,
        note: Some(
            "the forced-value certificate holds for every hidden-variable cardinality; \
             the grid scan confirms it at the requested N"
                .into(),
        ),
    })
}

/// Delayed rotation choice: the prior is fixed before α is drawn, so one
/// prior and one discrete structure must satisfy the reduced system for
/// both candidate rotations. That pins the I₀ particle mass at both
/// ½cos²α₁ and ½cos²α₂, impossible unless the two agree.
pub fn check_delayed_choice(
    alpha1: f64,
    alpha2: f64,
    n: usize,
) -> Result<FeasibilityReport, FeasibilityError> {
    check_delayed_choice_with(alpha1, alpha2, n, Determinism::Strong)
}

pub fn check_delayed_choice_with(
    alpha1: f64,
    alpha2: f64,
    n: usize,
    determinism: Determinism,
) -> Result<FeasibilityReport, FeasibilityError> {
    check_cardinality(n)?;
    let assumptions = AssumptionSet::new([
        match determinism {
            Determinism::Strong => Assumption::StrongDeterminism,
            Determinism::Weak => Assumption::WeakDeterminism,
        },
        Assumption::DelayedAlphaChoice,
    ])
    .map_err(FeasibilityError::Hv)?;
    let q0 = Q0_MAXIMALLY_ENTANGLED;
    let target1 = q0 * alpha1.cos().powi(2);
    let target2 = q0 * alpha2.cos().powi(2);
    let degenerate = (target1 - target2).abs() < q0 * DEGENERATE_TOL;

    let settings = Settings {
        alpha_pair: Some((alpha1, alpha2)),
        n,
        assumptions: assumptions.labels(),
        encoding: branch_label(determinism),
        ..Default::default()
    };

    let mut best_violation = f64::INFINITY;
    let mut scanned = 0usize;
    for branch in enumerate_branches(n, determinism) {
        let system = reduce_constraints_delayed(alpha1, alpha2, q0, &branch, &assumptions)
            .map_err(FeasibilityError::Hv)?;
        let solution = solve_feasibility(&system)?;
        scanned += 1;
        if solution.status == LpStatus::Feasible {
            let witness = extract_witness(&system, &solution.assignment, &branch)?;
            verify_witness(&witness, &[alpha1, alpha2], 0.0, &assumptions, &branch)?;
            return Ok(FeasibilityReport {
                verdict: Verdict::Feasible,
                degenerate,
                margin: solution.min_slack,
                scanned_branches: scanned,
                settings,
                evidence: Evidence::Witness(witness),
                independence_f: None,
                note: degenerate.then(|| {
                    "degenerate pair: cos²α₁ = cos²α₂, so one prior serves both settings".into()
                }),
            });
        }
        best_violation = best_violation.min(solution.max_violation);
    }
    Ok(FeasibilityReport {
        verdict: Verdict::Infeasible,
        degenerate: false,
        margin: best_violation,
        scanned_branches: scanned,
        settings,
        evidence: Evidence::Certificate(Certificate {
            description: format!(
                "a single prior must give the I0 particle sector both \
                 ½cos²α₁ = {target1:.15} and ½cos²α₂ = {target2:.15}"
            ),
            forced_values: Some((target1, target2)),
            gap: Some((target1 - target2).abs()),
            min_violation: best_violation,
        }),
        independence_f: None,
        note: Some(
            "the forced-value certificate holds for every hidden-variable cardinality".into(),
        ),
    })
}
