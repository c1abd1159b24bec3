//! Dense phase-1 simplex for the small hidden-variable constraint systems.
//!
//! Every system decided here has at most a few dozen variables and rows, so
//! a textbook dense tableau with Bland's rule is both fast enough and, more
//! importantly, deterministic: identical systems pivot identically and yield
//! byte-identical solutions.

use crate::hv::ConstraintSystem;

use super::FeasibilityError;

/// A point satisfies a constraint when its residual is below this.
pub const FEAS_TOL: f64 = 1e-9;

/// Pivot magnitudes below this are treated as zero.
const PIVOT_EPS: f64 = 1e-11;

const MAX_ITERATIONS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Feasible,
    Infeasible,
}

/// Phase-1 outcome: the point reached (feasible, or the violation-minimizing
/// point), the summed and per-constraint residuals there, and the smallest
/// inequality slack for feasible points.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub assignment: Vec<f64>,
    pub total_violation: f64,
    pub max_violation: f64,
    pub min_slack: f64,
    pub iterations: usize,
}

/// Decides feasibility of `system` by minimizing the total constraint
/// violation (phase-1 simplex, Bland's rule, artificials on every row).
pub fn solve_feasibility(system: &ConstraintSystem) -> Result<LpSolution, FeasibilityError> {
    system.validate()?;
    let n_vars = system.variables.len();

    // Presolve: repeatedly fix variables pinned by singleton equality rows.
    // This clears the vanishing rows (f_w[i] = 0 and friends) that dominate
    // the reduced systems without touching the tableau. A pin that lands
    // outside the variable's bounds is abandoned (the tableau will price the
    // violation); rows whose support is fully pinned are left to the final
    // re-substitution, which judges every original constraint.
    let mut fixed: Vec<Option<f64>> = vec![None; n_vars];
    let mut no_fix = vec![false; n_vars];
    loop {
        let mut changed = false;
        for eq in &system.equalities {
            let mut rhs = eq.rhs;
            let mut active: Option<(usize, f64)> = None;
            let mut active_count = 0;
            for &(var, coeff) in &eq.terms {
                if coeff == 0.0 {
                    continue;
                }
                match fixed[var] {
                    Some(value) => rhs -= coeff * value,
                    None => {
                        active_count += 1;
                        active = Some((var, coeff));
                    }
                }
            }
            if active_count == 1 {
                let (var, coeff) = active.expect("one active term");
                if no_fix[var] {
                    continue;
                }
                let value = rhs / coeff;
                if value < -FEAS_TOL || value > upper_of(system, var) + FEAS_TOL {
                    no_fix[var] = true;
                } else {
                    fixed[var] = Some(value.clamp(0.0, upper_of(system, var)));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Remaining unknowns and rows, all as equalities with b >= 0:
    // inequalities get a surplus column, variable uppers become slack rows.
    let free: Vec<usize> = (0..n_vars).filter(|&v| fixed[v].is_none()).collect();
    let col_of: Vec<Option<usize>> = {
        let mut map = vec![None; n_vars];
        for (col, &var) in free.iter().enumerate() {
            map[var] = Some(col);
        }
        map
    };

    struct Row {
        coeffs: Vec<f64>,
        rhs: f64,
        surplus: bool,
    }
    let mut rows: Vec<Row> = Vec::new();
    for eq in &system.equalities {
        let mut coeffs = vec![0.0; free.len()];
        let mut rhs = eq.rhs;
        let mut any = false;
        for &(var, coeff) in &eq.terms {
            match fixed[var] {
                Some(value) => rhs -= coeff * value,
                None => {
                    coeffs[col_of[var].expect("free var")] += coeff;
                    any = true;
                }
            }
        }
        if any {
            rows.push(Row {
                coeffs,
                rhs,
                surplus: false,
            });
        }
    }
    for ineq in &system.inequalities {
        let mut coeffs = vec![0.0; free.len()];
        let mut rhs = ineq.rhs;
        let mut any = false;
        for &(var, coeff) in &ineq.terms {
            match fixed[var] {
                Some(value) => rhs -= coeff * value,
                None => {
                    coeffs[col_of[var].expect("free var")] += coeff;
                    any = true;
                }
            }
        }
        if any {
            rows.push(Row {
                coeffs,
                rhs,
                surplus: true,
            });
        }
    }
    for (col, &var) in free.iter().enumerate() {
        if let Some(upper) = system.variables[var].upper {
            let mut coeffs = vec![0.0; free.len()];
            coeffs[col] = -1.0;
            rows.push(Row {
                coeffs,
                rhs: -upper,
                surplus: true,
            });
        }
    }

    if rows.is_empty() {
        let assignment: Vec<f64> = (0..n_vars).map(|v| fixed[v].unwrap_or(0.0)).collect();
        return Ok(evaluate_solution(system, assignment, 0));
    }

    // Tableau layout: free columns | surplus columns | artificial columns.
    let n_surplus = rows.iter().filter(|r| r.surplus).count();
    let n_cols = free.len() + n_surplus + rows.len();
    let m = rows.len();
    let mut a = vec![vec![0.0; n_cols]; m];
    let mut b = vec![0.0; m];
    let mut basis = vec![0usize; m];
    let mut surplus_seen = 0;
    for (r, row) in rows.iter().enumerate() {
        let sign = if row.rhs < 0.0 { -1.0 } else { 1.0 };
        for (c, &coeff) in row.coeffs.iter().enumerate() {
            a[r][c] = sign * coeff;
        }
        if row.surplus {
            a[r][free.len() + surplus_seen] = -sign;
            surplus_seen += 1;
        }
        b[r] = sign * row.rhs;
        let artificial = free.len() + n_surplus + r;
        a[r][artificial] = 1.0;
        basis[r] = artificial;
    }

    // Phase-1 objective: minimize the sum of artificials. The objective row
    // holds the negated reduced costs of that sum; the final verdict comes
    // from re-substituted residuals rather than the tableau objective.
    let mut obj = vec![0.0; n_cols];
    for j in 0..n_cols - m {
        obj[j] = a.iter().map(|row| row[j]).sum();
    }

    let mut iterations = 0;
    loop {
        // Bland: entering column is the lowest index with positive price.
        let entering = (0..n_cols).find(|&j| obj[j] > PIVOT_EPS);
        let Some(entering) = entering else {
            break;
        };
        // Ratio test; ties resolved toward the lowest basic variable index.
        let mut pivot_row: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for r in 0..m {
            if a[r][entering] > PIVOT_EPS {
                let ratio = b[r] / a[r][entering];
                let better = match pivot_row {
                    None => true,
                    Some(current) => {
                        ratio < best_ratio - PIVOT_EPS
                            || (ratio < best_ratio + PIVOT_EPS && basis[r] < basis[current])
                    }
                };
                if better {
                    best_ratio = ratio;
                    pivot_row = Some(r);
                }
            }
        }
        let Some(pr) = pivot_row else {
            // The phase-1 objective is bounded below by zero, so a missing
            // ratio bound means the system is malformed.
            return Err(FeasibilityError::UnboundedAuxiliary);
        };

        let pivot = a[pr][entering];
        for value in a[pr].iter_mut() {
            *value /= pivot;
        }
        b[pr] /= pivot;
        let pivot_row_values = a[pr].clone();
        for r in 0..m {
            if r != pr && a[r][entering].abs() > 0.0 {
                let factor = a[r][entering];
                for (value, &pivot_value) in a[r].iter_mut().zip(pivot_row_values.iter()) {
                    *value -= factor * pivot_value;
                }
                b[r] -= factor * b[pr];
                if b[r].abs() < 1e-14 {
                    b[r] = 0.0;
                }
            }
        }
        let factor = obj[entering];
        for (value, &pivot_value) in obj.iter_mut().zip(pivot_row_values.iter()) {
            *value -= factor * pivot_value;
        }
        basis[pr] = entering;

        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(FeasibilityError::IterationLimit);
        }
    }

    let mut assignment: Vec<f64> = (0..n_vars).map(|v| fixed[v].unwrap_or(0.0)).collect();
    for (r, &basic) in basis.iter().enumerate() {
        if basic < free.len() {
            assignment[free[basic]] = b[r].max(0.0);
        }
    }
    Ok(evaluate_solution(system, assignment, iterations))
}

fn upper_of(system: &ConstraintSystem, var: usize) -> f64 {
    system.variables[var].upper.unwrap_or(f64::INFINITY)
}

/// Residuals of the original system at `assignment`; the verdict is read
/// off the re-substitution, not the tableau objective.
fn evaluate_solution(
    system: &ConstraintSystem,
    assignment: Vec<f64>,
    iterations: usize,
) -> LpSolution {
    let mut total = 0.0;
    let mut max: f64 = 0.0;
    for eq in &system.equalities {
        let residual = (eq.evaluate(&assignment) - eq.rhs).abs();
        total += residual;
        max = max.max(residual);
    }
    let mut min_slack = f64::INFINITY;
    for ineq in &system.inequalities {
        let slack = ineq.evaluate(&assignment) - ineq.rhs;
        if slack < 0.0 {
            total += -slack;
            max = max.max(-slack);
        } else {
            min_slack = min_slack.min(slack);
        }
    }
    for (var, def) in system.variables.iter().enumerate() {
        let below = def.lower - assignment[var];
        if below > 0.0 {
            total += below;
            max = max.max(below);
        } else {
            min_slack = min_slack.min(-below);
        }
        if let Some(upper) = def.upper {
            let above = assignment[var] - upper;
            if above > 0.0 {
                total += above;
                max = max.max(above);
            } else {
                min_slack = min_slack.min(-above);
            }
        }
    }
    if !min_slack.is_finite() {
        min_slack = 0.0;
    }
    let status = if max <= FEAS_TOL {
        LpStatus::Feasible
    } else {
        LpStatus::Infeasible
    };
    LpSolution {
        status,
        assignment,
        total_violation: total,
        max_violation: max,
        min_slack: min_slack.max(0.0),
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hv::{
        Constraint, ConstraintSystem, DiscreteAssignment, ReductionMode, SystemMetadata, Variable,
    };

    fn bare_system(
        variables: Vec<Variable>,
        equalities: Vec<Constraint>,
        inequalities: Vec<Constraint>,
    ) -> ConstraintSystem {
        ConstraintSystem {
            variables,
            equalities,
            inequalities,
            fixed_discrete: DiscreteAssignment::new(vec![1], vec![0], vec![0]).unwrap(),
            metadata: SystemMetadata {
                alpha: 0.0,
                phi: 0.0,
                q0: 0.5,
                mode: ReductionMode::Reduced,
                product_f: None,
            },
        }
    }

    fn var(name: &str) -> Variable {
        Variable {
            name: name.into(),
            lower: 0.0,
            upper: None,
        }
    }

    #[test]
    fn one_dimensional_simplex_is_feasible() {
        let system = bare_system(
            vec![var("f1"), var("f2")],
            vec![Constraint {
                label: "sum".into(),
                terms: vec![(0, 1.0), (1, 1.0)],
                rhs: 1.0,
            }],
            vec![],
        );
        let solution = solve_feasibility(&system).unwrap();
        assert_eq!(solution.status, LpStatus::Feasible);
        let sum: f64 = solution.assignment.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!(solution.assignment.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn contradictory_equalities_report_half_violation() {
        let system = bare_system(
            vec![var("f1")],
            vec![
                Constraint {
                    label: "a".into(),
                    terms: vec![(0, 1.0)],
                    rhs: 0.25,
                },
                Constraint {
                    label: "b".into(),
                    terms: vec![(0, 1.0)],
                    rhs: 0.75,
                },
            ],
            vec![],
        );
        let solution = solve_feasibility(&system).unwrap();
        assert_eq!(solution.status, LpStatus::Infeasible);
        assert!((solution.total_violation - 0.5).abs() < 1e-9);
    }

    #[test]
    fn inequalities_and_uppers_are_honored() {
        let mut bounded = var("x");
        bounded.upper = Some(0.4);
        let system = bare_system(
            vec![bounded, var("y")],
            vec![Constraint {
                label: "sum".into(),
                terms: vec![(0, 1.0), (1, 1.0)],
                rhs: 1.0,
            }],
            vec![Constraint {
                label: "y floor".into(),
                terms: vec![(1, 1.0)],
                rhs: 0.3,
            }],
        );
        let solution = solve_feasibility(&system).unwrap();
        assert_eq!(solution.status, LpStatus::Feasible);
        assert!(solution.assignment[0] <= 0.4 + 1e-9);
        assert!(solution.assignment[1] >= 0.3 - 1e-9);
    }

    #[test]
    fn infeasible_bound_interaction_is_detected() {
        let mut bounded = var("x");
        bounded.upper = Some(0.2);
        let system = bare_system(
            vec![bounded],
            vec![Constraint {
                label: "pin".into(),
                terms: vec![(0, 1.0)],
                rhs: 0.9,
            }],
            vec![],
        );
        let solution = solve_feasibility(&system).unwrap();
        assert_eq!(solution.status, LpStatus::Infeasible);
        assert!(solution.max_violation > 0.5);
    }

    #[test]
    fn presolve_clears_vanishing_chains() {
        // x = 0, x + y = 0 forces y = 0 and leaves z + w = 1 to the tableau.
        let system = bare_system(
            vec![var("x"), var("y"), var("z"), var("w")],
            vec![
                Constraint {
                    label: "x".into(),
                    terms: vec![(0, 1.0)],
                    rhs: 0.0,
                },
                Constraint {
                    label: "xy".into(),
                    terms: vec![(0, 1.0), (1, 1.0)],
                    rhs: 0.0,
                },
                Constraint {
                    label: "zw".into(),
                    terms: vec![(2, 1.0), (3, 1.0)],
                    rhs: 1.0,
                },
            ],
            vec![],
        );
        let solution = solve_feasibility(&system).unwrap();
        assert_eq!(solution.status, LpStatus::Feasible);
        assert_eq!(solution.assignment[0], 0.0);
        assert_eq!(solution.assignment[1], 0.0);
    }

    #[test]
    fn solver_is_deterministic() {
        let system = bare_system(
            vec![var("a"), var("b"), var("c"), var("d")],
            vec![
                Constraint {
                    label: "sum".into(),
                    terms: vec![(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)],
                    rhs: 1.0,
                },
                Constraint {
                    label: "pair".into(),
                    terms: vec![(0, 1.0), (2, 1.0)],
                    rhs: 0.5,
                },
            ],
            vec![],
        );
        let first = solve_feasibility(&system).unwrap();
        for _ in 0..5 {
            let again = solve_feasibility(&system).unwrap();
            assert_eq!(again.assignment, first.assignment);
            assert_eq!(again.iterations, first.iterations);
        }
    }

    #[test]
    fn randomized_systems_with_known_verdicts() {
        // Feasible instances are built around a planted point; infeasible
        // ones add a contradictory equality pair on top.
        let mut rng = crate::experiment::SplitMix64::new(0x51137);
        for round in 0..300 {
            let n_vars = 2 + (rng.next_u64() % 4) as usize;
            let planted: Vec<f64> = (0..n_vars).map(|_| rng.next_f64() * 2.0).collect();
            let variables: Vec<Variable> = (0..n_vars)
                .map(|i| Variable {
                    name: format!("x{i}"),
                    lower: 0.0,
                    upper: None,
                })
                .collect();
            let n_rows = 1 + (rng.next_u64() % 3) as usize;
            let mut equalities: Vec<Constraint> = (0..n_rows)
                .map(|r| {
                    let terms: Vec<(usize, f64)> = (0..n_vars)
                        .map(|v| (v, (rng.next_u64() % 7) as f64 - 3.0))
                        .filter(|&(_, c)| c != 0.0)
                        .collect();
                    let rhs = terms.iter().map(|&(v, c)| c * planted[v]).sum();
                    Constraint {
                        label: format!("row{r}"),
                        terms,
                        rhs,
                    }
                })
                .collect();
            let expect_feasible = round % 2 == 0;
            if !expect_feasible {
                equalities.push(Constraint {
                    label: "pin low".into(),
                    terms: vec![(0, 1.0)],
                    rhs: planted[0],
                });
                equalities.push(Constraint {
                    label: "pin high".into(),
                    terms: vec![(0, 1.0)],
                    rhs: planted[0] + 1.0,
                });
            }
            let system = bare_system(variables, equalities, vec![]);
            let solution = solve_feasibility(&system).unwrap();
            if expect_feasible {
                assert_eq!(
                    solution.status,
                    LpStatus::Feasible,
                    "round {round}: planted point ignored (violation {})",
                    solution.max_violation
                );
            } else {
                assert_eq!(solution.status, LpStatus::Infeasible, "round {round}");
                assert!(solution.total_violation > 0.5 - 1e-9);
            }
        }
    }

    #[test]
    fn degenerate_empty_row_with_nonzero_rhs_is_infeasible() {
        let system = bare_system(
            vec![var("x")],
            vec![Constraint {
                label: "void".into(),
                terms: vec![],
                rhs: 1.0,
            }],
            vec![],
        );
        let solution = solve_feasibility(&system).unwrap();
        assert_eq!(solution.status, LpStatus::Infeasible);
        assert!((solution.max_violation - 1.0).abs() < 1e-12);
    }
}
