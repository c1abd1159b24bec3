//! Linear constraint systems over hidden-variable model parameters.
//!
//! For a fixed discrete structure (the binary b-outcome data z, v and the
//! c-outcome partition) and a fixed setting (α, φ), matching the quantum
//! table is equivalent to a small linear system over the priors:
//!
//! * normalization          Σᵢ (f_p + f_w) = 1
//! * c-marginal             Σ_{I₀} (f_p + f_w) = q₀
//! * b-sector pair          Σ_{I₀} (z·f_p + v·f_w) = q₀cos²α and the I₁
//!   counterpart with (1−q₀)sin²α
//! * open-arm wave pair     Σ_{I_c} (x − ½)·v·f_w = 0
//! * closed-arm particle    Σ_{I_c} (y − cos²(φ/2))·(1−z)·f_p = 0
//!
//! The last two pairs are bilinear in (x, f_w) and (y, f_p). They are
//! handled in two selectable ways:
//!
//! * [`ReductionMode::Substituted`] keeps them, exactly linearized through
//!   u = x·f_w (0 ≤ u ≤ f_w) and t = y·f_p (0 ≤ t ≤ f_p). Feasibility then
//!   means: *some* fixed open-arm wave statistics x and closed-arm particle
//!   statistics y reproduce the table at this one setting.
//! * [`ReductionMode::Reduced`] leaves x and y undetermined. Matching the
//!   table for *every* choice of x and y forces each bilinear coefficient to
//!   vanish — v·f_w = 0 termwise and f_p = 0 wherever z = 0 — after which
//!   only the two sector equalities over the particle priors survive.

use std::fmt;

use super::assumptions::{AssumptionSet, Determinism};
use super::HvError;

/// A binary structure: z\[i\], v\[i\] are the b outcomes (1 ↔ b = 0) for
/// particle and wave at index i, and partition\[i\] is the c outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteAssignment {
    pub z: Vec<u8>,
    pub v: Vec<u8>,
    pub partition: Vec<u8>,
}

impl DiscreteAssignment {
    pub fn new(z: Vec<u8>, v: Vec<u8>, partition: Vec<u8>) -> Result<Self, HvError> {
        if z.len() != v.len() || z.len() != partition.len() || z.is_empty() {
            return Err(HvError::LengthMismatch {
                field: "discrete assignment",
                expected: z.len().max(1),
                got: v.len().min(partition.len()),
            });
        }
        if z.iter()
            .chain(v.iter())
            .chain(partition.iter())
            .any(|&b| b > 1)
        {
            return Err(HvError::InvalidPartition);
        }
        Ok(DiscreteAssignment { z, v, partition })
    }

    /// Builds the joint-outcome (weak determinism) structure from one
    /// (b, c) cell per index, encoded as b<<1 | c.
    pub fn from_weak_cells(cells: &[u8]) -> Result<Self, HvError> {
        if cells.is_empty() || cells.iter().any(|&c| c > 3) {
            return Err(HvError::InvalidPartition);
        }
        let z: Vec<u8> = cells.iter().map(|&c| 1 - (c >> 1)).collect();
        let partition: Vec<u8> = cells.iter().map(|&c| c & 1).collect();
        Ok(DiscreteAssignment {
            v: z.clone(),
            z,
            partition,
        })
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    /// Whether b is decided by the index alone (z = v), as the
    /// joint-outcome encoding requires.
    pub fn is_weak_encoded(&self) -> bool {
        self.z == self.v
    }

    fn cell_indices(&self, c: u8) -> impl Iterator<Item = usize> + '_ {
        self.partition
            .iter()
            .enumerate()
            .filter(move |(_, &p)| p == c)
            .map(|(i, _)| i)
    }
}

/// How the bilinear adequacy constraints are treated; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMode {
    Substituted,
    Reduced,
}

impl fmt::Display for ReductionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionMode::Substituted => write!(f, "substituted"),
            ReductionMode::Reduced => write!(f, "reduced"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Variable {
    pub name: String,
    pub lower: f64,
    pub upper: Option<f64>,
}

/// A linear constraint Σ coeff·var (= or ≥) rhs.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub label: String,
    pub terms: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl Constraint {
    pub fn evaluate(&self, assignment: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|&(var, coeff)| coeff * assignment[var])
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct SystemMetadata {
    pub alpha: f64,
    pub phi: f64,
    pub q0: f64,
    pub mode: ReductionMode,
    /// Set when the system is expressed over the shared distribution F with
    /// a fixed particle fraction f (the source-independence product form).
    pub product_f: Option<f64>,
}

/// A feasibility problem over named nonnegative variables.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub variables: Vec<Variable>,
    pub equalities: Vec<Constraint>,
    /// Each entry means `terms ≥ rhs`.
    pub inequalities: Vec<Constraint>,
    pub fixed_discrete: DiscreteAssignment,
    pub metadata: SystemMetadata,
}

impl ConstraintSystem {
    /// Structural validation: every referenced variable is declared and all
    /// constants are finite.
    pub fn validate(&self) -> Result<(), HvError> {
        for c in self.equalities.iter().chain(self.inequalities.iter()) {
            if !c.rhs.is_finite() {
                return Err(HvError::NonFiniteInput);
            }
            for &(var, coeff) in &c.terms {
                if var >= self.variables.len() {
                    return Err(HvError::UndeclaredVariable { index: var });
                }
                if !coeff.is_finite() {
                    return Err(HvError::NonFiniteInput);
                }
            }
        }
        Ok(())
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Human-readable dump, one constraint per line, for audit.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# mode={} alpha={} phi={} q0={}{}\n",
            self.metadata.mode,
            self.metadata.alpha,
            self.metadata.phi,
            self.metadata.q0,
            match self.metadata.product_f {
                Some(f) => format!(" product_f={f}"),
                None => String::new(),
            }
        ));
        out.push_str(&format!(
            "# z={:?} v={:?} partition={:?}\n",
            self.fixed_discrete.z, self.fixed_discrete.v, self.fixed_discrete.partition
        ));
        let render = |c: &Constraint, rel: &str| {
            let lhs = if c.terms.is_empty() {
                "0".to_string()
            } else {
                c.terms
                    .iter()
                    .enumerate()
                    .map(|(k, &(var, coeff))| {
                        let name = &self.variables[var].name;
                        if k == 0 {
                            format!("{coeff}*{name}")
                        } else if coeff < 0.0 {
                            format!("- {}*{}", -coeff, name)
                        } else {
                            format!("+ {coeff}*{name}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            format!("{lhs} {rel} {}  # {}\n", c.rhs, c.label)
        };
        for c in &self.equalities {
            out.push_str(&render(c, "="));
        }
        for c in &self.inequalities {
            out.push_str(&render(c, ">="));
        }
        for v in &self.variables {
            out.push_str(&format!("{} >= {}\n", v.name, v.lower));
            if let Some(u) = v.upper {
                out.push_str(&format!("{} <= {u}\n", v.name));
            }
        }
        out
    }
}

fn validate_settings(alpha: f64, phi: f64, q0: f64) -> Result<(), HvError> {
    if !alpha.is_finite() || !phi.is_finite() {
        return Err(HvError::NonFiniteInput);
    }
    if !(0.0..=1.0).contains(&q0) {
        return Err(HvError::InvalidQ0 { q0 });
    }
    Ok(())
}

fn check_encoding(
    discrete: &DiscreteAssignment,
    assumptions: &AssumptionSet,
) -> Result<(), HvError> {
    if assumptions.require_determinism()? == Determinism::Weak && !discrete.is_weak_encoded() {
        return Err(HvError::WeakEncodingViolated);
    }
    Ok(())
}

/// Builds the constraint system for one discrete structure at setting
/// (α, φ) with c-marginal q₀, over the priors {f_p\[i\], f_w\[i\]}.
pub fn reduce_constraints(
    alpha: f64,
    phi: f64,
    q0: f64,
    discrete: &DiscreteAssignment,
    assumptions: &AssumptionSet,
    mode: ReductionMode,
) -> Result<ConstraintSystem, HvError> {
    validate_settings(alpha, phi, q0)?;
    check_encoding(discrete, assumptions)?;
    let n = discrete.n();
    let mut variables = Vec::with_capacity(2 * n);
    for i in 0..n {
        variables.push(Variable {
            name: format!("f_p[{i}]"),
            lower: 0.0,
            upper: None,
        });
    }
    for i in 0..n {
        variables.push(Variable {
            name: format!("f_w[{i}]"),
            lower: 0.0,
            upper: None,
        });
    }
    let fp = |i: usize| i;
    let fw = |i: usize| n + i;

    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();

    equalities.push(Constraint {
        label: "normalization".into(),
        terms: (0..2 * n).map(|j| (j, 1.0)).collect(),
        rhs: 1.0,
    });
    equalities.push(Constraint {
        label: "c-marginal over I0".into(),
        terms: discrete
            .cell_indices(0)
            .flat_map(|i| [(fp(i), 1.0), (fw(i), 1.0)])
            .collect(),
        rhs: q0,
    });

    let b0_target = [q0 * alpha.cos().powi(2), (1.0 - q0) * alpha.sin().powi(2)];

    match mode {
        ReductionMode::Substituted => {
            // b-sector pair with the raw z/v weights.
            for c in 0..2u8 {
                let terms: Vec<(usize, f64)> = discrete
                    .cell_indices(c)
                    .flat_map(|i| {
                        let mut t = Vec::new();
                        if discrete.z[i] == 1 {
                            t.push((fp(i), 1.0));
                        }
                        if discrete.v[i] == 1 {
                            t.push((fw(i), 1.0));
                        }
                        t
                    })
                    .collect();
                equalities.push(Constraint {
                    label: format!("b=0 sector mass over I{c}"),
                    terms,
                    rhs: b0_target[c as usize],
                });
            }
            // Open-arm wave pair, linearized via u[i] = x[i]·f_w[i].
            let mut u_index = vec![None; n];
            #[allow(clippy::needless_range_loop)]
            for i in 0..n {
                if discrete.v[i] == 1 {
                    u_index[i] = Some(variables.len());
                    variables.push(Variable {
                        name: format!("u[{i}]"),
                        lower: 0.0,
                        upper: None,
                    });
                    inequalities.push(Constraint {
                        label: format!("u[{i}] <= f_w[{i}]"),
                        terms: vec![(fw(i), 1.0), (u_index[i].unwrap(), -1.0)],
                        rhs: 0.0,
                    });
                }
            }
            for c in 0..2u8 {
                let terms: Vec<(usize, f64)> = discrete
                    .cell_indices(c)
                    .filter(|&i| discrete.v[i] == 1)
                    .flat_map(|i| [(u_index[i].unwrap(), 1.0), (fw(i), -0.5)])
                    .collect();
                if !terms.is_empty() {
                    equalities.push(Constraint {
                        label: format!("open-arm wave balance over I{c}"),
                        terms,
                        rhs: 0.0,
                    });
                }
            }
            // Closed-arm particle pair, linearized via t[i] = y[i]·f_p[i].
            let cw2 = (phi / 2.0).cos().powi(2);
            let mut t_index = vec![None; n];
            #[allow(clippy::needless_range_loop)]
            for i in 0..n {
                if discrete.z[i] == 0 {
                    t_index[i] = Some(variables.len());
                    variables.push(Variable {
                        name: format!("t[{i}]"),
                        lower: 0.0,
                        upper: None,
                    });
                    inequalities.push(Constraint {
                        label: format!("t[{i}] <= f_p[{i}]"),
                        terms: vec![(fp(i), 1.0), (t_index[i].unwrap(), -1.0)],
                        rhs: 0.0,
                    });
                }
            }
            for c in 0..2u8 {
                let terms: Vec<(usize, f64)> = discrete
                    .cell_indices(c)
                    .filter(|&i| discrete.z[i] == 0)
                    .flat_map(|i| [(t_index[i].unwrap(), 1.0), (fp(i), -cw2)])
                    .collect();
                if !terms.is_empty() {
                    equalities.push(Constraint {
                        label: format!("closed-arm particle balance over I{c}"),
                        terms,
                        rhs: 0.0,
                    });
                }
            }
        }
        ReductionMode::Reduced => {
            // Particle sector pair over the full cells; the vanishing rows
            // below pin the z = 0 contributions at zero.
            for c in 0..2u8 {
                equalities.push(Constraint {
                    label: format!("particle sector mass over I{c}"),
                    terms: discrete.cell_indices(c).map(|i| (fp(i), 1.0)).collect(),
                    rhs: b0_target[c as usize],
                });
            }
            for i in 0..n {
                if discrete.v[i] == 1 {
                    equalities.push(Constraint {
                        label: format!("undetermined x: v[{i}]*f_w[{i}] = 0"),
                        terms: vec![(fw(i), 1.0)],
                        rhs: 0.0,
                    });
                }
                if discrete.z[i] == 0 {
                    equalities.push(Constraint {
                        label: format!("undetermined y: (1-z[{i}])*f_p[{i}] = 0"),
                        terms: vec![(fp(i), 1.0)],
                        rhs: 0.0,
                    });
                }
            }
        }
    }

    let system = ConstraintSystem {
        variables,
        equalities,
        inequalities,
        fixed_discrete: discrete.clone(),
        metadata: SystemMetadata {
            alpha,
            phi,
            q0,
            mode,
            product_f: None,
        },
    };
    system.validate()?;
    Ok(system)
}

/// The delayed-choice form: one prior assignment and one discrete structure
/// must satisfy the reduced system at two rotation settings simultaneously
/// (the rotation is chosen only after the photons — and so the hidden
/// variables — exist).
pub fn reduce_constraints_delayed(
    alpha1: f64,
    alpha2: f64,
    q0: f64,
    discrete: &DiscreteAssignment,
    assumptions: &AssumptionSet,
) -> Result<ConstraintSystem, HvError> {
    let mut system = reduce_constraints(
        alpha1,
        0.0,
        q0,
        discrete,
        assumptions,
        ReductionMode::Reduced,
    )?;
    if !alpha2.is_finite() {
        return Err(HvError::NonFiniteInput);
    }
    for label in system.equalities.iter_mut().filter_map(|c| {
        c.label
            .starts_with("particle sector")
            .then_some(&mut c.label)
    }) {
        label.push_str(" at alpha1");
    }
    let fp = |i: usize| i;
    let b0_target = [q0 * alpha2.cos().powi(2), (1.0 - q0) * alpha2.sin().powi(2)];
    for c in 0..2u8 {
        system.equalities.push(Constraint {
            label: format!("particle sector mass over I{c} at alpha2"),
            terms: discrete.cell_indices(c).map(|i| (fp(i), 1.0)).collect(),
            rhs: b0_target[c as usize],
        });
    }
    system.metadata.alpha = alpha1;
    system.validate()?;
    Ok(system)
}

/// The source-independence form: priors factor as f_p\[i\] = f·F\[i\] and
/// f_w\[i\] = (1−f)·F\[i\] for a fixed particle fraction f, leaving the shared
/// distribution F as the only unknowns. Uses the reduced (undetermined x, y)
/// class.
pub fn reduce_constraints_product(
    alpha: f64,
    q0: f64,
    discrete: &DiscreteAssignment,
    assumptions: &AssumptionSet,
    f: f64,
) -> Result<ConstraintSystem, HvError> {
    validate_settings(alpha, 0.0, q0)?;
    check_encoding(discrete, assumptions)?;
    if !(0.0..=1.0).contains(&f) {
        return Err(HvError::ValueOutOfRange {
            field: "f",
            value: f,
        });
    }
    let n = discrete.n();
    let variables: Vec<Variable> = (0..n)
        .map(|i| Variable {
            name: format!("F[{i}]"),
            lower: 0.0,
            upper: None,
        })
        .collect();

    let mut equalities = vec![
        Constraint {
            label: "normalization".into(),
            terms: (0..n).map(|i| (i, 1.0)).collect(),
            rhs: 1.0,
        },
        Constraint {
            label: "c-marginal over I0".into(),
            terms: discrete.cell_indices(0).map(|i| (i, 1.0)).collect(),
            rhs: q0,
        },
    ];
    let b0_target = [q0 * alpha.cos().powi(2), (1.0 - q0) * alpha.sin().powi(2)];
    for c in 0..2u8 {
        equalities.push(Constraint {
            label: format!("particle sector mass over I{c}"),
            terms: discrete.cell_indices(c).map(|i| (i, f)).collect(),
            rhs: b0_target[c as usize],
        });
    }
    for i in 0..n {
        if discrete.v[i] == 1 && f < 1.0 {
            equalities.push(Constraint {
                label: format!("undetermined x: (1-f)*F[{i}] = 0"),
                terms: vec![(i, 1.0 - f)],
                rhs: 0.0,
            });
        }
        if discrete.z[i] == 0 && f > 0.0 {
            equalities.push(Constraint {
                label: format!("undetermined y: f*F[{i}] = 0"),
                terms: vec![(i, f)],
                rhs: 0.0,
            });
        }
    }

    let system = ConstraintSystem {
        variables,
        equalities,
        inequalities: Vec::new(),
        fixed_discrete: discrete.clone(),
        metadata: SystemMetadata {
            alpha,
            phi: 0.0,
            q0,
            mode: ReductionMode::Reduced,
            product_f: Some(f),
        },
    };
    system.validate()?;
    Ok(system)
}

/// All discrete structures of size n, canonicalized up to index
/// permutation: the per-index data — the (z, v, partition) triple for
/// strong determinism, the (b, c) cell for the joint-outcome encoding — is
/// enumerated as a nondecreasing sequence.
pub fn enumerate_branches(n: usize, determinism: Determinism) -> Vec<DiscreteAssignment> {
    let alphabet = match determinism {
        Determinism::Strong => 8u8,
        Determinism::Weak => 4u8,
    };
    let mut sequences = Vec::new();
    let mut current = vec![0u8; n];
    fn fill(
        sequences: &mut Vec<Vec<u8>>,
        current: &mut Vec<u8>,
        position: usize,
        minimum: u8,
        alphabet: u8,
    ) {
        if position == current.len() {
            sequences.push(current.clone());
            return;
        }
        for value in minimum..alphabet {
            current[position] = value;
            fill(sequences, current, position + 1, value, alphabet);
        }
    }
    fill(&mut sequences, &mut current, 0, 0, alphabet);
    sequences
        .into_iter()
        .map(|seq| match determinism {
            Determinism::Strong => DiscreteAssignment::new(
                seq.iter().map(|&t| (t >> 2) & 1).collect(),
                seq.iter().map(|&t| (t >> 1) & 1).collect(),
                seq.iter().map(|&t| t & 1).collect(),
            )
            .expect("enumerated assignment is binary"),
            Determinism::Weak => {
                DiscreteAssignment::from_weak_cells(&seq).expect("enumerated cells are valid")
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    fn canonical(n: usize) -> DiscreteAssignment {
        DiscreteAssignment::new(
            vec![1; n],
            vec![0; n],
            (0..n).map(|i| (i % 2) as u8).collect(),
        )
        .unwrap()
    }

    #[test]
    fn reduced_system_has_two_sector_equalities_mass_rows_and_bounds() {
        let system = reduce_constraints(
            FRAC_PI_3,
            0.7,
            0.5,
            &canonical(4),
            &AssumptionSet::baseline(),
            ReductionMode::Reduced,
        )
        .unwrap();
        // z = 1, v = 0 everywhere: no vanishing rows survive, leaving
        // normalization, the I0 mass, and the two particle sector rows.
        assert_eq!(system.equalities.len(), 4);
        assert!(system.inequalities.is_empty());
        let sector: Vec<&Constraint> = system
            .equalities
            .iter()
            .filter(|c| c.label.starts_with("particle sector"))
            .collect();
        assert_eq!(sector.len(), 2);
        assert!((sector[0].rhs - 0.5 * FRAC_PI_3.cos().powi(2)).abs() < 1e-15);
        assert!((sector[1].rhs - 0.5 * FRAC_PI_3.sin().powi(2)).abs() < 1e-15);
        assert!(system.variables.iter().all(|v| v.lower == 0.0));
    }

    #[test]
    fn reduced_system_at_alpha_zero_pins_sector_masses() {
        let system = reduce_constraints(
            0.0,
            0.0,
            0.5,
            &canonical(4),
            &AssumptionSet::baseline(),
            ReductionMode::Reduced,
        )
        .unwrap();
        let sector: Vec<&Constraint> = system
            .equalities
            .iter()
            .filter(|c| c.label.starts_with("particle sector"))
            .collect();
        assert_eq!(sector[0].rhs, 0.5);
        assert_eq!(sector[1].rhs, 0.0);
    }

    #[test]
    fn substituted_system_linearizes_the_bilinear_rows() {
        let discrete =
            DiscreteAssignment::new(vec![1, 0, 1, 1], vec![1, 0, 0, 1], vec![0, 0, 1, 1]).unwrap();
        let system = reduce_constraints(
            0.9,
            1.3,
            0.5,
            &discrete,
            &AssumptionSet::baseline(),
            ReductionMode::Substituted,
        )
        .unwrap();
        // u for v=1 indices {0, 3}, t for z=0 indices {1}.
        assert!(system.variable_index("u[0]").is_some());
        assert!(system.variable_index("u[3]").is_some());
        assert!(system.variable_index("u[1]").is_none());
        assert!(system.variable_index("t[1]").is_some());
        assert_eq!(system.inequalities.len(), 3);
        // The closed-arm particle row carries cos²(φ/2) against f_p[1].
        let row = system
            .equalities
            .iter()
            .find(|c| c.label == "closed-arm particle balance over I0")
            .unwrap();
        let fp1 = system.variable_index("f_p[1]").unwrap();
        let coeff = row
            .terms
            .iter()
            .find(|&&(var, _)| var == fp1)
            .map(|&(_, c)| c)
            .unwrap();
        assert!((coeff + (1.3f64 / 2.0).cos().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn vanishing_rows_appear_in_reduced_mode() {
        let discrete =
            DiscreteAssignment::new(vec![1, 0, 1, 1], vec![1, 0, 0, 1], vec![0, 0, 1, 1]).unwrap();
        let system = reduce_constraints(
            0.9,
            1.3,
            0.5,
            &discrete,
            &AssumptionSet::baseline(),
            ReductionMode::Reduced,
        )
        .unwrap();
        let vanishing: Vec<&str> = system
            .equalities
            .iter()
            .filter(|c| c.label.starts_with("undetermined"))
            .map(|c| c.label.as_str())
            .collect();
        assert_eq!(
            vanishing,
            vec![
                "undetermined x: v[0]*f_w[0] = 0",
                "undetermined y: (1-z[1])*f_p[1] = 0",
                "undetermined x: v[3]*f_w[3] = 0",
            ]
        );
    }

    #[test]
    fn weak_encoding_is_enforced() {
        let strong_only = DiscreteAssignment::new(vec![1, 1], vec![0, 0], vec![0, 1]).unwrap();
        let weak = AssumptionSet::new([super::super::Assumption::WeakDeterminism]).unwrap();
        assert!(matches!(
            reduce_constraints(0.3, 0.0, 0.5, &strong_only, &weak, ReductionMode::Reduced),
            Err(HvError::WeakEncodingViolated)
        ));
        let cells = DiscreteAssignment::from_weak_cells(&[0, 1, 2, 3]).unwrap();
        assert!(cells.is_weak_encoded());
        assert!(reduce_constraints(0.3, 0.0, 0.5, &cells, &weak, ReductionMode::Reduced).is_ok());
    }

    #[test]
    fn product_form_scales_sector_rows_by_f() {
        let system = reduce_constraints_product(
            FRAC_PI_3,
            0.5,
            &canonical(4),
            &AssumptionSet::baseline(),
            0.25,
        )
        .unwrap();
        let sector = system
            .equalities
            .iter()
            .find(|c| c.label == "particle sector mass over I0")
            .unwrap();
        assert!(sector.terms.iter().all(|&(_, c)| (c - 0.25).abs() < 1e-15));
        assert!((sector.rhs - 0.125).abs() < 1e-15);
        assert_eq!(system.metadata.product_f, Some(0.25));
    }

    #[test]
    fn branch_enumeration_counts_match_multiset_formulas() {
        // Multisets of size n over 8 (strong) or 4 (weak) per-index values.
        assert_eq!(enumerate_branches(4, Determinism::Strong).len(), 330);
        assert_eq!(enumerate_branches(4, Determinism::Weak).len(), 35);
        assert_eq!(enumerate_branches(2, Determinism::Strong).len(), 36);
        assert_eq!(enumerate_branches(8, Determinism::Weak).len(), 165);
    }

    #[test]
    fn enumerated_branches_are_canonical_and_unique() {
        let branches = enumerate_branches(3, Determinism::Strong);
        for b in &branches {
            let triples: Vec<u8> = (0..3)
                .map(|i| (b.z[i] << 2) | (b.v[i] << 1) | b.partition[i])
                .collect();
            let mut sorted = triples.clone();
            sorted.sort_unstable();
            assert_eq!(triples, sorted);
        }
        let mut keys: Vec<_> = branches
            .iter()
            .map(|b| (b.z.clone(), b.v.clone(), b.partition.clone()))
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), branches.len());
    }

    #[test]
    fn dump_renders_one_constraint_per_line() {
        let system = reduce_constraints(
            0.5,
            0.0,
            0.5,
            &canonical(2),
            &AssumptionSet::baseline(),
            ReductionMode::Reduced,
        )
        .unwrap();
        let dump = system.dump();
        assert!(dump.contains("1*f_p[0] + 1*f_p[1] + 1*f_w[0] + 1*f_w[1] = 1"));
        assert!(dump.contains("= 0.5  # c-marginal over I0"));
        assert!(dump.contains("f_p[0] >= 0"));
    }

    #[test]
    fn invalid_settings_are_rejected() {
        let base = AssumptionSet::baseline();
        assert!(matches!(
            reduce_constraints(
                f64::NAN,
                0.0,
                0.5,
                &canonical(2),
                &base,
                ReductionMode::Reduced
            ),
            Err(HvError::NonFiniteInput)
        ));
        assert!(matches!(
            reduce_constraints(0.3, 0.0, 1.4, &canonical(2), &base, ReductionMode::Reduced),
            Err(HvError::InvalidQ0 { .. })
        ));
        let no_det = AssumptionSet::new([]).unwrap();
        assert!(matches!(
            reduce_constraints(
                0.3,
                0.0,
                0.5,
                &canonical(2),
                &no_det,
                ReductionMode::Reduced
            ),
            Err(HvError::MissingDeterminism)
        ));
    }
}
