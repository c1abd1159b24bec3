//! Pearson chi-square goodness of fit against the exact distribution.

use serde::Serialize;

use crate::quantum::JointDistribution;

use super::sampling::CountTable;
use super::ExperimentError;

/// Probability below which a cell is treated as carrying no mass: counts
/// there are impossible events and trigger immediate rejection.
pub const ZERO_CELL_TOL: f64 = 1e-15;

const MIN_DETECTED: u64 = 100;
const MIN_EXPECTED: f64 = 5.0;

#[derive(Debug, Clone, Serialize)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub p_value: f64,
    pub dof: usize,
    /// Cells with q = 0 that nevertheless collected counts.
    pub impossible_cells: Vec<String>,
}

impl ChiSquareReport {
    pub fn rejected_outright(&self) -> bool {
        !self.impossible_cells.is_empty()
    }
}

/// Pearson statistic of `counts` against expectations q·n_detected over the
/// cells with nonzero q; dof = included cells − 1. A count in a zero cell
/// rejects immediately (statistic ∞, p = 0).
pub fn chi_square_test(
    counts: &CountTable,
    q: &JointDistribution,
) -> Result<ChiSquareReport, ExperimentError> {
    if counts.n_detected < MIN_DETECTED {
        return Err(ExperimentError::MinimumSample {
            got: counts.n_detected,
            need: MIN_DETECTED,
        });
    }
    let n = counts.n_detected as f64;
    let mut statistic = 0.0;
    let mut included = 0usize;
    let mut impossible = Vec::new();
    for i in 0..8usize {
        let cell_q = q.as_array()[i];
        let observed = counts.counts[i] as f64;
        let label = format!("{}{}{}", (i >> 2) & 1, (i >> 1) & 1, i & 1);
        if cell_q < ZERO_CELL_TOL {
            if counts.counts[i] > 0 {
                impossible.push(label);
            }
            continue;
        }
        let expected = cell_q * n;
        if expected < MIN_EXPECTED {
            return Err(ExperimentError::ExpectedCountTooSmall {
                cell: label,
                expected,
            });
        }
        let diff = observed - expected;
        statistic += diff * diff / expected;
        included += 1;
    }
    let dof = included.saturating_sub(1);
    if !impossible.is_empty() {
        return Ok(ChiSquareReport {
            statistic: f64::INFINITY,
            p_value: 0.0,
            dof,
            impossible_cells: impossible,
        });
    }
    Ok(ChiSquareReport {
        statistic,
        p_value: chi_square_survival(statistic, dof as f64),
        dof,
        impossible_cells: impossible,
    })
}

/// Survival function of the chi-square distribution with k degrees of
/// freedom: Q(k/2, x/2).
pub fn chi_square_survival(x: f64, k: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    regularized_upper_gamma(k / 2.0, x / 2.0)
}

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x)/Γ(a), via the
/// series for P when x < a + 1 and the Lentz continued fraction otherwise.
pub fn regularized_upper_gamma(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "invalid incomplete gamma arguments");
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - lower_gamma_series(a, x)
    } else {
        upper_gamma_continued_fraction(a, x)
    }
}

fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut denominator = a;
    for _ in 0..500 {
        denominator += 1.0;
        term *= x / denominator;
        sum += term;
        if term.abs() < sum.abs() * 1e-16 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn upper_gamma_continued_fraction(a: f64, x: f64) -> f64 {
    // Modified Lentz on the standard CF for Γ(a, x).
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// Lanczos (g = 7, 9 terms) log-gamma for positive arguments.
fn ln_gamma(mut z: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    assert!(z > 0.0);
    z -= 1.0;
    let mut x = 0.999_999_999_999_809_9;
    for (i, &c) in COEFFS.iter().enumerate() {
        x += c / (z + i as f64 + 1.0);
    }
    let t = z + 7.5;
    0.5 * (std::f64::consts::TAU).ln() + (z + 0.5) * t.ln() - t + x.ln()
}
