//! Finite-statistics sampling from the joint distribution, with and without
//! detector losses.

use serde::Serialize;

use crate::quantum::JointDistribution;

use super::rng::SplitMix64;
use super::ExperimentError;

/// Observed triple-coincidence counts over (a, b, c) outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub counts: [u64; 8],
    pub n_trials: u64,
    pub n_detected: u64,
}

impl CountTable {
    pub fn count(&self, a: u8, b: u8, c: u8) -> u64 {
        self.counts[((a as usize) << 2) | ((b as usize) << 1) | c as usize]
    }

    /// Post-selected relative frequency of a cell.
    pub fn frequency(&self, a: u8, b: u8, c: u8) -> f64 {
        if self.n_detected == 0 {
            0.0
        } else {
            self.count(a, b, c) as f64 / self.n_detected as f64
        }
    }

    /// CSV with header `a,b,c,count`, rows in outcome order.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("a,b,c,count\n");
        for (i, &count) in self.counts.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                (i >> 2) & 1,
                (i >> 1) & 1,
                i & 1,
                count
            ));
        }
        out
    }

    /// JSON object keyed by the outcome string "abc" plus the trial totals.
    pub fn to_json_string(&self) -> String {
        let cells: Vec<String> = (0..8)
            .map(|i| {
                format!(
                    "\"{}{}{}\": {}",
                    (i >> 2) & 1,
                    (i >> 1) & 1,
                    i & 1,
                    self.counts[i]
                )
            })
            .collect();
        format!(
            "{{\"counts\": {{{}}}, \"n_trials\": {}, \"n_detected\": {}}}",
            cells.join(", "),
            self.n_trials,
            self.n_detected
        )
    }
}

/// Per-detector efficiencies in (0, 1] and a dark-count rate: the
/// probability that a detector which saw no photon fires anyway, with a
/// uniformly random outcome bit. Losses are outcome-independent.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DetectorModel {
    pub eta: [f64; 3],
    pub dark_rate: f64,
}

impl DetectorModel {
    pub fn new(eta: [f64; 3], dark_rate: f64) -> Result<Self, ExperimentError> {
        for &e in &eta {
            if !e.is_finite() || !(0.0..=1.0).contains(&e) || e == 0.0 {
                return Err(ExperimentError::InvalidEfficiency { value: e });
            }
        }
        let min_eta = eta.iter().copied().fold(f64::INFINITY, f64::min);
        if !dark_rate.is_finite() || dark_rate < 0.0 || dark_rate >= min_eta {
            return Err(ExperimentError::InvalidDarkRate { dark_rate, min_eta });
        }
        Ok(Self { eta, dark_rate })
    }

    pub fn lossless() -> Self {
        Self {
            eta: [1.0, 1.0, 1.0],
            dark_rate: 0.0,
        }
    }
}

fn draw_cell(q: &JointDistribution, rng: &mut SplitMix64) -> usize {
    let r = rng.next_f64();
    let mut cumulative = 0.0;
    for (idx, &p) in q.as_array().iter().enumerate() {
        cumulative += p;
        if r < cumulative {
            return idx;
        }
    }
    7 // rounding pushed the cumulative sum a hair under r
}

/// Draws n independent outcomes from q. Identical (q, n, seed) triples give
/// identical tables.
pub fn sample_outcomes(
    q: &JointDistribution,
    n: u64,
    seed: u64,
) -> Result<CountTable, ExperimentError> {
    if n == 0 {
        return Err(ExperimentError::InvalidTrialCount);
    }
    let mut rng = SplitMix64::new(seed);
    let mut counts = [0u64; 8];
    for _ in 0..n {
        counts[draw_cell(q, &mut rng)] += 1;
    }
    Ok(CountTable {
        counts,
        n_trials: n,
        n_detected: n,
    })
}

/// Samples n trials through lossy detectors: a trial is recorded only on
/// triple coincidence. Each detector fires truly with probability η, or —
/// having missed the photon — spuriously with probability `dark_rate`,
/// contributing a uniformly random outcome bit.
pub fn apply_inefficiency(
    q: &JointDistribution,
    detectors: &DetectorModel,
    n: u64,
    seed: u64,
) -> Result<CountTable, ExperimentError> {
    if n == 0 {
        return Err(ExperimentError::InvalidTrialCount);
    }
    let mut rng = SplitMix64::new(seed);
    let mut counts = [0u64; 8];
    let mut detected = 0u64;
    for _ in 0..n {
        let cell = draw_cell(q, &mut rng);
        let mut bits = [
            ((cell >> 2) & 1) as u8,
            ((cell >> 1) & 1) as u8,
            (cell & 1) as u8,
        ];
        let mut coincidence = true;
        for (d, bit) in bits.iter_mut().enumerate() {
            let fired = rng.next_f64() < detectors.eta[d];
            if !fired {
                if detectors.dark_rate > 0.0 && rng.next_f64() < detectors.dark_rate {
                    *bit = rng.next_bit();
                } else {
                    coincidence = false;
                }
            }
        }
        if coincidence {
            let idx = ((bits[0] as usize) << 2) | ((bits[1] as usize) << 1) | bits[2] as usize;
            counts[idx] += 1;
            detected += 1;
        }
    }
    Ok(CountTable {
        counts,
        n_trials: n,
        n_detected: detected,
    })
}
