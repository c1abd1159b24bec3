//! Feasibility verdicts with witnesses or certificates.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::hv::HVModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Feasible,
    Infeasible,
}

/// What a verdict rests on: an explicit hidden-variable model, a raw
/// variable assignment (for standalone linear systems), or an infeasibility
/// certificate. Exactly one is present per report.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Witness(HVModel),
    Assignment(BTreeMap<String, f64>),
    Certificate(Certificate),
}

/// Infeasibility evidence. `forced_values` carries the analytic pair of
/// mutually contradictory requirements where one exists (it extends to
/// every hidden-variable cardinality); `min_violation` is the smallest
/// violation the solver could reach over the scanned branches, which is
/// evidence at the scanned size only.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forced_values: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    pub min_violation: f64,
}

/// The inputs a report was produced for.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Settings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_pair: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    pub assumptions: Vec<String>,
    pub encoding: String,
}

/// Outcome of a feasibility check.
///
/// Feasible reports carry a witness (or assignment) and `margin` is the
/// smallest inequality slack at that point. Infeasible reports carry a
/// certificate and `margin` is the smallest maximum-constraint-violation
/// over all scanned branches. Reports serialize deterministically; identical
/// inputs produce byte-identical JSON.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    /// Set on feasible delayed-choice reports when the two rotations agree
    /// in cos², the degenerate escape hatch.
    pub degenerate: bool,
    pub margin: f64,
    pub scanned_branches: usize,
    pub settings: Settings,
    #[serde(flatten)]
    pub evidence: Evidence,
    /// The particle fraction f at which the independence scan succeeded.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub independence_f: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FeasibilityReport {
    pub fn witness(&self) -> Option<&HVModel> {
        match &self.evidence {
            Evidence::Witness(model) => Some(model),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.evidence {
            Evidence::Certificate(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CLI exit-code contract: 0 feasible, 3 infeasible.
    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Verdict::Feasible => 0,
            Verdict::Infeasible => 3,
        }
    }
}
