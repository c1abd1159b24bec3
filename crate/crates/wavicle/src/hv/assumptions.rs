//! Assumption sets selecting which restrictions a hidden-variable theory
//! must satisfy.

use std::collections::BTreeSet;
use std::fmt;

use super::HvError;

/// The individual assumptions. `Adequacy` (the model reproduces the quantum
/// statistics) and `Realism` (photons carry an intrinsic wave/particle
/// label with the fixed open/closed conditionals) define the model class and
/// are always present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Assumption {
    Adequacy,
    Realism,
    StrongDeterminism,
    WeakDeterminism,
    Independence,
    DelayedAlphaChoice,
}

impl Assumption {
    pub fn label(&self) -> &'static str {
        match self {
            Assumption::Adequacy => "adequacy",
            Assumption::Realism => "realism",
            Assumption::StrongDeterminism => "strong-determinism",
            Assumption::WeakDeterminism => "weak-determinism",
            Assumption::Independence => "independence",
            Assumption::DelayedAlphaChoice => "delayed-alpha-choice",
        }
    }

    /// Parses a CLI-style label. Short forms `strong-det` and `weak-det`
    /// are accepted.
    pub fn parse(label: &str) -> Result<Self, HvError> {
        match label.trim().to_ascii_lowercase().as_str() {
            "adequacy" => Ok(Assumption::Adequacy),
            "realism" => Ok(Assumption::Realism),
            "strong-det" | "strong-determinism" => Ok(Assumption::StrongDeterminism),
            "weak-det" | "weak-determinism" => Ok(Assumption::WeakDeterminism),
            "independence" => Ok(Assumption::Independence),
            "delayed-alpha-choice" | "delayed-choice" => Ok(Assumption::DelayedAlphaChoice),
            other => Err(HvError::UnknownAssumption {
                label: other.to_string(),
            }),
        }
    }
}

/// Which determinism flavour is active.
///
/// `Strong` fixes the b outcome separately for each label λ (z and v are
/// independent bits per index). `Weak` is the joint-outcome encoding: each
/// index carries one (b, c) cell, so z\[i\] = v\[i\].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Determinism {
    Strong,
    Weak,
}

impl fmt::Display for Determinism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Determinism::Strong => write!(f, "strong"),
            Determinism::Weak => write!(f, "weak"),
        }
    }
}

/// A validated set of assumptions: adequacy and realism are always included,
/// and at most one determinism flavour may be present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumptionSet {
    flags: BTreeSet<Assumption>,
}

impl AssumptionSet {
    pub fn new(flags: impl IntoIterator<Item = Assumption>) -> Result<Self, HvError> {
        let mut set: BTreeSet<Assumption> = flags.into_iter().collect();
        set.insert(Assumption::Adequacy);
        set.insert(Assumption::Realism);
        if set.contains(&Assumption::StrongDeterminism)
            && set.contains(&Assumption::WeakDeterminism)
        {
            return Err(HvError::ConflictingDeterminism);
        }
        Ok(AssumptionSet { flags: set })
    }

    /// Adequacy + realism + strong determinism, the baseline of every check.
    pub fn baseline() -> Self {
        AssumptionSet::new([Assumption::StrongDeterminism]).expect("baseline is consistent")
    }

    pub fn with(&self, extra: Assumption) -> Result<Self, HvError> {
        AssumptionSet::new(self.flags.iter().copied().chain([extra]))
    }

    pub fn contains(&self, a: Assumption) -> bool {
        self.flags.contains(&a)
    }

    pub fn determinism(&self) -> Option<Determinism> {
        if self.contains(Assumption::StrongDeterminism) {
            Some(Determinism::Strong)
        } else if self.contains(Assumption::WeakDeterminism) {
            Some(Determinism::Weak)
        } else {
            None
        }
    }

    /// The determinism flavour, required by every constraint-system check.
    pub fn require_determinism(&self) -> Result<Determinism, HvError> {
        self.determinism().ok_or(HvError::MissingDeterminism)
    }

    pub fn labels(&self) -> Vec<String> {
        self.flags.iter().map(|a| a.label().to_string()).collect()
    }

    /// Parses a comma-separated list such as `realism,strong-det,independence`.
    pub fn parse_list(list: &str) -> Result<Self, HvError> {
        let mut flags = Vec::new();
        for piece in list.split(',') {
            if piece.trim().is_empty() {
                continue;
            }
            flags.push(Assumption::parse(piece)?);
        }
        AssumptionSet::new(flags)
    }
}
