//! Minkowski separation checks and the timing plan for the three photon
//! arms.

use serde::{Deserialize, Serialize};

use super::ExperimentError;

/// Exact SI speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Standard telecom fiber group index, used when the geometry gives none.
pub const DEFAULT_FIBER_INDEX: f64 = 1.468;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeEvent {
    pub label: String,
    /// Seconds.
    pub t: f64,
    /// Meters.
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpacetimeEvent {
    pub fn new(label: impl Into<String>, t: f64, x: f64, y: f64, z: f64) -> Self {
        Self {
            label: label.into(),
            t,
            x,
            y,
            z,
        }
    }

    pub fn distance(&self, other: &SpacetimeEvent) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// True iff the events are spacelike separated: c²(Δt)² < |Δx⃗|², so no
/// subluminal signal connects them.
pub fn spacelike_separated(
    e1: &SpacetimeEvent,
    e2: &SpacetimeEvent,
) -> Result<bool, ExperimentError> {
    if !e1.is_finite() || !e2.is_finite() {
        return Err(ExperimentError::NonFiniteEvent);
    }
    let dt = SPEED_OF_LIGHT * (e1.t - e2.t);
    let dx = e1.distance(e2);
    Ok(dt * dt < dx * dx)
}

/// Experiment geometry, read from JSON. Labs must include events labeled
/// `alpha_choice` (where and when the rotation setting is drawn) and
/// `switch` (the quantum switch). Fiber lengths are meters per arm.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Geometry {
    pub labs: Vec<SpacetimeEvent>,
    pub fibers: FiberLengths,
    #[serde(default)]
    pub n_fiber: Option<f64>,
    /// Seconds the switch stays active; the α choice must be spacelike from
    /// the whole window.
    #[serde(default)]
    pub switch_duration: Option<f64>,
    /// Existing per-arm delays (seconds) already in the paths.
    #[serde(default)]
    pub pre_delays: Option<[f64; 3]>,
    /// Optional pinned common measurement time; omitted means "as early as
    /// the slowest arm allows".
    #[serde(default)]
    pub target_time: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FiberLengths {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Geometry {
    /// Parses geometry JSON, reporting serde's line/column diagnostics on
    /// malformed input.
    pub fn from_json_str(text: &str) -> Result<Self, ExperimentError> {
        serde_json::from_str(text).map_err(|e| ExperimentError::MalformedGeometry {
            detail: e.to_string(),
        })
    }

    pub fn lab(&self, label: &str) -> Result<&SpacetimeEvent, ExperimentError> {
        self.labs
            .iter()
            .find(|lab| lab.label == label)
            .ok_or_else(|| ExperimentError::MissingLab {
                label: label.to_string(),
            })
    }
}

/// The delay assignment equalizing the three measurement times, plus the
/// light-cone verdict for the α choice against the switch window.
#[derive(Debug, Clone, Serialize)]
pub struct TimingPlan {
    /// Added delays (τ_A, τ_B, τ_C), seconds.
    pub tau: [f64; 3],
    /// Photon arrival times before the added delays, seconds.
    pub arrivals: [f64; 3],
    /// Common measurement time after the added delays.
    pub measurement_time: f64,
    /// Switch window [start, end] taken from the `switch` lab event.
    pub switch_window: (f64, f64),
    pub choice_switch_distance: f64,
    /// True iff the α-choice event is spacelike from the entire window.
    pub choice_spacelike_from_switch: bool,
}

/// Computes per-arm delays so all three photons are measured simultaneously
/// and checks the α-choice/switch separation. Arrival per arm is
/// pre_delay + length·n_fiber/c from a common emission at t = 0.
pub fn timing_plan(geometry: &Geometry) -> Result<TimingPlan, ExperimentError> {
    let lengths = [geometry.fibers.a, geometry.fibers.b, geometry.fibers.c];
    for &length in &lengths {
        if !(length.is_finite() && length > 0.0) {
            return Err(ExperimentError::InvalidFiberLength { value: length });
        }
    }
    let n_fiber = geometry.n_fiber.unwrap_or(DEFAULT_FIBER_INDEX);
    if !(n_fiber.is_finite() && n_fiber >= 1.0) {
        return Err(ExperimentError::InvalidFiberIndex { value: n_fiber });
    }
    let pre = geometry.pre_delays.unwrap_or([0.0; 3]);
    let mut arrivals = [0.0; 3];
    for arm in 0..3 {
        arrivals[arm] = pre[arm] + lengths[arm] * n_fiber / SPEED_OF_LIGHT;
    }
    let latest = arrivals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let target = geometry.target_time.unwrap_or(latest);
    let mut tau = [0.0; 3];
    for arm in 0..3 {
        let required = target - arrivals[arm];
        if required < -1e-15 {
            return Err(ExperimentError::GeometryInfeasible {
                arm: ['A', 'B', 'C'][arm],
                required,
            });
        }
        tau[arm] = required.max(0.0);
    }

    let choice = geometry.lab("alpha_choice")?;
    let switch = geometry.lab("switch")?;
    let duration = geometry.switch_duration.unwrap_or(0.0);
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(ExperimentError::InvalidSwitchDuration { value: duration });
    }
    let window_end = SpacetimeEvent {
        t: switch.t + duration,
        ..switch.clone()
    };
    // c²Δt² − d² is concave in the window time, so the endpoints decide the
    // whole interval.
    let spacelike =
        spacelike_separated(choice, switch)? && spacelike_separated(choice, &window_end)?;

    Ok(TimingPlan {
        tau,
        arrivals,
        measurement_time: target,
        switch_window: (switch.t, switch.t + duration),
        choice_switch_distance: choice.distance(switch),
        choice_spacelike_from_switch: spacelike,
    })
}
