//! Planning the optical delays so all three photons are measured
//! simultaneously, and checking that the rotation choice stays outside the
//! light cone of the quantum switch for the whole switching window.
//!
//! ```text
//! cargo run --example timing_plan
//! ```

use wavicle::experiment::{timing_plan, Geometry};

const GEOMETRY: &str = r#"{
  "labs": [
    {"label": "source",       "t": 0.0,    "x": 0.0,   "y": 0.0, "z": 0.0},
    {"label": "alpha_choice", "t": 2.0e-7, "x": 120.0, "y": 0.0, "z": 0.0},
    {"label": "switch",       "t": 2.0e-7, "x": 0.0,   "y": 3.0, "z": 0.0}
  ],
  "fibers": {"a": 100.0, "b": 100.0, "c": 200.0},
  "n_fiber": 1.468,
  "switch_duration": 5.0e-9
}"#;

fn main() {
    let geometry = Geometry::from_json_str(GEOMETRY).expect("well-formed geometry");
    let plan = timing_plan(&geometry).expect("feasible geometry");

    println!("arm   fiber     arrival        added delay");
    for (arm, name) in ["A", "B", "C"].iter().enumerate() {
        println!(
            "{name}     {:>6.1} m  {:>9.3} ns   {:>9.3} ns",
            [geometry.fibers.a, geometry.fibers.b, geometry.fibers.c][arm],
            plan.arrivals[arm] * 1e9,
            plan.tau[arm] * 1e9
        );
    }
    println!(
        "\ncommon measurement time: {:.3} ns",
        plan.measurement_time * 1e9
    );
    println!(
        "switch window: [{:.1}, {:.1}] ns, choice-switch distance {:.1} m",
        plan.switch_window.0 * 1e9,
        plan.switch_window.1 * 1e9,
        plan.choice_switch_distance
    );
    println!(
        "alpha choice spacelike from the whole switch window: {}",
        plan.choice_spacelike_from_switch
    );
}
