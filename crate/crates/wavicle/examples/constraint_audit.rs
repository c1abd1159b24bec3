//! Prints the linear systems the feasibility engine actually decides, in
//! their auditable one-constraint-per-line form: once with the bilinear
//! terms linearized through u = x·f_w and t = y·f_p, and once in the
//! reduced form where x and y stay undetermined.
//!
//! ```text
//! cargo run --example constraint_audit
//! ```

use std::f64::consts::FRAC_PI_3;

use wavicle::hv::{reduce_constraints, AssumptionSet, DiscreteAssignment, ReductionMode};

fn main() {
    let discrete = DiscreteAssignment::new(
        vec![1, 0, 1, 1], // z: particle sees the open arm except at index 1
        vec![1, 0, 0, 1], // v: wave weight on the open arm at indices 0, 3
        vec![0, 0, 1, 1], // partition into I0 = {0, 1}, I1 = {2, 3}
    )
    .unwrap();
    let assumptions = AssumptionSet::baseline();

    for mode in [ReductionMode::Substituted, ReductionMode::Reduced] {
        let system =
            reduce_constraints(FRAC_PI_3, 0.9, 0.5, &discrete, &assumptions, mode).unwrap();
        println!("==== {mode} ====");
        println!("{}", system.dump());
    }
}
