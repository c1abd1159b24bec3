//! The determinism assumption comes in two encodings: strong (the b outcome
//! may depend on the wave/particle label) and the joint-outcome form (each
//! hidden-variable index fixes one (b, c) pair outright). The conclusions
//! survive the switch: witnesses still exist without extra assumptions, and
//! independence or a delayed α choice still rules every model out.
//!
//! ```text
//! cargo run --example weak_determinism
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_8};

use wavicle::feasibility::{check_delayed_choice_with, check_independence_with, Verdict};
use wavicle::hv::{check_adequacy, construct_weak_nonlocal_model, Determinism};
use wavicle::quantum::analytic_distribution;

fn main() {
    // An explicit joint-outcome witness: one index per (b, c) cell.
    let (alpha, phi) = (0.8, 1.3);
    let witness = construct_weak_nonlocal_model(alpha, phi, 4).expect("N >= 4");
    let q = analytic_distribution(phi, alpha).unwrap();
    let adequacy = check_adequacy(&witness, phi, &q, 1e-9).unwrap();
    println!(
        "joint-outcome witness at alpha = {alpha}: residual {:.2e}, z = v = {:?}",
        adequacy.max_residual, witness.z
    );

    println!("\nindependence under both encodings:");
    println!("alpha        strong       joint-outcome");
    for k in 0..=6 {
        let a = FRAC_PI_2 * k as f64 / 6.0;
        let strong = check_independence_with(a, 4, 1001, Determinism::Strong).unwrap();
        let weak = check_independence_with(a, 4, 1001, Determinism::Weak).unwrap();
        println!(
            "{a:<11.6}  {:<11}  {:<11}",
            label(strong.verdict),
            label(weak.verdict)
        );
    }

    let pair = check_delayed_choice_with(FRAC_PI_8, 3.0 * FRAC_PI_8, 4, Determinism::Weak).unwrap();
    let degenerate =
        check_delayed_choice_with(FRAC_PI_3, 2.0 * FRAC_PI_3, 4, Determinism::Weak).unwrap();
    println!(
        "\ndelayed choice (π/8, 3π/8): {}, (π/3, 2π/3): {}{}",
        label(pair.verdict),
        label(degenerate.verdict),
        if degenerate.degenerate {
            " (degenerate)"
        } else {
            ""
        }
    );
}

fn label(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Feasible => "feasible",
        Verdict::Infeasible => "infeasible",
    }
}
