//! Source independence destroys the hidden-variable models: if the photon
//! and the EPR pair carry independently generated hidden variables, the
//! particle fraction is forced to equal both cos²α and sin²α. Only the
//! balanced rotation α = π/4 survives.
//!
//! ```text
//! cargo run --example independence_nogo
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

use wavicle::feasibility::{check_independence, Verdict};

fn main() {
    println!("alpha        verdict      forced f values");
    for k in 0..=8 {
        let alpha = FRAC_PI_2 * k as f64 / 8.0;
        let report = check_independence(alpha, 4, 1001).expect("valid settings");
        match report.verdict {
            Verdict::Feasible => println!(
                "{alpha:<11.6}  feasible     f = {:.6}",
                report.independence_f.unwrap()
            ),
            Verdict::Infeasible => {
                let (c2, s2) = report.certificate().unwrap().forced_values.unwrap();
                println!("{alpha:<11.6}  infeasible   f = {c2:.6} and f = {s2:.6}");
            }
        }
    }

    let report = check_independence(FRAC_PI_3, 4, 1001).unwrap();
    println!("\nfull certificate at alpha = π/3:");
    println!("{}", report.certificate().unwrap().description);
    println!(
        "scanned {} particle fractions; best remaining violation {:.3e}",
        report.settings.grid.unwrap() + 2,
        report.margin
    );

    let balanced = check_independence(FRAC_PI_4, 4, 1001).unwrap();
    println!(
        "\nat α = π/4 the forced values coincide and a witness exists (f = {:.3}):",
        balanced.independence_f.unwrap()
    );
    println!(
        "{}",
        serde_json::to_string_pretty(balanced.witness().unwrap()).unwrap()
    );
}
