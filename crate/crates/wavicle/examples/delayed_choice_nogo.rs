//! Delaying the choice of α until after the photons exist pins the priors
//! before the setting is known: one prior assignment must then satisfy the
//! sector equations for every candidate rotation, which fails unless the
//! candidates agree in cos²α.
//!
//! ```text
//! cargo run --example delayed_choice_nogo
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_8};

use wavicle::feasibility::check_delayed_choice;

fn main() {
    let pairs = [
        (FRAC_PI_8, 3.0 * FRAC_PI_8),
        (0.0, FRAC_PI_2),
        (FRAC_PI_3, 2.0 * FRAC_PI_3),
        (0.4, 0.9),
    ];
    for (a1, a2) in pairs {
        let report = check_delayed_choice(a1, a2, 4).expect("valid settings");
        print!("alpha pair ({a1:.6}, {a2:.6}): {:?}", report.verdict);
        if report.degenerate {
            print!("  [degenerate: cos²α₁ = cos²α₂]");
        }
        if let Some(certificate) = report.certificate() {
            let (m1, m2) = certificate.forced_values.unwrap();
            print!(
                "  I0 particle mass must be both {:.6} and {:.6} (gap {:.6})",
                m1,
                m2,
                certificate.gap.unwrap()
            );
        }
        println!();
    }
}
