//! The conditional structure that makes the network a delayed-choice
//! experiment: given b = 0 (open interferometer) the photon statistics are
//! flat, given b = 1 they interfere; and conditioning on the remote outcome
//! c selects which quantum-control experiment was "really" run.
//!
//! ```text
//! cargo run --example conditional_statistics
//! ```

use wavicle::quantum::{
    analytic_distribution, simulate_distribution, CircuitVariant, VariantDistribution,
};

fn main() {
    let (phi, alpha) = (1.1, 0.5);
    let q = analytic_distribution(phi, alpha).expect("finite angles");

    println!("entanglement-assisted network at phi = {phi}, alpha = {alpha}");
    println!(
        "P(a=0 | b=0, c=0) = {:.6}  (particle: flat)",
        q.conditional_a0_given(0, 0).unwrap()
    );
    println!(
        "P(a=0 | b=0, c=1) = {:.6}",
        q.conditional_a0_given(0, 1).unwrap()
    );
    println!(
        "P(a=0 | b=1, c=0) = {:.6}  (wave: cos²(φ/2) = {:.6})",
        q.conditional_a0_given(1, 0).unwrap(),
        (phi / 2.0).cos().powi(2)
    );
    println!(
        "P(a=0 | b=1, c=1) = {:.6}",
        q.conditional_a0_given(1, 1).unwrap()
    );

    // Conditioned on c = 0, the (a, b) table is the quantum-control
    // network at the same rotation.
    let qc = CircuitVariant::quantum_control(phi, alpha).unwrap();
    let VariantDistribution::Pair(qc_table) = simulate_distribution(&qc).unwrap() else {
        unreachable!()
    };
    let conditioned = q.conditional_ab_given_c(0).unwrap();
    println!(
        "\n(a,b) given c=0 vs quantum-control at alpha: max deviation {:.2e}",
        qc_table.max_deviation(&conditioned)
    );

    // Summed over c, it is the classical fair-coin experiment, whatever
    // alpha was: the remote rotation leaves no local trace.
    let cc = CircuitVariant::classical_control(phi).unwrap();
    let VariantDistribution::Pair(cc_table) = simulate_distribution(&cc).unwrap() else {
        unreachable!()
    };
    println!(
        "(a,b) summed over c vs classical coin:      max deviation {:.2e}",
        cc_table.max_deviation(&q.marginal_ab())
    );
}
