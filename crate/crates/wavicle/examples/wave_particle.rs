//! The two single-qubit output states that define the behaviours: the
//! particle state |p⟩ = (|0⟩ + e^{iφ}|1⟩)/√2 is phase-insensitive in its
//! probabilities, while the wave state |w⟩ interferes as cos²(φ/2).
//!
//! ```text
//! cargo run --example wave_particle
//! ```

use wavicle::quantum::wave_particle_states;

fn main() {
    println!("phi        |p0|^2   |p1|^2   |w0|^2   |w1|^2");
    for k in 0..=8 {
        let phi = std::f64::consts::TAU * k as f64 / 8.0;
        let wp = wave_particle_states(phi);
        println!(
            "{phi:<9.5}  {:<7.4}  {:<7.4}  {:<7.4}  {:<7.4}",
            wp.particle[0].norm_sqr(),
            wp.particle[1].norm_sqr(),
            wp.wave[0].norm_sqr(),
            wp.wave[1].norm_sqr()
        );
    }
    println!();
    let wp = wave_particle_states(0.7);
    println!("at phi = 0.7 the raw amplitudes keep their phases:");
    println!("|p⟩ = [{:.6}, {:.6}]", wp.particle[0], wp.particle[1]);
    println!(
        "|w⟩ = [{:.6}, {:.6}]  (global e^{{iφ/2}} retained)",
        wp.wave[0], wp.wave[1]
    );
}
