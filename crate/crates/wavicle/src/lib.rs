//! wavicle — exact simulation and hidden-variable analysis of
//! entanglement-assisted delayed-choice interferometry.
//!
//! A photon A crosses a Mach-Zehnder interferometer whose second beamsplitter
//! is a quantum switch controlled by one half of an EPR pair (B); the other
//! half (C) is measured remotely after a rotation R_y(α). This crate provides:
//!
//! * [`quantum`] — dense statevector simulation of the three network
//!   variants (classical coin, quantum control, entanglement-assisted) and
//!   the closed-form joint distribution q(a, b, c).
//! * [`hv`] — a finite hidden-variable model class with intrinsic
//!   wave/particle labels, its forward-predicted distribution, adequacy
//!   residuals against the quantum table, and the linear constraint systems
//!   the class must satisfy.
//! * [`feasibility`] — a dense phase-1 simplex and the three feasibility
//!   checks: plain assumption sets (satisfiable), source independence
//!   (contradictory for generic α), and a delayed choice between two α
//!   settings (contradictory unless cos²α₁ = cos²α₂).
//! * [`experiment`] — seeded finite-statistics emulation with detector
//!   inefficiencies, chi-square goodness of fit, and a special-relativistic
//!   timing planner for the three photon arms.
//! * [`cli`] — the `wavicle` command-line front end (`distribution`,
//!   `feasibility`, `sweep`, `simulate`, `timing`).
//!
//! Every operation is deterministic: sampling is governed by explicit 64-bit
//! seeds and solver pivoting is fixed, so identical inputs produce
//! byte-identical outputs.
//!
//! # Example
//!
//! The central contrast in a few lines: without restrictions a deterministic
//! wave-or-particle model matching the quantum statistics exists, but
//! independently prepared sources leave none (except at the balanced
//! rotation, where cos²α = sin²α):
//!
//! ```
//! use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};
//! use wavicle::feasibility::{check_assumptions, check_independence, Verdict};
//! use wavicle::hv::AssumptionSet;
//!
//! let unrestricted =
//!     check_assumptions(FRAC_PI_3, 0.7, 4, &AssumptionSet::baseline()).unwrap();
//! assert_eq!(unrestricted.verdict, Verdict::Feasible);
//!
//! let independent = check_independence(FRAC_PI_3, 4, 101).unwrap();
//! assert_eq!(independent.verdict, Verdict::Infeasible);
//! let (c2, s2) = independent.certificate().unwrap().forced_values.unwrap();
//! assert!((c2 - 0.25).abs() < 1e-12 && (s2 - 0.75).abs() < 1e-12);
//!
//! let balanced = check_independence(FRAC_PI_4, 4, 101).unwrap();
//! assert_eq!(balanced.verdict, Verdict::Feasible);
//! ```
//!
//! The `examples/` directory demonstrates each capability as a runnable
//! program; start with `cargo run --example distribution_table`.

pub mod cli;
pub mod experiment;
pub mod feasibility;
pub mod hv;
pub mod quantum;
