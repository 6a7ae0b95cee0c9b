//! Gas-dynamics library for the 3-rarefaction wave of a non-viscous,
//! heat-conductive ideal polytropic gas in one-dimensional half space.
//!
//! The library builds the exact self-similar rarefaction fan, its smooth
//! approximation (monotone data transported by the inviscid Burgers
//! equation and mapped through the Riemann invariants), and a finite
//! difference solver for the impermeable-wall problem in Lagrangian mass
//! coordinates, together with the energy/entropy diagnostics used to
//! observe the large-time stability of the wave.
//!
//! Everything is deterministic: identical inputs produce bit-identical
//! outputs.

// `!(x > 0.0)` is the NaN-rejecting form of the domain checks; the
// suggested `x <= 0.0` would wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod diagnostics;
pub mod error;
pub mod ibvp;
pub mod picard;
pub mod quad;
pub mod rarefaction;
pub mod smooth_profile;
pub mod special;
pub mod thermo;

pub use error::Error;
pub use ibvp::{Field, Grid, SimulationResult, SolverConfig};
pub use rarefaction::FarFieldSetup;
pub use smooth_profile::WaveProfile;
pub use thermo::{GasParams, ThermoState};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
