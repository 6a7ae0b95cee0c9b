//! Shared fixtures for the kernel benchmarks.

use rarewave_core::ibvp::{self, Field, Grid, PerturbationSpec, SolverConfig};
use rarewave_core::{FarFieldSetup, GasParams, WaveProfile};

pub fn default_profile() -> WaveProfile {
    let gas = GasParams::defaults();
    let setup = FarFieldSetup::new(1.0, 2.0, 1.0, &gas).expect("default far field");
    WaveProfile::new(setup, gas).expect("default profile")
}

pub fn solver_fixture(n: usize) -> (WaveProfile, Grid, SolverConfig, Field) {
    let profile = default_profile();
    let grid = Grid::new(160.0, n).expect("grid");
    let cfg = SolverConfig::new(
        0.4,
        0.4,
        1.0,
        0.5,
        PerturbationSpec { amplitude: 0.01, center: 20.0, width: 5.0 },
    )
    .expect("config");
    let f0 = ibvp::initial_data(&profile, &cfg, &grid).expect("initial data");
    (profile, grid, cfg, f0)
}
