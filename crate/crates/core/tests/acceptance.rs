//! Acceptance suite: every release-gating property at its pinned
//! tolerance, one test per criterion. Each test prints its PASS/FAIL
//! line (visible with `--nocapture`).

use rarewave_core::acceptance::{self as acc, CriterionResult, Scenario};

fn check(r: rarewave_core::Result<CriterionResult>) {
    let r = r.expect("criterion setup failed");
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_closed_form_cross_checks() {
    check(acc::closed_form_cross_checks(&Scenario::default()));
}

#[test]
fn criterion_02_riemann_invariant_conservation() {
    check(acc::riemann_invariant_conservation(&Scenario::default()));
}

#[test]
fn criterion_03_profile_signs_and_constancy() {
    check(acc::profile_signs_and_constancy(&Scenario::default()));
}

#[test]
fn criterion_04_derivative_norm_decay() {
    check(acc::derivative_norm_decay(&Scenario::default()));
}

#[test]
fn criterion_05_fan_convergence() {
    check(acc::fan_convergence(&Scenario::default()));
}

#[test]
fn criterion_06_profile_derivative_correctness() {
    check(acc::profile_derivative_correctness(&Scenario::default()));
}

#[test]
fn criterion_07_solver_self_convergence() {
    check(acc::solver_self_convergence(&Scenario::default()));
}

#[test]
fn criterion_08_mass_conservation() {
    check(acc::mass_conservation(&Scenario::default()));
}

#[test]
fn criterion_09_stability_trend() {
    check(acc::stability_trend(&Scenario::default()));
}

#[test]
fn criterion_10_energy_diagnostics() {
    check(acc::energy_diagnostics(&Scenario::default()));
}

#[test]
fn criterion_11_boundary_identities() {
    check(acc::boundary_identities(&Scenario::default()));
}

#[test]
fn criterion_12_picard_cross_check() {
    check(acc::picard_cross_check(&Scenario::default()));
}

#[test]
fn criterion_13_admissibility_monitors() {
    check(acc::admissibility_monitors(&Scenario::default()));
}
