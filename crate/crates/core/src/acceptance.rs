//! Acceptance suite: the property checks that gate a release, shared by
//! the `verify` subcommand and the `acceptance` integration test target.
//!
//! Each criterion pins its tolerances here, in code. Runs are
//! deterministic (seeded draws, sequential arithmetic).

use crate::diagnostics as diag;
use crate::ibvp::{self, Field, Grid, PerturbationSpec, SolverConfig};
use crate::picard::picard_local;
use crate::quad::{adaptive_simpson, trapezoid};
use crate::rarefaction::{riemann_fan, u_plus, wave_curve_point, FarFieldSetup};
use crate::smooth_profile::{LpNorm, WaveProfile};
use crate::thermo::GasParams;
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} {:2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.details
        )
    }
}

fn outcome(id: usize, name: &'static str, passed: bool, details: String) -> CriterionResult {
    CriterionResult { id, name, passed, details }
}

/// Physical scenario the suite runs on (grid and solver parameters are
/// pinned per criterion).
#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub gas: GasParams,
    pub v_plus: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self { gas: GasParams::defaults(), v_plus: 1.0, theta_plus: 2.0, theta_minus: 1.0 }
    }
}

impl Scenario {
    pub fn profile(&self) -> Result<WaveProfile> {
        let setup = FarFieldSetup::new(self.v_plus, self.theta_plus, self.theta_minus, &self.gas)?;
        WaveProfile::new(setup, self.gas)
    }
}

/// Run the whole suite in order. Stops only on setup errors, not on
/// criterion failures: every criterion reports its own verdict.
pub fn run_all(sc: &Scenario) -> Result<Vec<CriterionResult>> {
    Ok(vec![
        closed_form_cross_checks(sc)?,
        riemann_invariant_conservation(sc)?,
        profile_signs_and_constancy(sc)?,
        derivative_norm_decay(sc)?,
        fan_convergence(sc)?,
        profile_derivative_correctness(sc)?,
        solver_self_convergence(sc)?,
        mass_conservation(sc)?,
        stability_trend(sc)?,
        energy_diagnostics(sc)?,
        boundary_identities(sc)?,
        picard_cross_check(sc)?,
        admissibility_monitors(sc)?,
    ])
}

/// Quadrature route for the far-field velocity, independent of the
/// closed form it checks.
fn u_plus_quadrature(v_plus: f64, theta_plus: f64, theta_minus: f64, g: &GasParams) -> f64 {
    let vm = (theta_plus / theta_minus).powf(1.0 / (g.gamma - 1.0)) * v_plus;
    let coeff = (g.r * g.gamma * v_plus.powf(g.gamma - 1.0) * theta_plus).sqrt();
    adaptive_simpson(|xi| coeff * xi.powf(-0.5 * (g.gamma + 1.0)), v_plus, vm, 1e-13)
}

/// Criterion 1: closed-form cross-checks: u_plus vs quadrature over 100 random
/// draws to 1e-10 relative; wave-curve endpoint identities to 1e-12.
pub fn closed_form_cross_checks(sc: &Scenario) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst_rel = 0.0_f64;
    for _ in 0..100 {
        let g = GasParams {
            gamma: rng.gen_range(1.1..3.0),
            r: rng.gen_range(0.2..3.0),
            ..sc.gas
        };
        let v_plus = rng.gen_range(0.2..3.0);
        let theta_minus = rng.gen_range(0.2..2.0);
        let theta_plus = theta_minus * rng.gen_range(1.05..4.0);
        let closed = u_plus(v_plus, theta_plus, theta_minus, &g)?;
        let quad = u_plus_quadrature(v_plus, theta_plus, theta_minus, &g);
        worst_rel = worst_rel.max((closed - quad).abs() / quad.abs());
    }

    let setup = FarFieldSetup::new(sc.v_plus, sc.theta_plus, sc.theta_minus, &sc.gas)?;
    let (u_at_vm, th_at_vm) = wave_curve_point(setup.v_minus, &setup, &sc.gas)?;
    let (u_at_vp, th_at_vp) = wave_curve_point(setup.v_plus, &setup, &sc.gas)?;
    let endpoint_err = (u_at_vm.abs() / setup.u_plus)
        .max((th_at_vm - setup.theta_minus).abs() / setup.theta_minus)
        .max((u_at_vp - setup.u_plus).abs() / setup.u_plus)
        .max((th_at_vp - setup.theta_plus).abs() / setup.theta_plus);

    let passed = worst_rel <= 1e-10 && endpoint_err <= 1e-12;
    Ok(outcome(
        1,
        "closed-form cross-checks",
        passed,
        format!("worst u+ quadrature mismatch {worst_rel:.2e} (<=1e-10), endpoint error {endpoint_err:.2e} (<=1e-12)"),
    ))
}

/// Criterion 2: Riemann-invariant conservation on 1e4 fan and 1e4 profile points
/// to 1e-12 relative.
pub fn riemann_invariant_conservation(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let setup = profile.setup;
    let g = &sc.gas;
    let mut worst = 0.0_f64;
    for i in 0..10_000 {
        let xi = setup.w_minus - 0.5 + (setup.delta_r + 1.0) * i as f64 / 9_999.0;
        let st = riemann_fan(xi, &setup, g);
        worst = worst.max((st.v.powf(g.gamma - 1.0) * st.theta - setup.riemann_k).abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..10_000 {
        let t: f64 = rng.gen_range(0.0..100.0);
        let x: f64 = rng.gen_range(0.0..300.0);
        let st = profile.state(t, x);
        worst = worst.max((st.v.powf(g.gamma - 1.0) * st.theta - setup.riemann_k).abs());
    }
    let rel = worst / setup.riemann_k;
    Ok(outcome(
        2,
        "riemann invariant conservation",
        rel <= 1e-12,
        format!("worst relative deviation {rel:.2e} over 2x1e4 points (<=1e-12)"),
    ))
}

/// Criterion 3: derivative sign inequalities at 1e4 sampled (t, x) and bit-exact
/// constancy left of the wave foot.
pub fn profile_signs_and_constancy(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let setup = profile.setup;
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut violations = 0usize;
    for k in 0..10_000 {
        let t: f64 = rng.gen_range(0.0..100.0);
        // cover the constant region, the wave, and the far tail
        let x: f64 = if k % 3 == 0 {
            rng.gen_range(0.0..1.0) * setup.w_minus * (1.0 + t)
        } else {
            rng.gen_range(0.0..(setup.w_plus * (1.0 + t) + 150.0))
        };
        let q = profile.eval(t, x);
        if !(q.v_x <= 0.0 && q.u_x >= 0.0 && q.theta_x >= 0.0) {
            violations += 1;
        }
        if x < setup.w_minus * (1.0 + t)
            && !(q.v == setup.v_minus
                && q.u == 0.0
                && q.theta == setup.theta_minus
                && q.v_x == 0.0
                && q.u_x == 0.0
                && q.theta_x == 0.0)
        {
            violations += 1;
        }
    }
    Ok(outcome(
        3,
        "profile sign inequalities and left constancy",
        violations == 0,
        format!("{violations} violations over 1e4 samples (require 0)"),
    ))
}

/// Criterion 4: decay of the first-derivative norms: the fitted exponent of
/// ||u~_x||_L2 over t in [10, 1e3] is -0.5 +- 0.1, and ||u~_x||_L1
/// equals the velocity rise u_plus to 1e-6.
pub fn derivative_norm_decay(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let times: Vec<f64> = (0..25)
        .map(|i| 10.0 * 100.0_f64.powf(i as f64 / 24.0))
        .collect();
    let (l, n) = decay_domain(&profile, *times.last().unwrap());
    let report = profile.lemma21_report(LpNorm::L2, &times, l, n)?;
    let alpha = report.alpha_u;

    let l1_times = [10.0, 100.0, 1000.0];
    let l1_report = profile.lemma21_report(LpNorm::L1, &l1_times, l, n)?;
    let worst_l1 = l1_report
        .rows
        .iter()
        .map(|r| (r.d1[1] - profile.setup.u_plus).abs())
        .fold(0.0_f64, f64::max);

    let passed = (alpha + 0.5).abs() <= 0.1 && worst_l1 <= 1e-6;
    Ok(outcome(
        4,
        "derivative norm decay",
        passed,
        format!(
            "fitted L2 exponent {alpha:.4} (target -0.5 +- 0.1, r2 = {:.4}), worst |L1 - u+| = {worst_l1:.2e} (<=1e-6)",
            report.r2_u
        ),
    ))
}

/// Domain that contains the wave up to time `t_max` with tail margin,
/// resolved at roughly dx = 0.07 (capped at 2^15 cells).
pub fn decay_domain(profile: &WaveProfile, t_max: f64) -> (f64, usize) {
    let tail = 140.0 / profile.gas.eps.min(1.0);
    let l = profile.setup.w_plus * (1.0 + t_max) + tail;
    let n = ((l / 0.067).ceil() as usize).clamp(4096, 32_768);
    (l, n)
}

/// Criterion 5: uniform convergence of the profile to the fan: the sup-distance at
/// t = 1e3 is below 10% of its t = 1 value.
pub fn fan_convergence(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let times = [1.0, 10.0, 100.0, 1000.0];
    let (l, n) = decay_domain(&profile, 1000.0);
    let report = profile.lemma21_report(LpNorm::LInf, &times, l, n)?;
    let early = report.rows.first().unwrap().sup_fan;
    let late = report.rows.last().unwrap().sup_fan;
    let ratio = late / early;
    Ok(outcome(
        5,
        "profile-to-fan sup convergence",
        ratio < 0.10,
        format!("sup distance {late:.3e} at t=1e3 vs {early:.3e} at t=1, ratio {ratio:.3} (<0.10)"),
    ))
}

/// Criterion 6: chain-rule derivatives against centered finite differences at 100
/// random points, relative error below 1e-6.
pub fn profile_derivative_correctness(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let h = 1e-5;
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let t: f64 = rng.gen_range(0.1..20.0);
        let z: f64 = rng.gen_range(3.0..25.0);
        let x0 = z / profile.gas.eps;
        let x = x0 + (1.0 + t) * profile.w0(x0);
        let q = profile.eval(t, x);
        let xp = profile.eval(t, x + h);
        let xm = profile.eval(t, x - h);
        let tp = profile.eval(t + h, x);
        let tm = profile.eval(t - h, x);
        for (fd, exact) in [
            ((xp.v - xm.v) / (2.0 * h), q.v_x),
            ((xp.u - xm.u) / (2.0 * h), q.u_x),
            ((xp.theta - xm.theta) / (2.0 * h), q.theta_x),
            ((tp.v - tm.v) / (2.0 * h), q.v_t),
            ((tp.u - tm.u) / (2.0 * h), q.u_t),
            ((tp.theta - tm.theta) / (2.0 * h), q.theta_t),
        ] {
            if exact.abs() > 1e-8 {
                worst = worst.max((fd - exact).abs() / exact.abs());
            }
        }
    }
    Ok(outcome(
        6,
        "profile derivative correctness",
        worst <= 1e-6,
        format!("worst relative FD mismatch {worst:.2e} over 100 points (<=1e-6)"),
    ))
}

fn zero_pert() -> PerturbationSpec {
    PerturbationSpec { amplitude: 0.0, center: 20.0, width: 5.0 }
}

fn small_pert(amplitude: f64) -> PerturbationSpec {
    PerturbationSpec { amplitude, center: 20.0, width: 5.0 }
}

/// L2 distance between two fields on the coarse field's nodes (the finer
/// grid must refine the coarser by `stride`).
fn field_l2_diff(coarse: &Field, fine: &Field, stride: usize, dx_coarse: f64) -> f64 {
    let sq: Vec<f64> = (0..coarse.v.len())
        .map(|i| {
            let j = i * stride;
            let dv = coarse.v[i] - fine.v[j];
            let du = coarse.u[i] - fine.u[j];
            let dth = coarse.theta[i] - fine.theta[j];
            dv * dv + du * du + dth * dth
        })
        .collect();
    trapezoid(&sq, dx_coarse).sqrt()
}

/// Criterion 7: self-convergence of the solver on zero-perturbation data: observed
/// order >= 1 in the L2 differences of runs at N, 2N, 4N at t = 1.
pub fn solver_self_convergence(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let g = &sc.gas;
    let cfg = SolverConfig::new(0.4, 0.4, 1.0, 0.5, zero_pert())?;
    let l = 96.0;
    let base = 512usize;
    let mut solutions = Vec::new();
    for k in 0..3 {
        let grid = Grid::new(l, base << k)?;
        let f0 = ibvp::initial_data(&profile, &cfg, &grid)?;
        solutions.push((grid, ibvp::advance_to(f0, 1.0, &profile, g, &grid, &cfg)?));
    }
    // errors measured against the 4x-finer run as reference
    let e1 = field_l2_diff(&solutions[0].1, &solutions[2].1, 4, solutions[0].0.dx);
    let e2 = field_l2_diff(&solutions[1].1, &solutions[2].1, 2, solutions[1].0.dx);
    let order = (e1 / e2).log2();
    Ok(outcome(
        7,
        "solver self-convergence",
        order >= 1.0,
        format!("L2 errors vs reference {e1:.3e} -> {e2:.3e}, observed order {order:.2} (>=1)"),
    ))
}

/// Criterion 8: discrete conservation of the perturbation mass over t in [0, 10]
/// to 1e-6 relative for a small bump.
pub fn mass_conservation(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let g = &sc.gas;
    let grid = Grid::new(160.0, 4096)?;
    let cfg = SolverConfig::new(0.4, 0.4, 10.0, 1.0, small_pert(0.01))?;
    let run = ibvp::simulate(&cfg, &profile, g, &grid)?;
    let m0 = run.norms.rows[0].mass;
    let tol = 1e-6 * m0.abs().max(1.0);
    let worst = run
        .norms
        .rows
        .iter()
        .map(|r| (r.mass - m0).abs())
        .fold(0.0_f64, f64::max);
    Ok(outcome(
        8,
        "discrete mass conservation",
        worst <= tol,
        format!("worst |mass drift| {worst:.2e} over [0,10] (tol {tol:.2e})"),
    ))
}

/// Criterion 9: stability trend at desk scale: with the defaults and amplitude
/// 0.01 the sup-distance to the fan at t = 200 sits strictly below its
/// t = 1 value, and the perturbation L2 norm never exceeds
/// `5 ||.||(0) + 5 eps^{1/4} delta_r`.
pub fn stability_trend(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let g = &sc.gas;
    let grid = Grid::new(600.0, 4096)?;
    let cfg = SolverConfig::new(0.4, 0.4, 200.0, 0.5, small_pert(0.01))?;
    let run = ibvp::simulate(&cfg, &profile, g, &grid)?;
    let rows = &run.norms.rows;
    let sup_at = |t: f64| {
        rows.iter()
            .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
            .unwrap()
            .sup_fan
    };
    let sup1 = sup_at(1.0);
    let sup200 = sup_at(200.0);
    let l2_bound = 5.0 * rows[0].l2 + 5.0 * sc.gas.eps.powf(0.25) * profile.setup.delta_r;
    let l2_max = rows.iter().map(|r| r.l2).fold(0.0_f64, f64::max);
    let passed = sup200 < sup1 && l2_max <= l2_bound;
    Ok(outcome(
        9,
        "stability trend",
        passed,
        format!(
            "sup_fan {sup200:.3e} (t=200) vs {sup1:.3e} (t=1); max L2 {l2_max:.3e} within bound {l2_bound:.3e}"
        ),
    ))
}

/// Equally spaced field triplet around `t0` with spacing `delta`.
fn triplet(
    f: Field,
    delta: f64,
    profile: &WaveProfile,
    g: &GasParams,
    grid: &Grid,
    cfg: &SolverConfig,
) -> Result<(Field, Field, Field)> {
    let f1 = ibvp::advance_to(f.clone(), f.t + delta, profile, g, grid, cfg)?;
    let f2 = ibvp::advance_to(f1.clone(), f1.t + delta, profile, g, grid, cfg)?;
    Ok((f, f1, f2))
}

/// Energy-identity residual of a perturbed run at resolution `n`,
/// evaluated at t = 1 with a triplet spacing proportional to dx.
fn energy_residual_at(sc: &Scenario, n: usize) -> Result<f64> {
    let profile = sc.profile()?;
    let g = &sc.gas;
    let grid = Grid::new(96.0, n)?;
    let cfg = SolverConfig::new(0.4, 0.4, 2.0, 0.5, small_pert(0.01))?;
    let f0 = ibvp::initial_data(&profile, &cfg, &grid)?;
    let f = ibvp::advance_to(f0, 1.0, &profile, g, &grid, &cfg)?;
    let delta = 0.5 * grid.dx;
    let (a, b, c) = triplet(f, delta, &profile, g, &grid, &cfg)?;
    diag::energy_identity_residual(&a, &b, &c, &profile, g, &grid)
}

/// Criterion 10: energy diagnostics: E >= 0 along a run and exactly 0 on zero
/// perturbation, monotone dissipation accumulator, and the energy
/// identity residual halves when dx and dt halve.
pub fn energy_diagnostics(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let g = &sc.gas;

    // exact-profile field: zero perturbation, zero energy
    let grid = Grid::new(96.0, 512)?;
    let nodes = grid.nodes();
    let t = 3.0;
    let synthetic = Field {
        t,
        v: (0..nodes).map(|i| profile.state(t, grid.x(i)).v).collect(),
        u: (0..nodes).map(|i| profile.state(t, grid.x(i)).u).collect(),
        theta: (0..nodes).map(|i| profile.state(t, grid.x(i)).theta).collect(),
    };
    let e_zero = diag::energy_total(&synthetic, &profile, g, &grid)?;

    let cfg = SolverConfig::new(0.4, 0.4, 2.0, 0.25, small_pert(0.01))?;
    let run = ibvp::simulate(&cfg, &profile, g, &grid)?;
    let e_min = run.norms.rows.iter().map(|r| r.energy).fold(f64::INFINITY, f64::min);
    let cum_monotone = run
        .norms
        .rows
        .windows(2)
        .all(|w| w[1].diss_cum >= w[0].diss_cum - 1e-15);

    let res_coarse = energy_residual_at(sc, 512)?;
    let res_fine = energy_residual_at(sc, 1024)?;
    let factor = res_fine / res_coarse;

    let passed = e_zero == 0.0 && e_min >= 0.0 && cum_monotone && factor <= 0.5;
    Ok(outcome(
        10,
        "energy diagnostics",
        passed,
        format!(
            "E(zero pert) = {e_zero:.1e}, min E {e_min:.3e} (>=0), accumulator monotone: {cum_monotone}, residual factor under halving {factor:.3} (<=0.5; {res_coarse:.3e} -> {res_fine:.3e})"
        ),
    ))
}

/// Wall residuals of a perturbed run at resolution `n`, at t = 2.
fn wall_residuals_at(sc: &Scenario, n: usize) -> Result<(f64, f64)> {
    let profile = sc.profile()?;
    let g = &sc.gas;
    let grid = Grid::new(96.0, n)?;
    // perturbation near the wall so the wall identities see real signals
    let cfg = SolverConfig::new(
        0.4,
        0.4,
        3.0,
        0.5,
        PerturbationSpec { amplitude: 0.02, center: 6.0, width: 4.0 },
    )?;
    let f0 = ibvp::initial_data(&profile, &cfg, &grid)?;
    let f = ibvp::advance_to(f0, 2.0, &profile, g, &grid, &cfg)?;
    let r353 = diag::boundary_residual_353(&f, &profile, g, &grid);
    let delta = 0.5 * grid.dx;
    let (a, b, c) = triplet(f, delta, &profile, g, &grid, &cfg)?;
    let r356 = diag::boundary_relation_356(&a, &b, &c, &profile, &grid, g)?;
    Ok((r353, r356))
}

/// Criterion 11: wall identities: residuals vanish at observed order >= 1 under
/// refinement on solution data and are O(1) on injected non-solution data.
pub fn boundary_identities(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let g = &sc.gas;
    let (c353, c356) = wall_residuals_at(sc, 1024)?;
    let (f353, f356) = wall_residuals_at(sc, 2048)?;
    let order353 = (c353 / f353).log2();
    let order356 = (c356 / f356).log2();

    // injected non-solution data: curvature at the wall with no dynamics
    let grid = Grid::new(96.0, 512)?;
    let nodes = grid.nodes();
    let mut inj = Field {
        t: 1.0,
        v: (0..nodes).map(|i| profile.state(1.0, grid.x(i)).v).collect(),
        u: (0..nodes).map(|i| profile.state(1.0, grid.x(i)).u).collect(),
        theta: (0..nodes).map(|i| profile.state(1.0, grid.x(i)).theta).collect(),
    };
    for i in 0..nodes {
        let x = grid.x(i);
        inj.theta[i] += 0.1 * x * x * (-x).exp();
        inj.v[i] += 0.05 * x * (-0.5 * x).exp();
    }
    let inj353 = diag::boundary_residual_353(&inj, &profile, g, &grid);
    // time-varying injection violating the wall relation
    let make = |t: f64, a: f64| {
        let mut f = inj.clone();
        f.t = t;
        for i in 0..nodes {
            let x = grid.x(i);
            f.v[i] += a * t * x * (-x).exp();
            f.theta[i] += a * t * x * x * (-x).exp();
        }
        f
    };
    let dt = 0.05;
    let inj356 = diag::boundary_relation_356(
        &make(1.0 - dt, 0.5),
        &make(1.0, 0.5),
        &make(1.0 + dt, 0.5),
        &profile,
        &grid,
        g,
    )?;

    let passed = order353 >= 1.0 && order356 >= 1.0 && inj353 >= 1e-2 && inj356 >= 1e-2;
    Ok(outcome(
        11,
        "wall boundary identities",
        passed,
        format!(
            "orders {order353:.2}/{order356:.2} (>=1; res {c353:.2e}->{f353:.2e}, {c356:.2e}->{f356:.2e}); injected residuals {inj353:.2e}/{inj356:.2e} (>=1e-2)"
        ),
    ))
}

/// Criterion 12: Picard cross-check: iterate distances contract geometrically on a
/// 0.05 window and the final iterate agrees with the main integrator
/// within `5 (dt + dx^2)` scaled by the solution norm.
pub fn picard_cross_check(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let g = &sc.gas;
    let grid = Grid::new(96.0, 384)?;
    let cfg = SolverConfig::new(0.4, 0.4, 1.0, 0.5, small_pert(0.01))?;
    let f0 = ibvp::initial_data(&profile, &cfg, &grid)?;
    let t_window = 0.05;
    let run = picard_local(&f0.clone(), t_window, 8, &profile, g, &grid, &cfg)?;
    // strict decrease until the iteration stagnates at floating-point zero
    let contracting = run.distances.windows(2).all(|w| w[1] < w[0] || w[1] == 0.0);
    let overall = run.distances.last().unwrap() / run.distances[0];

    let main = ibvp::advance_to(f0, t_window, &profile, g, &grid, &cfg)?;
    let sq: Vec<f64> = (0..grid.nodes())
        .map(|i| {
            let dv = run.field.v[i] - main.v[i];
            let du = run.field.u[i] - main.u[i];
            let dth = run.field.theta[i] - main.theta[i];
            dv * dv + du * du + dth * dth
        })
        .collect();
    let diff = trapezoid(&sq, grid.dx).sqrt();
    let scale = diag::perturbation_norm(&main, &profile, &grid, 0)?.max(1.0);
    let tol = 5.0 * (run.dt + grid.dx * grid.dx) * scale;

    let passed = contracting && overall <= 0.25 && diff <= tol;
    Ok(outcome(
        12,
        "picard cross-check",
        passed,
        format!(
            "distances {:?} contracting: {contracting}, overall factor {overall:.2e} (<=0.25); main-integrator gap {diff:.2e} (tol {tol:.2e})",
            run.distances.iter().map(|d| format!("{d:.1e}")).collect::<Vec<_>>()
        ),
    ))
}

/// Criterion 13: admissibility monitors: pointwise lower bounds hold on every
/// snapshot of a representative accepted run (violations inside a run
/// abort it, so an accepted run certifies every step).
pub fn admissibility_monitors(sc: &Scenario) -> Result<CriterionResult> {
    let profile = sc.profile()?;
    let g = &sc.gas;
    let grid = Grid::new(160.0, 1024)?;
    let cfg = SolverConfig::new(0.4, 0.4, 10.0, 0.5, small_pert(0.01))?;
    let run = ibvp::simulate(&cfg, &profile, g, &grid)?;
    let v_bound = 3.0 * profile.setup.v_plus / 8.0;
    let th_bound = 3.0 * profile.setup.theta_minus / 8.0;
    let min_v = run.norms.rows.iter().map(|r| r.min_v).fold(f64::INFINITY, f64::min);
    let min_th = run.norms.rows.iter().map(|r| r.min_theta).fold(f64::INFINITY, f64::min);
    let passed = min_v >= v_bound && min_th >= th_bound;
    Ok(outcome(
        13,
        "admissibility monitors",
        passed,
        format!(
            "min v {min_v:.4} (>= {v_bound:.4}), min theta {min_th:.4} (>= {th_bound:.4}) over the run"
        ),
    ))
}
