//! Explicit finite-difference solver for the impermeable-wall problem in
//! Lagrangian mass coordinates on a truncated half line.
//!
//! The hyperbolic part is discretized in primitive nonconservative form
//! with characteristic upwinding of the acoustic modes; the velocity
//! equation for `v_t = u_x` stays in centered telescoping form so the
//! perturbation mass `int phi dx` is conserved to rounding (the wall flux
//! vanishes with `u(t,0) = 0`). Heat conduction `k (theta_x / v)_x` uses
//! second-order central differencing. Time integration is forward Euler
//! under a combined hyperbolic/parabolic CFL restriction.
//!
//! Boundary treatment: `u = 0` and `theta = theta_-` are enforced at the
//! wall after every step, `v` at the wall evolves by the one-sided
//! discretization of `v_t = u_x` (no boundary condition is prescribed on
//! the density there), and the right end is held at the Dirichlet
//! far-field values of the smooth profile.

use crate::diagnostics::{self, NormRow, NormSeries};
use crate::smooth_profile::WaveProfile;
use crate::thermo::GasParams;
use crate::{Error, Result};

/// Deviation from the far-field state above which a node counts as part
/// of the wave support for the truncation guard.
const SUPPORT_TOL: f64 = 1e-6;

/// Uniform half-line grid with node 0 at the wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    /// Domain length.
    pub l: f64,
    /// Cell count; there are `n + 1` nodes.
    pub n: usize,
    pub dx: f64,
}

impl Grid {
    pub fn new(l: f64, n: usize) -> Result<Self> {
        if !(l > 0.0) {
            return Err(Error::InvalidParameter {
                name: "L",
                constraint: format!("must be > 0, got {l}"),
            });
        }
        if n < 16 {
            return Err(Error::InvalidParameter {
                name: "N",
                constraint: format!("must be >= 16, got {n}"),
            });
        }
        Ok(Self { l, n, dx: l / n as f64 })
    }

    pub fn nodes(&self) -> usize {
        self.n + 1
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx
    }
}

/// Discrete (v, u, theta) on the grid at one time instant.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub t: f64,
    pub v: Vec<f64>,
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
}

impl Field {
    pub fn min_v(&self) -> f64 {
        self.v.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn min_theta(&self) -> f64 {
        self.theta.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Compactly supported smooth perturbation of the initial data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSpec {
    pub amplitude: f64,
    pub center: f64,
    /// Half-width: the support is `[center - width, center + width]`.
    pub width: f64,
}

/// C^2 bump `amplitude (1 - r^2)^3`, `r = (x - center)/width`; the cubic
/// zero makes value, slope and curvature vanish at the support edges.
pub fn bump(x: f64, p: &PerturbationSpec) -> f64 {
    let r = (x - p.center) / p.width;
    if r.abs() >= 1.0 {
        return 0.0;
    }
    let s = 1.0 - r * r;
    p.amplitude * s * s * s
}

/// Closed-form integral of the bump: `amplitude * width * 32/35`.
pub fn bump_integral(p: &PerturbationSpec) -> f64 {
    p.amplitude * p.width * 32.0 / 35.0
}

/// Solver configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Hyperbolic Courant number in (0, 1].
    pub cfl_hyp: f64,
    /// Parabolic Courant number in (0, 1].
    pub cfl_par: f64,
    pub t_end: f64,
    pub snapshot_every: f64,
    pub perturbation: PerturbationSpec,
    /// Optional wall-clock budget for `simulate`; `None` (the default)
    /// keeps runs fully deterministic.
    pub wall_clock_limit: Option<std::time::Duration>,
}

impl SolverConfig {
    pub fn new(
        cfl_hyp: f64,
        cfl_par: f64,
        t_end: f64,
        snapshot_every: f64,
        perturbation: PerturbationSpec,
    ) -> Result<Self> {
        for (name, c) in [("cfl_hyp", cfl_hyp), ("cfl_par", cfl_par)] {
            if !(c > 0.0 && c <= 1.0) {
                return Err(Error::InvalidParameter {
                    name,
                    constraint: format!("must lie in (0, 1], got {c}"),
                });
            }
        }
        if !(t_end > 0.0) {
            return Err(Error::InvalidParameter {
                name: "t_end",
                constraint: format!("must be > 0, got {t_end}"),
            });
        }
        if !(snapshot_every > 0.0) {
            return Err(Error::InvalidParameter {
                name: "snapshot_every",
                constraint: format!("must be > 0, got {snapshot_every}"),
            });
        }
        if perturbation.amplitude != 0.0 && !(perturbation.width > 0.0) {
            return Err(Error::InvalidParameter {
                name: "width",
                constraint: "must be > 0 for a nonzero perturbation".into(),
            });
        }
        Ok(Self { cfl_hyp, cfl_par, t_end, snapshot_every, perturbation, wall_clock_limit: None })
    }

    pub fn with_wall_clock_limit(mut self, limit: std::time::Duration) -> Self {
        self.wall_clock_limit = Some(limit);
        self
    }
}

/// Initial data: the profile at t = 0 plus the configured bump added to
/// each of v, u, theta. Wall values are exact.
pub fn initial_data(profile: &WaveProfile, cfg: &SolverConfig, grid: &Grid) -> Result<Field> {
    let p = &cfg.perturbation;
    if p.amplitude != 0.0 {
        if p.center - p.width <= 0.0 || p.center + p.width >= grid.l {
            return Err(Error::Compatibility(format!(
                "bump support [{}, {}] must lie strictly inside (0, {})",
                p.center - p.width,
                p.center + p.width,
                grid.l
            )));
        }
        if grid.dx > 0.25 * p.width {
            return Err(Error::UnderResolved(format!(
                "dx = {} does not resolve the bump half-width {}",
                grid.dx, p.width
            )));
        }
    }
    if grid.dx > 0.5 / profile.gas.eps {
        return Err(Error::UnderResolved(format!(
            "dx = {} does not resolve the wave width 1/eps = {}",
            grid.dx,
            1.0 / profile.gas.eps
        )));
    }
    let nodes = grid.nodes();
    let mut f = Field {
        t: 0.0,
        v: Vec::with_capacity(nodes),
        u: Vec::with_capacity(nodes),
        theta: Vec::with_capacity(nodes),
    };
    for i in 0..nodes {
        let x = grid.x(i);
        let st = profile.state(0.0, x);
        let b = bump(x, p);
        f.v.push(st.v + b);
        f.u.push(st.u + b);
        f.theta.push(st.theta + b);
    }
    f.u[0] = 0.0;
    f.theta[0] = profile.setup.theta_minus;
    Ok(f)
}

/// Stable time step: the smaller of the hyperbolic bound
/// `cfl_hyp dx / max lambda_3` and the parabolic bound
/// `cfl_par dx^2 (R/(gamma-1)) min(v) / (2k)`.
pub fn cfl_dt(f: &Field, g: &GasParams, grid: &Grid, cfg: &SolverConfig) -> f64 {
    let mut max_l3 = 0.0_f64;
    let mut min_v = f64::INFINITY;
    for i in 0..grid.nodes() {
        let l3 = (g.r * g.gamma * f.theta[i]).sqrt() / f.v[i];
        max_l3 = max_l3.max(l3);
        min_v = min_v.min(f.v[i]);
    }
    let hyp = cfg.cfl_hyp * grid.dx / max_l3;
    let par = cfg.cfl_par * grid.dx * grid.dx * (g.r / (g.gamma - 1.0)) * min_v / (2.0 * g.k);
    hyp.min(par)
}

/// One explicit step of size `dt`.
///
/// Interior update: characteristic upwinding supplies the acoustic
/// dissipation on the u and theta rows; the v row keeps pure centered
/// differencing of `u_x` so that the discrete perturbation mass
/// telescopes exactly. Aborts when the pointwise lower bounds
/// `v >= 3 v_+/8`, `theta >= 3 theta_-/8` are violated.
pub fn step(
    f: &Field,
    dt: f64,
    profile: &WaveProfile,
    g: &GasParams,
    grid: &Grid,
) -> Result<Field> {
    let n = grid.n;
    let dx = grid.dx;
    let gm1 = g.gamma - 1.0;
    let mut out = f.clone();
    out.t = f.t + dt;

    for i in 1..n {
        let v = f.v[i];
        let theta = f.theta[i];
        let p = g.r * theta / v;
        let c = (g.gamma * p / v).sqrt();

        let vx = (f.v[i + 1] - f.v[i - 1]) / (2.0 * dx);
        let ux = (f.u[i + 1] - f.u[i - 1]) / (2.0 * dx);
        let thx = (f.theta[i + 1] - f.theta[i - 1]) / (2.0 * dx);
        let d2v = f.v[i + 1] - 2.0 * f.v[i] + f.v[i - 1];
        let d2u = f.u[i + 1] - 2.0 * f.u[i] + f.u[i - 1];
        let d2th = f.theta[i + 1] - 2.0 * f.theta[i] + f.theta[i - 1];

        // acoustic combination carried by the lambda_1/lambda_3 modes
        let lp = (p / v) * d2v - (g.r / v) * d2th;

        let cond = g.k
            * ((f.theta[i + 1] - f.theta[i]) / (0.5 * (f.v[i + 1] + f.v[i]))
                - (f.theta[i] - f.theta[i - 1]) / (0.5 * (f.v[i] + f.v[i - 1])))
            / (dx * dx);

        let v_t = ux;
        let u_t = (p / v) * vx - (g.r / v) * thx + 0.5 * c / dx * d2u;
        let th_t = -gm1 / g.r * p * ux - gm1 * p / g.r / (2.0 * c * dx) * lp + gm1 / g.r * cond;

        out.v[i] = v + dt * v_t;
        out.u[i] = f.u[i] + dt * u_t;
        out.theta[i] = theta + dt * th_t;
    }

    // wall: v from second-order one-sided v_t = u_x, u and theta
    // prescribed. A first-order wall closure would telescope exactly
    // against the trapezoid mass functional, but its O(dx) wall error
    // stalls the convergence of the wall-identity diagnostics; the
    // second-order stencil keeps those at order >= 1 and leaks mass only
    // at O(dx^2) per unit time.
    out.v[0] = f.v[0] + dt * (-3.0 * f.u[0] + 4.0 * f.u[1] - f.u[2]) / (2.0 * dx);
    out.u[0] = 0.0;
    out.theta[0] = profile.setup.theta_minus;

    // right end: Dirichlet far field from the profile
    let far = profile.state(out.t, grid.l);
    out.v[n] = far.v;
    out.u[n] = far.u;
    out.theta[n] = far.theta;

    let (min_v, min_theta) = (out.min_v(), out.min_theta());
    if min_v < 3.0 * profile.setup.v_plus / 8.0
        || min_theta < 3.0 * profile.setup.theta_minus / 8.0
    {
        return Err(Error::AdmissibilityViolated { t: out.t, min_v, min_theta });
    }
    Ok(out)
}

/// Advance with CFL-limited steps until exactly `t_target`.
pub fn advance_to(
    mut f: Field,
    t_target: f64,
    profile: &WaveProfile,
    g: &GasParams,
    grid: &Grid,
    cfg: &SolverConfig,
) -> Result<Field> {
    while f.t < t_target - 1e-12 {
        let dt = cfl_dt(&f, g, grid, cfg).min(t_target - f.t);
        f = step(&f, dt, profile, g, grid)?;
    }
    Ok(f)
}

/// Result of a full run: snapshot fields at the requested cadence and the
/// monitored norm series.
#[derive(Debug, Clone)]
pub struct SimulationResult {
    pub snapshots: Vec<Field>,
    pub norms: NormSeries,
}

/// Integrate from the configured initial data until `t_end`, recording
/// snapshots and monitored norms every `snapshot_every` time units.
///
/// Deterministic: fixed iteration order, no randomness. Aborts when the
/// admissible set is left or the wave support reaches `0.9 L`.
pub fn simulate(
    cfg: &SolverConfig,
    profile: &WaveProfile,
    g: &GasParams,
    grid: &Grid,
) -> Result<SimulationResult> {
    let start = std::time::Instant::now();
    let mut f = initial_data(profile, cfg, grid)?;
    let mut snapshots = Vec::new();
    let mut norms = NormSeries::default();
    let mut diss_cum = 0.0;
    let mut prev: Option<(f64, f64)> = None; // (t, diss) of the previous row

    record(&f, profile, g, grid, cfg, &mut snapshots, &mut norms, &mut diss_cum, &mut prev)?;

    let mut next_snap = cfg.snapshot_every;
    while f.t < cfg.t_end - 1e-12 {
        if let Some(limit) = cfg.wall_clock_limit {
            if start.elapsed() > limit {
                return Err(crate::Error::WallClockExceeded { t: f.t });
            }
        }
        let dt = cfl_dt(&f, g, grid, cfg)
            .min(next_snap - f.t)
            .min(cfg.t_end - f.t);
        f = step(&f, dt, profile, g, grid)?;
        if f.t >= next_snap - 1e-12 || f.t >= cfg.t_end - 1e-12 {
            record(&f, profile, g, grid, cfg, &mut snapshots, &mut norms, &mut diss_cum, &mut prev)?;
            while next_snap <= f.t + 1e-12 {
                next_snap += cfg.snapshot_every;
            }
        }
    }
    Ok(SimulationResult { snapshots, norms })
}

#[allow(clippy::too_many_arguments)]
fn record(
    f: &Field,
    profile: &WaveProfile,
    g: &GasParams,
    grid: &Grid,
    cfg: &SolverConfig,
    snapshots: &mut Vec<Field>,
    norms: &mut NormSeries,
    diss_cum: &mut f64,
    prev: &mut Option<(f64, f64)>,
) -> Result<()> {
    support_guard(f, grid)?;
    let diss = diagnostics::dissipation(f, profile, g, grid);
    if let Some((t_prev, diss_prev)) = *prev {
        *diss_cum += 0.5 * (diss_prev + diss) * (f.t - t_prev);
    }
    *prev = Some((f.t, diss));

    // equally spaced scratch triplet for the wall relation
    let dt_s = 0.9 * cfl_dt(f, g, grid, cfg);
    let f1 = step(f, dt_s, profile, g, grid)?;
    let f2 = step(&f1, dt_s, profile, g, grid)?;
    let bres356 = diagnostics::boundary_relation_356(f, &f1, &f2, profile, grid, g)?;

    norms.rows.push(NormRow {
        t: f.t,
        l2: diagnostics::perturbation_norm(f, profile, grid, 0)?,
        h1: diagnostics::perturbation_norm(f, profile, grid, 1)?,
        h2: diagnostics::perturbation_norm(f, profile, grid, 2)?,
        sup_fan: diagnostics::sup_fan_distance(f, profile, g, grid),
        energy: diagnostics::energy_total(f, profile, g, grid)?,
        diss,
        diss_cum: *diss_cum,
        mass: diagnostics::mass(f, profile, grid),
        bres353: diagnostics::boundary_residual_353(f, profile, g, grid),
        bres356,
        min_v: f.min_v(),
        min_theta: f.min_theta(),
    });
    snapshots.push(f.clone());
    Ok(())
}

/// Abort when any state deviation from the far-field node exceeds
/// `SUPPORT_TOL` beyond `0.9 L`: the truncation would no longer be
/// invisible.
fn support_guard(f: &Field, grid: &Grid) -> Result<()> {
    let n = grid.n;
    let cutoff = 0.9 * grid.l;
    let mut i = n;
    while i > 0 {
        i -= 1;
        let dev = (f.v[i] - f.v[n])
            .abs()
            .max((f.u[i] - f.u[n]).abs())
            .max((f.theta[i] - f.theta[n]).abs());
        if dev > SUPPORT_TOL {
            if grid.x(i) > cutoff {
                return Err(Error::SupportReachedBoundary { t: f.t });
            }
            return Ok(());
        }
    }
    Ok(())
}

/// H^1 norm of the initial perturbation time derivative, measured with a
/// one-step forward difference. Feeds the a-priori-estimate ratio monitor.
pub fn initial_time_derivative_h1(
    f0: &Field,
    profile: &WaveProfile,
    g: &GasParams,
    grid: &Grid,
    cfg: &SolverConfig,
) -> Result<f64> {
    let dt = 0.5 * cfl_dt(f0, g, grid, cfg);
    let f1 = step(f0, dt, profile, g, grid)?;
    let p0 = diagnostics::perturbation(f0, profile, grid);
    let p1 = diagnostics::perturbation(&f1, profile, grid);
    let mut sq = 0.0;
    for (a, b) in p0.iter().zip(p1.iter()) {
        let rate: Vec<f64> = a.iter().zip(b.iter()).map(|(x0, x1)| (x1 - x0) / dt).collect();
        let n = diagnostics::sobolev_norm(&rate, grid, 1)?;
        sq += n * n;
    }
    Ok(sq.sqrt())
}

/// Plain-text snapshot: one row per node, `x,v,u,theta,phi,psi,xi`.
pub fn snapshot_csv(f: &Field, profile: &WaveProfile, grid: &Grid) -> String {
    let mut out = String::from("x,v,u,theta,phi,psi,xi\n");
    for i in 0..grid.nodes() {
        let x = grid.x(i);
        let p = profile.state(f.t, x);
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            x,
            f.v[i],
            f.u[i],
            f.theta[i],
            f.v[i] - p.v,
            f.u[i] - p.u,
            f.theta[i] - p.theta
        ));
    }
    out
}

/// File name for a snapshot at time `t`: `snap_t{time:013.6}.csv`.
pub fn snapshot_file_name(t: f64) -> String {
    format!("snap_t{t:013.6}.csv")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rarefaction::FarFieldSetup;
    use approx::assert_relative_eq;

    fn profile() -> WaveProfile {
        let g = GasParams::defaults();
        let setup = FarFieldSetup::new(1.0, 2.0, 1.0, &g).unwrap();
        WaveProfile::new(setup, g).unwrap()
    }

    fn pert(amplitude: f64) -> PerturbationSpec {
        PerturbationSpec { amplitude, center: 20.0, width: 5.0 }
    }

    fn config(amplitude: f64, t_end: f64) -> SolverConfig {
        SolverConfig::new(0.4, 0.4, t_end, 0.5, pert(amplitude)).unwrap()
    }

    #[test]
    fn grid_and_config_validation() {
        assert!(Grid::new(10.0, 8).is_err());
        assert!(Grid::new(-1.0, 64).is_err());
        assert!(SolverConfig::new(0.0, 0.4, 1.0, 0.5, pert(0.0)).is_err());
        assert!(SolverConfig::new(0.4, 1.5, 1.0, 0.5, pert(0.0)).is_err());
        assert!(SolverConfig::new(0.4, 0.4, 1.0, 0.5, PerturbationSpec {
            amplitude: 0.1,
            center: 1.0,
            width: 0.0,
        })
        .is_err());
    }

    #[test]
    fn initial_data_zero_amplitude_is_profile() {
        let p = profile();
        let grid = Grid::new(96.0, 256).unwrap();
        let cfg = config(0.0, 1.0);
        let f = initial_data(&p, &cfg, &grid).unwrap();
        for i in 0..grid.nodes() {
            let st = p.state(0.0, grid.x(i));
            assert_eq!(f.v[i], st.v);
            assert_eq!(f.u[i], st.u);
            assert_eq!(f.theta[i], st.theta);
        }
        assert_eq!(f.u[0], 0.0);
        assert_eq!(f.theta[0], 1.0);
    }

    #[test]
    fn initial_data_mass_matches_bump_integral() {
        let p = profile();
        let grid = Grid::new(96.0, 2048).unwrap();
        let cfg = config(0.02, 1.0);
        let f = initial_data(&p, &cfg, &grid).unwrap();
        let m = diagnostics::mass(&f, &p, &grid);
        assert_relative_eq!(m, bump_integral(&cfg.perturbation), epsilon = 1e-10);
        assert_eq!(f.u[0], 0.0);
        assert_eq!(f.theta[0], 1.0);
    }

    #[test]
    fn initial_data_rejects_bad_support() {
        let p = profile();
        let grid = Grid::new(96.0, 512).unwrap();
        let touching_wall = SolverConfig::new(
            0.4,
            0.4,
            1.0,
            0.5,
            PerturbationSpec { amplitude: 0.01, center: 2.0, width: 3.0 },
        )
        .unwrap();
        assert!(matches!(
            initial_data(&p, &touching_wall, &grid),
            Err(Error::Compatibility(_))
        ));
        let coarse = Grid::new(96.0, 16).unwrap();
        assert!(matches!(
            initial_data(&p, &config(0.01, 1.0), &coarse),
            Err(Error::UnderResolved(_))
        ));
    }

    #[test]
    fn cfl_bounds() {
        let grid = Grid::new(96.0, 512).unwrap();
        let cfg = SolverConfig::new(1.0, 1.0, 1.0, 0.5, pert(0.0)).unwrap();
        let nodes = grid.nodes();
        let uniform = Field {
            t: 0.0,
            v: vec![1.0; nodes],
            u: vec![0.0; nodes],
            theta: vec![2.0; nodes],
        };
        let g = GasParams::defaults();
        let dt = cfl_dt(&uniform, &g, &grid, &cfg);
        let hyp = grid.dx / 2.0;
        let par = grid.dx * grid.dx / 2.0;
        assert!(dt <= hyp && dt <= par);
        assert_relative_eq!(dt, hyp.min(par), epsilon = 1e-15);

        // doubling N quarters the parabolic bound
        let grid2 = Grid::new(96.0, 1024).unwrap();
        let uniform2 = Field {
            t: 0.0,
            v: vec![1.0; grid2.nodes()],
            u: vec![0.0; grid2.nodes()],
            theta: vec![2.0; grid2.nodes()],
        };
        let par2 = grid2.dx * grid2.dx / 2.0;
        assert_relative_eq!(par2, par / 4.0, epsilon = 1e-15);
        assert!(cfl_dt(&uniform2, &g, &grid2, &cfg) <= par2 + 1e-18);
    }

    #[test]
    fn constant_state_is_exact_fixed_point() {
        // With eps L deep in the mollifier tail the profile at x = L is
        // the plus state to the last bit, so a constant plus-state field
        // reproduces itself exactly.
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(160.0, 64).unwrap();
        let s = p.setup;
        let nodes = grid.nodes();
        let f = Field {
            t: 5.0,
            v: vec![s.v_plus; nodes],
            u: vec![s.u_plus; nodes],
            theta: vec![s.theta_plus; nodes],
        };
        let far = p.state(5.0, grid.l);
        assert_eq!(far.v, s.v_plus);
        assert_eq!(far.u, s.u_plus);
        assert_eq!(far.theta, s.theta_plus);
        let mut stepped = step(&f, 1e-3, &p, &g, &grid).unwrap();
        // the wall enforcement rewrites u[0], theta[0]; the interior and v
        // must be bit-identical
        assert_eq!(stepped.v, f.v);
        assert_eq!(stepped.theta[1..], f.theta[1..]);
        assert_eq!(stepped.u[1..], f.u[1..]);
        stepped.t = f.t;
        stepped.u[0] = s.u_plus;
        stepped.theta[0] = s.theta_plus;
        assert_eq!(stepped, f);
    }

    #[test]
    fn admissibility_abort() {
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 64).unwrap();
        let nodes = grid.nodes();
        let mut f = Field {
            t: 0.0,
            v: vec![1.0; nodes],
            u: vec![0.0; nodes],
            theta: vec![2.0; nodes],
        };
        f.v[5] = 0.3; // below 3 v_+/8 = 0.375
        assert!(matches!(
            step(&f, 1e-6, &p, &g, &grid),
            Err(Error::AdmissibilityViolated { .. })
        ));
    }

    #[test]
    fn wall_conditions_hold_after_every_step() {
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 256).unwrap();
        let cfg = config(0.01, 1.0);
        let mut f = initial_data(&p, &cfg, &grid).unwrap();
        for _ in 0..50 {
            let dt = cfl_dt(&f, &g, &grid, &cfg);
            f = step(&f, dt, &p, &g, &grid).unwrap();
            assert_eq!(f.u[0], 0.0);
            assert_eq!(f.theta[0], 1.0);
        }
    }

    #[test]
    fn mass_drift_shrinks_superlinearly() {
        // The wall closure leaks mass at O(dx^2) per unit time; the
        // absolute 1e-6 gate runs in the acceptance suite at N = 4096.
        let p = profile();
        let g = p.gas;
        let mut drifts = Vec::new();
        for n in [512usize, 1024] {
            let grid = Grid::new(160.0, n).unwrap();
            let cfg = config(0.01, 10.0);
            let f0 = initial_data(&p, &cfg, &grid).unwrap();
            let m0 = diagnostics::mass(&f0, &p, &grid);
            let f = advance_to(f0, 10.0, &p, &g, &grid, &cfg).unwrap();
            drifts.push((diagnostics::mass(&f, &p, &grid) - m0).abs());
        }
        assert!(drifts[0] < 1e-4, "coarse drift {} too large", drifts[0]);
        assert!(
            drifts[1] < 0.5 * drifts[0],
            "drift did not shrink under refinement: {drifts:?}"
        );
    }

    #[test]
    fn a_priori_ratio_stays_bounded() {
        // the H^2-norm ratio against initial data plus eps^{1/4} stays
        // below a finite measured constant along a small-data run
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 256).unwrap();
        let cfg = config(0.01, 2.0);
        let f0 = initial_data(&p, &cfg, &grid).unwrap();
        let h2_0 = diagnostics::perturbation_norm(&f0, &p, &grid, 2).unwrap();
        let dt_h1 = initial_time_derivative_h1(&f0, &p, &g, &grid, &cfg).unwrap();
        let denom = h2_0 * h2_0 + dt_h1 * dt_h1 + g.eps.powf(0.25);
        let run = simulate(&cfg, &p, &g, &grid).unwrap();
        let mut worst = 0.0_f64;
        for row in &run.norms.rows {
            worst = worst.max(row.h2 * row.h2 / denom);
        }
        assert!(worst.is_finite() && worst < 50.0, "ratio witness {worst}");
    }

    #[test]
    fn simulate_is_deterministic() {
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 128).unwrap();
        let cfg = config(0.01, 1.0);
        let a = simulate(&cfg, &p, &g, &grid).unwrap();
        let b = simulate(&cfg, &p, &g, &grid).unwrap();
        assert_eq!(a.norms, b.norms);
        assert_eq!(a.norms.csv(), b.norms.csv());
    }

    #[test]
    fn simulate_records_snapshots_at_cadence() {
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 128).unwrap();
        let cfg = config(0.0, 2.0);
        let r = simulate(&cfg, &p, &g, &grid).unwrap();
        let times: Vec<f64> = r.norms.rows.iter().map(|row| row.t).collect();
        assert_eq!(times.len(), 5);
        for (i, &t) in times.iter().enumerate() {
            assert_relative_eq!(t, 0.5 * i as f64, epsilon = 1e-9);
        }
        assert_eq!(r.snapshots.len(), 5);
    }

    #[test]
    fn wall_clock_guard_aborts() {
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 128).unwrap();
        let cfg = config(0.0, 2.0).with_wall_clock_limit(std::time::Duration::ZERO);
        assert!(matches!(
            simulate(&cfg, &p, &g, &grid),
            Err(Error::WallClockExceeded { .. })
        ));
    }

    #[test]
    fn support_guard_triggers_on_small_domain() {
        let p = profile();
        let g = p.gas;
        // wave tail already beyond 0.9 L at t = 0
        let grid = Grid::new(40.0, 128).unwrap();
        let cfg = config(0.0, 1.0);
        assert!(matches!(
            simulate(&cfg, &p, &g, &grid),
            Err(Error::SupportReachedBoundary { .. })
        ));
    }

    #[test]
    fn snapshot_csv_format() {
        let p = profile();
        let grid = Grid::new(96.0, 16).unwrap();
        let nodes = grid.nodes();
        let f = Field {
            t: 0.0,
            v: vec![2.0; nodes],
            u: vec![0.0; nodes],
            theta: vec![1.0; nodes],
        };
        let csv = snapshot_csv(&f, &p, &grid);
        assert!(csv.starts_with("x,v,u,theta,phi,psi,xi\n"));
        assert_eq!(csv.lines().count(), nodes + 1);
        assert_eq!(snapshot_file_name(1.5), "snap_t000001.500000.csv");
    }
}
