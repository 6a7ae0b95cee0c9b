//! Small-time Picard iteration for the perturbation system, used as an
//! independent cross-check of the main integrator.
//!
//! Each iterate solves a linear problem with coefficients frozen from the
//! previous iterate: a transport pair for (phi, psi) with wave speed
//! `a^2 = R (theta~ + xi)/(v~ + phi)^2` and source `g1`, and a heat
//! equation for xi with frozen conductivity `k/(v~ + phi)` and source
//! `g2`. Successive iterates contract on a small window; their limit
//! solves the same nonlinear system the main solver integrates.

use crate::ibvp::{cfl_dt, Field, Grid, SolverConfig};
use crate::smooth_profile::{ProfilePoint, WaveProfile};
use crate::thermo::GasParams;
use crate::{Error, Result};

/// Perturbation components at one time level.
#[derive(Debug, Clone, PartialEq)]
struct Level {
    phi: Vec<f64>,
    psi: Vec<f64>,
    xi: Vec<f64>,
}

/// Outcome of the iteration: the reconstructed field at the end of the
/// window and the L2 distances between successive iterates.
#[derive(Debug, Clone)]
pub struct PicardRun {
    pub field: Field,
    /// `distances[n-1]` is the max-over-time L2 distance between iterate n
    /// and iterate n-1.
    pub distances: Vec<f64>,
    /// Time step used inside the window.
    pub dt: f64,
}

/// Run `iters` Picard iterates over `[0, t_window]` starting from the
/// perturbation carried by `f0`.
///
/// Errors with `NonContraction` when the iterate distances grow two
/// consecutive times.
pub fn picard_local(
    f0: &Field,
    t_window: f64,
    iters: usize,
    profile: &WaveProfile,
    g: &GasParams,
    grid: &Grid,
    cfg: &SolverConfig,
) -> Result<PicardRun> {
    if !(t_window > 0.0 && t_window <= 0.1) {
        return Err(Error::InvalidParameter {
            name: "t_window",
            constraint: format!("must lie in (0, 0.1], got {t_window}"),
        });
    }
    if iters < 1 {
        return Err(Error::InvalidParameter {
            name: "iters",
            constraint: "must be >= 1".into(),
        });
    }
    let nodes = grid.nodes();
    let dt_raw = 0.9 * cfl_dt(f0, g, grid, cfg);
    let steps = (t_window / dt_raw).ceil() as usize;
    let dt = t_window / steps as f64;

    // profile cache: every time level, every node
    let prof: Vec<Vec<ProfilePoint>> = (0..=steps)
        .map(|m| (0..nodes).map(|i| profile.eval(m as f64 * dt, grid.x(i))).collect())
        .collect();

    let init = {
        let mut phi = Vec::with_capacity(nodes);
        let mut psi = Vec::with_capacity(nodes);
        let mut xi = Vec::with_capacity(nodes);
        for (i, pr) in prof[0].iter().enumerate() {
            phi.push(f0.v[i] - pr.v);
            psi.push(f0.u[i] - pr.u);
            xi.push(f0.theta[i] - pr.theta);
        }
        Level { phi, psi, xi }
    };

    // iterate 0 is the initial data held constant in time
    let mut old: Vec<Level> = vec![init.clone(); steps + 1];
    let mut distances = Vec::with_capacity(iters);
    let mut growth_streak = 0usize;

    for _ in 0..iters {
        let mut new: Vec<Level> = Vec::with_capacity(steps + 1);
        new.push(init.clone());
        for m in 0..steps {
            let next = advance_level(&new[m], &old[m], &prof[m], g, grid, dt)?;
            new.push(next);
        }
        let d = (0..=steps)
            .map(|m| level_distance(&new[m], &old[m], grid.dx))
            .fold(0.0_f64, f64::max);
        if let Some(&prev) = distances.last() {
            if d > prev {
                growth_streak += 1;
                if growth_streak >= 2 {
                    return Err(Error::NonContraction);
                }
            } else {
                growth_streak = 0;
            }
        }
        distances.push(d);
        old = new;
    }

    let last = &old[steps];
    let mut field = Field {
        t: t_window,
        v: Vec::with_capacity(nodes),
        u: Vec::with_capacity(nodes),
        theta: Vec::with_capacity(nodes),
    };
    for (i, pr) in prof[steps].iter().enumerate() {
        field.v.push(pr.v + last.phi[i]);
        field.u.push(pr.u + last.psi[i]);
        field.theta.push(pr.theta + last.xi[i]);
    }
    Ok(PicardRun { field, distances, dt })
}

/// One explicit step of the frozen-coefficient linear system.
fn advance_level(
    cur: &Level,
    frozen: &Level,
    prof: &[ProfilePoint],
    g: &GasParams,
    grid: &Grid,
    dt: f64,
) -> Result<Level> {
    let n = grid.n;
    let dx = grid.dx;
    let mut out = cur.clone();

    // frozen total state and its central derivatives
    let vtot: Vec<f64> = (0..=n).map(|i| prof[i].v + frozen.phi[i]).collect();
    let ttot: Vec<f64> = (0..=n).map(|i| prof[i].theta + frozen.xi[i]).collect();
    for i in 0..=n {
        if !(vtot[i] > 0.0 && ttot[i] > 0.0) {
            return Err(Error::AdmissibilityViolated {
                t: f64::NAN,
                min_v: vtot[i],
                min_theta: ttot[i],
            });
        }
    }
    let central = |f: &[f64], i: usize| (f[i + 1] - f[i - 1]) / (2.0 * dx);

    // conduction source array h = theta~_x / (v~ + phi^{n-1})
    let h: Vec<f64> = (0..=n).map(|i| prof[i].theta_x / vtot[i]).collect();

    for i in 1..n {
        let pr = &prof[i];
        let p_tilde = pr.p(g);
        let a2 = g.r * ttot[i] / (vtot[i] * vtot[i]);
        let a = a2.sqrt();

        let phi_x_f = central(&frozen.phi, i);
        let psi_x_f = central(&frozen.psi, i);
        let xi_x_f = central(&frozen.xi, i);

        let g1 = pr.p_x(g) * frozen.phi[i] / vtot[i]
            - p_tilde * pr.v_x * frozen.phi[i] / (vtot[i] * vtot[i])
            - g.r * xi_x_f / vtot[i]
            + g.r * frozen.xi[i] * pr.v_x / (vtot[i] * vtot[i]);
        let g2 = -g.k * xi_x_f * (pr.v_x + phi_x_f) / (vtot[i] * vtot[i])
            - p_tilde * psi_x_f
            - (pr.u_x + psi_x_f) * (g.r * frozen.xi[i] - p_tilde * frozen.phi[i]) / vtot[i]
            + g.k * central(&h, i);

        let d2phi = cur.phi[i + 1] - 2.0 * cur.phi[i] + cur.phi[i - 1];
        let d2psi = cur.psi[i + 1] - 2.0 * cur.psi[i] + cur.psi[i - 1];
        let xi_xx = (cur.xi[i + 1] - 2.0 * cur.xi[i] + cur.xi[i - 1]) / (dx * dx);

        let phi_t = central(&cur.psi, i) + 0.5 * a / dx * d2phi;
        let psi_t = a2 * central(&cur.phi, i) + 0.5 * a / dx * d2psi + g1;
        let xi_t = (g.gamma - 1.0) / g.r * (g.k * xi_xx / vtot[i] + g2);

        out.phi[i] = cur.phi[i] + dt * phi_t;
        out.psi[i] = cur.psi[i] + dt * psi_t;
        out.xi[i] = cur.xi[i] + dt * xi_t;
    }
    // wall: psi = xi = 0, phi from one-sided phi_t = psi_x
    out.phi[0] = cur.phi[0] + dt * (cur.psi[1] - cur.psi[0]) / dx;
    out.psi[0] = 0.0;
    out.xi[0] = 0.0;
    // far field: perturbation vanishes
    out.phi[n] = 0.0;
    out.psi[n] = 0.0;
    out.xi[n] = 0.0;
    Ok(out)
}

fn level_distance(a: &Level, b: &Level, dx: f64) -> f64 {
    let sq: Vec<f64> = (0..a.phi.len())
        .map(|i| {
            let dp = a.phi[i] - b.phi[i];
            let ds = a.psi[i] - b.psi[i];
            let dxi = a.xi[i] - b.xi[i];
            dp * dp + ds * ds + dxi * dxi
        })
        .collect();
    crate::quad::trapezoid(&sq, dx).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ibvp::{advance_to, initial_data, PerturbationSpec};
    use crate::rarefaction::FarFieldSetup;

    fn profile() -> WaveProfile {
        let g = GasParams::defaults();
        let setup = FarFieldSetup::new(1.0, 2.0, 1.0, &g).unwrap();
        WaveProfile::new(setup, g).unwrap()
    }

    fn cfg(amplitude: f64) -> SolverConfig {
        SolverConfig::new(
            0.4,
            0.4,
            1.0,
            0.5,
            PerturbationSpec { amplitude, center: 20.0, width: 5.0 },
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_window_and_iters() {
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 128).unwrap();
        let c = cfg(0.0);
        let f0 = initial_data(&p, &c, &grid).unwrap();
        assert!(picard_local(&f0, 0.5, 3, &p, &g, &grid, &c).is_err());
        assert!(picard_local(&f0, 0.05, 0, &p, &g, &grid, &c).is_err());
    }

    #[test]
    fn iterates_contract_geometrically() {
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 384).unwrap();
        let c = cfg(0.01);
        let f0 = initial_data(&p, &c, &grid).unwrap();
        let run = picard_local(&f0, 0.05, 6, &p, &g, &grid, &c).unwrap();
        assert_eq!(run.distances.len(), 6);
        for w in run.distances.windows(2) {
            assert!(
                w[1] < w[0] || w[1] == 0.0,
                "distances must strictly decrease until fp zero: {:?}",
                run.distances
            );
        }
        let ratio = run.distances[run.distances.len() - 1] / run.distances[0];
        assert!(ratio < 0.25, "overall contraction too weak: {:?}", run.distances);
    }

    #[test]
    fn zero_data_iterates_track_conduction_forcing() {
        // Zero initial perturbation is not a fixed point: the source g2
        // carries the profile's conduction residual, so the first iterate
        // moves away from zero and the sequence then contracts onto the
        // small forced solution.
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 256).unwrap();
        let c = cfg(0.0);
        let f0 = initial_data(&p, &c, &grid).unwrap();
        let run = picard_local(&f0, 0.05, 5, &p, &g, &grid, &c).unwrap();
        assert!(run.distances[0] > 0.0 && run.distances[0] < 1e-2);
        for w in run.distances.windows(2) {
            assert!(w[1] < w[0] || w[1] == 0.0, "{:?}", run.distances);
        }
    }

    #[test]
    fn agrees_with_main_integrator() {
        let p = profile();
        let g = p.gas;
        let grid = Grid::new(96.0, 384).unwrap();
        let c = cfg(0.01);
        let f0 = initial_data(&p, &c, &grid).unwrap();
        let t_window = 0.05;
        let run = picard_local(&f0.clone(), t_window, 8, &p, &g, &grid, &c).unwrap();
        let main = advance_to(f0, t_window, &p, &g, &grid, &c).unwrap();

        let dx = grid.dx;
        let sq: Vec<f64> = (0..grid.nodes())
            .map(|i| {
                let dv = run.field.v[i] - main.v[i];
                let du = run.field.u[i] - main.u[i];
                let dth = run.field.theta[i] - main.theta[i];
                dv * dv + du * du + dth * dth
            })
            .collect();
        let diff = crate::quad::trapezoid(&sq, dx).sqrt();
        let scale = {
            let [phi, psi, xi] = crate::diagnostics::perturbation(&main, &p, &grid);
            let s: Vec<f64> = (0..grid.nodes())
                .map(|i| phi[i] * phi[i] + psi[i] * psi[i] + xi[i] * xi[i])
                .collect();
            crate::quad::trapezoid(&s, dx).sqrt().max(1.0)
        };
        let tol = 5.0 * (run.dt + dx * dx) * scale;
        assert!(diff <= tol, "picard/main difference {diff} exceeds {tol}");
    }
}
