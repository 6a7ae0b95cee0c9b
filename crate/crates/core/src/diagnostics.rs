//! Norms, the relative-entropy energy form, dissipation-identity
//! residuals, boundary identities at the wall, and decay-rate fitting.
//!
//! Everything here is a pure function of immutable snapshots. Residuals
//! vanish to discretization order on solution data and stay O(1) on data
//! that does not solve the system, which is what makes them usable as
//! solver diagnostics.

use crate::ibvp::{Field, Grid};
use crate::quad::trapezoid;
use crate::rarefaction::riemann_fan;
use crate::smooth_profile::WaveProfile;
use crate::thermo::GasParams;
use crate::{Error, Result};

/// One-sided second-order first derivative at the left end of `f`.
fn d1_left(f: &[f64], dx: f64) -> f64 {
    (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx)
}

fn d1_right(f: &[f64], dx: f64) -> f64 {
    let n = f.len();
    (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx)
}

/// First derivative: central interior, second-order one-sided ends.
pub fn derivative(f: &[f64], dx: f64) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    d[0] = d1_left(f, dx);
    for i in 1..n - 1 {
        d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    }
    d[n - 1] = d1_right(f, dx);
    d
}

/// Second derivative: central interior, second-order one-sided ends.
pub fn second_derivative(f: &[f64], dx: f64) -> Vec<f64> {
    let n = f.len();
    let dx2 = dx * dx;
    let mut d = vec![0.0; n];
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / dx2;
    for i in 1..n - 1 {
        d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / dx2;
    }
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / dx2;
    d
}

/// Discrete Sobolev norm of order 0, 1 or 2 on the grid: trapezoid
/// quadrature of the squared function and finite-difference derivatives.
pub fn sobolev_norm(samples: &[f64], grid: &Grid, order: usize) -> Result<f64> {
    if order > 2 {
        return Err(Error::InvalidParameter {
            name: "order",
            constraint: format!("must be 0, 1 or 2, got {order}"),
        });
    }
    if grid.n < 4 * order.max(1) {
        return Err(Error::UnderResolved(format!(
            "H^{order} norm needs at least {} cells",
            4 * order.max(1)
        )));
    }
    let sq = |v: &[f64]| v.iter().map(|f| f * f).collect::<Vec<_>>();
    let mut total = trapezoid(&sq(samples), grid.dx);
    if order >= 1 {
        let d1 = derivative(samples, grid.dx);
        total += trapezoid(&sq(&d1), grid.dx);
        if order >= 2 {
            let d2 = second_derivative(samples, grid.dx);
            total += trapezoid(&sq(&d2), grid.dx);
        }
    }
    Ok(total.sqrt())
}

/// The convex entropy kernel `Phi(s) = s - 1 - ln s`, nonnegative with
/// its unique zero at s = 1.
pub fn phi_fn(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::InvalidParameter {
            name: "s",
            constraint: format!("Phi(s) requires s > 0, got {s}"),
        });
    }
    Ok(s - 1.0 - s.ln())
}

/// Perturbation fields (phi, psi, xi) = field - profile on the grid.
pub fn perturbation(f: &Field, profile: &WaveProfile, grid: &Grid) -> [Vec<f64>; 3] {
    let nodes = grid.nodes();
    let mut phi = Vec::with_capacity(nodes);
    let mut psi = Vec::with_capacity(nodes);
    let mut xi = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let p = profile.state(f.t, grid.x(i));
        phi.push(f.v[i] - p.v);
        psi.push(f.u[i] - p.u);
        xi.push(f.theta[i] - p.theta);
    }
    [phi, psi, xi]
}

/// Joint Sobolev norm of the perturbation triple.
pub fn perturbation_norm(
    f: &Field,
    profile: &WaveProfile,
    grid: &Grid,
    order: usize,
) -> Result<f64> {
    let parts = perturbation(f, profile, grid);
    let mut sq = 0.0;
    for part in &parts {
        let n = sobolev_norm(part, grid, order)?;
        sq += n * n;
    }
    Ok(sq.sqrt())
}

/// Total relative-entropy energy
/// `int R theta~ Phi(v/v~) + psi^2/2 + R/(gamma-1) theta~ Phi(theta/theta~) dx`.
///
/// Nonnegative, and zero exactly on zero perturbation.
pub fn energy_total(f: &Field, profile: &WaveProfile, g: &GasParams, grid: &Grid) -> Result<f64> {
    let nodes = grid.nodes();
    let mut density = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let p = profile.state(f.t, grid.x(i));
        let psi = f.u[i] - p.u;
        let e = g.r * p.theta * phi_fn(f.v[i] / p.v)?
            + 0.5 * psi * psi
            + g.r / (g.gamma - 1.0) * p.theta * phi_fn(f.theta[i] / p.theta)?;
        density.push(e);
    }
    Ok(trapezoid(&density, grid.dx))
}

/// Instantaneous dissipation functional `int k theta~/(v theta^2) xi_x^2 dx`.
pub fn dissipation(f: &Field, profile: &WaveProfile, g: &GasParams, grid: &Grid) -> f64 {
    let [_, _, xi] = perturbation(f, profile, grid);
    let xi_x = derivative(&xi, grid.dx);
    let mut density = Vec::with_capacity(grid.nodes());
    for (i, xx) in xi_x.iter().enumerate() {
        let p = profile.state(f.t, grid.x(i));
        density.push(g.k * p.theta / (f.v[i] * f.theta[i] * f.theta[i]) * xx * xx);
    }
    trapezoid(&density, grid.dx)
}

/// Trapezoid integral of phi: the conserved perturbation mass.
pub fn mass(f: &Field, profile: &WaveProfile, grid: &Grid) -> f64 {
    let [phi, _, _] = perturbation(f, profile, grid);
    trapezoid(&phi, grid.dx)
}

/// Sup over the grid of the max-component distance between the field and
/// the Riemann fan evaluated at the similarity variable x/(1+t).
pub fn sup_fan_distance(f: &Field, profile: &WaveProfile, g: &GasParams, grid: &Grid) -> f64 {
    let mut sup = 0.0_f64;
    for i in 0..grid.nodes() {
        let fan = riemann_fan(grid.x(i) / (1.0 + f.t), &profile.setup, g);
        sup = sup
            .max((f.v[i] - fan.v).abs())
            .max((f.u[i] - fan.u).abs())
            .max((f.theta[i] - fan.theta).abs());
    }
    sup
}

/// L1 norm of the pointwise residual of the energy identity
///
/// `E_t + ((p - p~) psi)_x = k (xi xi_x/(v theta))_x - k theta~/(v theta^2) xi_x^2 + H`
///
/// on three equally spaced consecutive snapshots. Converges to zero as
/// dx, dt -> 0 on solution data.
pub fn energy_identity_residual(
    fm: &Field,
    f0: &Field,
    fp: &Field,
    profile: &WaveProfile,
    g: &GasParams,
    grid: &Grid,
) -> Result<f64> {
    let dt1 = f0.t - fm.t;
    let dt2 = fp.t - f0.t;
    if dt1 <= 0.0 || (dt1 - dt2).abs() > 1e-9 * dt1 {
        return Err(Error::InvalidParameter {
            name: "snapshots",
            constraint: "three snapshots must be equally spaced in time".into(),
        });
    }
    let nodes = grid.nodes();
    let dx = grid.dx;

    let energy_density = |f: &Field| -> Result<Vec<f64>> {
        let mut e = Vec::with_capacity(nodes);
        for i in 0..nodes {
            let p = profile.state(f.t, grid.x(i));
            let psi = f.u[i] - p.u;
            e.push(
                g.r * p.theta * phi_fn(f.v[i] / p.v)?
                    + 0.5 * psi * psi
                    + g.r / (g.gamma - 1.0) * p.theta * phi_fn(f.theta[i] / p.theta)?,
            );
        }
        Ok(e)
    };
    let em = energy_density(fm)?;
    let ep = energy_density(fp)?;

    // middle-time pointwise quantities
    let prof: Vec<_> = (0..nodes).map(|i| profile.eval(f0.t, grid.x(i))).collect();
    let [phi, psi, xi] = perturbation(f0, profile, grid);
    let phi_x = derivative(&phi, dx);
    let xi_x = derivative(&xi, dx);

    let mut flux1 = Vec::with_capacity(nodes);
    let mut flux2 = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let p_full = g.r * f0.theta[i] / f0.v[i];
        let p_tilde = prof[i].p(g);
        flux1.push((p_full - p_tilde) * psi[i]);
        flux2.push(g.k * xi[i] * xi_x[i] / (f0.v[i] * f0.theta[i]));
    }
    let dflux1 = derivative(&flux1, dx);
    let dflux2 = derivative(&flux2, dx);

    let mut l1 = 0.0;
    for i in 2..nodes - 2 {
        let pr = &prof[i];
        let v = f0.v[i];
        let theta = f0.theta[i];
        let p_full = g.r * theta / v;
        let p_tilde = pr.p(g);
        let diss = g.k * pr.theta / (v * theta * theta) * xi_x[i] * xi_x[i];
        let h1 = -p_tilde
            * pr.u_x
            * (phi[i] * phi[i] / (v * pr.v)
                + (p_full - p_tilde) * xi[i] / (p_tilde * theta)
                - xi[i] * xi[i] / (pr.theta * theta)
                + (g.gamma - 1.0) * phi_fn(v / pr.v)?
                + phi_fn(theta / pr.theta)?);
        let h2 = -g.k * pr.theta_x * phi_x[i] * xi[i] / (v * v * theta)
            + g.k * pr.theta_x * xi[i] * xi_x[i] / (v * theta * theta)
            + g.k * pr.theta_xx * xi[i] / (v * theta)
            - g.k * pr.theta_x * pr.v_x * xi[i] / (v * v * theta);
        let e_t = (ep[i] - em[i]) / (dt1 + dt2);
        let res = e_t + dflux1[i] - dflux2[i] + diss - h1 - h2;
        l1 += res.abs();
    }
    Ok(l1 * dx)
}

/// Magnitude of the discrete residual of the wall identity for the
/// second normal derivative of the temperature perturbation,
///
/// `xi_xx(t,0) = (1/k)(R theta_- psi_x - u~_x p~ phi) + xi_x v_x/v
///             - theta~_xx + theta~_x v_x / v` at x = 0.
pub fn boundary_residual_353(
    f: &Field,
    profile: &WaveProfile,
    g: &GasParams,
    grid: &Grid,
) -> f64 {
    let dx = grid.dx;
    let pr0 = profile.eval(f.t, 0.0);
    let mut xi = [0.0; 4];
    let mut psi = [0.0; 4];
    for i in 0..4 {
        let p = profile.state(f.t, grid.x(i));
        xi[i] = f.theta[i] - p.theta;
        psi[i] = f.u[i] - p.u;
    }
    let xi_xx = (2.0 * xi[0] - 5.0 * xi[1] + 4.0 * xi[2] - xi[3]) / (dx * dx);
    let psi_x = d1_left(&psi, dx);
    let xi_x = d1_left(&xi, dx);
    let v_x = d1_left(&f.v[..4], dx);
    let phi0 = f.v[0] - pr0.v;
    let rhs = (g.r * profile.setup.theta_minus * psi_x - pr0.u_x * pr0.p(g) * phi0) / g.k
        + xi_x * v_x / f.v[0]
        - pr0.theta_xx
        + pr0.theta_x * v_x / f.v[0];
    (xi_xx - rhs).abs()
}

/// Magnitude of the discrete residual of the wall relation derived from
/// `psi_tt(t,0) = 0`:
///
/// `(p~/v) phi_tx = (R/v) xi_tx - ((p~/v)_tx phi + (p~/v)_t phi_x
///                 + (p~/v)_x phi_t - (R/v)_t xi_x)` at x = 0.
pub fn boundary_relation_356(
    fm: &Field,
    f0: &Field,
    fp: &Field,
    profile: &WaveProfile,
    grid: &Grid,
    g: &GasParams,
) -> Result<f64> {
    let dt1 = f0.t - fm.t;
    let dt2 = fp.t - f0.t;
    if dt1 <= 0.0 || (dt1 - dt2).abs() > 1e-9 * dt1 {
        return Err(Error::InvalidParameter {
            name: "snapshots",
            constraint: "three snapshots must be equally spaced in time".into(),
        });
    }
    let dx = grid.dx;
    // q = p~/v and r = R/v on the first four nodes at each time level,
    // plus the perturbation components entering the relation.
    let assemble = |f: &Field| {
        let mut q = [0.0; 4];
        let mut r = [0.0; 4];
        let mut phi = [0.0; 4];
        let mut xi = [0.0; 4];
        for i in 0..4 {
            let p = profile.eval(f.t, grid.x(i));
            q[i] = p.p(g) / f.v[i];
            r[i] = g.r / f.v[i];
            phi[i] = f.v[i] - p.v;
            xi[i] = f.theta[i] - p.theta;
        }
        (q, r, phi, xi)
    };
    let (qm, rm, phim, xim) = assemble(fm);
    let (q0, r0, phi0, xi0) = assemble(f0);
    let (qp, rp, phip, xip) = assemble(fp);
    let two_dt = dt1 + dt2;

    let phi_t = (phip[0] - phim[0]) / two_dt;
    let phi_x = d1_left(&phi0, dx);
    let phi_tx = (d1_left(&phip, dx) - d1_left(&phim, dx)) / two_dt;
    let xi_tx = (d1_left(&xip, dx) - d1_left(&xim, dx)) / two_dt;
    let xi_x = d1_left(&xi0, dx);
    let q_t = (qp[0] - qm[0]) / two_dt;
    let q_x = d1_left(&q0, dx);
    let q_tx = (d1_left(&qp, dx) - d1_left(&qm, dx)) / two_dt;
    let r_t = (rp[0] - rm[0]) / two_dt;

    Ok((q0[0] * phi_tx - r0[0] * xi_tx + q_tx * phi0[0] + q_t * phi_x + q_x * phi_t
        - r_t * xi_x)
        .abs())
}

/// Least-squares slope of `ln(value)` against `ln(1+t)` over the trailing
/// `window` fraction of samples. Returns the slope and the fit quality r^2.
pub fn fit_decay_exponent(series: &[(f64, f64)], window: f64) -> Result<(f64, f64)> {
    let take = ((series.len() as f64 * window).ceil() as usize).min(series.len());
    let tail = &series[series.len() - take..];
    if tail.len() < 10 {
        return Err(Error::FitFailed("fewer than 10 samples in the fit window"));
    }
    if tail.iter().any(|&(_, v)| !(v > 0.0)) {
        return Err(Error::FitFailed("non-positive values in the fit window"));
    }
    let pts: Vec<(f64, f64)> = tail.iter().map(|&(t, v)| ((1.0 + t).ln(), v.ln())).collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(Error::FitFailed("degenerate abscissae"));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - mean_y) * (p.1 - mean_y)).sum();
    let ss_res: f64 = pts
        .iter()
        .map(|p| {
            let e = p.1 - (intercept + slope * p.0);
            e * e
        })
        .sum();
    let r2 = if ss_tot <= 1e-28 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok((slope, r2))
}

/// One monitored row of a simulation's norm time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRow {
    pub t: f64,
    pub l2: f64,
    pub h1: f64,
    pub h2: f64,
    pub sup_fan: f64,
    pub energy: f64,
    /// Instantaneous dissipation functional.
    pub diss: f64,
    /// Time-accumulated dissipation (trapezoid over snapshot times).
    pub diss_cum: f64,
    pub mass: f64,
    pub bres353: f64,
    pub bres356: f64,
    pub min_v: f64,
    pub min_theta: f64,
}

/// Time series of the monitored norms of a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NormSeries {
    pub rows: Vec<NormRow>,
}

impl NormSeries {
    /// CSV rendering with the pinned column set.
    pub fn csv(&self) -> String {
        let mut out = String::from("t,l2,h1,h2,sup_fan,energy,diss_cum,mass,bres353,bres356\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.t, r.l2, r.h1, r.h2, r.sup_fan, r.energy, r.diss_cum, r.mass, r.bres353,
                r.bres356
            ));
        }
        out
    }
}
