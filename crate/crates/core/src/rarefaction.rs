//! The exact 3-rarefaction wave: wave curve, the compatibility condition
//! linking the far-field states, and the self-similar Riemann fan.
//!
//! Along the 3-curve through the right state the invariant
//! `v^{gamma-1} theta = K` holds, the fan speed is
//! `lambda_3(v) = sqrt(R gamma K) v^{-(gamma+1)/2}`, and the velocity
//! integral has the closed-form antiderivative used throughout.

use crate::thermo::{GasParams, ThermoState};
use crate::{Error, Result};

/// Far-field configuration of the 3-rarefaction connecting
/// `(v_minus, 0, theta_minus)` to `(v_plus, u_plus, theta_plus)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldSetup {
    pub v_plus: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
    /// Velocity of the right state, derived from the compatibility condition.
    pub u_plus: f64,
    /// Specific volume of the left state, derived.
    pub v_minus: f64,
    /// Riemann-invariant constant K = v_plus^{gamma-1} theta_plus.
    pub riemann_k: f64,
    /// Fan edge speeds lambda_3 at the left/right states.
    pub w_minus: f64,
    pub w_plus: f64,
    /// Wave strength delta_r = w_plus - w_minus > 0.
    pub delta_r: f64,
}

/// Left-state specific volume `v_minus = (theta_plus/theta_minus)^{1/(gamma-1)} v_plus`.
pub fn v_minus(v_plus: f64, theta_plus: f64, theta_minus: f64, g: &GasParams) -> Result<f64> {
    check_config(v_plus, theta_plus, theta_minus)?;
    Ok((theta_plus / theta_minus).powf(1.0 / (g.gamma - 1.0)) * v_plus)
}

/// Right-state velocity from the compatibility condition, in closed form:
/// `u_plus = 2 sqrt(R gamma K)/(gamma-1) (v_plus^{-(gamma-1)/2} - v_minus^{-(gamma-1)/2})`.
pub fn u_plus(v_plus: f64, theta_plus: f64, theta_minus: f64, g: &GasParams) -> Result<f64> {
    let vm = v_minus(v_plus, theta_plus, theta_minus, g)?;
    let k = v_plus.powf(g.gamma - 1.0) * theta_plus;
    let half_gm1 = 0.5 * (g.gamma - 1.0);
    Ok(2.0 * (g.r * g.gamma * k).sqrt() / (g.gamma - 1.0)
        * (v_plus.powf(-half_gm1) - vm.powf(-half_gm1)))
}

fn check_config(v_plus: f64, theta_plus: f64, theta_minus: f64) -> Result<()> {
    if !(v_plus > 0.0 && theta_minus > 0.0 && theta_plus > theta_minus) {
        return Err(Error::NotRarefaction);
    }
    Ok(())
}

impl FarFieldSetup {
    pub fn new(v_plus: f64, theta_plus: f64, theta_minus: f64, g: &GasParams) -> Result<Self> {
        let vm = v_minus(v_plus, theta_plus, theta_minus, g)?;
        let up = u_plus(v_plus, theta_plus, theta_minus, g)?;
        let k = v_plus.powf(g.gamma - 1.0) * theta_plus;
        let half_gp1 = 0.5 * (g.gamma + 1.0);
        let c = (g.r * g.gamma * k).sqrt();
        let w_minus = c * vm.powf(-half_gp1);
        let w_plus = c * v_plus.powf(-half_gp1);
        Ok(Self {
            v_plus,
            theta_plus,
            theta_minus,
            u_plus: up,
            v_minus: vm,
            riemann_k: k,
            w_minus,
            w_plus,
            delta_r: w_plus - w_minus,
        })
    }

    /// sqrt(R gamma K), the coefficient of the fan-speed law.
    pub fn speed_coeff(&self, g: &GasParams) -> f64 {
        (g.r * g.gamma * self.riemann_k).sqrt()
    }

    /// The left constant state `(v_minus, 0, theta_minus)`.
    pub fn left_state(&self) -> ThermoState {
        ThermoState { v: self.v_minus, u: 0.0, theta: self.theta_minus }
    }

    /// The right constant state `(v_plus, u_plus, theta_plus)`.
    pub fn right_state(&self) -> ThermoState {
        ThermoState { v: self.v_plus, u: self.u_plus, theta: self.theta_plus }
    }
}

/// Point on the wave curve at specific volume `v` in `[v_plus, v_minus]`:
/// returns `(u, theta)`.
pub fn wave_curve_point(v: f64, setup: &FarFieldSetup, g: &GasParams) -> Result<(f64, f64)> {
    if !(setup.v_plus <= v && v <= setup.v_minus) {
        return Err(Error::OutsideWaveCurve { v, lo: setup.v_plus, hi: setup.v_minus });
    }
    let theta = setup.riemann_k * v.powf(1.0 - g.gamma);
    let half_gm1 = 0.5 * (g.gamma - 1.0);
    let u = setup.u_plus
        + 2.0 * setup.speed_coeff(g) / (g.gamma - 1.0)
            * (v.powf(-half_gm1) - setup.v_plus.powf(-half_gm1));
    Ok((u, theta))
}

/// Self-similar fan state at similarity variable `xi = x/t`.
///
/// Left of the fan the left state, right of it the right state; inside,
/// the specific volume inverts `lambda_3(v) = xi`:
/// `v(xi) = (sqrt(R gamma K)/xi)^{2/(gamma+1)}`.
pub fn riemann_fan(xi: f64, setup: &FarFieldSetup, g: &GasParams) -> ThermoState {
    if xi <= setup.w_minus {
        return setup.left_state();
    }
    if xi >= setup.w_plus {
        return setup.right_state();
    }
    let v = (setup.speed_coeff(g) / xi).powf(2.0 / (g.gamma + 1.0));
    // v lies strictly inside (v_plus, v_minus) by monotonicity of lambda_3;
    // clamp the fp endpoints so wave_curve_point cannot reject.
    let v = v.clamp(setup.v_plus, setup.v_minus);
    let (u, theta) = wave_curve_point(v, setup, g)
        .expect("fan volume clamped into wave-curve range");
    ThermoState { v, u, theta }
}
