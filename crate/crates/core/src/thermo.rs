//! Gas law, characteristic speeds, flow-regime classification, boundary
//! condition selection, and the t = 0 Eulerian-to-Lagrangian transform.

use crate::{Error, Result};

/// Gas constants together with the smoothing parameters of the
/// approximate-wave construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasParams {
    /// Gas constant, > 0.
    pub r: f64,
    /// Adiabatic exponent, > 1.
    pub gamma: f64,
    /// Heat-conduction coefficient, > 0.
    pub k: f64,
    /// Entropy-normalization constant, > 0. Only entropy differences
    /// matter for the dynamics, so this defaults to 1.
    pub a: f64,
    /// Smoothing exponent of the mollified wave datum, >= 10.
    pub q: u32,
    /// Smoothing steepness in (0, 1].
    pub eps: f64,
}

impl GasParams {
    pub fn new(r: f64, gamma: f64, k: f64, a: f64, q: u32, eps: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::InvalidParameter {
                name: "R",
                constraint: format!("must be > 0, got {r}"),
            });
        }
        if !(gamma > 1.0) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                constraint: format!("must be > 1, got {gamma}"),
            });
        }
        if !(k > 0.0) {
            return Err(Error::InvalidParameter {
                name: "k",
                constraint: format!("must be > 0, got {k}"),
            });
        }
        if !(a > 0.0) {
            return Err(Error::InvalidParameter {
                name: "A",
                constraint: format!("must be > 0, got {a}"),
            });
        }
        if q < 10 {
            return Err(Error::InvalidParameter {
                name: "q",
                constraint: format!("requires q >= 10, got {q}"),
            });
        }
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "eps",
                constraint: format!("must lie in (0, 1], got {eps}"),
            });
        }
        Ok(Self { r, gamma, k, a, q, eps })
    }

    /// Desk-scale defaults: R = 1, gamma = 2, k = 1, A = 1, q = 10,
    /// eps = 0.5. gamma = 2 keeps every wave-curve integral in closed form.
    pub fn defaults() -> Self {
        Self { r: 1.0, gamma: 2.0, k: 1.0, a: 1.0, q: 10, eps: 0.5 }
    }
}

/// State in Lagrangian variables: specific volume, velocity, temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState {
    pub v: f64,
    pub u: f64,
    pub theta: f64,
}

impl ThermoState {
    pub fn new(v: f64, u: f64, theta: f64) -> Result<Self> {
        if !(v > 0.0) {
            return Err(Error::InvalidParameter {
                name: "v",
                constraint: format!("must be > 0, got {v}"),
            });
        }
        if !(theta > 0.0) {
            return Err(Error::InvalidParameter {
                name: "theta",
                constraint: format!("must be > 0, got {theta}"),
            });
        }
        Ok(Self { v, u, theta })
    }
}

/// Flow regime of an Eulerian state relative to the sound speed
/// `sqrt(R theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowRegion {
    /// 0 < u < c_s
    SubPlus,
    /// -c_s < u < 0
    SubMinus,
    /// u = 0
    SubZero,
    /// u > c_s
    SuperPlus,
    /// u < -c_s
    SuperMinus,
    /// u = c_s
    TransPlus,
    /// u = -c_s
    TransMinus,
}

/// Which of (rho, u, theta) the half-space problem prescribes at the wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCase {
    /// theta only (both characteristics leave the domain).
    Case1,
    /// u and theta (one characteristic enters).
    Case2,
    /// rho, u, and theta (both characteristics enter).
    Case3,
}

impl BoundaryCase {
    /// Names of the prescribed boundary quantities.
    pub fn prescribed(self) -> &'static [&'static str] {
        match self {
            BoundaryCase::Case1 => &["theta"],
            BoundaryCase::Case2 => &["u", "theta"],
            BoundaryCase::Case3 => &["rho", "u", "theta"],
        }
    }
}

/// Boundary-condition case of the viscous analogue system, keyed on the
/// sign of the boundary velocity. Returned alongside [`BoundaryCase`]
/// for comparison display only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViscousCase {
    /// u < 0: prescribes {u, theta}.
    Outflow,
    /// u = 0: prescribes {u, theta}.
    Impermeable,
    /// u > 0: prescribes {rho, u, theta}.
    Inflow,
}

/// Pressure p = R theta / v.
pub fn pressure(s: ThermoState, g: &GasParams) -> f64 {
    g.r * s.theta / s.v
}

/// Specific entropy, from inverting p = R theta / v = A v^{-gamma} exp((gamma-1) s / R).
pub fn entropy(s: ThermoState, g: &GasParams) -> f64 {
    g.r / (g.gamma - 1.0) * (g.r * s.theta * s.v.powf(g.gamma - 1.0) / g.a).ln()
}

/// Pressure from (v, s): p = A v^{-gamma} exp((gamma-1) s / R).
pub fn pressure_from_entropy(v: f64, s: f64, g: &GasParams) -> f64 {
    g.a * v.powf(-g.gamma) * ((g.gamma - 1.0) / g.r * s).exp()
}

/// Lagrangian characteristic speeds (lambda_1, lambda_2, lambda_3) =
/// (-sqrt(R gamma theta)/v, 0, +sqrt(R gamma theta)/v).
pub fn lagrangian_speeds(s: ThermoState, g: &GasParams) -> (f64, f64, f64) {
    let c = (g.r * g.gamma * s.theta).sqrt() / s.v;
    (-c, 0.0, c)
}

/// Eulerian sound speed c_s = sqrt(R theta).
pub fn sound_speed(theta: f64, g: &GasParams) -> f64 {
    (g.r * theta).sqrt()
}

/// Classify an Eulerian state (rho, u, theta) into the phase-space
/// partition. Total: boundary sets map to the trans/zero tags at exact
/// machine equality.
pub fn classify_region(rho: f64, u: f64, theta: f64, g: &GasParams) -> Result<FlowRegion> {
    if !(rho > 0.0) {
        return Err(Error::InvalidParameter {
            name: "rho",
            constraint: format!("must be > 0, got {rho}"),
        });
    }
    if !(theta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "theta",
            constraint: format!("must be > 0, got {theta}"),
        });
    }
    let c = sound_speed(theta, g);
    Ok(if u == 0.0 {
        FlowRegion::SubZero
    } else if u == c {
        FlowRegion::TransPlus
    } else if u == -c {
        FlowRegion::TransMinus
    } else if u > c {
        FlowRegion::SuperPlus
    } else if u < -c {
        FlowRegion::SuperMinus
    } else if u > 0.0 {
        FlowRegion::SubPlus
    } else {
        FlowRegion::SubMinus
    })
}

/// Boundary-condition case for a far-field region, with the viscous
/// analogue for display. Errors on the transonic sets, where the count
/// of boundary conditions is undefined.
pub fn boundary_case_for(region: FlowRegion) -> Result<(BoundaryCase, ViscousCase)> {
    match region {
        FlowRegion::SuperMinus => Ok((BoundaryCase::Case1, ViscousCase::Outflow)),
        FlowRegion::SubMinus => Ok((BoundaryCase::Case2, ViscousCase::Outflow)),
        FlowRegion::SubZero => Ok((BoundaryCase::Case2, ViscousCase::Impermeable)),
        FlowRegion::SubPlus => Ok((BoundaryCase::Case2, ViscousCase::Inflow)),
        FlowRegion::SuperPlus => Ok((BoundaryCase::Case3, ViscousCase::Inflow)),
        FlowRegion::TransPlus | FlowRegion::TransMinus => Err(Error::TransonicBoundary),
    }
}

/// Eulerian-to-Lagrangian mass coordinate at t = 0: cumulative trapezoid
/// of the density samples on a uniform grid over [0, x_max]. Returns the
/// strictly increasing map x(x_tilde) at the sample points, with x(0) = 0.
pub fn euler_to_lagrange(density: &[f64], x_max: f64) -> Result<Vec<f64>> {
    if density.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "density",
            constraint: "needs at least two samples".into(),
        });
    }
    if let Some(i) = density.iter().position(|&rho| !(rho > 0.0)) {
        return Err(Error::NonPositiveDensity(i));
    }
    let dx = x_max / (density.len() - 1) as f64;
    let mut map = Vec::with_capacity(density.len());
    let mut acc = 0.0;
    map.push(0.0);
    for w in density.windows(2) {
        acc += 0.5 * dx * (w[0] + w[1]);
        map.push(acc);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn gas() -> GasParams {
        GasParams::defaults()
    }

    #[test]
    fn pressure_direct_cases() {
        let g = gas();
        assert_eq!(pressure(ThermoState { v: 1.0, u: 0.0, theta: 1.0 }, &g), 1.0);
        assert_eq!(pressure(ThermoState { v: 2.0, u: 0.0, theta: 1.0 }, &g), 0.5);
        assert_eq!(pressure(ThermoState { v: 1.0, u: 0.0, theta: 2.0 }, &g), 2.0);
    }

    #[test]
    fn entropy_analytic_values() {
        let g = gas();
        assert_eq!(entropy(ThermoState { v: 1.0, u: 0.0, theta: 1.0 }, &g), 0.0);
        assert_relative_eq!(
            entropy(ThermoState { v: 1.0, u: 0.0, theta: std::f64::consts::E }, &g),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn speeds_direct_cases() {
        let g = gas();
        let (l1, l2, l3) = lagrangian_speeds(ThermoState { v: 1.0, u: 0.0, theta: 2.0 }, &g);
        assert_eq!((l1, l2, l3), (-2.0, 0.0, 2.0));
        let (l1, _, l3) = lagrangian_speeds(ThermoState { v: 2.0, u: 0.0, theta: 1.0 }, &g);
        assert_relative_eq!(l3, std::f64::consts::SQRT_2 / 2.0, epsilon = 1e-15);
        assert_relative_eq!(l1, -l3, epsilon = 0.0);
    }

    #[test]
    fn region_examples() {
        let g = gas();
        assert_eq!(classify_region(1.0, 0.5, 1.0, &g).unwrap(), FlowRegion::SubPlus);
        assert_eq!(classify_region(1.0, 0.0, 1.0, &g).unwrap(), FlowRegion::SubZero);
        assert_eq!(classify_region(1.0, -2.0, 1.0, &g).unwrap(), FlowRegion::SuperMinus);
        // exact machine equality lands on the transonic sets
        assert_eq!(classify_region(1.0, 1.0, 1.0, &g).unwrap(), FlowRegion::TransPlus);
        assert_eq!(classify_region(1.0, -1.0, 1.0, &g).unwrap(), FlowRegion::TransMinus);
    }

    #[test]
    fn boundary_case_table() {
        assert_eq!(
            boundary_case_for(FlowRegion::SubZero).unwrap().0,
            BoundaryCase::Case2
        );
        assert_eq!(
            boundary_case_for(FlowRegion::SuperMinus).unwrap(),
            (BoundaryCase::Case1, ViscousCase::Outflow)
        );
        assert_eq!(
            boundary_case_for(FlowRegion::SuperPlus).unwrap(),
            (BoundaryCase::Case3, ViscousCase::Inflow)
        );
        assert_eq!(boundary_case_for(FlowRegion::TransPlus), Err(Error::TransonicBoundary));
        assert_eq!(BoundaryCase::Case2.prescribed(), &["u", "theta"]);
    }

    #[test]
    fn mass_coordinate_examples() {
        let rho2 = vec![2.0; 1001];
        let map = euler_to_lagrange(&rho2, 1.0).unwrap();
        assert_relative_eq!(*map.last().unwrap(), 2.0, epsilon = 1e-12);

        let rho1 = vec![1.0; 1001];
        let map = euler_to_lagrange(&rho1, 1.0).unwrap();
        for (i, &x) in map.iter().enumerate() {
            assert_relative_eq!(x, i as f64 / 1000.0, epsilon = 1e-12);
        }

        let n = 10_000;
        let linear: Vec<f64> = (0..=n).map(|i| 1.0 + i as f64 / n as f64).collect();
        let map = euler_to_lagrange(&linear, 1.0).unwrap();
        assert_relative_eq!(*map.last().unwrap(), 1.5, epsilon = 1e-8);
    }

    #[test]
    fn mass_coordinate_rejects_vacuum() {
        assert_eq!(
            euler_to_lagrange(&[1.0, 0.0, 1.0], 1.0),
            Err(Error::NonPositiveDensity(1))
        );
    }

    #[test]
    fn params_validation() {
        assert!(GasParams::new(1.0, 2.0, 1.0, 1.0, 10, 0.5).is_ok());
        assert!(GasParams::new(1.0, 1.0, 1.0, 1.0, 10, 0.5).is_err());
        assert!(GasParams::new(1.0, 2.0, 1.0, 1.0, 9, 0.5).is_err());
        assert!(GasParams::new(1.0, 2.0, 1.0, 1.0, 10, 1.5).is_err());
        assert!(ThermoState::new(-1.0, 0.0, 1.0).is_err());
        assert!(ThermoState::new(1.0, 0.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn entropy_pressure_round_trip(
            v in 0.05f64..20.0,
            theta in 0.05f64..20.0,
            gamma in 1.1f64..3.0,
            r in 0.1f64..4.0,
        ) {
            let g = GasParams { r, gamma, k: 1.0, a: 1.0, q: 10, eps: 0.5 };
            let st = ThermoState { v, u: 0.0, theta };
            let s = entropy(st, &g);
            let p = pressure_from_entropy(v, s, &g);
            prop_assert!((p - pressure(st, &g)).abs() <= 1e-12 * pressure(st, &g));
        }

        #[test]
        fn speeds_ordered_and_antisymmetric(
            v in 0.05f64..20.0,
            theta in 0.05f64..20.0,
        ) {
            let g = gas();
            let (l1, l2, l3) = lagrangian_speeds(ThermoState { v, u: 0.0, theta }, &g);
            prop_assert!(l1 < l2 && l2 == 0.0 && l2 < l3);
            prop_assert_eq!(l1, -l3);
        }

        #[test]
        fn region_partition_and_flip(
            rho in 0.05f64..10.0,
            u in -6.0f64..6.0,
            theta in 0.05f64..10.0,
        ) {
            let g = gas();
            let region = classify_region(rho, u, theta, &g).unwrap();
            let c = sound_speed(theta, &g);
            // exactly one tag, consistent with the defining inequalities
            let expected = if u == 0.0 {
                FlowRegion::SubZero
            } else if u >= c {
                if u == c { FlowRegion::TransPlus } else { FlowRegion::SuperPlus }
            } else if u <= -c {
                if u == -c { FlowRegion::TransMinus } else { FlowRegion::SuperMinus }
            } else if u > 0.0 {
                FlowRegion::SubPlus
            } else {
                FlowRegion::SubMinus
            };
            prop_assert_eq!(region, expected);
            // perturbing u across +-c flips super/sub consistently
            if u > 0.0 {
                let up = classify_region(rho, c * 1.01, theta, &g).unwrap();
                let dn = classify_region(rho, c * 0.99, theta, &g).unwrap();
                prop_assert_eq!(up, FlowRegion::SuperPlus);
                prop_assert_eq!(dn, FlowRegion::SubPlus);
            }
        }

        #[test]
        fn mass_map_strictly_monotone(samples in prop::collection::vec(0.01f64..5.0, 2..200)) {
            let map = euler_to_lagrange(&samples, 1.0).unwrap();
            for w in map.windows(2) {
                prop_assert!(w[1] > w[0]);
            }
        }
    }
}
