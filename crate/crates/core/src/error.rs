//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A constructor argument violates a stated invariant.
    #[error("invalid parameter `{name}`: {constraint}")]
    InvalidParameter {
        name: &'static str,
        constraint: String,
    },

    /// Far-field states do not define a 3-rarefaction.
    #[error("not a 3-rarefaction configuration: requires theta_plus > theta_minus > 0")]
    NotRarefaction,

    /// No boundary-condition count is defined on the transonic sets.
    #[error("transonic: no boundary-condition count is defined")]
    TransonicBoundary,

    /// Non-positive density sample in the mass-coordinate transform.
    #[error("non-positive density sample at index {0}")]
    NonPositiveDensity(usize),

    /// Specific volume outside the wave-curve range [v_plus, v_minus].
    #[error("v = {v} outside wave-curve range [{lo}, {hi}]")]
    OutsideWaveCurve { v: f64, lo: f64, hi: f64 },

    /// Characteristic root-bracketing failure.
    #[error("characteristic inversion did not converge")]
    CharacteristicInversion,

    /// Special-function evaluation did not converge.
    #[error("special function did not converge: {0}")]
    SpecialFunction(&'static str),

    /// Grid too coarse for the requested measurement.
    #[error("under-resolved: {0}")]
    UnderResolved(String),

    /// A perturbation bump touches the wall or the truncation boundary.
    #[error("violates compatibility/truncation: {0}")]
    Compatibility(String),

    /// Pointwise lower bounds on v or theta were violated.
    #[error("solution left admissible set at t = {t}: min v = {min_v}, min theta = {min_theta}")]
    AdmissibilityViolated { t: f64, min_v: f64, min_theta: f64 },

    /// The wave support reached the right truncation guard.
    #[error("wave support reached 0.9 L at t = {t}; enlarge the domain")]
    SupportReachedBoundary { t: f64 },

    /// The configured wall-clock budget ran out mid-run.
    #[error("wall-clock limit exceeded at simulation time t = {t}")]
    WallClockExceeded { t: f64 },

    /// Picard iterates stopped contracting.
    #[error("outside local-existence regime: iterate distances grew twice in a row")]
    NonContraction,

    /// Power-law fit requested on data with non-positive values.
    #[error("cannot fit power law: {0}")]
    FitFailed(&'static str),
}
