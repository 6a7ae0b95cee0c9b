//! Run configuration: flat `key = value` lines with `#` comments.
//!
//! Every module-level invariant is re-validated on load and unknown keys
//! are rejected, so a config file that loads is a config file that runs.

use anyhow::{anyhow, bail, Context, Result};
use rarewave_core::ibvp::{Grid, PerturbationSpec, SolverConfig};
use rarewave_core::{FarFieldSetup, GasParams, WaveProfile};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    // gas
    pub r: f64,
    pub gamma: f64,
    pub k: f64,
    pub a: f64,
    // far field
    pub v_plus: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
    // smoothing
    pub q: u32,
    pub eps: f64,
    // grid
    pub l: f64,
    pub n: usize,
    // solver
    pub cfl_hyp: f64,
    pub cfl_par: f64,
    pub t_end: f64,
    pub snapshot_every: f64,
    // perturbation
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
    pub output_dir: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            r: 1.0,
            gamma: 2.0,
            k: 1.0,
            a: 1.0,
            v_plus: 1.0,
            theta_plus: 2.0,
            theta_minus: 1.0,
            q: 10,
            eps: 0.5,
            l: 160.0,
            n: 1024,
            cfl_hyp: 0.4,
            cfl_par: 0.4,
            t_end: 10.0,
            snapshot_every: 0.5,
            amplitude: 0.01,
            center: 20.0,
            width: 5.0,
            output_dir: "out".into(),
        }
    }
}

/// Parse `key = value` text into a fully validated configuration;
/// omitted keys take the desk-scale defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected `key = value`, got `{line}`", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        let f = || -> Result<f64> {
            value
                .parse::<f64>()
                .with_context(|| format!("key `{key}`: `{value}` is not a number"))
        };
        match key {
            "R" => cfg.r = f()?,
            "gamma" => cfg.gamma = f()?,
            "k" => cfg.k = f()?,
            "A" => cfg.a = f()?,
            "v_plus" => cfg.v_plus = f()?,
            "theta_plus" => cfg.theta_plus = f()?,
            "theta_minus" => cfg.theta_minus = f()?,
            "q" => {
                cfg.q = value
                    .parse::<u32>()
                    .with_context(|| format!("key `q`: `{value}` is not a non-negative integer"))?
            }
            "eps" => cfg.eps = f()?,
            "L" => cfg.l = f()?,
            "N" => {
                cfg.n = value
                    .parse::<usize>()
                    .with_context(|| format!("key `N`: `{value}` is not a cell count"))?
            }
            "cfl_hyp" => cfg.cfl_hyp = f()?,
            "cfl_par" => cfg.cfl_par = f()?,
            "t_end" => cfg.t_end = f()?,
            "snapshot_every" => cfg.snapshot_every = f()?,
            "amplitude" => cfg.amplitude = f()?,
            "center" => cfg.center = f()?,
            "width" => cfg.width = f()?,
            "output_dir" => cfg.output_dir = value.to_string(),
            other => bail!("unknown key `{other}` on line {}", lineno + 1),
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.theta_plus <= self.theta_minus {
            bail!(
                "key `theta_plus`: theta_plus must exceed theta_minus (got {} <= {})",
                self.theta_plus,
                self.theta_minus
            );
        }
        // constructor checks cover the rest and name the offending key
        self.gas()?;
        self.grid()?;
        self.solver_config()?;
        Ok(())
    }

    pub fn gas(&self) -> Result<GasParams> {
        Ok(GasParams::new(self.r, self.gamma, self.k, self.a, self.q, self.eps)?)
    }

    pub fn setup(&self) -> Result<FarFieldSetup> {
        Ok(FarFieldSetup::new(self.v_plus, self.theta_plus, self.theta_minus, &self.gas()?)?)
    }

    pub fn profile(&self) -> Result<WaveProfile> {
        Ok(WaveProfile::new(self.setup()?, self.gas()?)?)
    }

    pub fn grid(&self) -> Result<Grid> {
        Ok(Grid::new(self.l, self.n)?)
    }

    pub fn solver_config(&self) -> Result<SolverConfig> {
        Ok(SolverConfig::new(
            self.cfl_hyp,
            self.cfl_par,
            self.t_end,
            self.snapshot_every,
            PerturbationSpec {
                amplitude: self.amplitude,
                center: self.center,
                width: self.width,
            },
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!((cfg.r, cfg.gamma, cfg.k), (1.0, 2.0, 1.0));
        assert_eq!((cfg.v_plus, cfg.theta_plus, cfg.theta_minus), (1.0, 2.0, 1.0));
        assert_eq!((cfg.q, cfg.eps), (10, 0.5));
    }

    #[test]
    fn comments_and_overrides() {
        let cfg = parse_config("# comment\n t_end = 2.5 # trailing\n\nN = 512\n").unwrap();
        assert_eq!(cfg.t_end, 2.5);
        assert_eq!(cfg.n, 512);
    }

    #[test]
    fn inverted_temperatures_rejected() {
        let err = parse_config("theta_minus = 3\n").unwrap_err().to_string();
        assert!(err.contains("theta_plus must exceed theta_minus"), "{err}");
    }

    #[test]
    fn small_q_rejected() {
        let err = format!("{:#}", parse_config("q = 5\n").unwrap_err());
        assert!(err.contains("q >= 10"), "{err}");
    }

    #[test]
    fn unknown_key_rejected() {
        let err = parse_config("viscosity = 1\n").unwrap_err().to_string();
        assert!(err.contains("unknown key `viscosity`"), "{err}");
    }

    #[test]
    fn non_numeric_rejected() {
        let err = format!("{:#}", parse_config("eps = fast\n").unwrap_err());
        assert!(err.contains("eps") && err.contains("not a number"), "{err}");
    }
}
