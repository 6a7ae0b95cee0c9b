//! `rarewave` command line: fan evaluation, smooth-profile emission,
//! decay reports, impermeable-wall runs, the Picard cross-check, and the
//! acceptance suite.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rarewave_core::acceptance::{self, Scenario};
use rarewave_core::diagnostics::perturbation_norm;
use rarewave_core::ibvp::{self, snapshot_csv, snapshot_file_name};
use rarewave_core::picard::picard_local;
use rarewave_core::rarefaction::riemann_fan;
use rarewave_core::smooth_profile::LpNorm;

use config::{parse_config, RunConfig};

#[derive(Parser)]
#[command(name = "rarewave", version, about = "3-rarefaction waves for a non-viscous heat-conductive ideal gas in half space")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print Riemann-fan states at the given similarity variables x/t
    Riemann {
        /// Comma-separated list of xi values
        #[arg(long, value_delimiter = ',', required = true)]
        xi: Vec<f64>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Emit a smooth-profile snapshot CSV at time t
    Profile {
        #[arg(long)]
        t: f64,
        /// Include spatial and temporal derivative columns
        #[arg(long)]
        derivs: bool,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Derivative-norm decay report for the smooth wave
    Lemma21 {
        /// Which norm: 1, 2 or inf
        #[arg(long)]
        p: String,
        /// Largest report time
        #[arg(long)]
        tmax: f64,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Full impermeable-wall run: snapshots plus norm series
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Small-time Picard iteration cross-check against the main integrator
    PicardCheck {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Window length (at most 0.1)
        #[arg(long)]
        window: f64,
        /// Number of iterates
        #[arg(long)]
        iters: usize,
    },
    /// Run the acceptance suite and print one PASS/FAIL line per criterion
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .with_context(|| format!("reading config {}", p.display()))?;
            parse_config(&text)
        }
    }
}

/// Output directory: the config value unless RAREWAVE_OUTDIR overrides it.
fn out_dir(cfg: &RunConfig) -> Result<PathBuf> {
    let dir = std::env::var("RAREWAVE_OUTDIR")
        .map(PathBuf::from)
        .unwrap_or_else(|_| PathBuf::from(&cfg.output_dir));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(dir)
}

/// Write-temp-then-rename so readers never observe a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Riemann { xi, config } => {
            let cfg = load_config(&config)?;
            let setup = cfg.setup()?;
            let gas = cfg.gas()?;
            println!("xi,v,u,theta");
            for x in xi {
                let st = riemann_fan(x, &setup, &gas);
                println!("{},{},{},{}", x, st.v, st.u, st.theta);
            }
            Ok(true)
        }

        Cmd::Profile { t, derivs, config } => {
            let cfg = load_config(&config)?;
            if t < 0.0 {
                bail!("t must be >= 0");
            }
            let profile = cfg.profile()?;
            let grid = cfg.grid()?;
            let mut out = String::new();
            if derivs {
                out.push_str("x,v,u,theta,v_x,u_x,theta_x,v_t,u_t,theta_t\n");
            } else {
                out.push_str("x,v,u,theta\n");
            }
            for i in 0..grid.nodes() {
                let x = grid.x(i);
                let q = profile.eval(t, x);
                if derivs {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{}\n",
                        x, q.v, q.u, q.theta, q.v_x, q.u_x, q.theta_x, q.v_t, q.u_t, q.theta_t
                    ));
                } else {
                    out.push_str(&format!("{},{},{},{}\n", x, q.v, q.u, q.theta));
                }
            }
            let dir = out_dir(&cfg)?;
            let path = dir.join(format!("profile_t{t:013.6}.csv"));
            write_atomic(&path, &out)?;
            println!("{}", path.display());
            Ok(true)
        }

        Cmd::Lemma21 { p, tmax, config } => {
            let cfg = load_config(&config)?;
            let norm = match p.as_str() {
                "1" => LpNorm::L1,
                "2" => LpNorm::L2,
                "inf" => LpNorm::LInf,
                other => bail!("--p must be 1, 2 or inf, got `{other}`"),
            };
            if tmax <= 1.0 {
                bail!("--tmax must exceed 1");
            }
            let profile = cfg.profile()?;
            let times: Vec<f64> =
                (0..25).map(|i| tmax.powf(i as f64 / 24.0)).collect();
            let (l, n) = acceptance::decay_domain(&profile, tmax);
            let report = profile.lemma21_report(norm, &times, l, n)?;
            let mut out =
                String::from("t,d1_v,d1_u,d1_theta,d2_v,d2_u,d2_theta,sup_fan\n");
            for r in &report.rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.t, r.d1[0], r.d1[1], r.d1[2], r.d2[0], r.d2[1], r.d2[2], r.sup_fan
                ));
            }
            let dir = out_dir(&cfg)?;
            let path = dir.join(format!("lemma21_p{p}.csv"));
            write_atomic(&path, &out)?;
            println!("{}", path.display());
            println!(
                "fitted decay exponent of ||u_x|| over the trailing decade: alpha = {:.6}, r2 = {:.6}",
                report.alpha_u, report.r2_u
            );
            let first = report.rows.first().unwrap();
            let last = report.rows.last().unwrap();
            println!(
                "sup distance to fan: {:.6e} at t = {} vs {:.6e} at t = {}",
                first.sup_fan, first.t, last.sup_fan, last.t
            );
            Ok(true)
        }

        Cmd::Simulate { config } => {
            let cfg = load_config(&config)?;
            let profile = cfg.profile()?;
            let gas = cfg.gas()?;
            let grid = cfg.grid()?;
            let solver = cfg.solver_config()?;
            let result = ibvp::simulate(&solver, &profile, &gas, &grid)?;
            let dir = out_dir(&cfg)?;
            for f in &result.snapshots {
                let path = dir.join(snapshot_file_name(f.t));
                write_atomic(&path, &snapshot_csv(f, &profile, &grid))?;
            }
            let norms_path = dir.join("norms.csv");
            write_atomic(&norms_path, &result.norms.csv())?;
            let last = result.norms.rows.last().unwrap();
            println!(
                "{} snapshots -> {}; final t = {}, l2 = {:.6e}, sup_fan = {:.6e}",
                result.snapshots.len(),
                dir.display(),
                last.t,
                last.l2,
                last.sup_fan
            );
            Ok(true)
        }

        Cmd::PicardCheck { config, window, iters } => {
            let cfg = load_config(&config)?;
            let profile = cfg.profile()?;
            let gas = cfg.gas()?;
            let grid = cfg.grid()?;
            let solver = cfg.solver_config()?;
            let f0 = ibvp::initial_data(&profile, &solver, &grid)?;
            let run = picard_local(&f0.clone(), window, iters, &profile, &gas, &grid, &solver)?;
            let main = ibvp::advance_to(f0, window, &profile, &gas, &grid, &solver)?;

            let mut out = String::from("iterate,distance\n");
            for (i, d) in run.distances.iter().enumerate() {
                out.push_str(&format!("{},{}\n", i + 1, d));
            }
            let dir = out_dir(&cfg)?;
            let path = dir.join("picard_report.csv");
            write_atomic(&path, &out)?;

            let contracting = run.distances.windows(2).all(|w| w[1] < w[0] || w[1] == 0.0);
            let mut sq = 0.0;
            for i in 0..grid.nodes() {
                let dv = run.field.v[i] - main.v[i];
                let du = run.field.u[i] - main.u[i];
                let dth = run.field.theta[i] - main.theta[i];
                sq += (dv * dv + du * du + dth * dth) * grid.dx;
            }
            let gap = sq.sqrt();
            let scale = perturbation_norm(&main, &profile, &grid, 0)?.max(1.0);
            let tol = 5.0 * (run.dt + grid.dx * grid.dx) * scale;
            println!("{}", path.display());
            println!(
                "iterate distances: {}",
                run.distances
                    .iter()
                    .map(|d| format!("{d:.3e}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!("contracting: {contracting}");
            println!("gap to main integrator: {gap:.6e} (tolerance {tol:.6e})");
            if !contracting {
                eprintln!("picard-check failed: iterate distances do not contract");
                return Ok(false);
            }
            if gap > tol {
                eprintln!("picard-check failed: gap exceeds tolerance");
                return Ok(false);
            }
            Ok(true)
        }

        Cmd::Verify { config } => {
            let cfg = load_config(&config)?;
            let sc = Scenario {
                gas: cfg.gas()?,
                v_plus: cfg.v_plus,
                theta_plus: cfg.theta_plus,
                theta_minus: cfg.theta_minus,
            };
            let results = acceptance::run_all(&sc)?;
            let mut all_ok = true;
            for r in &results {
                println!("{}", r.line());
                all_ok &= r.passed;
            }
            if !all_ok {
                eprintln!("verify failed: at least one criterion did not pass");
            }
            Ok(all_ok)
        }
    }
}
