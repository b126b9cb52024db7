//! Command-line front end.
//!
//! State specs are `family:key=value,...`:
//!
//! ```text
//!   number:n=<int>=0..
//!   on:N=<int>=1..,are=<real>,aim=<real>
//!   cubic:gamma=<real>,P=<real>,s=<real>=0..
//!   idealcubic:gamma=<real>!=0,P=<real>
//!   pmod:sign=<+1|-1>,s=<real>,theta=<real>
//!   gauss:s=<real>,theta=<real>,q=<real>,p=<real>,nbar=<real>=0..
//! ```
//!
//! Exit codes: 0 success, 1 runtime or validation failure, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;

use wignerneg::field::{format_sci, DEFAULT_TOL_NORM};
use wignerneg::protocols::{
    distill_sweep, p_v_samples, DistillationConfig, FidelityTarget, Window, WindowPolicy,
    DEFAULT_SAMPLES, DEFAULT_TRANSMITTANCE,
};
use wignerneg::states::{
    mean_photon_analytic, mean_photon_numeric, GridOverrides, PhotonOp, SPEC_GRAMMAR,
};
use wignerneg::validation::run_checks;
use wignerneg::{log_negativity, PhaseSpaceGrid, ResourceStateSpec, WignerError, WignerField};

#[derive(Parser, Debug)]
#[command(
    name = "wignerneg",
    version,
    about = "Wigner negativity of continuous-variable resource states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a state's Wigner function and write it as CSV `q,p,w`.
    State {
        spec: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the logarithmic negativity and mean photon number of a state.
    Negativity {
        spec: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Negativity against mean photon number across a state family, CSV `mean_photon,neg`.
    SweepStates {
        #[arg(long, value_enum)]
        family: Family,
        /// First parameter value (n for number, |a| for on, s for cubic and pmod).
        #[arg(long)]
        from: f64,
        /// Last parameter value.
        #[arg(long)]
        to: f64,
        /// Number of points; number states use every integer in the range.
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Cubic nonlinearity for the cubic family.
        #[arg(long, default_value_t = 0.05)]
        gamma: f64,
        /// Photon number of the on family.
        #[arg(long = "n", default_value_t = 3)]
        big_n: usize,
        /// +1 (added) or -1 (subtracted) for the pmod family.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Beam-splitter / homodyne distillation of a cubic phase state.
    Distill {
        #[arg(long, default_value_t = 0.05)]
        gamma: f64,
        /// Squeezing of the input cubic phase state.
        #[arg(long)]
        s_ini: f64,
        /// Momentum offset of the input cubic phase state.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        p_ini: f64,
        /// Beam-splitter transmittance in (0, 1).
        #[arg(long, default_value_t = DEFAULT_TRANSMITTANCE)]
        t: f64,
        /// Target success probability; the window maximizing each figure of merit is chosen.
        #[arg(long, conflicts_with = "window")]
        psuc: Option<f64>,
        /// Explicit postselection window `lo,hi`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Squeezing of the cubic phase target; enables fidelity tracking.
        #[arg(long)]
        s_targ: Option<f64>,
        /// Number of homodyne outcomes sampled.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the self-check suite.
    Validate {
        /// Only the sub-second checks.
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct GridArgs {
    /// Half-width of the q axis.
    #[arg(long)]
    qmax: Option<f64>,
    /// Number of q nodes.
    #[arg(long)]
    nq: Option<usize>,
    /// Lower end of the p axis (defaults to -pmax when only pmax is given).
    #[arg(long, allow_hyphen_values = true)]
    pmin: Option<f64>,
    /// Upper end of the p axis.
    #[arg(long, allow_hyphen_values = true)]
    pmax: Option<f64>,
    /// Number of p nodes.
    #[arg(long)]
    np: Option<usize>,
    /// Allowed deviation of the sampled normalization from 1.
    #[arg(long, default_value_t = DEFAULT_TOL_NORM)]
    tol: f64,
}

impl GridArgs {
    fn overrides(&self) -> GridOverrides {
        GridOverrides {
            q_max: self.qmax,
            n_q: self.nq,
            p_min: self.pmin,
            p_max: self.pmax,
            n_p: self.np,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Number,
    On,
    Cubic,
    Pmod,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(WignerError),
    Failed,
}

impl From<WignerError> for CliError {
    fn from(e: WignerError) -> Self {
        Self::Runtime(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::Runtime(e.into())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Failed) => ExitCode::from(1),
    }
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::State { spec, grid, out } => cmd_state(&spec, grid, out),
        Command::Negativity { spec, grid } => cmd_negativity(&spec, grid),
        Command::SweepStates {
            family,
            from,
            to,
            steps,
            gamma,
            big_n,
            sign,
            out,
        } => {
            let family = FamilySweep {
                family,
                gamma,
                big_n,
                sign,
            };
            cmd_sweep_states(family, from, to, steps, out)
        }
        Command::Distill {
            gamma,
            s_ini,
            p_ini,
            t,
            psuc,
            window,
            s_targ,
            samples,
            grid,
            out,
        } => {
            let policy = match (psuc, window) {
                (Some(p), None) => WindowPolicy::TargetPsuc(p),
                (None, Some(w)) => WindowPolicy::Explicit(parse_window(&w)?),
                (None, None) => {
                    return Err(CliError::Usage(
                        "one of --psuc or --window is required".into(),
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap rejects --psuc with --window"),
            };
            cmd_distill(
                DistillArgs {
                    gamma,
                    s_ini,
                    p_ini,
                    t,
                    policy,
                    s_targ,
                    samples,
                    grid,
                },
                out,
            )
        }
        Command::Validate { fast } => {
            if run_checks(fast, io::stdout().lock())? {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
    }
}

fn parse_spec(text: &str) -> CliResult<ResourceStateSpec> {
    let spec: ResourceStateSpec = text.parse().map_err(|e: WignerError| {
        CliError::Usage(format!("{e}\naccepted specs:\n{SPEC_GRAMMAR}"))
    })?;
    spec.validate()
        .map_err(|e| CliError::Usage(format!("{e}\naccepted specs:\n{SPEC_GRAMMAR}")))?;
    Ok(spec)
}

fn build_grid(spec: &ResourceStateSpec, grid: &GridArgs) -> CliResult<PhaseSpaceGrid> {
    if !(grid.tol > 0.0 && grid.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            grid.tol
        )));
    }
    spec.grid_with(&grid.overrides())
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Samples `spec` and re-checks its normalization against `--tol`.
fn sample(spec: &ResourceStateSpec, grid: &GridArgs) -> CliResult<WignerField> {
    let g = build_grid(spec, grid)?;
    let field = spec.wigner(&g)?;
    if !spec.is_normalizable() {
        return Ok(field);
    }
    Ok(WignerField::with_tolerance(
        g,
        field.into_samples(),
        grid.tol,
    )?)
}

fn open_output(out: Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(&path).map_err(|e| {
            CliError::Runtime(WignerError::Io(format!(
                "cannot create {}: {e}",
                path.display()
            )))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_state(spec: &str, grid: GridArgs, out: Option<PathBuf>) -> CliResult {
    let spec = parse_spec(spec)?;
    let field = sample(&spec, &grid)?;
    let mut w = open_output(out)?;
    field.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}

fn cmd_negativity(spec: &str, grid: GridArgs) -> CliResult {
    let spec = parse_spec(spec)?;
    if !spec.is_normalizable() {
        return Err(CliError::Runtime(WignerError::Unsupported(format!(
            "{spec} has no normalizable Wigner function, so its negativity is infinite"
        ))));
    }
    let field = sample(&spec, &grid)?;
    let neg = log_negativity(&field)?;
    let analytic = mean_photon_analytic(&spec)?;
    let numeric = mean_photon_numeric(&field)?;
    let mut out = io::stdout().lock();
    writeln!(out, "state: {spec}")?;
    writeln!(out, "neg: {}", format_sci(neg))?;
    writeln!(out, "mean_photon: {}", format_sci(analytic))?;
    writeln!(out, "mean_photon_numeric: {}", format_sci(numeric))?;
    Ok(())
}

struct FamilySweep {
    family: Family,
    gamma: f64,
    big_n: usize,
    sign: i32,
}

impl FamilySweep {
    fn spec(&self, x: f64) -> CliResult<ResourceStateSpec> {
        let spec = match self.family {
            Family::Number => ResourceStateSpec::Number { n: x as usize },
            Family::On => ResourceStateSpec::On {
                n: self.big_n,
                a: C64::new(0.0, x),
            },
            Family::Cubic => ResourceStateSpec::CubicPhase {
                gamma: self.gamma,
                p: -6.0 * self.gamma * (2.0 * x).exp(),
                s: x,
            },
            Family::Pmod => ResourceStateSpec::PhotonMod {
                op: PhotonOp::from_sign(self.sign).map_err(|e| CliError::Usage(e.to_string()))?,
                s: x,
                theta: 0.0,
            },
        };
        spec.validate()
            .map_err(|e| CliError::Usage(format!("{e} (parameter {x})")))?;
        Ok(spec)
    }
}

fn sweep_values(family: Family, from: f64, to: f64, steps: usize) -> CliResult<Vec<f64>> {
    if !(from.is_finite() && to.is_finite()) || from > to {
        return Err(CliError::Usage(format!("empty range [{from}, {to}]")));
    }
    if family == Family::Number {
        let (lo, hi) = (from.max(0.0).ceil(), to.floor());
        if lo > hi {
            return Err(CliError::Usage(format!(
                "no photon number in [{from}, {to}]"
            )));
        }
        return Ok((lo as usize..=hi as usize).map(|n| n as f64).collect());
    }
    match steps {
        0 => Err(CliError::Usage("--steps must be at least 1".into())),
        1 if from == to => Ok(vec![from]),
        1 => Err(CliError::Usage(
            "a range with distinct ends needs --steps >= 2".into(),
        )),
        _ => Ok((0..steps)
            .map(|k| from + (to - from) * k as f64 / (steps - 1) as f64)
            .collect()),
    }
}

fn cmd_sweep_states(
    family: FamilySweep,
    from: f64,
    to: f64,
    steps: usize,
    out: Option<PathBuf>,
) -> CliResult {
    let values = sweep_values(family.family, from, to, steps)?;
    let specs = values
        .iter()
        .map(|&x| family.spec(x))
        .collect::<CliResult<Vec<_>>>()?;
    let mut w = open_output(out)?;
    writeln!(w, "mean_photon,neg")?;
    for spec in &specs {
        let field = spec.wigner(&spec.default_grid()?)?;
        writeln!(
            w,
            "{},{}",
            format_sci(mean_photon_analytic(spec)?),
            format_sci(log_negativity(&field)?)
        )?;
    }
    w.flush()?;
    Ok(())
}

fn parse_window(text: &str) -> CliResult<Window> {
    let bad = || CliError::Usage(format!("window must be `lo,hi` with lo < hi, got {text:?}"));
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if lo < hi {
        Ok(Window { lo, hi })
    } else {
        Err(bad())
    }
}

struct DistillArgs {
    gamma: f64,
    s_ini: f64,
    p_ini: f64,
    t: f64,
    policy: WindowPolicy,
    s_targ: Option<f64>,
    samples: usize,
    grid: GridArgs,
}

fn cmd_distill(args: DistillArgs, out: Option<PathBuf>) -> CliResult {
    if !(args.t > 0.0 && args.t < 1.0) {
        return Err(CliError::Usage(format!(
            "--t must lie in (0, 1), got {}",
            args.t
        )));
    }
    if let WindowPolicy::TargetPsuc(p) = args.policy {
        if !(p > 0.0 && p <= 1.0) {
            return Err(CliError::Usage(format!(
                "--psuc must lie in (0, 1], got {p}"
            )));
        }
    }
    if args.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    if let Some(s) = args.s_targ {
        if !(s.is_finite() && s >= 0.0) {
            return Err(CliError::Usage(format!(
                "--s-targ must be a non-negative number, got {s}"
            )));
        }
    }
    let spec = ResourceStateSpec::CubicPhase {
        gamma: args.gamma,
        p: args.p_ini,
        s: args.s_ini,
    };
    spec.validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let input = sample(&spec, &args.grid)?;
    let config = DistillationConfig {
        t: args.t,
        p_v_samples: Some(p_v_samples(&input, args.t, args.samples)?),
        window: args.policy,
        fidelity: args.s_targ.map(|s_targ| FidelityTarget {
            gamma: args.gamma,
            p_ini: args.p_ini,
            s_targ,
        }),
    };
    let outcome = distill_sweep(&input, &config)?;
    let mut w = open_output(out)?;
    outcome.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}
