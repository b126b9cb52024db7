//! Self-check suite behind `wignerneg validate`: reference values, oracle
//! comparisons and conservation laws on fixed, seeded inputs.

use std::f64::consts::{FRAC_PI_4, PI};
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::WignerResult;
use crate::field::WignerField;
use crate::fock::{fock_density, wigner_from_fock};
use crate::grid::{build_grid, PhaseSpaceGrid};
use crate::monotones::{fidelity_initial_analytic, fidelity_to_pure, log_negativity};
use crate::protocols::{
    distill_sweep, on_gate_grid, on_gate_output, DistillationConfig, WindowPolicy,
};
use crate::special::airy_ai;
use crate::states::{
    cubic_grid, cubic_phase_wigner, cubic_phase_wigner_with, gaussian_wigner, number_state_wigner,
    CubicQuadrature, GaussianStateParams, PhotonOp, ResourceStateSpec, CUBIC_STEP,
};
use crate::symplectic::{apply_symplectic, random_gaussian_unitary, SYMPLECTIC_TOL};
use crate::wavefunction::{wigner_from_wavefunction_with, WavefunctionQuadrature};

/// `ln(4/√e − 1)`, the negativity of any single-photon-like state.
pub const SINGLE_PHOTON_NEG: f64 = 0.354_351_044_260_046_6;

const SEED: u64 = 0x5eed_0fa1;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// A named self-check; `fast` ones finish well under a second together.
pub struct Check {
    pub name: &'static str,
    pub fast: bool,
    run: fn() -> WignerResult<(bool, String)>,
}

impl Check {
    pub fn run(&self) -> CheckReport {
        let (passed, detail) = match (self.run)() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        CheckReport {
            name: self.name,
            passed,
            detail,
        }
    }
}

fn within(name: &str, got: f64, expected: f64, tol: f64) -> (bool, String) {
    let dev = (got - expected).abs();
    (
        dev <= tol,
        format!("{name} = {got:.6}, expected {expected:.6} ± {tol:e}"),
    )
}

fn at_most(name: &str, got: f64, bound: f64) -> (bool, String) {
    (got <= bound, format!("{name} = {got:.3e}, bound {bound:e}"))
}

fn vacuum_normalization() -> WignerResult<(bool, String)> {
    let w = number_state_wigner(0, &PhaseSpaceGrid::default_single())?;
    let peak = w.max_value();
    let ok = (w.integral() - 1.0).abs() < 1e-10 && (peak - 1.0 / (2.0 * PI)).abs() < 1e-12;
    Ok((
        ok,
        format!("integral = {:.12}, W(0) = {peak:.12}", w.integral()),
    ))
}

fn single_photon() -> WignerResult<(bool, String)> {
    let w = number_state_wigner(1, &PhaseSpaceGrid::default_single())?;
    let (ok, msg) = within("N_L(|1>)", log_negativity(&w)?, SINGLE_PHOTON_NEG, 1e-3);
    let floor_ok = (w.min_value() + 1.0 / (2.0 * PI)).abs() < 1e-4;
    Ok((
        ok && floor_ok,
        format!("{msg}, min W = {:.6}", w.min_value()),
    ))
}

fn airy_reference() -> WignerResult<(bool, String)> {
    let refs = [
        (0.0, 0.355_028_053_887_817_2),
        (-2.0, 0.227_407_428_201_528_1),
        (2.0, 0.034_924_130_423_274_38),
    ];
    let dev = refs
        .iter()
        .map(|&(x, v)| (airy_ai(x) - v).abs())
        .fold(0.0, f64::max);
    Ok(at_most("max |Ai - reference|", dev, 1e-9))
}

fn symplectic_compositions() -> WignerResult<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let op = random_gaussian_unitary(&mut rng, 1 + k % 3, 1.5, 2.0);
        worst = worst.max(op.symplectic_residual());
    }
    Ok(at_most("max ||S Ω Sᵀ - Ω||", worst, SYMPLECTIC_TOL))
}

fn on_state() -> WignerResult<(bool, String)> {
    let spec = ResourceStateSpec::On {
        n: 3,
        a: C64::new(0.0, 6f64.sqrt() * 0.1),
    };
    let w = spec.wigner(&spec.default_grid()?)?;
    Ok(within("N_L(|03>)", log_negativity(&w)?, 0.11, 0.01))
}

fn number_oracle() -> WignerResult<(bool, String)> {
    let grid = PhaseSpaceGrid::square(8.0, 161)?;
    let mut worst = 0.0f64;
    for n in 0..5 {
        let spec = ResourceStateSpec::Number { n };
        let oracle = wigner_from_fock(&fock_density(&spec, n + 1)?, &grid)?;
        worst = worst.max(spec.wigner(&grid)?.max_abs_deviation(&oracle)?);
    }
    Ok(at_most("max |W_analytic - W_fock| (n ≤ 4)", worst, 1e-6))
}

fn photon_added() -> WignerResult<(bool, String)> {
    let spec = ResourceStateSpec::PhotonMod {
        op: PhotonOp::Add,
        s: 0.5,
        theta: 0.0,
    };
    let w = spec.wigner(&spec.default_grid()?)?;
    Ok(within(
        "N_L(pmod +1, s=0.5)",
        log_negativity(&w)?,
        SINGLE_PHOTON_NEG,
        5e-3,
    ))
}

fn gaussian_unitary_invariance() -> WignerResult<(bool, String)> {
    let grid = PhaseSpaceGrid::default_single();
    let w = number_state_wigner(1, &grid)?;
    let base = log_negativity(&w)?;
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let op = random_gaussian_unitary(&mut rng, 1, 0.4, 1.0);
        worst = worst.max((log_negativity(&apply_symplectic(&w, &op)?)? - base).abs());
    }
    Ok(at_most(
        "max |ΔN_L| under random Gaussian unitaries",
        worst,
        5e-3,
    ))
}

fn cubic_negativity(s: f64, expected: f64) -> WignerResult<(bool, String)> {
    let spec = ResourceStateSpec::CubicPhase {
        gamma: 0.05,
        p: 0.0,
        s,
    };
    let w = spec.wigner(&spec.default_grid()?)?;
    Ok(within(
        &format!("N_L(cubic s={s})"),
        log_negativity(&w)?,
        expected,
        0.02,
    ))
}

fn cubic_s06() -> WignerResult<(bool, String)> {
    cubic_negativity(0.6, 0.38)
}

fn cubic_s10() -> WignerResult<(bool, String)> {
    cubic_negativity(1.0, 0.81)
}

fn cubic_fidelity() -> WignerResult<(bool, String)> {
    let (a, b) = (1.0, 1.6);
    let grid = cubic_grid(0.05, 0.0, b, CUBIC_STEP)?;
    let wa = cubic_phase_wigner(0.05, 0.0, a, &grid)?;
    let wb = cubic_phase_wigner(0.05, 0.0, b, &grid)?;
    Ok(within(
        "F(cubic s=1, s=1.6)",
        fidelity_to_pure(&wa, &wb)?,
        fidelity_initial_analytic(a, b),
        2e-3,
    ))
}

fn wavefunction_route() -> WignerResult<(bool, String)> {
    let (gamma, s) = (0.05, 0.6);
    let grid = build_grid(-8.0, 8.0, 161, -10.0, 20.0, 301, 1)?;
    let opts = CubicQuadrature {
        partial_grid: true,
        ..CubicQuadrature::default()
    };
    let integral = cubic_phase_wigner_with(gamma, 0.0, s, &grid, opts)?;
    let var = (2.0 * s).exp();
    let psi = move |q: f64| C64::from_polar((-q * q / (4.0 * var)).exp(), gamma * q * q * q);
    let wave = wigner_from_wavefunction_with(
        psi,
        &grid,
        WavefunctionQuadrature {
            y_max: Some(25.0),
            step: None,
        },
    )?;
    Ok(at_most(
        "max |W_integral - W_wavefunction|",
        integral.max_abs_deviation(&wave)?,
        1e-4,
    ))
}

fn photon_mod_oracle() -> WignerResult<(bool, String)> {
    let mut worst = 0.0f64;
    for op in [PhotonOp::Add, PhotonOp::Subtract] {
        let spec = ResourceStateSpec::PhotonMod {
            op,
            s: 0.5,
            theta: FRAC_PI_4,
        };
        let grid = PhaseSpaceGrid::square(10.0, 201)?;
        let oracle = wigner_from_fock(&fock_density(&spec, 80)?, &grid)?;
        worst = worst.max(spec.wigner(&grid)?.max_abs_deviation(&oracle)?);
    }
    Ok(at_most(
        "max |W_analytic - W_fock| (pmod s=0.5)",
        worst,
        1e-4,
    ))
}

fn gaussian_oracle() -> WignerResult<(bool, String)> {
    let params = GaussianStateParams::single_mode(0.4, 0.7, 0.8, -0.5, 0.3)?;
    let spec = ResourceStateSpec::Gaussian(params.clone());
    let grid = PhaseSpaceGrid::square(10.0, 201)?;
    let oracle = wigner_from_fock(&fock_density(&spec, 80)?, &grid)?;
    Ok(at_most(
        "max |W_analytic - W_fock| (gaussian)",
        gaussian_wigner(&params, &grid)?.max_abs_deviation(&oracle)?,
        1e-6,
    ))
}

fn on_gate() -> WignerResult<(bool, String)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for q in [0.0, 1.0, -1.0] {
        let n = log_negativity(&on_gate_output(0.1, q, &on_gate_grid(0.1, q)?)?)?;
        lo = lo.min(n);
        hi = hi.max(n);
    }
    let ok = (lo - 0.09).abs() <= 0.015 && (hi - 0.09).abs() <= 0.015 && hi <= 0.12;
    Ok((
        ok,
        format!("N_L(σ_q) over q ∈ {{0, ±1}} spans [{lo:.5}, {hi:.5}], expected 0.09 ± 0.015"),
    ))
}

fn selective_monotonicity() -> WignerResult<(bool, String)> {
    let spec = ResourceStateSpec::CubicPhase {
        gamma: 0.05,
        p: 0.0,
        s: 0.6,
    };
    let input = spec.wigner(&spec.default_grid()?)?;
    let out = distill_sweep(
        &input,
        &DistillationConfig::new(0.95, WindowPolicy::TargetPsuc(1.0)),
    )?;
    let (avg, ini) = (out.avg_neg(), out.ini_neg);
    Ok((
        avg <= ini * 1.01,
        format!("full-range <N_L> = {avg:.5}, input N_L = {ini:.5}"),
    ))
}

fn generator_normalization() -> WignerResult<(bool, String)> {
    let specs: Vec<ResourceStateSpec> = vec![
        ResourceStateSpec::Number { n: 5 },
        ResourceStateSpec::On {
            n: 2,
            a: C64::new(0.3, -0.4),
        },
        ResourceStateSpec::PhotonMod {
            op: PhotonOp::Subtract,
            s: 1.0,
            theta: 0.3,
        },
        ResourceStateSpec::Gaussian(GaussianStateParams::single_mode(0.8, 0.2, 1.0, 0.5, 0.2)?),
        ResourceStateSpec::CubicPhase {
            gamma: 0.05,
            p: 0.0,
            s: 1.0,
        },
    ];
    let mut worst = 0.0f64;
    for spec in &specs {
        let w: WignerField = spec.wigner(&spec.default_grid()?)?;
        worst = worst.max((w.integral() - 1.0).abs());
    }
    Ok(at_most(
        "max |∫W - 1| over generators",
        worst,
        crate::field::DEFAULT_TOL_NORM,
    ))
}

/// Every check, fast ones first.
pub fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "vacuum-normalization",
            fast: true,
            run: vacuum_normalization,
        },
        Check {
            name: "single-photon-negativity",
            fast: true,
            run: single_photon,
        },
        Check {
            name: "airy-reference",
            fast: true,
            run: airy_reference,
        },
        Check {
            name: "symplectic-compositions",
            fast: true,
            run: symplectic_compositions,
        },
        Check {
            name: "on-state-negativity",
            fast: true,
            run: on_state,
        },
        Check {
            name: "number-fock-oracle",
            fast: true,
            run: number_oracle,
        },
        Check {
            name: "photon-added-negativity",
            fast: true,
            run: photon_added,
        },
        Check {
            name: "gaussian-unitary-invariance",
            fast: true,
            run: gaussian_unitary_invariance,
        },
        Check {
            name: "generator-normalization",
            fast: false,
            run: generator_normalization,
        },
        Check {
            name: "cubic-negativity-s0.6",
            fast: false,
            run: cubic_s06,
        },
        Check {
            name: "cubic-negativity-s1.0",
            fast: false,
            run: cubic_s10,
        },
        Check {
            name: "cubic-fidelity",
            fast: false,
            run: cubic_fidelity,
        },
        Check {
            name: "cubic-wavefunction-route",
            fast: false,
            run: wavefunction_route,
        },
        Check {
            name: "photon-mod-fock-oracle",
            fast: false,
            run: photon_mod_oracle,
        },
        Check {
            name: "gaussian-fock-oracle",
            fast: false,
            run: gaussian_oracle,
        },
        Check {
            name: "on-gate-output",
            fast: false,
            run: on_gate,
        },
        Check {
            name: "selective-monotonicity",
            fast: false,
            run: selective_monotonicity,
        },
    ]
}

/// Runs the selected checks, writing one line per check; true iff all pass.
pub fn run_checks(fast_only: bool, mut out: impl Write) -> WignerResult<bool> {
    let mut all = true;
    for check in checks().iter().filter(|c| c.fast || !fast_only) {
        let start = Instant::now();
        let report = check.run();
        all &= report.passed;
        writeln!(
            out,
            "{} {:<28} {} ({:.2}s)",
            if report.passed { "PASS" } else { "FAIL" },
            report.name,
            report.detail,
            start.elapsed().as_secs_f64()
        )?;
    }
    Ok(all)
}
