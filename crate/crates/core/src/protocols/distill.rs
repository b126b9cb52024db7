//! Beam-splitter / vacuum / momentum-homodyne distillation with
//! postselection on the measured outcome `p_v`.
//!
//! The input mode and a vacuum ancilla meet on a beam splitter of
//! transmittance `t`, the ancilla's momentum is measured and the input mode
//! is kept. With `u = √t q − √(1−t) q_v` the ancilla position integral is a
//! Gaussian smoothing of the input along `q`,
//!
//! ```text
//! W(q,p | p_v) ∝ C(q, √t p − √(1−t) p_v) · exp(−(√t p_v + √(1−t) p)²/2) / √(2π)
//! C(q, p')     = ∫ du W_in(u, p') K(q − √t u),   K = N(0, 1−t)
//! ```
//!
//! `C` does not depend on `p_v`, so it is computed once per `(input, t)`.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{WignerError, WignerResult};
use crate::field::{format_sci, WignerField};
use crate::grid::PhaseSpaceGrid;
use crate::homodyne::{homodyne_pdf, Quadrature, DEFAULT_COND_EPS};
use crate::monotones::{fidelity_to_pure, log_negativity};
use crate::protocols::window::{select_window, PiecewiseLinear, Window};
use crate::states::{cubic_phase_wigner_with, CubicQuadrature};

/// Transmittance used when none is given.
pub const DEFAULT_TRANSMITTANCE: f64 = 0.95;

/// Number of homodyne outcomes sampled by default.
pub const DEFAULT_SAMPLES: usize = 81;

/// Kernel support in units of its standard deviation.
const KERNEL_SIGMAS: f64 = 12.0;

/// How the postselection window is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WindowPolicy {
    Explicit(Window),
    /// Window with this success probability that maximizes each figure of merit.
    TargetPsuc(f64),
}

/// Cubic phase target `|γ, P_ini + √((1−t)/t) p_v, s_targ⟩` for fidelity tracking.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityTarget {
    pub gamma: f64,
    pub p_ini: f64,
    pub s_targ: f64,
}

#[derive(Clone, Debug)]
pub struct DistillationConfig {
    pub t: f64,
    /// Strictly increasing homodyne outcomes; `None` picks
    /// [`default_p_v_samples`].
    pub p_v_samples: Option<Vec<f64>>,
    pub window: WindowPolicy,
    pub fidelity: Option<FidelityTarget>,
}

impl DistillationConfig {
    pub fn new(t: f64, window: WindowPolicy) -> Self {
        Self {
            t,
            p_v_samples: None,
            window,
            fidelity: None,
        }
    }

    pub fn validate(&self) -> WignerResult<()> {
        check_transmittance(self.t)?;
        if let Some(xs) = &self.p_v_samples {
            if xs.len() < 2 || xs.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(WignerError::InvalidArgument(
                    "p_v samples must hold at least two strictly increasing values".into(),
                ));
            }
        }
        match self.window {
            WindowPolicy::Explicit(w) if !(w.hi > w.lo) => Err(WignerError::Window(format!(
                "empty window [{}, {}]",
                w.lo, w.hi
            ))),
            WindowPolicy::TargetPsuc(p) if !(p > 0.0 && p <= 1.0) => Err(WignerError::Window(
                format!("target success probability {p} outside (0, 1]"),
            )),
            _ => Ok(()),
        }
    }
}

fn check_transmittance(t: f64) -> WignerResult<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(WignerError::InvalidArgument(format!(
            "transmittance must lie in (0, 1), got {t}"
        )))
    }
}

/// One homodyne outcome.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistillationRecord {
    pub p_v: f64,
    pub density: f64,
    pub neg: f64,
    pub fid: Option<f64>,
}

/// Window aggregates for one figure of merit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowSummary {
    pub window: Window,
    pub p_suc: f64,
    /// `∫_window P(p_v) x(p_v) dp_v`.
    pub average: f64,
    /// `average / p_suc`.
    pub post: f64,
}

#[derive(Clone, Debug)]
pub struct DistillationOutcome {
    pub t: f64,
    pub records: Vec<DistillationRecord>,
    pub ini_neg: f64,
    pub neg: WindowSummary,
    pub ini_fid: Option<f64>,
    pub fid: Option<WindowSummary>,
}

impl DistillationOutcome {
    pub fn p_suc(&self) -> f64 {
        self.neg.p_suc
    }

    pub fn avg_neg(&self) -> f64 {
        self.neg.average
    }

    pub fn post_neg(&self) -> f64 {
        self.neg.post
    }

    pub fn window(&self) -> Window {
        self.neg.window
    }

    /// Sampled mass `∫ P(p_v)` over the full outcome range.
    pub fn total_mass(&self) -> f64 {
        let xs: Vec<f64> = self.records.iter().map(|r| r.p_v).collect();
        let d: Vec<f64> = self.records.iter().map(|r| r.density).collect();
        PiecewiseLinear::new(&xs, &d, &d)
            .map(|m| m.total_mass())
            .unwrap_or(0.0)
    }

    /// Aggregates of the per-outcome negativity over an arbitrary window.
    pub fn negativity_over(&self, window: Window) -> WignerResult<WindowSummary> {
        let xs: Vec<f64> = self.records.iter().map(|r| r.p_v).collect();
        let d: Vec<f64> = self.records.iter().map(|r| r.density).collect();
        let v: Vec<f64> = self.records.iter().map(|r| r.neg).collect();
        summarize(&xs, &d, &v, window)
    }

    /// CSV `p_v,density,neg,fid` with a `#` footer holding the aggregates.
    pub fn write_csv(&self, mut out: impl Write) -> WignerResult<()> {
        writeln!(out, "p_v,density,neg,fid")?;
        for r in &self.records {
            let fid = r.fid.map(format_sci).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{}",
                format_sci(r.p_v),
                format_sci(r.density),
                format_sci(r.neg),
                fid
            )?;
        }
        write!(
            out,
            "# P_suc={} avg_neg={} post_neg={} window=[{},{}] ini_neg={}",
            format_sci(self.neg.p_suc),
            format_sci(self.neg.average),
            format_sci(self.neg.post),
            format_sci(self.neg.window.lo),
            format_sci(self.neg.window.hi),
            format_sci(self.ini_neg)
        )?;
        if let (Some(f), Some(ini)) = (self.fid, self.ini_fid) {
            write!(
                out,
                " fid_P_suc={} avg_fid={} post_fid={} fid_window=[{},{}] ini_fid={}",
                format_sci(f.p_suc),
                format_sci(f.average),
                format_sci(f.post),
                format_sci(f.window.lo),
                format_sci(f.window.hi),
                format_sci(ini)
            )?;
        }
        writeln!(out)?;
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> WignerResult<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_csv(&mut w)?;
        w.flush()?;
        Ok(())
    }
}

fn summarize(
    xs: &[f64],
    density: &[f64],
    value: &[f64],
    window: Window,
) -> WignerResult<WindowSummary> {
    let model = PiecewiseLinear::new(xs, density, value)?;
    let (p_suc, average) = model.integrals(window.lo, window.hi);
    if !(p_suc > 0.0) {
        return Err(WignerError::Window(format!(
            "window [{}, {}] holds no probability",
            window.lo, window.hi
        )));
    }
    Ok(WindowSummary {
        window,
        p_suc,
        average,
        post: average / p_suc,
    })
}

/// The input smoothed along `q` for one transmittance; conditional outputs
/// for any `p_v` follow by a shear and a Gaussian filter.
pub struct Distiller {
    t: f64,
    grid: PhaseSpaceGrid,
    smoothed: Vec<f64>,
}

impl Distiller {
    /// Output states are sampled on the input's grid.
    pub fn new(input: &WignerField, t: f64) -> WignerResult<Self> {
        check_transmittance(t)?;
        input.require_normalized()?;
        if input.mode_count() != 1 {
            return Err(WignerError::InvalidArgument(
                "distillation acts on a single-mode input".into(),
            ));
        }
        let grid = input.grid().clone();
        let mode = grid.mode(0);
        let (qa, pa) = (mode.q, mode.p);
        let (nq, np) = (qa.len(), pa.len());
        let var = 1.0 - t;
        let st = t.sqrt();
        let norm = qa.step() / (2.0 * PI * var).sqrt();
        let reach = KERNEL_SIGMAS * var.sqrt();
        let samples = input.samples();
        let mut smoothed = vec![0.0; nq * np];
        smoothed
            .par_chunks_mut(np)
            .enumerate()
            .for_each(|(i, row)| {
                let q = qa.value(i);
                // √t u within `reach` of q
                let lo = ((q - reach) / st - qa.min()) / qa.step();
                let hi = ((q + reach) / st - qa.min()) / qa.step();
                let k0 = lo.ceil().max(0.0) as usize;
                let k1 = (hi.floor().min((nq - 1) as f64)).max(-1.0);
                if k1 < k0 as f64 {
                    return;
                }
                for k in k0..=k1 as usize {
                    let z = q - st * qa.value(k);
                    let mut w = norm * (-z * z / (2.0 * var)).exp();
                    if k == 0 || k == nq - 1 {
                        w *= 0.5;
                    }
                    for (c, &v) in row.iter_mut().zip(&samples[k * np..(k + 1) * np]) {
                        *c += w * v;
                    }
                }
            });
        Ok(Self { t, grid, smoothed })
    }

    pub fn transmittance(&self) -> f64 {
        self.t
    }

    pub fn grid(&self) -> &PhaseSpaceGrid {
        &self.grid
    }

    /// Normalized output state for outcome `p_v` and the outcome density.
    pub fn conditional(&self, p_v: f64) -> WignerResult<(WignerField, f64)> {
        let mode = self.grid.mode(0);
        let pa = mode.p;
        let np = pa.len();
        let (st, sr) = (self.t.sqrt(), (1.0 - self.t).sqrt());
        let inv_sqrt_2pi = 1.0 / (2.0 * PI).sqrt();
        // shear index map and filter depend on p only
        let taps: Vec<(usize, f64, f64)> = (0..np)
            .map(|l| {
                let p = pa.value(l);
                let filter = inv_sqrt_2pi * (-(st * p_v + sr * p).powi(2) / 2.0).exp();
                let p_in = st * p - sr * p_v;
                match pa.locate(p_in) {
                    Some((j, f)) if filter > 0.0 => (j, f, filter),
                    _ => (usize::MAX, 0.0, 0.0),
                }
            })
            .collect();
        let mut samples = vec![0.0; self.smoothed.len()];
        samples
            .par_chunks_mut(np)
            .zip(self.smoothed.par_chunks(np))
            .for_each(|(out, row)| {
                for (slot, &(j, f, filter)) in out.iter_mut().zip(&taps) {
                    if j == usize::MAX {
                        continue;
                    }
                    let c = if f == 0.0 {
                        row[j]
                    } else if j >= 1 && j + 2 < np {
                        cubic_lagrange(&row[j - 1..j + 3], f)
                    } else {
                        row[j] * (1.0 - f) + row[j + 1] * f
                    };
                    *slot = c * filter;
                }
            });
        let raw = WignerField::unnormalized(self.grid.clone(), samples)?;
        let density = raw.integral();
        if !(density > DEFAULT_COND_EPS) {
            return Err(WignerError::DegenerateConditioning {
                density,
                threshold: DEFAULT_COND_EPS,
            });
        }
        let scale = 1.0 / density;
        let normalized = raw.into_samples().into_iter().map(|v| v * scale).collect();
        Ok((WignerField::new(self.grid.clone(), normalized)?, density))
    }
}

/// Cubic through four equally spaced samples at −1, 0, 1, 2, evaluated at `f ∈ [0, 1)`.
fn cubic_lagrange(y: &[f64], f: f64) -> f64 {
    let (a, b, c) = (f + 1.0, f - 1.0, f - 2.0);
    -f * b * c / 6.0 * y[0] + a * b * c / 2.0 * y[1] - a * f * c / 2.0 * y[2]
        + a * f * b / 6.0 * y[3]
}

/// Output state and outcome density for a single homodyne result.
pub fn distill_conditional(
    input: &WignerField,
    t: f64,
    p_v: f64,
) -> WignerResult<(WignerField, f64)> {
    Distiller::new(input, t)?.conditional(p_v)
}

/// `DEFAULT_SAMPLES` outcomes spanning ±6 standard deviations of the
/// outcome distribution (at least ±6), centred on its mean.
pub fn default_p_v_samples(input: &WignerField, t: f64) -> WignerResult<Vec<f64>> {
    p_v_samples(input, t, DEFAULT_SAMPLES)
}

/// Like [`default_p_v_samples`] with `n ≥ 2` outcomes.
pub fn p_v_samples(input: &WignerField, t: f64, n: usize) -> WignerResult<Vec<f64>> {
    check_transmittance(t)?;
    if n < 2 {
        return Err(WignerError::InvalidArgument(format!(
            "need at least two outcome samples, got {n}"
        )));
    }
    let marginal = homodyne_pdf(input, 0, Quadrature::P)?;
    // p_v' = √t p_v − √(1−t) p with p_v from the vacuum
    let mean = -(1.0 - t).sqrt() * marginal.mean();
    let sd = (t + (1.0 - t) * marginal.variance()).sqrt().max(1.0);
    let half = 6.0 * sd;
    Ok((0..n)
        .map(|k| mean - half + 2.0 * half * k as f64 / (n - 1) as f64)
        .collect())
}

/// Fidelity of each conditional output with its shifted cubic target.
pub fn fidelity_records(
    distiller: &Distiller,
    p_vs: &[f64],
    target: FidelityTarget,
) -> WignerResult<Vec<f64>> {
    let t = distiller.transmittance();
    p_vs.iter()
        .map(|&p_v| {
            let (out, _) = distiller.conditional(p_v)?;
            let target_field = cubic_target(
                target,
                target.p_ini + ((1.0 - t) / t).sqrt() * p_v,
                distiller.grid(),
            )?;
            fidelity_to_pure(&out, &target_field)
        })
        .collect()
}

/// Target state sampled on a grid that may cut it off; only its overlap with
/// states supported on the grid is meaningful.
pub fn cubic_target(
    target: FidelityTarget,
    p: f64,
    grid: &PhaseSpaceGrid,
) -> WignerResult<WignerField> {
    let opts = CubicQuadrature {
        partial_grid: true,
        ..CubicQuadrature::default()
    };
    cubic_phase_wigner_with(target.gamma, p, target.s_targ, grid, opts)
}

/// Evaluates every sampled outcome and aggregates over the window policy.
pub fn distill_sweep(
    input: &WignerField,
    config: &DistillationConfig,
) -> WignerResult<DistillationOutcome> {
    config.validate()?;
    let ini_neg = log_negativity(input)?;
    let distiller = Distiller::new(input, config.t)?;
    let p_vs = match &config.p_v_samples {
        Some(xs) => xs.clone(),
        None => default_p_v_samples(input, config.t)?,
    };
    let t = config.t;
    let mut records = Vec::with_capacity(p_vs.len());
    for &p_v in &p_vs {
        let (out, density) = match distiller.conditional(p_v) {
            Ok(v) => v,
            // outcomes with vanishing probability carry no weight
            Err(WignerError::DegenerateConditioning { .. }) => {
                records.push(DistillationRecord {
                    p_v,
                    density: 0.0,
                    neg: 0.0,
                    fid: config.fidelity.map(|_| 0.0),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let neg = log_negativity(&out)?;
        let fid = match config.fidelity {
            Some(target) => {
                let p = target.p_ini + ((1.0 - t) / t).sqrt() * p_v;
                Some(fidelity_to_pure(
                    &out,
                    &cubic_target(target, p, distiller.grid())?,
                )?)
            }
            None => None,
        };
        records.push(DistillationRecord {
            p_v,
            density,
            neg,
            fid,
        });
    }

    let d: Vec<f64> = records.iter().map(|r| r.density).collect();
    let negs: Vec<f64> = records.iter().map(|r| r.neg).collect();
    let neg_window = match config.window {
        WindowPolicy::Explicit(w) => w,
        WindowPolicy::TargetPsuc(p) => select_window(&p_vs, &d, &negs, p)?,
    };
    let neg = summarize(&p_vs, &d, &negs, neg_window)?;

    let (ini_fid, fid) = match config.fidelity {
        Some(target) => {
            let ini = fidelity_to_pure(input, &cubic_target(target, target.p_ini, input.grid())?)?;
            let fids: Vec<f64> = records.iter().map(|r| r.fid.unwrap_or(0.0)).collect();
            let w = match config.window {
                WindowPolicy::Explicit(w) => w,
                WindowPolicy::TargetPsuc(p) => select_window(&p_vs, &d, &fids, p)?,
            };
            (Some(ini), Some(summarize(&p_vs, &d, &fids, w)?))
        }
        None => (None, None),
    };
    Ok(DistillationOutcome {
        t,
        records,
        ini_neg,
        neg,
        ini_fid,
        fid,
    })
}
