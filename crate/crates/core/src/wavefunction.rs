//! Wigner functions of pure single-mode states from position-space
//! wavefunctions, `W(q,p) = (1/2π) ∫ dy ψ*(q−y) ψ(q+y) e^{−ipy}`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{WignerError, WignerResult};
use crate::field::WignerField;
use crate::grid::PhaseSpaceGrid;
use crate::quad::pairwise_sum;

/// Points per period of the fastest oscillation in the `y` integrand.
const POINTS_PER_PERIOD: f64 = 8.0;

/// Amplitude (relative to the peak) below which the phase of ψ is ignored
/// when estimating how fast it oscillates.
const PHASE_AMPLITUDE_FLOOR: f64 = 1e-6;

/// Truncation and sampling of the `y` integral.
#[derive(Clone, Copy, Debug, Default)]
pub struct WavefunctionQuadrature {
    /// `|y|` cutoff; defaults to the half-width of the grid's q axis.
    pub y_max: Option<f64>,
    /// `y` step; by default 8 points per period of the fastest oscillation,
    /// `|p|_max` plus twice the largest local wavenumber of ψ.
    pub step: Option<f64>,
}

/// Wigner function of the (not necessarily normalized) wavefunction `psi`.
/// ψ is normalized numerically over `[q_min − y_max, q_max + y_max]`.
pub fn wigner_from_wavefunction(
    psi: impl Fn(f64) -> C64 + Sync,
    grid: &PhaseSpaceGrid,
) -> WignerResult<WignerField> {
    wigner_from_wavefunction_with(psi, grid, WavefunctionQuadrature::default())
}

pub fn wigner_from_wavefunction_with(
    psi: impl Fn(f64) -> C64 + Sync,
    grid: &PhaseSpaceGrid,
    opts: WavefunctionQuadrature,
) -> WignerResult<WignerField> {
    if grid.mode_count() != 1 {
        return Err(WignerError::InvalidArgument(
            "wavefunctions describe a single mode".into(),
        ));
    }
    let mode = grid.mode(0);
    let (qa, pa) = (mode.q, mode.p);
    let y_max = opts.y_max.unwrap_or((qa.max() - qa.min()) / 2.0);
    if !(y_max > 0.0 && y_max.is_finite()) {
        return Err(WignerError::InvalidArgument(format!(
            "y_max must be positive, got {y_max}"
        )));
    }
    let (lo, hi) = (qa.min() - y_max, qa.max() + y_max);

    let probe_step = 0.01f64.min(qa.step());
    let probe_n = ((hi - lo) / probe_step).ceil() as usize + 1;
    let probe: Vec<C64> = (0..probe_n)
        .into_par_iter()
        .map(|k| psi(lo + k as f64 * probe_step))
        .collect();
    let norm = pairwise_sum(&probe.iter().map(|z| z.norm_sqr()).collect::<Vec<_>>()) * probe_step;
    let peak = probe.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(norm > 1e-12) || !norm.is_finite() {
        return Err(WignerError::NonNormalizable(norm));
    }

    let step = match opts.step {
        Some(h) if h > 0.0 => h,
        Some(h) => {
            return Err(WignerError::InvalidArgument(format!(
                "y step must be positive, got {h}"
            )))
        }
        None => {
            let floor = PHASE_AMPLITUDE_FLOOR * peak;
            let rate = probe
                .windows(2)
                .filter(|w| w[0].norm() > floor && w[1].norm() > floor)
                .map(|w| (w[1] * w[0].conj()).arg().abs() / probe_step)
                .fold(0.0, f64::max);
            let freq = pa.min().abs().max(pa.max().abs()) + 2.0 * rate;
            2.0 * PI / (POINTS_PER_PERIOD * freq.max(1.0))
        }
    };
    let k_max = (y_max / step).floor() as usize;
    let scale = step / (2.0 * PI * norm);

    let np = pa.len();
    let mut samples = vec![0.0; qa.len() * np];
    samples
        .par_chunks_mut(np)
        .enumerate()
        .for_each(|(iq, row)| {
            let q = qa.value(iq);
            let mut acc = vec![0.0; np];
            let kernel = |k: usize| {
                let y = k as f64 * step;
                psi(q - y).conj() * psi(q + y)
            };
            // k = 0 term, f(0) = |ψ(q)|² is real
            let f0 = kernel(0).re;
            for a in acc.iter_mut() {
                *a += f0;
            }
            // f(−y) = f(y)*, so each ±y pair contributes 2 Re[f(y) e^{−ipy}]
            for k in 1..=k_max {
                let y = k as f64 * step;
                let weight = if k == k_max && (y - y_max).abs() < 1e-12 {
                    1.0
                } else {
                    2.0
                };
                let mut z = kernel(k) * C64::from_polar(weight, -pa.min() * y);
                let rot = C64::from_polar(1.0, -pa.step() * y);
                for a in acc.iter_mut() {
                    *a += z.re;
                    z *= rot;
                }
            }
            for (slot, a) in row.iter_mut().zip(acc) {
                *slot = a * scale;
            }
        });
    WignerField::new(grid.clone(), samples)
}
