//! Cubic phase states `|γ, P, s⟩ = V̂(γ) D̂_p(P) Ŝ(−s)|0⟩` and the ideal
//! (unnormalizable) limit `|γ, P⟩`.
//!
//! The finite-squeezing Wigner function is
//!
//! ```text
//! W(q,p) = (8π³e^{2s})^{-1/2} e^{-q²/2e^{2s}}
//!          ∫ dy exp[i(2γy³ + 2(3γq² − (p−P)/2)y)] exp[−y²/2e^{2s}]
//! ```
//!
//! For each row `q` the `y` integral is a trapezoid sum evaluated for all
//! `p` nodes at once with an FFT: sampling `y` at `h = 2π/(M Δp)` turns
//! `e^{−ip_l y_j}` into the DFT kernel.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{WignerError, WignerResult};
use crate::field::{WignerField, DEFAULT_TOL_NORM};
use crate::grid::PhaseSpaceGrid;
use crate::special::airy_ai;

/// Spectral margin (in p) kept free of aliases around the band the `y`
/// integrand occupies. Covers the Airy tail below the turning point.
const ALIAS_MARGIN: f64 = 12.0;

/// Truncation controls for the `y` integral.
#[derive(Clone, Copy, Debug, Default)]
pub struct CubicQuadrature {
    /// Hard cap on `|y|`; defaults to `6e^s`.
    pub y_max: Option<f64>,
    /// Accept grids that cut off part of the state. The result is then only
    /// flagged, never rejected, when its integral is not 1.
    pub partial_grid: bool,
}

/// Integration window for the `y` integral: unit weight up to `core`,
/// raised-cosine taper to zero at `end`.
#[derive(Clone, Copy, Debug)]
struct Window {
    core: f64,
    end: f64,
}

impl Window {
    fn weight(&self, y: f64) -> f64 {
        let a = y.abs();
        if a <= self.core {
            1.0
        } else if a >= self.end {
            0.0
        } else {
            0.5 * (1.0 + (PI * (a - self.core) / (self.end - self.core)).cos())
        }
    }
}

/// Picks the `y` window for a grid.
///
/// The damping `e^{−y²/2e^{2s}}` makes `|y| ≤ 6e^s` sufficient. For large `s`
/// that range is far wider than anything the grid can resolve: a node `(q, p)`
/// only receives stationary-phase contributions from
/// `6γy² = p − P − 6γq²`, so beyond the largest such `y` on the grid the
/// integrand is purely oscillatory and is tapered away.
fn choose_window(
    gamma: f64,
    big_p: f64,
    s: f64,
    grid: &PhaseSpaceGrid,
    opts: CubicQuadrature,
) -> Window {
    let damped = 6.0 * s.exp();
    let cap = opts.y_max.map_or(damped, |y| y.min(damped));
    if gamma == 0.0 {
        return Window {
            core: cap,
            end: cap,
        };
    }
    let mode = grid.mode(0);
    let q0 = if mode.q.min() <= 0.0 && mode.q.max() >= 0.0 {
        0.0
    } else {
        mode.q.min().abs().min(mode.q.max().abs())
    };
    let p_edge = if gamma > 0.0 {
        mode.p.max()
    } else {
        mode.p.min()
    };
    let reach = gamma.signum() * (p_edge - big_p - 6.0 * gamma * q0 * q0);
    let y_stat = (reach.max(0.0) / (6.0 * gamma.abs())).sqrt();
    let margin = 4.0 * (6.0 * gamma.abs()).powf(-1.0 / 3.0);
    let core = y_stat + margin;
    let end = core + margin;
    if end >= cap {
        Window {
            core: cap,
            end: cap,
        }
    } else {
        Window { core, end }
    }
}

/// Wigner function of `|γ, P, s⟩` on a single-mode grid.
pub fn cubic_phase_wigner(
    gamma: f64,
    big_p: f64,
    s: f64,
    grid: &PhaseSpaceGrid,
) -> WignerResult<WignerField> {
    cubic_phase_wigner_with(gamma, big_p, s, grid, CubicQuadrature::default())
}

pub fn cubic_phase_wigner_with(
    gamma: f64,
    big_p: f64,
    s: f64,
    grid: &PhaseSpaceGrid,
    opts: CubicQuadrature,
) -> WignerResult<WignerField> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(WignerError::InvalidArgument(format!(
            "squeezing must be finite and >= 0, got {s}"
        )));
    }
    if !(gamma.is_finite() && big_p.is_finite()) {
        return Err(WignerError::InvalidArgument(
            "cubic phase parameters must be finite".into(),
        ));
    }
    if grid.mode_count() != 1 {
        return Err(WignerError::InvalidArgument(
            "cubic phase states are single-mode".into(),
        ));
    }
    let samples = cubic_samples(gamma, big_p, s, grid, opts);
    let field = WignerField::new(grid.clone(), samples)?;
    if !opts.partial_grid && (field.integral() - 1.0).abs() > 10.0 * DEFAULT_TOL_NORM {
        return Err(WignerError::NonConvergence {
            integral: field.integral(),
            tol: 10.0 * DEFAULT_TOL_NORM,
        });
    }
    Ok(field)
}

fn cubic_samples(
    gamma: f64,
    big_p: f64,
    s: f64,
    grid: &PhaseSpaceGrid,
    opts: CubicQuadrature,
) -> Vec<f64> {
    let mode = grid.mode(0);
    let (qa, pa) = (mode.q, mode.p);
    let var = (2.0 * s).exp();
    let amp = (8.0 * PI.powi(3) * var).powf(-0.5);
    let window = choose_window(gamma, big_p, s, grid, opts);
    let y_end = window.end;

    // refine p internally when the window is wider than one DFT period allows
    let refine = ((y_end * pa.step() / PI) * 1.05).ceil().max(1.0) as usize;
    let dp = pa.step() / refine as f64;
    let needed_len = refine * (pa.len() - 1) + 1;

    let mut planner = FftPlanner::<f64>::new();
    let mut plans: std::collections::BTreeMap<usize, Arc<dyn Fft<f64>>> =
        std::collections::BTreeMap::new();
    let sizes: Vec<usize> = (0..qa.len())
        .map(|iq| {
            let q = qa.value(iq);
            let base = 6.0 * gamma * q * q + big_p;
            let sweep = 6.0 * gamma * y_end * y_end;
            let (lo, hi) = if sweep >= 0.0 {
                (base, base + sweep)
            } else {
                (base + sweep, base)
            };
            let period = (hi + ALIAS_MARGIN - pa.min())
                .max(pa.max() - lo + ALIAS_MARGIN)
                .max(pa.max() - pa.min() + ALIAS_MARGIN);
            let m = ((period / dp).ceil() as usize).max(needed_len);
            m.next_power_of_two()
        })
        .collect();
    for &m in &sizes {
        plans
            .entry(m)
            .or_insert_with(|| planner.plan_fft_forward(m));
    }

    let np = pa.len();
    let mut samples = vec![0.0; qa.len() * np];
    samples
        .par_chunks_mut(np)
        .enumerate()
        .for_each(|(iq, row)| {
            let q = qa.value(iq);
            let m = sizes[iq];
            let fft = &plans[&m];
            let h = 2.0 * PI / (m as f64 * dp);
            let jmax = ((y_end / h).floor() as usize).min((m - 1) / 2);
            let lin = 6.0 * gamma * q * q + big_p;
            let mut buf = vec![C64::new(0.0, 0.0); m];
            for j in 0..=jmax {
                let y = j as f64 * h;
                let w = window.weight(y) * (-y * y / (2.0 * var)).exp();
                if w == 0.0 {
                    continue;
                }
                let phase = 2.0 * gamma * y * y * y + (lin - pa.min()) * y;
                let v = C64::from_polar(w, phase);
                buf[j] = v;
                if j > 0 {
                    buf[m - j] = v.conj();
                }
            }
            fft.process(&mut buf);
            let prefactor = amp * (-q * q / (2.0 * var)).exp() * h;
            for (ip, slot) in row.iter_mut().enumerate() {
                *slot = prefactor * buf[ip * refine].re;
            }
        });
    samples
}

/// Unnormalized Wigner function of the ideal cubic phase state `|γ, P⟩`:
/// `(6|γ|)^{-1/3} Ai((4/3γ)^{1/3}(3γq² − (p−P)/2))`, the Wigner function of
/// the wavefunction `exp(iγq³ + iPq/2)`.
pub fn ideal_cubic_wigner(
    gamma: f64,
    big_p: f64,
    grid: &PhaseSpaceGrid,
) -> WignerResult<WignerField> {
    if gamma == 0.0 || !gamma.is_finite() {
        return Err(WignerError::InvalidArgument(
            "ideal cubic phase state needs gamma != 0".into(),
        ));
    }
    let scale = (4.0 / (3.0 * gamma)).cbrt();
    let amp = (6.0 * gamma.abs()).powf(-1.0 / 3.0);
    let samples = crate::field::sample_2d(grid, |q, p| {
        amp * airy_ai(scale * (3.0 * gamma * q * q - (p - big_p) / 2.0))
    })?;
    WignerField::unnormalized(grid.clone(), samples)
}

/// Single-mode grid covering `|γ, P, s⟩` down to ~1e-7 of its mass, with
/// spacing `step` on both axes.
pub fn cubic_grid(gamma: f64, big_p: f64, s: f64, step: f64) -> WignerResult<PhaseSpaceGrid> {
    use crate::grid::{Axis, ModeGrid};
    let q_ext = (5.5 * s.exp()).max(6.0);
    let bend = 6.0 * gamma * q_ext * q_ext;
    let p_min = big_p + bend.min(0.0) - 10.0;
    let p_max = big_p + bend.max(0.0) + 10.0;
    let q = Axis::with_step(-q_ext, q_ext, step)?;
    let p = Axis::with_step(p_min, p_max, step)?;
    Ok(PhaseSpaceGrid::single(ModeGrid::new(q, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::gaussian::{gaussian_wigner, GaussianStateParams};

    #[test]
    fn zero_gamma_is_momentum_squeezed_gaussian() {
        let (big_p, s) = (0.7, 0.4);
        let grid = cubic_grid(0.0, big_p, s, 0.05).unwrap();
        let cubic = cubic_phase_wigner(0.0, big_p, s, &grid).unwrap();
        let params = GaussianStateParams::single_mode(-s, 0.0, 0.0, big_p, 0.0).unwrap();
        let gauss = gaussian_wigner(&params, &grid).unwrap();
        assert!(cubic.max_abs_deviation(&gauss).unwrap() < 1e-6);
    }

    #[test]
    fn ideal_cubic_rejects_zero_gamma() {
        let g = PhaseSpaceGrid::square(4.0, 33).unwrap();
        assert!(ideal_cubic_wigner(0.0, 0.0, &g).is_err());
    }

    #[test]
    fn ideal_cubic_vanishes_on_airy_zero_parabola() {
        // first zero of Ai at -2.338107410459767
        let (gamma, big_p): (f64, f64) = (0.1, 0.5);
        let scale = (4.0 / (3.0 * gamma)).cbrt();
        let g = PhaseSpaceGrid::square(4.0, 33).unwrap();
        let w = ideal_cubic_wigner(gamma, big_p, &g).unwrap();
        let q: f64 = 1.0;
        let p = big_p + 6.0 * gamma * q * q + 2.0 * 2.338107410459767 / scale;
        let x = scale * (3.0 * gamma * q * q - (p - big_p) / 2.0);
        assert!(airy_ai(x).abs() < 1e-12);
        assert!(!w.is_normalized());
    }

    #[test]
    fn rejects_negative_squeezing() {
        let g = PhaseSpaceGrid::square(4.0, 33).unwrap();
        assert!(cubic_phase_wigner(0.05, 0.0, -0.1, &g).is_err());
    }
}
