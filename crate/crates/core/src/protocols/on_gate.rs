//! Output family of the ON-state cubic-gate protocol for an infinitely
//! squeezed input: `σ_q̃ ∝ ∫ dq exp[−(q+q̃)²/4 + iγq³] |q⟩`.

use num_complex::Complex64 as C64;

use crate::error::WignerResult;
use crate::field::WignerField;
use crate::grid::{build_grid, PhaseSpaceGrid};
use crate::wavefunction::wigner_from_wavefunction;

/// Wigner function of `σ_q̃`.
pub fn on_gate_output(
    gamma: f64,
    q_tilde: f64,
    grid: &PhaseSpaceGrid,
) -> WignerResult<WignerField> {
    wigner_from_wavefunction(
        |q| {
            C64::from_polar(
                (-(q + q_tilde) * (q + q_tilde) / 4.0).exp(),
                gamma * q * q * q,
            )
        },
        grid,
    )
}

/// Grid holding `σ_q̃`: ±10 around `−q̃` in q and the curved momentum
/// support `p ≈ 6γq²` plus a margin of 12.
pub fn on_gate_grid(gamma: f64, q_tilde: f64) -> WignerResult<PhaseSpaceGrid> {
    let half = 10.0;
    let q_far = q_tilde.abs() + half;
    let bend = 6.0 * gamma * q_far * q_far;
    let (p_lo, p_hi) = (bend.min(0.0) - 12.0, bend.max(0.0) + 12.0);
    let step = 0.05;
    let nq = (2.0 * half / step).round() as usize + 1;
    let np = ((p_hi - p_lo) / step).round() as usize + 1;
    build_grid(-q_tilde - half, -q_tilde + half, nq, p_lo, p_hi, np, 1)
}
