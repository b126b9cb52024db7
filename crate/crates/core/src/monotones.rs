//! Logarithmic Wigner negativity and fidelity to pure states.

use crate::error::{WignerError, WignerResult};
use crate::field::{overlap_trace, WignerField, DEFAULT_TOL_NORM};

/// `N_L = ln ∫ |W|`. Results within `tol_norm` below zero (quadrature noise on
/// non-negative fields) are clamped to 0.
pub fn log_negativity(field: &WignerField) -> WignerResult<f64> {
    field.require_normalized()?;
    let value = field.integrate_abs().ln();
    if value < 0.0 {
        if value < -DEFAULT_TOL_NORM {
            return Err(WignerError::Unnormalized {
                integral: field.integral(),
                tol: DEFAULT_TOL_NORM,
            });
        }
        return Ok(0.0);
    }
    Ok(value)
}

/// `F = 4π ∫ W_ρ W_target` for a pure single-mode target, clamped to `[0, 1 + tol]`.
pub fn fidelity_to_pure(field: &WignerField, target: &WignerField) -> WignerResult<f64> {
    if field.mode_count() != 1 || target.mode_count() != 1 {
        return Err(WignerError::InvalidArgument(
            "fidelity is defined here for single-mode fields".into(),
        ));
    }
    let f = overlap_trace(field, target)?;
    Ok(f.clamp(0.0, 1.0 + DEFAULT_TOL_NORM))
}

/// Fidelity between cubic phase states differing only in squeezing,
/// `1/cosh(s_ini − s_targ)`.
pub fn fidelity_initial_analytic(s_ini: f64, s_targ: f64) -> f64 {
    1.0 / (s_ini - s_targ).cosh()
}
