use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{WignerError, WignerResult};
use crate::field::WignerField;
use crate::grid::PhaseSpaceGrid;
use crate::special::{laguerre, ln_factorial};

/// `W(q,p; |n⟩) = (1/2π)(−1)ⁿ Lₙ(q²+p²) e^{−(q²+p²)/2}`.
pub fn number_state_wigner(n: usize, grid: &PhaseSpaceGrid) -> WignerResult<WignerField> {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    WignerField::from_fn_2d(grid, |q, p| {
        let r2 = q * q + p * p;
        sign * laguerre(n, r2) * (-r2 / 2.0).exp() / (2.0 * PI)
    })
}

/// Wigner function of `(|0⟩ + a|N⟩)/√(1+|a|²)`:
/// a weighted vacuum, a weighted `|N⟩`, and the interference term
/// `(1/√N!)(1/2π) e^{−(q²+p²)/2} (a(q−ip)ᴺ + a*(q+ip)ᴺ)`.
pub fn on_state_wigner(n: usize, a: C64, grid: &PhaseSpaceGrid) -> WignerResult<WignerField> {
    if n == 0 {
        return Err(WignerError::InvalidArgument("ON state needs N >= 1".into()));
    }
    if !(a.re.is_finite() && a.im.is_finite()) {
        return Err(WignerError::InvalidArgument(
            "ON amplitude must be finite".into(),
        ));
    }
    let norm = 1.0 + a.norm_sqr();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let inv_sqrt_fact = (-0.5 * ln_factorial(n)).exp();
    WignerField::from_fn_2d(grid, |q, p| {
        let r2 = q * q + p * p;
        let gauss = (-r2 / 2.0).exp() / (2.0 * PI);
        let vac = gauss;
        let num = sign * laguerre(n, r2) * gauss;
        let z = C64::new(q, -p).powu(n as u32);
        let cross = inv_sqrt_fact * gauss * 2.0 * (a * z).re;
        (vac + a.norm_sqr() * num + cross) / norm
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_photon_at_origin() {
        let g = PhaseSpaceGrid::square(8.0, 161).unwrap();
        let w = number_state_wigner(1, &g).unwrap();
        assert!((w.at(80, 80) + 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn zero_amplitude_on_state_is_vacuum() {
        let g = PhaseSpaceGrid::square(8.0, 161).unwrap();
        let on = on_state_wigner(3, C64::new(0.0, 0.0), &g).unwrap();
        let vac = number_state_wigner(0, &g).unwrap();
        assert!(on.max_abs_deviation(&vac).unwrap() < 1e-16);
    }

    #[test]
    fn large_amplitude_on_state_tends_to_number_state() {
        let g = PhaseSpaceGrid::square(8.0, 161).unwrap();
        let on = on_state_wigner(3, C64::new(1e4, 0.0), &g).unwrap();
        let three = number_state_wigner(3, &g).unwrap();
        assert!(on.max_abs_deviation(&three).unwrap() < 1e-4);
    }

    #[test]
    fn on_state_is_normalized() {
        let g = PhaseSpaceGrid::square(10.0, 401).unwrap();
        let on = on_state_wigner(2, C64::new(0.3, -0.8), &g).unwrap();
        assert!((on.integral() - 1.0).abs() < 1e-8);
    }
}
