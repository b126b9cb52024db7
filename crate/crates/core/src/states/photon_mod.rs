//! Single-photon-added and -subtracted squeezed vacua, `â†R̂(θ)Ŝ(s)|0⟩` and
//! `âR̂(θ)Ŝ(s)|0⟩` (normalized).

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{WignerError, WignerResult};
use crate::field::WignerField;
use crate::grid::PhaseSpaceGrid;
use crate::states::gaussian::squeezed_covariance;

/// Which ladder operator acts on the squeezed vacuum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhotonOp {
    /// `â†`, photon addition.
    Add,
    /// `â`, photon subtraction.
    Subtract,
}

impl PhotonOp {
    pub fn from_sign(sign: i32) -> WignerResult<Self> {
        match sign {
            1 => Ok(Self::Add),
            -1 => Ok(Self::Subtract),
            other => Err(WignerError::InvalidArgument(format!(
                "photon sign must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Self::Add => 1,
            Self::Subtract => -1,
        }
    }
}

impl fmt::Display for PhotonOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Add => "+1",
            Self::Subtract => "-1",
        })
    }
}

/// `W± = ½[xᵀV⁻¹AV⁻¹x − Tr(V⁻¹A) + 2] W₀(x)` with `A = 2(V±I)²/Tr(V±I)`,
/// `V` the covariance of `R̂(θ)Ŝ(s)|0⟩` and `W₀` its Wigner function.
pub fn photon_mod_wigner(
    op: PhotonOp,
    s: f64,
    theta: f64,
    grid: &PhaseSpaceGrid,
) -> WignerResult<WignerField> {
    if !(s.is_finite() && theta.is_finite()) {
        return Err(WignerError::InvalidArgument(
            "squeezing and angle must be finite".into(),
        ));
    }
    let v = squeezed_covariance(s, theta);
    let pm = match op {
        PhotonOp::Add => 1.0,
        PhotonOp::Subtract => -1.0,
    };
    let shifted = &v + DMatrix::identity(2, 2) * pm;
    let tr = shifted.trace();
    if tr.abs() < 1e-12 {
        return Err(WignerError::UndefinedState(
            "photon subtraction from the vacuum gives the zero vector".into(),
        ));
    }
    let a = &shifted * &shifted * (2.0 / tr);
    let vinv = v
        .clone()
        .try_inverse()
        .ok_or_else(|| WignerError::InvalidCovariance("singular covariance".into()))?;
    let m = &vinv * &a * &vinv;
    let offset = 2.0 - (&vinv * &a).trace();
    let m = [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]];
    let vi = [vinv[(0, 0)], vinv[(0, 1)], vinv[(1, 0)], vinv[(1, 1)]];
    WignerField::from_fn_2d(grid, |q, p| {
        let quad_m = q * (m[0] * q + m[1] * p) + p * (m[2] * q + m[3] * p);
        let quad_v = q * (vi[0] * q + vi[1] * p) + p * (vi[2] * q + vi[3] * p);
        // det V = 1 for a pure squeezed vacuum
        let w0 = (-0.5 * quad_v).exp() / (2.0 * PI);
        0.5 * (quad_m + offset) * w0
    })
}
