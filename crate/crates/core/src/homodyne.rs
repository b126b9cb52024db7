//! Homodyne statistics and conditioning on a measured quadrature.

use crate::error::{WignerError, WignerResult};
use crate::field::WignerField;
use crate::grid::Axis;
use crate::quad::{reduce_axis, trapezoid};

/// Default floor below which a conditional density is treated as zero.
pub const DEFAULT_COND_EPS: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrature {
    Q,
    P,
}

impl Quadrature {
    fn offset(self) -> usize {
        match self {
            Self::Q => 0,
            Self::P => 1,
        }
    }
}

/// Probability density of one quadrature on a uniform axis.
#[derive(Clone, Debug)]
pub struct QuadratureDistribution {
    axis: Axis,
    densities: Vec<f64>,
}

impl QuadratureDistribution {
    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn values(&self) -> Vec<f64> {
        self.axis.values()
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    pub fn total(&self) -> f64 {
        trapezoid(&self.densities, self.axis.step())
    }

    pub fn mean(&self) -> f64 {
        self.moment(1) / self.total()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.moment(2) / self.total() - m * m
    }

    fn moment(&self, k: i32) -> f64 {
        let weighted: Vec<f64> = self
            .densities
            .iter()
            .enumerate()
            .map(|(i, d)| d * self.axis.value(i).powi(k))
            .collect();
        trapezoid(&weighted, self.axis.step())
    }

    /// Linear interpolation of the density; zero outside the axis.
    pub fn density_at(&self, x: f64) -> f64 {
        match self.axis.locate(x) {
            Some((k, 0.0)) => self.densities[k],
            Some((k, f)) => (1.0 - f) * self.densities[k] + f * self.densities[k + 1],
            None => 0.0,
        }
    }
}

fn check_mode(field: &WignerField, mode: usize) -> WignerResult<()> {
    if mode >= field.mode_count() {
        return Err(WignerError::InvalidArgument(format!(
            "mode {mode} out of range for a {}-mode field",
            field.mode_count()
        )));
    }
    Ok(())
}

/// Marginal density of quadrature `quadrature` of mode `mode`.
pub fn homodyne_pdf(
    field: &WignerField,
    mode: usize,
    quadrature: Quadrature,
) -> WignerResult<QuadratureDistribution> {
    field.require_normalized()?;
    check_mode(field, mode)?;
    let axes = field.grid().axes();
    let keep = 2 * mode + quadrature.offset();
    let mut dims: Vec<usize> = axes.iter().map(Axis::len).collect();
    let mut data = field.samples().to_vec();
    for d in (0..axes.len()).rev().filter(|&d| d != keep) {
        data = reduce_axis(&data, &dims, d, axes[d].step());
        dims.remove(d);
    }
    // tiny negative values are quadrature noise on a true probability density
    let densities = data
        .into_iter()
        .map(|v| if v < 0.0 && v > -1e-9 { 0.0 } else { v })
        .collect();
    Ok(QuadratureDistribution {
        axis: axes[keep],
        densities,
    })
}

/// Conditions on outcome `value` of a homodyne measurement of `mode`.
///
/// Returns the normalized state of the remaining modes and the
/// unnormalized outcome density.
pub fn condition_on_homodyne(
    field: &WignerField,
    mode: usize,
    quadrature: Quadrature,
    value: f64,
) -> WignerResult<(WignerField, f64)> {
    condition_on_homodyne_with(field, mode, quadrature, value, DEFAULT_COND_EPS)
}

pub fn condition_on_homodyne_with(
    field: &WignerField,
    mode: usize,
    quadrature: Quadrature,
    value: f64,
    eps: f64,
) -> WignerResult<(WignerField, f64)> {
    field.require_normalized()?;
    check_mode(field, mode)?;
    if field.mode_count() < 2 {
        return Err(WignerError::InvalidArgument(
            "conditioning needs at least two modes".into(),
        ));
    }
    let axes = field.grid().axes();
    let dims: Vec<usize> = axes.iter().map(Axis::len).collect();
    let measured = 2 * mode + quadrature.offset();
    let Some((k, frac)) = axes[measured].locate(value) else {
        return Err(WignerError::DegenerateConditioning {
            density: 0.0,
            threshold: eps,
        });
    };
    let outer: usize = dims[..measured].iter().product();
    let n = dims[measured];
    let inner: usize = dims[measured + 1..].iter().product();
    let src = field.samples();
    let mut slice = vec![0.0; outer * inner];
    for o in 0..outer {
        let lo = &src[(o * n + k) * inner..(o * n + k + 1) * inner];
        let dst = &mut slice[o * inner..(o + 1) * inner];
        if frac == 0.0 {
            dst.copy_from_slice(lo);
        } else {
            let hi = &src[(o * n + k + 1) * inner..(o * n + k + 2) * inner];
            for ((d, a), b) in dst.iter_mut().zip(lo).zip(hi) {
                *d = (1.0 - frac) * a + frac * b;
            }
        }
    }
    let mut sliced_dims = dims.clone();
    sliced_dims.remove(measured);
    // the conjugate quadrature of the measured mode sits at the same index
    // after removal when q was measured, and one below when p was measured
    let conjugate = 2 * mode;
    let conj_axis = axes[2 * mode + 1 - quadrature.offset()];
    let reduced = reduce_axis(&slice, &sliced_dims, conjugate, conj_axis.step());
    let grid = field.grid().without_modes(&[mode])?;
    let unnormalized = WignerField::unnormalized(grid.clone(), reduced)?;
    let density = unnormalized.integral();
    if !(density >= eps) {
        return Err(WignerError::DegenerateConditioning {
            density,
            threshold: eps,
        });
    }
    let samples = unnormalized
        .into_samples()
        .into_iter()
        .map(|v| v / density)
        .collect();
    Ok((WignerField::new(grid, samples)?, density))
}
