//! Sampled Wigner functions and the Wigner-calculus primitives that act on
//! them: integration, partial traces, products and state overlaps.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::error::{WignerError, WignerResult};
use crate::grid::{Axis, ModeGrid, PhaseSpaceGrid};
use crate::quad::{reduce_axis, trapezoid};

/// Default normalization tolerance `|∫W − 1|`.
pub const DEFAULT_TOL_NORM: f64 = 1e-3;

/// Real Wigner-function samples on a [`PhaseSpaceGrid`], row-major in axis
/// order with the last axis fastest.
#[derive(Clone, Debug)]
pub struct WignerField {
    grid: PhaseSpaceGrid,
    samples: Vec<f64>,
    integral: f64,
    normalized: bool,
}

impl WignerField {
    /// Wraps samples and flags the field as normalized when
    /// `|∫W − 1| ≤ DEFAULT_TOL_NORM`.
    pub fn new(grid: PhaseSpaceGrid, samples: Vec<f64>) -> WignerResult<Self> {
        Self::with_tolerance(grid, samples, DEFAULT_TOL_NORM)
    }

    pub fn with_tolerance(grid: PhaseSpaceGrid, samples: Vec<f64>, tol: f64) -> WignerResult<Self> {
        let mut field = Self::unnormalized(grid, samples)?;
        field.normalized = (field.integral - 1.0).abs() <= tol;
        Ok(field)
    }

    /// Wraps samples that are never treated as a normalized state.
    pub fn unnormalized(grid: PhaseSpaceGrid, samples: Vec<f64>) -> WignerResult<Self> {
        if samples.len() != grid.node_count() {
            return Err(WignerError::GridMismatch(format!(
                "{} samples for a grid of {} nodes",
                samples.len(),
                grid.node_count()
            )));
        }
        if let Some(bad) = samples.iter().position(|v| !v.is_finite()) {
            return Err(WignerError::InvalidArgument(format!(
                "non-finite sample at node {bad}"
            )));
        }
        let integral = integrate_samples(&grid, &samples);
        Ok(Self {
            grid,
            samples,
            integral,
            normalized: false,
        })
    }

    /// Evaluates `f(q, p)` at every node of a single-mode grid.
    pub fn from_fn_2d(
        grid: &PhaseSpaceGrid,
        f: impl Fn(f64, f64) -> f64 + Sync,
    ) -> WignerResult<Self> {
        let samples = sample_2d(grid, f)?;
        Self::new(grid.clone(), samples)
    }

    /// Evaluates `f(x)` at every node, `x` in axis order.
    pub fn from_fn(grid: &PhaseSpaceGrid, f: impl Fn(&[f64]) -> f64 + Sync) -> WignerResult<Self> {
        let dims = 2 * grid.mode_count();
        let samples: Vec<f64> = (0..grid.node_count())
            .into_par_iter()
            .map_init(
                || vec![0.0; dims],
                |x, k| {
                    grid.coordinates(k, x);
                    f(x)
                },
            )
            .collect();
        Self::new(grid.clone(), samples)
    }

    pub fn grid(&self) -> &PhaseSpaceGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn mode_count(&self) -> usize {
        self.grid.mode_count()
    }

    /// Quadrature of the field over the whole grid, cached at construction.
    pub fn integral(&self) -> f64 {
        self.integral
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_normalized_within(&self, tol: f64) -> bool {
        (self.integral - 1.0).abs() <= tol
    }

    /// Errors unless the field was flagged normalized at construction.
    pub fn require_normalized(&self) -> WignerResult<()> {
        if self.normalized {
            Ok(())
        } else {
            Err(WignerError::Unnormalized {
                integral: self.integral,
                tol: DEFAULT_TOL_NORM,
            })
        }
    }

    /// Explicit rescaling to unit integral, for protocol intermediates.
    pub fn renormalize(&self) -> WignerResult<Self> {
        if !(self.integral.abs() > f64::MIN_POSITIVE) {
            return Err(WignerError::InvalidArgument(
                "cannot renormalize a field with zero integral".into(),
            ));
        }
        let scale = 1.0 / self.integral;
        let samples = self.samples.iter().map(|v| v * scale).collect();
        Self::new(self.grid.clone(), samples)
    }

    /// Value at single-mode node `(iq, ip)`.
    pub fn at(&self, iq: usize, ip: usize) -> f64 {
        self.samples[iq * self.grid.mode(0).p.len() + ip]
    }

    pub fn min_value(&self) -> f64 {
        self.samples.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.samples
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Quadrature of `|W|`.
    pub fn integrate_abs(&self) -> f64 {
        let abs: Vec<f64> = self.samples.iter().map(|v| v.abs()).collect();
        integrate_samples(&self.grid, &abs)
    }

    /// Multilinear interpolation at an arbitrary point; zero outside the grid.
    pub fn sample_at(&self, x: &[f64]) -> f64 {
        let axes = self.grid.axes();
        debug_assert_eq!(x.len(), axes.len());
        let mut base = 0usize;
        let mut cells = [(0usize, 0.0f64); 16];
        let mut strides = [0usize; 16];
        let mut stride = 1usize;
        for (d, axis) in axes.iter().enumerate().rev() {
            strides[d] = stride;
            stride *= axis.len();
        }
        for (d, axis) in axes.iter().enumerate() {
            match axis.locate(x[d]) {
                Some(cell) => {
                    cells[d] = cell;
                    base += cell.0 * strides[d];
                }
                None => return 0.0,
            }
        }
        let dims = axes.len();
        let mut total = 0.0;
        for corner in 0..(1usize << dims) {
            let mut weight = 1.0;
            let mut offset = 0usize;
            for d in 0..dims {
                let frac = cells[d].1;
                if corner >> d & 1 == 1 {
                    if frac == 0.0 {
                        weight = 0.0;
                        break;
                    }
                    weight *= frac;
                    offset += strides[d];
                } else {
                    weight *= 1.0 - frac;
                }
            }
            if weight != 0.0 {
                total += weight * self.samples[base + offset];
            }
        }
        total
    }

    /// Largest pointwise difference to another field on the same grid.
    pub fn max_abs_deviation(&self, other: &Self) -> WignerResult<f64> {
        ensure_same_grid(&self.grid, &other.grid)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Writes the field as CSV: `q,p,w` or `q1,p1,q2,p2,…,w`, `%.12e` values.
    pub fn write_csv(&self, mut out: impl Write) -> WignerResult<()> {
        let n = self.grid.mode_count();
        let header = if n == 1 {
            "q,p,w".to_string()
        } else {
            let mut h = String::new();
            for k in 1..=n {
                write!(h, "q{k},p{k},").unwrap();
            }
            h.push('w');
            h
        };
        writeln!(out, "{header}")?;
        let mut x = vec![0.0; 2 * n];
        let mut line = String::new();
        for (k, w) in self.samples.iter().enumerate() {
            self.grid.coordinates(k, &mut x);
            line.clear();
            for v in &x {
                line.push_str(&format_sci(*v));
                line.push(',');
            }
            line.push_str(&format_sci(*w));
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> WignerResult<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_csv(&mut out)?;
        out.flush()?;
        Ok(())
    }

    /// Reads a field written by [`WignerField::write_csv`].
    pub fn read_csv(input: impl BufRead) -> WignerResult<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| WignerError::Io("empty csv".into()))??;
        let columns = header.split(',').count();
        if columns < 3 || (columns - 1) % 2 != 0 {
            return Err(WignerError::Io(format!("unexpected csv header {header:?}")));
        }
        let axes_count = columns - 1;
        let mut coords: Vec<Vec<f64>> = vec![Vec::new(); axes_count];
        let mut samples = Vec::new();
        for line in lines {
            let line = line?;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let values: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| WignerError::Io(format!("bad csv value: {e}")))?;
            if values.len() != columns {
                return Err(WignerError::Io(format!(
                    "row has {} columns, expected {columns}",
                    values.len()
                )));
            }
            for (d, c) in coords.iter_mut().enumerate() {
                c.push(values[d]);
            }
            samples.push(values[axes_count]);
        }
        let mut axes = Vec::with_capacity(axes_count);
        for c in &coords {
            let mut uniq = c.clone();
            uniq.sort_by(f64::total_cmp);
            uniq.dedup();
            axes.push(Axis::new(uniq[0], uniq[uniq.len() - 1], uniq.len())?);
        }
        let modes = axes
            .chunks(2)
            .map(|ax| ModeGrid::new(ax[0], ax[1]))
            .collect();
        Self::new(PhaseSpaceGrid::from_modes(modes)?, samples)
    }
}

/// C-style `%.12e` formatting (`1.000000000000e+00`).
pub fn format_sci(v: f64) -> String {
    let s = format!("{v:.12e}");
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let (sign, digits) = match exp.strip_prefix('-') {
                Some(d) => ('-', d),
                None => ('+', exp),
            };
            format!("{mantissa}e{sign}{digits:0>2}")
        }
        None => s,
    }
}

pub(crate) fn sample_2d(
    grid: &PhaseSpaceGrid,
    f: impl Fn(f64, f64) -> f64 + Sync,
) -> WignerResult<Vec<f64>> {
    if grid.mode_count() != 1 {
        return Err(WignerError::InvalidArgument(format!(
            "expected a single-mode grid, got {} modes",
            grid.mode_count()
        )));
    }
    let mode = grid.mode(0);
    let (qa, pa) = (mode.q, mode.p);
    let np = pa.len();
    let mut samples = vec![0.0; mode.node_count()];
    samples
        .par_chunks_mut(np)
        .enumerate()
        .for_each(|(iq, row)| {
            let q = qa.value(iq);
            for (ip, slot) in row.iter_mut().enumerate() {
                *slot = f(q, pa.value(ip));
            }
        });
    Ok(samples)
}

pub(crate) fn ensure_same_grid(a: &PhaseSpaceGrid, b: &PhaseSpaceGrid) -> WignerResult<()> {
    if a.matches(b) {
        Ok(())
    } else {
        Err(WignerError::GridMismatch(
            "fields are sampled on different grids".into(),
        ))
    }
}

fn integrate_samples(grid: &PhaseSpaceGrid, samples: &[f64]) -> f64 {
    let axes = grid.axes();
    let mut dims: Vec<usize> = axes.iter().map(Axis::len).collect();
    let mut data = std::borrow::Cow::Borrowed(samples);
    // innermost axis first; the last reduction is a plain trapezoid
    for d in (1..axes.len()).rev() {
        data = std::borrow::Cow::Owned(reduce_axis(&data, &dims, d, axes[d].step()));
        dims.pop();
    }
    trapezoid(&data, axes[0].step())
}

/// `∫ d²ᴺx W` by the composite trapezoid rule.
pub fn integrate_full(field: &WignerField) -> f64 {
    integrate_samples(&field.grid, &field.samples)
}

/// Integrates out both quadratures of every mode in `dropped_modes`.
pub fn marginal_over(field: &WignerField, dropped_modes: &[usize]) -> WignerResult<WignerField> {
    let n = field.mode_count();
    if dropped_modes.is_empty() {
        return Err(WignerError::InvalidArgument("no modes to trace out".into()));
    }
    if let Some(&bad) = dropped_modes.iter().find(|&&m| m >= n) {
        return Err(WignerError::InvalidArgument(format!(
            "mode {bad} out of range for {n} modes"
        )));
    }
    let mut dropped: Vec<usize> = dropped_modes.to_vec();
    dropped.sort_unstable();
    dropped.dedup();
    if dropped.len() == n {
        return Err(WignerError::InvalidArgument(
            "cannot trace out every mode".into(),
        ));
    }
    let axes = field.grid.axes();
    let mut dims: Vec<usize> = axes.iter().map(Axis::len).collect();
    let mut steps: Vec<f64> = axes.iter().map(Axis::step).collect();
    let mut data = field.samples.clone();
    for &m in dropped.iter().rev() {
        for axis in [2 * m + 1, 2 * m] {
            data = reduce_axis(&data, &dims, axis, steps[axis]);
            dims.remove(axis);
            steps.remove(axis);
        }
    }
    let grid = field.grid.without_modes(&dropped)?;
    WignerField::new(grid, data)
}

/// `W(x_A, x_B) = W_A(x_A) W_B(x_B)` on the concatenated grid.
pub fn tensor_product(a: &WignerField, b: &WignerField) -> WignerResult<WignerField> {
    a.require_normalized()?;
    b.require_normalized()?;
    let grid = a.grid.product(&b.grid)?;
    let nb = b.samples.len();
    let mut samples = vec![0.0; a.samples.len() * nb];
    samples
        .par_chunks_mut(nb)
        .zip(a.samples.par_iter())
        .for_each(|(chunk, &wa)| {
            for (slot, &wb) in chunk.iter_mut().zip(&b.samples) {
                *slot = wa * wb;
            }
        });
    WignerField::new(grid, samples)
}

/// `Tr(ρ_a ρ_b) = (4π)ᴺ ∫ d²ᴺx W_a W_b`.
pub fn overlap_trace(a: &WignerField, b: &WignerField) -> WignerResult<f64> {
    ensure_same_grid(&a.grid, &b.grid)?;
    let product: Vec<f64> = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| x * y)
        .collect();
    let n = a.mode_count() as i32;
    Ok((4.0 * PI).powi(n) * integrate_samples(&a.grid, &product))
}
