//! Uniform sampling lattices over the quadratures of one or more modes.
//!
//! Units follow the ħ = 2 convention: `[q, p] = 2i` and the vacuum has
//! `⟨q²⟩ = ⟨p²⟩ = 1`.

use crate::error::{WignerError, WignerResult};

/// Default single-mode extent, `[-16, 16]` on both quadratures.
pub const DEFAULT_EXTENT: f64 = 16.0;
/// Default number of nodes per axis.
pub const DEFAULT_POINTS: usize = 1025;

/// One uniformly sampled coordinate axis, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    min: f64,
    max: f64,
    n: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, n: usize) -> WignerResult<Self> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(WignerError::InvalidGrid(format!(
                "non-finite bounds [{min}, {max}]"
            )));
        }
        if min >= max {
            return Err(WignerError::InvalidGrid(format!(
                "bounds not increasing: [{min}, {max}]"
            )));
        }
        if n < 3 {
            return Err(WignerError::InvalidGrid(format!(
                "need at least 3 nodes per axis, got {n}"
            )));
        }
        Ok(Self { min, max, n })
    }

    /// Axis with spacing `step` covering at least `[min, max]`.
    pub fn with_step(min: f64, max: f64, step: f64) -> WignerResult<Self> {
        if !(step > 0.0) {
            return Err(WignerError::InvalidGrid(format!(
                "step must be positive, got {step}"
            )));
        }
        let cells = ((max - min) / step).ceil().max(2.0) as usize;
        Self::new(min, min + cells as f64 * step, cells + 1)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    #[inline]
    pub fn value(&self, k: usize) -> f64 {
        self.min + k as f64 * self.step()
    }

    pub fn values(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n).map(|k| self.min + k as f64 * h).collect()
    }

    /// Cell index and fractional offset for linear interpolation; `None` outside.
    #[inline]
    pub fn locate(&self, x: f64) -> Option<(usize, f64)> {
        let h = self.step();
        let mut t = (x - self.min) / h;
        // snap points that sit on a node up to rounding
        if (t - t.round()).abs() < 1e-9 {
            t = t.round();
        }
        if !(t >= 0.0) || t > (self.n - 1) as f64 {
            return None;
        }
        let k = (t.floor() as usize).min(self.n - 2);
        Some((k, t - k as f64))
    }

    /// Same node positions up to a relative tolerance.
    pub fn matches(&self, other: &Axis) -> bool {
        let scale = self.max.abs().max(self.min.abs()).max(1.0);
        self.n == other.n
            && (self.min - other.min).abs() <= 1e-12 * scale
            && (self.max - other.max).abs() <= 1e-12 * scale
    }
}

/// The `(q, p)` lattice of one mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeGrid {
    pub q: Axis,
    pub p: Axis,
}

impl ModeGrid {
    pub fn new(q: Axis, p: Axis) -> Self {
        Self { q, p }
    }

    pub fn node_count(&self) -> usize {
        self.q.len() * self.p.len()
    }

    pub fn matches(&self, other: &ModeGrid) -> bool {
        self.q.matches(&other.q) && self.p.matches(&other.p)
    }
}

/// Product lattice over all modes; axes ordered `(q₁, p₁, q₂, p₂, …)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSpaceGrid {
    modes: Vec<ModeGrid>,
}

impl PhaseSpaceGrid {
    pub fn from_modes(modes: Vec<ModeGrid>) -> WignerResult<Self> {
        if modes.is_empty() {
            return Err(WignerError::InvalidGrid(
                "a grid needs at least one mode".into(),
            ));
        }
        let grid = Self { modes };
        grid.checked_node_count()?;
        Ok(grid)
    }

    pub fn single(mode: ModeGrid) -> Self {
        Self { modes: vec![mode] }
    }

    /// The `[-16, 16]²`, 1025-point single-mode default lattice.
    pub fn default_single() -> Self {
        build_grid(
            -DEFAULT_EXTENT,
            DEFAULT_EXTENT,
            DEFAULT_POINTS,
            -DEFAULT_EXTENT,
            DEFAULT_EXTENT,
            DEFAULT_POINTS,
            1,
        )
        .expect("default grid is valid")
    }

    /// Symmetric square single-mode lattice `[-extent, extent]²`.
    pub fn square(extent: f64, n: usize) -> WignerResult<Self> {
        build_grid(-extent, extent, n, -extent, extent, n, 1)
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[ModeGrid] {
        &self.modes
    }

    pub fn mode(&self, k: usize) -> &ModeGrid {
        &self.modes[k]
    }

    /// Axes in storage order.
    pub fn axes(&self) -> Vec<Axis> {
        self.modes.iter().flat_map(|m| [m.q, m.p]).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.axes().iter().map(Axis::len).collect()
    }

    pub fn node_count(&self) -> usize {
        self.modes.iter().map(ModeGrid::node_count).product()
    }

    fn checked_node_count(&self) -> WignerResult<usize> {
        self.modes
            .iter()
            .try_fold(1usize, |acc, m| acc.checked_mul(m.node_count()))
            .ok_or_else(|| WignerError::InvalidGrid("node count overflows".into()))
    }

    /// Grid of the modes not listed in `dropped`.
    pub fn without_modes(&self, dropped: &[usize]) -> WignerResult<Self> {
        let kept: Vec<ModeGrid> = self
            .modes
            .iter()
            .enumerate()
            .filter(|(k, _)| !dropped.contains(k))
            .map(|(_, m)| *m)
            .collect();
        Self::from_modes(kept)
    }

    /// Concatenation `self ⊗ other`.
    pub fn product(&self, other: &Self) -> WignerResult<Self> {
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        Self::from_modes(modes)
    }

    pub fn matches(&self, other: &Self) -> bool {
        self.modes.len() == other.modes.len()
            && self
                .modes
                .iter()
                .zip(&other.modes)
                .all(|(a, b)| a.matches(b))
    }

    /// Coordinates of a flat node index, in axis order.
    pub fn coordinates(&self, mut index: usize, out: &mut [f64]) {
        let axes = self.axes();
        for (slot, axis) in out.iter_mut().zip(axes.iter()).rev() {
            let k = index % axis.len();
            index /= axis.len();
            *slot = axis.value(k);
        }
    }
}

/// Builds an `modes`-mode grid with identical per-mode lattices.
pub fn build_grid(
    q_min: f64,
    q_max: f64,
    n_q: usize,
    p_min: f64,
    p_max: f64,
    n_p: usize,
    modes: usize,
) -> WignerResult<PhaseSpaceGrid> {
    if modes == 0 {
        return Err(WignerError::InvalidGrid(
            "mode count must be at least 1".into(),
        ));
    }
    let mode = ModeGrid::new(Axis::new(q_min, q_max, n_q)?, Axis::new(p_min, p_max, n_p)?);
    PhaseSpaceGrid::from_modes(vec![mode; modes])
}
