//! Postselection windows over a sampled homodyne record. Density and the
//! per-outcome figure of merit are both treated as piecewise linear in `p_v`,
//! so window integrals are exact for that model and window edges may fall
//! between samples.

use crate::error::{WignerError, WignerResult};

/// Tolerance on `P_suc` when a requested mass exceeds the sampled total.
pub const MASS_TOL: f64 = 1e-2;

/// Accepted outcome range `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

/// Integrals of a piecewise-linear density `d(x)` and of `d(x)·v(x)`.
#[derive(Clone, Debug)]
pub struct PiecewiseLinear<'a> {
    xs: &'a [f64],
    density: &'a [f64],
    value: &'a [f64],
}

impl<'a> PiecewiseLinear<'a> {
    pub fn new(xs: &'a [f64], density: &'a [f64], value: &'a [f64]) -> WignerResult<Self> {
        if xs.len() < 2 || density.len() != xs.len() || value.len() != xs.len() {
            return Err(WignerError::Window(
                "need at least two samples of equal length".into(),
            ));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(WignerError::Window(
                "outcome samples must be strictly increasing".into(),
            ));
        }
        Ok(Self { xs, density, value })
    }

    pub fn range(&self) -> Window {
        Window {
            lo: self.xs[0],
            hi: self.xs[self.xs.len() - 1],
        }
    }

    fn segment(&self, x: f64) -> usize {
        match self.xs.partition_point(|&v| v <= x) {
            0 => 0,
            k => (k - 1).min(self.xs.len() - 2),
        }
    }

    fn interp(&self, ys: &[f64], x: f64) -> f64 {
        let i = self.segment(x);
        let f = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        ys[i] + f * (ys[i + 1] - ys[i])
    }

    /// `(∫ d, ∫ d·v)` over `[a, b]`, clipped to the sampled range.
    pub fn integrals(&self, a: f64, b: f64) -> (f64, f64) {
        let r = self.range();
        let (a, b) = (a.max(r.lo), b.min(r.hi));
        if !(b > a) {
            return (0.0, 0.0);
        }
        let (first, last) = (self.segment(a), self.segment(b));
        let (mut mass, mut weighted) = (0.0, 0.0);
        for i in first..=last {
            let x0 = a.max(self.xs[i]);
            let x1 = b.min(self.xs[i + 1]);
            if x1 <= x0 {
                continue;
            }
            let (d0, d1) = (self.interp(self.density, x0), self.interp(self.density, x1));
            let (v0, v1) = (self.interp(self.value, x0), self.interp(self.value, x1));
            let h = x1 - x0;
            mass += h * (d0 + d1) / 2.0;
            weighted += h * (2.0 * d0 * v0 + d0 * v1 + d1 * v0 + 2.0 * d1 * v1) / 6.0;
        }
        (mass, weighted)
    }

    pub fn total_mass(&self) -> f64 {
        let r = self.range();
        self.integrals(r.lo, r.hi).0
    }

    /// Point `b ≥ a` with `∫_a^b d = mass`, if inside the range.
    fn solve_right(&self, a: f64, mass: f64) -> Option<f64> {
        let hi = self.range().hi;
        if self.integrals(a, hi).0 < mass {
            return None;
        }
        Some(bisect(a, hi, |b| self.integrals(a, b).0 - mass))
    }

    /// Point `a ≤ b` with `∫_a^b d = mass`, if inside the range.
    fn solve_left(&self, b: f64, mass: f64) -> Option<f64> {
        let lo = self.range().lo;
        if self.integrals(lo, b).0 < mass {
            return None;
        }
        Some(bisect(lo, b, |a| mass - self.integrals(a, b).0))
    }
}

/// Root of a nondecreasing `f` on `[lo, hi]` with `f(lo) ≤ 0 ≤ f(hi)`.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Contiguous window of mass `target_p_suc` maximizing `∫d·v / ∫d`.
///
/// Candidates anchor one edge at a sample and solve for the other edge, so
/// the returned window matches the target mass exactly. A target at or above
/// the sampled mass (within [`MASS_TOL`]) selects the full range.
pub fn select_window(
    xs: &[f64],
    density: &[f64],
    value: &[f64],
    target_p_suc: f64,
) -> WignerResult<Window> {
    if !(target_p_suc > 0.0 && target_p_suc <= 1.0) {
        return Err(WignerError::Window(format!(
            "target success probability {target_p_suc} outside (0, 1]"
        )));
    }
    let model = PiecewiseLinear::new(xs, density, value)?;
    let total = model.total_mass();
    if target_p_suc > total + MASS_TOL {
        return Err(WignerError::Window(format!(
            "target success probability {target_p_suc} exceeds the sampled mass {total}"
        )));
    }
    if target_p_suc >= total {
        return Ok(model.range());
    }
    let score = |w: Window| {
        let (m, mv) = model.integrals(w.lo, w.hi);
        if m > 0.0 {
            mv / m
        } else {
            f64::NEG_INFINITY
        }
    };
    let mut best: Option<(f64, Window)> = None;
    for &x in xs {
        let candidates = [
            model
                .solve_right(x, target_p_suc)
                .map(|hi| Window { lo: x, hi }),
            model
                .solve_left(x, target_p_suc)
                .map(|lo| Window { lo, hi: x }),
        ];
        for w in candidates.into_iter().flatten() {
            let s = score(w);
            if best.is_none_or(|(b, _)| s > b) {
                best = Some((s, w));
            }
        }
    }
    best.map(|(_, w)| w)
        .ok_or_else(|| WignerError::Window("no window reaches the target mass".into()))
}
