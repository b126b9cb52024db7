//! Composite trapezoid quadrature with a fixed, order-stable summation.
//!
//! Every integral in the crate goes through [`pairwise_sum`] so that results
//! are bit-identical between runs regardless of how grid loops are scheduled.

const PAIRWISE_BLOCK: usize = 32;

/// Sum of a slice by recursive pairwise splitting, left half first.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().fold(0.0, |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Trapezoid weight of node `k` among `n` uniformly spaced nodes of spacing `h`.
#[inline]
pub fn trapezoid_weight(k: usize, n: usize, h: f64) -> f64 {
    if k == 0 || k + 1 == n {
        0.5 * h
    } else {
        h
    }
}

/// Composite trapezoid rule over uniformly spaced samples.
pub fn trapezoid(samples: &[f64], h: f64) -> f64 {
    let n = samples.len();
    match n {
        0 | 1 => 0.0,
        _ => {
            let interior = pairwise_sum(&samples[1..n - 1]);
            h * (interior + 0.5 * (samples[0] + samples[n - 1]))
        }
    }
}

/// Trapezoid rule applied to `f(samples)`, evaluated into a scratch buffer.
pub fn trapezoid_map(samples: &[f64], h: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mapped: Vec<f64> = samples.iter().map(|&v| f(v)).collect();
    trapezoid(&mapped, h)
}

/// Integrates a row-major array along one axis with trapezoid weights.
///
/// `dims` is the full shape; the returned array has `dims[axis]` removed.
/// Rows along the reduced axis are combined pairwise so the reduction order
/// depends only on the shape.
pub fn reduce_axis(data: &[f64], dims: &[usize], axis: usize, h: f64) -> Vec<f64> {
    let outer: usize = dims[..axis].iter().product();
    let n = dims[axis];
    let inner: usize = dims[axis + 1..].iter().product();
    debug_assert_eq!(data.len(), outer * n * inner);
    let mut out = vec![0.0; outer * inner];
    if inner == 1 {
        for (o, slot) in out.iter_mut().enumerate() {
            *slot = trapezoid(&data[o * n..(o + 1) * n], h);
        }
        return out;
    }
    for o in 0..outer {
        let block = &data[o * n * inner..(o + 1) * n * inner];
        let summed = pairwise_rows(block, inner, 0, n, n, h);
        out[o * inner..(o + 1) * inner].copy_from_slice(&summed);
    }
    out
}

fn pairwise_rows(block: &[f64], inner: usize, lo: usize, hi: usize, n: usize, h: f64) -> Vec<f64> {
    if hi - lo <= 8 {
        let mut acc = vec![0.0; inner];
        for k in lo..hi {
            let w = trapezoid_weight(k, n, h);
            let row = &block[k * inner..(k + 1) * inner];
            for (a, v) in acc.iter_mut().zip(row) {
                *a += w * v;
            }
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    let mut left = pairwise_rows(block, inner, lo, mid, n, h);
    let right = pairwise_rows(block, inner, mid, hi, n, h);
    for (a, b) in left.iter_mut().zip(&right) {
        *a += b;
    }
    left
}
