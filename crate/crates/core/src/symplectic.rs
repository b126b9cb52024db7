//! Gaussian unitaries as affine symplectic maps `x ↦ S x + d`, and their
//! action on sampled Wigner functions, `W'(x) = W(S⁻¹(x − d))`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{WignerError, WignerResult};
use crate::field::{WignerField, DEFAULT_TOL_NORM};

/// Tolerance on `‖SΩSᵀ − Ω‖_max` and `||det S| − 1|`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// Affine symplectic map acting on `(q₁, p₁, …, q_N, p_N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticOp {
    s: DMatrix<f64>,
    d: DVector<f64>,
}

/// Symplectic form `Ω = ⊕ [[0, 1], [-1, 0]]`.
pub fn omega(modes: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    w
}

impl SymplecticOp {
    /// Validates `SΩSᵀ = Ω` and `|det S| = 1` before wrapping.
    pub fn new(s: DMatrix<f64>, d: DVector<f64>) -> WignerResult<Self> {
        let dim = s.nrows();
        if dim == 0 || !dim.is_multiple_of(2) || s.ncols() != dim || d.len() != dim {
            return Err(WignerError::InvalidArgument(format!(
                "symplectic map needs a square even-dimensional matrix, got {}x{} with shift of length {}",
                s.nrows(),
                s.ncols(),
                d.len()
            )));
        }
        let op = Self { s, d };
        let residual = op.symplectic_residual();
        if residual > SYMPLECTIC_TOL * op.s.amax().max(1.0).powi(2) {
            return Err(WignerError::InvalidArgument(format!(
                "matrix is not symplectic (residual {residual:e})"
            )));
        }
        Ok(op)
    }

    fn from_parts(s: DMatrix<f64>, d: DVector<f64>) -> Self {
        Self { s, d }
    }

    pub fn identity(modes: usize) -> Self {
        Self::from_parts(
            DMatrix::identity(2 * modes, 2 * modes),
            DVector::zeros(2 * modes),
        )
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.s
    }

    pub fn shift(&self) -> &DVector<f64> {
        &self.d
    }

    pub fn mode_count(&self) -> usize {
        self.s.nrows() / 2
    }

    /// `‖SΩSᵀ − Ω‖_max`.
    pub fn symplectic_residual(&self) -> f64 {
        let w = omega(self.mode_count());
        (&self.s * &w * self.s.transpose() - w).amax()
    }

    pub fn determinant(&self) -> f64 {
        self.s.determinant()
    }

    /// `U⁻¹`: `(S⁻¹, −S⁻¹ d)`, using `S⁻¹ = -Ω Sᵀ Ω`.
    pub fn inverse(&self) -> Self {
        let w = omega(self.mode_count());
        let s_inv = -(&w * self.s.transpose() * &w);
        let d = -(&s_inv * &self.d);
        Self::from_parts(s_inv, d)
    }

    /// Lifts a map on `self.mode_count()` consecutive modes starting at
    /// `first_mode` into a `total_modes`-mode map acting trivially elsewhere.
    pub fn embed(&self, first_mode: usize, total_modes: usize) -> WignerResult<Self> {
        let k = self.mode_count();
        if first_mode + k > total_modes {
            return Err(WignerError::InvalidArgument(format!(
                "cannot place a {k}-mode map at mode {first_mode} of {total_modes}"
            )));
        }
        let mut s = DMatrix::identity(2 * total_modes, 2 * total_modes);
        let mut d = DVector::zeros(2 * total_modes);
        let o = 2 * first_mode;
        s.view_mut((o, o), (2 * k, 2 * k)).copy_from(&self.s);
        d.rows_mut(o, 2 * k).copy_from(&self.d);
        Ok(Self::from_parts(s, d))
    }

    /// Covariance and mean of a Gaussian state after the map.
    pub fn transform_moments(
        &self,
        mean: &DVector<f64>,
        cov: &DMatrix<f64>,
    ) -> (DVector<f64>, DMatrix<f64>) {
        (&self.s * mean + &self.d, &self.s * cov * self.s.transpose())
    }

    fn is_identity(&self) -> bool {
        self.d.iter().all(|&v| v == 0.0)
            && self.s.iter().enumerate().all(|(k, &v)| {
                v == if k % (self.s.nrows() + 1) == 0 {
                    1.0
                } else {
                    0.0
                }
            })
    }
}

/// Single-mode squeezer `Ŝ(s) = exp(s(â² − â†²)/2)`: `S = diag(e^{-s}, e^{s})`.
pub fn sym_squeeze(s: f64) -> SymplecticOp {
    SymplecticOp::from_parts(
        DMatrix::from_row_slice(2, 2, &[(-s).exp(), 0.0, 0.0, s.exp()]),
        DVector::zeros(2),
    )
}

/// Phase rotation `R̂(θ) = exp(−iθ n̂)`, under which `â → â e^{−iθ}`.
pub fn sym_rotate(theta: f64) -> SymplecticOp {
    let (s, c) = theta.sin_cos();
    SymplecticOp::from_parts(
        DMatrix::from_row_slice(2, 2, &[c, s, -s, c]),
        DVector::zeros(2),
    )
}

/// Phase-space displacement by `(dq, dp)`.
pub fn sym_displace(dq: f64, dp: f64) -> SymplecticOp {
    SymplecticOp::from_parts(DMatrix::identity(2, 2), DVector::from_vec(vec![dq, dp]))
}

/// Beam splitter of transmittance `t` on `(q, p, q_v, p_v)`:
/// `q' = √t q + √(1−t) q_v`, `q_v' = √t q_v − √(1−t) q`, same for `p`.
pub fn sym_beamsplitter(t: f64) -> WignerResult<SymplecticOp> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(WignerError::InvalidArgument(format!(
            "transmittance must lie in (0, 1], got {t}"
        )));
    }
    let a = t.sqrt();
    let b = (1.0 - t).sqrt();
    #[rustfmt::skip]
    let s = DMatrix::from_row_slice(4, 4, &[
         a, 0.0,   b, 0.0,
       0.0,   a, 0.0,   b,
        -b, 0.0,   a, 0.0,
       0.0,  -b, 0.0,   a,
    ]);
    Ok(SymplecticOp::from_parts(s, DVector::zeros(4)))
}

/// `f ∘ g`: applies `g` first, then `f`.
pub fn compose(f: &SymplecticOp, g: &SymplecticOp) -> WignerResult<SymplecticOp> {
    if f.mode_count() != g.mode_count() {
        return Err(WignerError::InvalidArgument(format!(
            "cannot compose a {}-mode map with a {}-mode map",
            f.mode_count(),
            g.mode_count()
        )));
    }
    Ok(SymplecticOp::from_parts(&f.s * &g.s, &f.s * &g.d + &f.d))
}

/// Resamples `field` at `S⁻¹(x − d)` with multilinear interpolation.
///
/// Points mapped outside the grid read as zero; a change of the integral
/// beyond `10·tol_norm` is reported as [`WignerError::OutOfDomain`].
pub fn apply_symplectic(field: &WignerField, op: &SymplecticOp) -> WignerResult<WignerField> {
    let grid = field.grid();
    if op.mode_count() != grid.mode_count() {
        return Err(WignerError::InvalidArgument(format!(
            "{}-mode map applied to a {}-mode field",
            op.mode_count(),
            grid.mode_count()
        )));
    }
    if op.is_identity() {
        return Ok(field.clone());
    }
    let inv = op.inverse();
    let dim = 2 * grid.mode_count();
    let s_inv: Vec<f64> = (0..dim * dim).map(|k| inv.s[(k / dim, k % dim)]).collect();
    let shift: Vec<f64> = inv.d.iter().copied().collect();
    let samples: Vec<f64> = (0..grid.node_count())
        .into_par_iter()
        .map_init(
            || (vec![0.0; dim], vec![0.0; dim]),
            |(x, y), k| {
                grid.coordinates(k, x);
                for i in 0..dim {
                    let row = &s_inv[i * dim..(i + 1) * dim];
                    y[i] = shift[i] + row.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<f64>();
                }
                field.sample_at(y)
            },
        )
        .collect();
    let out = WignerField::new(grid.clone(), samples)?;
    if (out.integral() - field.integral()).abs() > 10.0 * DEFAULT_TOL_NORM {
        return Err(WignerError::OutOfDomain {
            integral: out.integral(),
        });
    }
    Ok(out)
}

/// Random Gaussian unitary on `modes` modes: per-mode rotation, squeeze
/// (`|s| ≤ max_squeeze`), rotation and displacement (`|d| ≤ max_shift`),
/// followed by a random beam splitter between neighbouring modes.
pub fn random_gaussian_unitary(
    rng: &mut impl Rng,
    modes: usize,
    max_squeeze: f64,
    max_shift: f64,
) -> SymplecticOp {
    let mut op = SymplecticOp::identity(modes);
    let then = |op: &SymplecticOp, g: SymplecticOp| compose(&g, op).expect("mode counts agree");
    for k in 0..modes {
        let local = [
            sym_rotate(rng.gen_range(0.0..2.0 * PI)),
            sym_squeeze(rng.gen_range(-max_squeeze..=max_squeeze)),
            sym_rotate(rng.gen_range(0.0..2.0 * PI)),
            sym_displace(
                rng.gen_range(-max_shift..=max_shift),
                rng.gen_range(-max_shift..=max_shift),
            ),
        ];
        for g in local {
            op = then(&op, g.embed(k, modes).expect("mode in range"));
        }
    }
    for k in 1..modes {
        let bs = sym_beamsplitter(rng.gen_range(0.05..1.0)).expect("transmittance in range");
        op = then(&op, bs.embed(k - 1, modes).expect("modes in range"));
    }
    op
}
