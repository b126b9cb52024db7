use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{WignerError, WignerResult};
use crate::field::WignerField;
use crate::grid::PhaseSpaceGrid;
use crate::symplectic::{omega, sym_rotate};

/// Mean vector and covariance matrix `Λ_ij = ½⟨{x_i − x̄_i, x_j − x̄_j}⟩`
/// of a Gaussian state, ħ = 2 units (vacuum `Λ = I`).
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianStateParams {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianStateParams {
    /// Checks symmetry (1e-10) and the uncertainty principle
    /// `Λ + iΩ ≥ 0` (symplectic eigenvalues ≥ 1 − 1e-8).
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> WignerResult<Self> {
        let dim = cov.nrows();
        if dim == 0 || !dim.is_multiple_of(2) || cov.ncols() != dim || mean.len() != dim {
            return Err(WignerError::InvalidCovariance(format!(
                "expected a 2N x 2N covariance and 2N mean, got {}x{} and {}",
                cov.nrows(),
                cov.ncols(),
                mean.len()
            )));
        }
        if mean.iter().chain(cov.iter()).any(|v| !v.is_finite()) {
            return Err(WignerError::InvalidCovariance("non-finite entry".into()));
        }
        if (&cov - cov.transpose()).amax() > 1e-10 {
            return Err(WignerError::InvalidCovariance(
                "covariance is not symmetric".into(),
            ));
        }
        let params = Self { mean, cov };
        let nu = params.symplectic_eigenvalues()?;
        if let Some(bad) = nu.iter().find(|&&v| v < 1.0 - 1e-8) {
            return Err(WignerError::InvalidCovariance(format!(
                "symplectic eigenvalue {bad} below 1 violates the uncertainty principle"
            )));
        }
        Ok(params)
    }

    pub fn vacuum(modes: usize) -> Self {
        Self {
            mean: DVector::zeros(2 * modes),
            cov: DMatrix::identity(2 * modes, 2 * modes),
        }
    }

    /// Single-mode thermal-squeezed-displaced state
    /// `(2n̄+1) R(θ) diag(e^{-2s}, e^{2s}) R(θ)ᵀ`, mean `(q, p)`.
    pub fn single_mode(s: f64, theta: f64, q: f64, p: f64, nbar: f64) -> WignerResult<Self> {
        if !(nbar >= 0.0) {
            return Err(WignerError::InvalidCovariance(format!(
                "thermal occupation must be >= 0, got {nbar}"
            )));
        }
        let cov = squeezed_covariance(s, theta) * (2.0 * nbar + 1.0);
        Self::new(DVector::from_vec(vec![q, p]), cov)
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn mode_count(&self) -> usize {
        self.mean.len() / 2
    }

    /// Symplectic eigenvalues, from the spectrum of `Λ^{1/2} Ωᵀ Λ Ω Λ^{1/2}`.
    pub fn symplectic_eigenvalues(&self) -> WignerResult<Vec<f64>> {
        let eig = self.cov.clone().symmetric_eigen();
        if eig.eigenvalues.iter().any(|&v| v <= 0.0) {
            return Err(WignerError::InvalidCovariance(
                "covariance is not positive definite".into(),
            ));
        }
        let sqrt = &eig.eigenvectors
            * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt))
            * eig.eigenvectors.transpose();
        let w = omega(self.mode_count());
        let m = &sqrt * w.transpose() * &self.cov * &w * &sqrt;
        let m = (&m + m.transpose()) * 0.5;
        let mut nu: Vec<f64> = m
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .map(|v| v.max(0.0).sqrt())
            .collect();
        nu.sort_by(f64::total_cmp);
        // each symplectic eigenvalue appears twice
        Ok(nu.into_iter().step_by(2).collect())
    }

    /// True when every symplectic eigenvalue equals 1 (pure state).
    pub fn is_pure(&self, tol: f64) -> bool {
        self.symplectic_eigenvalues()
            .map(|nu| nu.iter().all(|v| (v - 1.0).abs() <= tol))
            .unwrap_or(false)
    }

    /// Mean photon number `Σ (Tr Λ + |x̄|²)/4 − N/2`.
    pub fn mean_photon(&self) -> f64 {
        (self.cov.trace() + self.mean.norm_squared()) / 4.0 - self.mode_count() as f64 / 2.0
    }
}

/// Covariance of `R(θ) Ŝ(s)|0⟩`.
pub fn squeezed_covariance(s: f64, theta: f64) -> DMatrix<f64> {
    let r = sym_rotate(theta);
    let d = DMatrix::from_row_slice(2, 2, &[(-2.0 * s).exp(), 0.0, 0.0, (2.0 * s).exp()]);
    r.matrix() * d * r.matrix().transpose()
}

/// `W(x) = exp(−½(x−x̄)ᵀΛ⁻¹(x−x̄)) / ((2π)ᴺ √det Λ)`.
pub fn gaussian_wigner(
    params: &GaussianStateParams,
    grid: &PhaseSpaceGrid,
) -> WignerResult<WignerField> {
    let n = params.mode_count();
    if grid.mode_count() != n {
        return Err(WignerError::GridMismatch(format!(
            "{n}-mode Gaussian on a {}-mode grid",
            grid.mode_count()
        )));
    }
    let det = params.cov.determinant();
    let inv = params
        .cov
        .clone()
        .try_inverse()
        .filter(|_| det > 0.0)
        .ok_or_else(|| WignerError::InvalidCovariance("singular covariance".into()))?;
    let norm = 1.0 / ((2.0 * PI).powi(n as i32) * det.sqrt());
    let dim = 2 * n;
    let inv: Vec<f64> = (0..dim * dim).map(|k| inv[(k / dim, k % dim)]).collect();
    let mean: Vec<f64> = params.mean.iter().copied().collect();
    if n == 1 {
        let (a, b, c) = (inv[0], inv[1], inv[3]);
        let (mq, mp) = (mean[0], mean[1]);
        return WignerField::from_fn_2d(grid, |q, p| {
            let (dq, dp) = (q - mq, p - mp);
            norm * (-0.5 * (a * dq * dq + 2.0 * b * dq * dp + c * dp * dp)).exp()
        });
    }
    WignerField::from_fn(grid, |x| {
        let mut quad = 0.0;
        for i in 0..dim {
            let di = x[i] - mean[i];
            for j in 0..dim {
                quad += di * inv[i * dim + j] * (x[j] - mean[j]);
            }
        }
        norm * (-0.5 * quad).exp()
    })
}
