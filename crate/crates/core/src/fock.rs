//! Truncated Fock-basis density matrices and their Wigner functions, an
//! independent route used to cross-check the closed-form generators.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{WignerError, WignerResult};
use crate::field::WignerField;
use crate::grid::PhaseSpaceGrid;
use crate::special::ln_factorial;
use crate::states::{GaussianStateParams, PhotonOp, ResourceStateSpec};

/// Largest population allowed beyond the cutoff.
pub const TRUNCATION_TOL: f64 = 1e-8;

/// Density matrix `ρ_{mn} = ⟨m|ρ|n⟩` on `{|0⟩, …, |D−1⟩}`.
#[derive(Clone, Debug)]
pub struct FockDensity {
    matrix: DMatrix<C64>,
}

impl FockDensity {
    /// Validates Hermiticity (1e-12), unit trace (1e-6) and positivity (−1e-8).
    pub fn new(matrix: DMatrix<C64>) -> WignerResult<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(WignerError::InvalidArgument(
                "density matrix must be square and nonempty".into(),
            ));
        }
        let herm = (&matrix - matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > 1e-12 {
            return Err(WignerError::InvalidArgument(format!(
                "density matrix is not Hermitian ({herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > 1e-6 || tr.im.abs() > 1e-12 {
            return Err(WignerError::InvalidArgument(format!(
                "density matrix trace {tr} != 1"
            )));
        }
        let min_eig = matrix.clone().symmetric_eigen().eigenvalues.min();
        if min_eig < -1e-8 {
            return Err(WignerError::InvalidArgument(format!(
                "density matrix has eigenvalue {min_eig:e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// `|ψ⟩⟨ψ|` for a normalized amplitude vector.
    pub fn pure(amplitudes: &DVector<C64>) -> WignerResult<Self> {
        let norm = amplitudes.norm_squared();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(WignerError::InvalidArgument(format!(
                "state vector has norm² {norm}"
            )));
        }
        // rank one and Hermitian by construction
        Ok(Self {
            matrix: amplitudes * amplitudes.adjoint(),
        })
    }

    pub fn cutoff(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn population(&self, n: usize) -> f64 {
        self.matrix[(n, n)].re
    }
}

/// Density matrix of `spec` truncated at `cutoff` levels. Cubic phase states
/// are not supported.
pub fn fock_density(spec: &ResourceStateSpec, cutoff: usize) -> WignerResult<FockDensity> {
    spec.validate()?;
    if cutoff == 0 {
        return Err(WignerError::InvalidArgument(
            "cutoff must be positive".into(),
        ));
    }
    let zero = C64::new(0.0, 0.0);
    let check_tail = |kept: f64| {
        let tail = 1.0 - kept;
        if tail > TRUNCATION_TOL {
            Err(WignerError::Truncation { cutoff, tail })
        } else {
            Ok(())
        }
    };
    match *spec {
        ResourceStateSpec::Number { n } => {
            if n >= cutoff {
                return Err(WignerError::Truncation { cutoff, tail: 1.0 });
            }
            let mut v = DVector::from_element(cutoff, zero);
            v[n] = C64::new(1.0, 0.0);
            FockDensity::pure(&v)
        }
        ResourceStateSpec::On { n, a } => {
            if n >= cutoff {
                return Err(WignerError::Truncation {
                    cutoff,
                    tail: a.norm_sqr() / (1.0 + a.norm_sqr()),
                });
            }
            let norm = (1.0 + a.norm_sqr()).sqrt();
            let mut v = DVector::from_element(cutoff, zero);
            v[0] = C64::new(1.0 / norm, 0.0);
            v[n] = a / norm;
            FockDensity::pure(&v)
        }
        ResourceStateSpec::PhotonMod { op, s, theta } => {
            let sq = squeezed_vacuum_amplitudes(s, theta, cutoff + 1);
            let mean_n = s.sinh().powi(2);
            let mut v = DVector::from_element(cutoff, zero);
            match op {
                PhotonOp::Add => {
                    let norm = (mean_n + 1.0).sqrt();
                    for k in 1..cutoff {
                        v[k] = sq[k - 1] * ((k as f64).sqrt() / norm);
                    }
                }
                PhotonOp::Subtract => {
                    let norm = mean_n.sqrt();
                    for k in 0..cutoff {
                        v[k] = sq[k + 1] * (((k + 1) as f64).sqrt() / norm);
                    }
                }
            }
            let kept = v.norm_squared();
            check_tail(kept)?;
            FockDensity::pure(&(&v / C64::new(kept.sqrt(), 0.0)))
        }
        ResourceStateSpec::Gaussian(ref g) => gaussian_density(g, cutoff),
        ResourceStateSpec::CubicPhase { .. } | ResourceStateSpec::IdealCubic { .. } => {
            Err(WignerError::Unsupported(
                "cubic phase states have no practical Fock expansion; use the wavefunction route"
                    .into(),
            ))
        }
    }
}

/// `⟨n|R̂(θ)Ŝ(s)|0⟩`: `c_{2k} = (−tanh s)^k √((2k)!)/(2^k k!)/√cosh s`, times `e^{−iθn}`.
fn squeezed_vacuum_amplitudes(s: f64, theta: f64, len: usize) -> Vec<C64> {
    let t = s.tanh();
    let base = -0.5 * s.cosh().ln();
    (0..len)
        .map(|n| {
            if n % 2 == 1 {
                return C64::new(0.0, 0.0);
            }
            let k = n / 2;
            let mag = if k == 0 {
                base.exp()
            } else if t == 0.0 {
                0.0
            } else {
                (base + k as f64 * t.abs().ln() + 0.5 * ln_factorial(n)
                    - k as f64 * 2f64.ln()
                    - ln_factorial(k))
                .exp()
            };
            // drop amplitudes far below anything observable
            let mag = if mag < 1e-150 { 0.0 } else { mag };
            let sign = if t < 0.0 || k % 2 == 0 { 1.0 } else { -1.0 };
            C64::from_polar(sign * mag, -theta * n as f64)
        })
        .collect()
}

/// `D̂(α) R̂(θ) Ŝ(s) ρ_th Ŝ† R̂† D̂†` by matrix exponentials in an enlarged space.
fn gaussian_density(g: &GaussianStateParams, cutoff: usize) -> WignerResult<FockDensity> {
    if g.mode_count() != 1 {
        return Err(WignerError::Unsupported(
            "Fock oracle handles single-mode Gaussians".into(),
        ));
    }
    let cov = g.covariance();
    // Λ = ν R diag(e^{−2s}, e^{2s}) Rᵀ
    let nu = cov.determinant().sqrt();
    let eig = cov.clone().symmetric_eigen();
    let (lo_idx, hi_idx) = if eig.eigenvalues[0] <= eig.eigenvalues[1] {
        (0, 1)
    } else {
        (1, 0)
    };
    let s = 0.25 * (eig.eigenvalues[hi_idx] / eig.eigenvalues[lo_idx]).ln();
    // q-contracted direction is the eigenvector of the smaller eigenvalue
    let dir = eig.eigenvectors.column(lo_idx);
    // R(θ) maps (1, 0) to (cos θ, −sin θ)
    let theta = (-dir[1]).atan2(dir[0]);
    let nbar = (nu - 1.0) / 2.0;
    let mean = g.mean();
    let alpha = C64::new(mean[0] / 2.0, mean[1] / 2.0);

    let dim = 2 * cutoff + 40;
    let mut a = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for k in 1..dim {
        a[(k - 1, k)] = C64::new((k as f64).sqrt(), 0.0);
    }
    let ad = a.adjoint();
    let num = &ad * &a;
    let squeeze = ((&a * &a - &ad * &ad) * C64::new(s / 2.0, 0.0)).exp();
    let rotate = (&num * C64::new(0.0, -theta)).exp();
    let displace = (&ad * alpha - &a * alpha.conj()).exp();
    let u = displace * rotate * squeeze;
    let thermal = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j && nbar > 0.0 {
            C64::new(
                (i as f64 * (nbar / (nbar + 1.0)).ln()).exp() / (nbar + 1.0),
                0.0,
            )
        } else if i == j && i == 0 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let rho = &u * thermal * u.adjoint();
    let kept = rho.view((0, 0), (cutoff, cutoff)).into_owned();
    let tr = kept.trace().re;
    if 1.0 - tr > TRUNCATION_TOL {
        return Err(WignerError::Truncation {
            cutoff,
            tail: 1.0 - tr,
        });
    }
    let herm = (&kept + kept.adjoint()) * C64::new(0.5 / tr, 0.0);
    FockDensity::new(herm)
}

/// `W = Σ ρ_{mn} W_{|m⟩⟨n|}` with
/// `W_{|m⟩⟨m+k|} = (1/2π)(−1)^m √(m!/(m+k)!) (q+ip)^k L_m^{(k)}(q²+p²) e^{−(q²+p²)/2}`.
pub fn wigner_from_fock(rho: &FockDensity, grid: &PhaseSpaceGrid) -> WignerResult<WignerField> {
    let d = rho.cutoff();
    // diagonals ρ_{m,m+k}, stored per k
    let diags: Vec<Vec<C64>> = (0..d)
        .map(|k| (0..d - k).map(|m| rho.matrix[(m, m + k)]).collect())
        .collect();
    let active: Vec<bool> = diags
        .iter()
        .map(|diag| diag.iter().any(|z| z.norm() > 0.0))
        .collect();
    let ln_fact: Vec<f64> = (0..d).map(ln_factorial).collect();
    // recurrence coefficients per (k, m): √(m(m+k)) and 1/√((m+1)(m+1+k))
    let coeffs: Vec<Vec<(f64, f64)>> = (0..d)
        .map(|k| {
            (0..d - k)
                .map(|m| {
                    let (mf, kf) = (m as f64, k as f64);
                    (
                        (mf * (mf + kf)).sqrt(),
                        1.0 / ((mf + 1.0) * (mf + 1.0 + kf)).sqrt(),
                    )
                })
                .collect()
        })
        .collect();
    WignerField::from_fn_2d(grid, |q, p| {
        let x = q * q + p * p;
        let r = x.sqrt();
        let phase = C64::new(q, p) / if r > 0.0 { r } else { 1.0 };
        let mut total = 0.0;
        let mut rot = C64::new(1.0, 0.0);
        for (k, diag) in diags.iter().enumerate() {
            if k > 0 {
                rot *= phase;
            }
            let g0 = if k == 0 {
                (-x / 2.0).exp()
            } else if r == 0.0 {
                0.0
            } else {
                (k as f64 * r.ln() - x / 2.0 - 0.5 * ln_fact[k]).exp()
            };
            if !active[k] || (g0 == 0.0 && k > 0) {
                continue;
            }
            let kf = k as f64;
            let (mut prev, mut cur) = (0.0, g0);
            let mut acc = C64::new(0.0, 0.0);
            for (m, (&coef, &(b, inv))) in diag.iter().zip(&coeffs[k]).enumerate() {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                acc += coef * (sign * cur);
                let next = ((2.0 * m as f64 + 1.0 + kf - x) * cur - b * prev) * inv;
                prev = cur;
                cur = next;
            }
            let term = (acc * rot).re;
            total += if k == 0 { term } else { 2.0 * term };
        }
        total / (2.0 * PI)
    })
}
