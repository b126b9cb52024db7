//! Resource-state generators and the `family:key=value,...` spec grammar.

pub mod cubic;
pub mod gaussian;
pub mod number;
pub mod photon_mod;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{WignerError, WignerResult};
use crate::field::{sample_2d, WignerField};
use crate::grid::{Axis, ModeGrid, PhaseSpaceGrid};

pub use cubic::{
    cubic_grid, cubic_phase_wigner, cubic_phase_wigner_with, ideal_cubic_wigner, CubicQuadrature,
};
pub use gaussian::{gaussian_wigner, squeezed_covariance, GaussianStateParams};
pub use number::{number_state_wigner, on_state_wigner};
pub use photon_mod::{photon_mod_wigner, PhotonOp};

/// Grid spacing used for automatically sized grids of squeezed and cubic states.
pub const AUTO_STEP: f64 = 1.0 / 32.0;

/// Grid spacing for automatically sized cubic phase grids.
pub const CUBIC_STEP: f64 = 0.04;

/// Grammar accepted by [`ResourceStateSpec::from_str`].
pub const SPEC_GRAMMAR: &str = "\
number:n=<int>=0..
on:N=<int>=1..,are=<real>,aim=<real>
cubic:gamma=<real>,P=<real>,s=<real>=0..
idealcubic:gamma=<real>!=0,P=<real>
pmod:sign=<+1|-1>,s=<real>,theta=<real>
gauss:s=<real>,theta=<real>,q=<real>,p=<real>,nbar=<real>=0..
(omitted keys default to 0, except N=1 and sign=+1)";

/// One of the supported resource states.
#[derive(Clone, Debug, PartialEq)]
pub enum ResourceStateSpec {
    Number {
        n: usize,
    },
    On {
        n: usize,
        a: C64,
    },
    CubicPhase {
        gamma: f64,
        p: f64,
        s: f64,
    },
    /// Infinitely squeezed limit; has no normalizable Wigner function.
    IdealCubic {
        gamma: f64,
        p: f64,
    },
    PhotonMod {
        op: PhotonOp,
        s: f64,
        theta: f64,
    },
    Gaussian(GaussianStateParams),
}

impl ResourceStateSpec {
    /// Checks the variant's parameter constraints.
    pub fn validate(&self) -> WignerResult<()> {
        let finite = |vals: &[f64]| vals.iter().all(|v| v.is_finite());
        match *self {
            Self::Number { .. } => Ok(()),
            Self::On { n, a } => {
                if n == 0 {
                    Err(WignerError::InvalidArgument("ON state needs N >= 1".into()))
                } else if !finite(&[a.re, a.im]) {
                    Err(WignerError::InvalidArgument(
                        "ON amplitude must be finite".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            Self::CubicPhase { gamma, p, s } => {
                if !finite(&[gamma, p, s]) || s < 0.0 {
                    Err(WignerError::InvalidArgument(format!(
                        "cubic phase needs finite gamma, P and s >= 0, got s={s}"
                    )))
                } else {
                    Ok(())
                }
            }
            Self::IdealCubic { gamma, p } => {
                if !finite(&[gamma, p]) || gamma == 0.0 {
                    Err(WignerError::InvalidArgument(
                        "ideal cubic phase state needs finite gamma != 0".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            Self::PhotonMod { op, s, theta } => {
                if !finite(&[s, theta]) {
                    Err(WignerError::InvalidArgument(
                        "squeezing and angle must be finite".into(),
                    ))
                } else if op == PhotonOp::Subtract && s == 0.0 {
                    Err(WignerError::UndefinedState(
                        "photon subtraction from the vacuum gives the zero vector".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            Self::Gaussian(ref g) => {
                if g.mode_count() == 1 {
                    Ok(())
                } else {
                    Err(WignerError::Unsupported(
                        "only single-mode Gaussian specs are supported".into(),
                    ))
                }
            }
        }
    }

    /// False only for the ideal cubic phase state.
    pub fn is_normalizable(&self) -> bool {
        !matches!(self, Self::IdealCubic { .. })
    }

    /// Wigner function on `grid`.
    pub fn wigner(&self, grid: &PhaseSpaceGrid) -> WignerResult<WignerField> {
        self.validate()?;
        match *self {
            Self::Number { n } => number_state_wigner(n, grid),
            Self::On { n, a } => on_state_wigner(n, a, grid),
            Self::CubicPhase { gamma, p, s } => cubic_phase_wigner(gamma, p, s, grid),
            Self::IdealCubic { gamma, p } => ideal_cubic_wigner(gamma, p, grid),
            Self::PhotonMod { op, s, theta } => photon_mod_wigner(op, s, theta, grid),
            Self::Gaussian(ref g) => gaussian_wigner(g, grid),
        }
    }

    /// Single-mode grid wide and fine enough for this state.
    pub fn default_grid(&self) -> WignerResult<PhaseSpaceGrid> {
        self.validate()?;
        match *self {
            Self::Number { .. } | Self::On { .. } | Self::IdealCubic { .. } => {
                Ok(PhaseSpaceGrid::default_single())
            }
            Self::CubicPhase { gamma, p, s } => cubic_grid(gamma, p, s, CUBIC_STEP),
            Self::PhotonMod { s, .. } => squeezed_grid(s, 0.0),
            Self::Gaussian(ref g) => {
                let spread = g.covariance().symmetric_eigenvalues().max().sqrt();
                let s = spread.ln().max(0.0);
                let offset = g.mean().amax();
                squeezed_grid(s, offset)
            }
        }
    }

    /// Grid used when the caller supplies none: the automatic grid,
    /// overridden axis by axis where given.
    pub fn grid_with(&self, overrides: &GridOverrides) -> WignerResult<PhaseSpaceGrid> {
        let auto = self.default_grid()?;
        let mode = auto.mode(0);
        let q = match (overrides.q_max, overrides.n_q) {
            (None, None) => mode.q,
            (qmax, nq) => {
                let qmax = qmax.unwrap_or(mode.q.max());
                Axis::new(-qmax, qmax, nq.unwrap_or(mode.q.len()))?
            }
        };
        let p = match (overrides.p_min, overrides.p_max, overrides.n_p) {
            (None, None, None) => mode.p,
            (pmin, pmax, np) => {
                let pmax = pmax.unwrap_or(mode.p.max());
                let pmin = pmin.unwrap_or(if overrides.p_max.is_some() {
                    -pmax
                } else {
                    mode.p.min()
                });
                Axis::new(pmin, pmax, np.unwrap_or(mode.p.len()))?
            }
        };
        Ok(PhaseSpaceGrid::single(ModeGrid::new(q, p)))
    }
}

/// Optional per-axis grid settings; unset entries fall back to the state's
/// automatic grid.
#[derive(Clone, Copy, Debug, Default)]
pub struct GridOverrides {
    pub q_max: Option<f64>,
    pub n_q: Option<usize>,
    pub p_min: Option<f64>,
    pub p_max: Option<f64>,
    pub n_p: Option<usize>,
}

fn squeezed_grid(s: f64, offset: f64) -> WignerResult<PhaseSpaceGrid> {
    let extent = (6.5 * s.abs().exp()).max(crate::grid::DEFAULT_EXTENT) + offset;
    if extent <= crate::grid::DEFAULT_EXTENT {
        return Ok(PhaseSpaceGrid::default_single());
    }
    let axis = Axis::with_step(-extent, extent, AUTO_STEP)?;
    Ok(PhaseSpaceGrid::single(ModeGrid::new(axis, axis)))
}

/// Closed-form `⟨n̂⟩`.
pub fn mean_photon_analytic(spec: &ResourceStateSpec) -> WignerResult<f64> {
    spec.validate()?;
    match *spec {
        ResourceStateSpec::Number { n } => Ok(n as f64),
        ResourceStateSpec::On { n, a } => Ok(a.norm_sqr() * n as f64 / (1.0 + a.norm_sqr())),
        ResourceStateSpec::CubicPhase { gamma, p, s } => {
            let e2 = (2.0 * s).exp();
            Ok(0.5 * ((2.0 * s).cosh() - 1.0)
                + 18.0 * gamma * gamma * e2 * e2
                + 0.25 * (p + 6.0 * gamma * e2).powi(2))
        }
        // both ladder operators give 3 sinh²s + 1 on a squeezed vacuum
        ResourceStateSpec::PhotonMod { s, .. } => Ok(3.0 * s.sinh().powi(2) + 1.0),
        ResourceStateSpec::Gaussian(ref g) => Ok(g.mean_photon()),
        ResourceStateSpec::IdealCubic { .. } => Err(WignerError::Unsupported(
            "the ideal cubic phase state has unbounded energy".into(),
        )),
    }
}

/// `⟨n̂⟩ = ∫ (q²+p²)/4 W − ½` by quadrature.
pub fn mean_photon_numeric(field: &WignerField) -> WignerResult<f64> {
    field.require_normalized()?;
    let weighted = WignerField::unnormalized(
        field.grid().clone(),
        sample_2d(field.grid(), |q, p| (q * q + p * p) / 4.0)?
            .into_iter()
            .zip(field.samples())
            .map(|(r, w)| r * w)
            .collect(),
    )?;
    Ok(weighted.integral() - 0.5)
}

impl fmt::Display for ResourceStateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Number { n } => write!(f, "number:n={n}"),
            Self::On { n, a } => write!(f, "on:N={n},are={},aim={}", a.re, a.im),
            Self::CubicPhase { gamma, p, s } => write!(f, "cubic:gamma={gamma},P={p},s={s}"),
            Self::IdealCubic { gamma, p } => write!(f, "idealcubic:gamma={gamma},P={p}"),
            Self::PhotonMod { op, s, theta } => write!(f, "pmod:sign={op},s={s},theta={theta}"),
            Self::Gaussian(g) => {
                let cov = g.covariance();
                let m = g.mean();
                write!(
                    f,
                    "gauss:cov=[{},{},{}],q={},p={}",
                    cov[(0, 0)],
                    cov[(0, 1)],
                    cov[(1, 1)],
                    m[0],
                    m[1]
                )
            }
        }
    }
}

impl FromStr for ResourceStateSpec {
    type Err = WignerError;

    fn from_str(input: &str) -> WignerResult<Self> {
        let err = |reason: String| WignerError::Parse {
            input: input.to_string(),
            reason,
        };
        let (family, rest) = input.split_once(':').unwrap_or((input, ""));
        let mut keys = BTreeMap::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{item}`")))?;
            if keys.insert(k.trim(), v.trim()).is_some() {
                return Err(err(format!("duplicate key `{k}`")));
            }
        }
        let allowed: &[&str] = match family.trim() {
            "number" => &["n"],
            "on" => &["N", "are", "aim"],
            "cubic" => &["gamma", "P", "s"],
            "idealcubic" => &["gamma", "P"],
            "pmod" => &["sign", "s", "theta"],
            "gauss" => &["s", "theta", "q", "p", "nbar"],
            other => return Err(err(format!("unknown state family `{other}`"))),
        };
        if let Some(bad) = keys.keys().find(|k| !allowed.contains(k)) {
            return Err(err(format!("unknown key `{bad}` for family `{family}`")));
        }
        let real = |k: &str| -> WignerResult<f64> {
            match keys.get(k) {
                None => Ok(0.0),
                Some(v) => v.parse::<f64>().map_err(|e| err(format!("{k}: {e}"))),
            }
        };
        let int = |k: &str, default: i64| -> WignerResult<i64> {
            match keys.get(k) {
                None => Ok(default),
                Some(v) => v
                    .trim_start_matches('+')
                    .parse::<i64>()
                    .map_err(|e| err(format!("{k}: {e}"))),
            }
        };
        let nonneg = |k: &str, v: i64| -> WignerResult<usize> {
            usize::try_from(v).map_err(|_| err(format!("{k} must be >= 0")))
        };
        let spec = match family.trim() {
            "number" => Self::Number {
                n: nonneg("n", int("n", 0)?)?,
            },
            "on" => Self::On {
                n: nonneg("N", int("N", 1)?)?,
                a: C64::new(real("are")?, real("aim")?),
            },
            "cubic" => Self::CubicPhase {
                gamma: real("gamma")?,
                p: real("P")?,
                s: real("s")?,
            },
            "idealcubic" => Self::IdealCubic {
                gamma: real("gamma")?,
                p: real("P")?,
            },
            "pmod" => Self::PhotonMod {
                op: PhotonOp::from_sign(int("sign", 1)? as i32).map_err(|e| err(e.to_string()))?,
                s: real("s")?,
                theta: real("theta")?,
            },
            "gauss" => Self::Gaussian(
                GaussianStateParams::single_mode(
                    real("s")?,
                    real("theta")?,
                    real("q")?,
                    real("p")?,
                    real("nbar")?,
                )
                .map_err(|e| err(e.to_string()))?,
            ),
            _ => unreachable!(),
        };
        spec.validate().map_err(|e| err(e.to_string()))?;
        Ok(spec)
    }
}
