//! Wigner phase-space toolkit for continuous-variable quantum optics with
//! `ħ = 2`: sampled Wigner functions of resource states, Gaussian
//! operations, the logarithmic Wigner negativity and a postselected
//! homodyne distillation protocol.

pub mod error;
pub mod field;
pub mod fock;
pub mod grid;
pub mod homodyne;
pub mod monotones;
pub mod protocols;
pub mod quad;
pub mod special;
pub mod states;
pub mod symplectic;
pub mod validation;
pub mod wavefunction;

pub use error::{WignerError, WignerResult};
pub use field::WignerField;
pub use grid::{Axis, ModeGrid, PhaseSpaceGrid};
pub use monotones::{fidelity_to_pure, log_negativity};
pub use states::ResourceStateSpec;
