//! Gaussian protocols acting on resource states.

pub mod distill;
pub mod on_gate;
pub mod window;

pub use distill::{
    cubic_target, default_p_v_samples, distill_conditional, distill_sweep, fidelity_records,
    p_v_samples, DistillationConfig, DistillationOutcome, DistillationRecord, Distiller,
    FidelityTarget, WindowPolicy, WindowSummary, DEFAULT_SAMPLES, DEFAULT_TRANSMITTANCE,
};
pub use on_gate::{on_gate_grid, on_gate_output};
pub use window::{select_window, Window};
