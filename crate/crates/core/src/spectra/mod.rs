//! Estimator discipline, the spectrum/height duality and spectrum samples.

mod duality;
mod sample;
mod trace;

pub use duality::{duality, duality_inverse};
pub use sample::{
    bound_check, closure_diagnostics, duality_violations, spectrum_report, Accumulation, BoundReport, ClosureReport,
    HeightGap, Setting, SpectrumReport, SpectrumRow, SpectrumSample, ACCUMULATION_MIN_POINTS,
};
pub use trace::{Direction, EstimatorTrace, Shell};
