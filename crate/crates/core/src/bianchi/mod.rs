//! Congruence subgroups of Bianchi groups: the pairs `E_I`, Diophantine
//! approximation constants `c_I`, and closed-geodesic sampling.

mod axis;
mod context;
mod estimate;
mod sampler;

pub use axis::{loxodromic_axis, AxisPoint};
pub use context::{enumerate_ei, is_in_ei, nearest_representative, BianchiContext, FractionPoint};
pub use estimate::{c_i_estimate, CiEstimate};
pub use sampler::{spectrum_sample, GeneratorSet, HeightSample, HEIGHT_DEDUP_TOL};
