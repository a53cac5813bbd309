use crate::error::{Error, Result};

/// `t ↦ −log(2t)`: approximation constant to asymptotic height.
pub fn duality(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositive(t));
    }
    Ok(-(2.0 * t).ln())
}

/// `s ↦ e^{−s}/2`, the inverse of [`duality`].
pub fn duality_inverse(s: f64) -> f64 {
    0.5 * (-s).exp()
}
