use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the upper half-space model: horizontal coordinate `z` (real
/// for the plane, complex for 3-space) and Euclidean height `h > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    pub z: Complex64,
    pub height: f64,
}

impl ModelPoint {
    pub fn new(z: Complex64, height: f64) -> Result<Self> {
        if !(height > 0.0) || !height.is_finite() || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Invalid(format!("model point needs a finite height > 0, got {height}")));
        }
        Ok(ModelPoint { z, height })
    }

    pub fn real(x: f64, height: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0), height)
    }
}

/// Busemann height relative to the horoball `{height ≥ 1}`.
pub fn busemann_height(p: &ModelPoint) -> f64 {
    p.height.ln()
}

/// Hyperbolic distance in the upper half-space model.
pub fn hyperbolic_distance(p: &ModelPoint, q: &ModelPoint) -> f64 {
    let horiz = (p.z - q.z).norm_sqr();
    let dh = p.height - q.height;
    let arg = (horiz + dh * dh) / (2.0 * p.height * q.height);
    // acosh(1 + x) = ln(1 + x + √(x(x + 2))), stable for small x
    (arg + (arg * (arg + 2.0)).sqrt()).ln_1p()
}
