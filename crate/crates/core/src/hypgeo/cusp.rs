use num_complex::Complex64;

use super::mobius::Mobius;
use super::point::{hyperbolic_distance, ModelPoint};
use crate::error::{Error, Result};
use crate::numkit::{OrderSpec, QuadInt};

/// Hyperbolic distance between the horoball `{height ≥ 1}` and its image
/// under `γ`, measured between the image's top point and the horosphere
/// directly above it.
pub fn horoball_penetration(gamma: &Mobius) -> Result<f64> {
    let q = gamma.c.norm();
    if q == 0.0 {
        return Err(Error::SameHoroball);
    }
    if q < 1.0 - 1e-12 {
        return Err(Error::OverlappingHoroball(q));
    }
    // γ sends the horosphere point above −d/c to the top of the image ball
    let source = ModelPoint { z: -gamma.d / gamma.c, height: 1.0 };
    let top = gamma.act(&source);
    let above = ModelPoint { z: top.z, height: 1.0 };
    Ok(hyperbolic_distance(&top, &above))
}

/// Penetration depth `D(r) = 2 log|q|` of the cusp-to-cusp geodesic with
/// denominator `q`.
pub fn d_of_r(q: &QuadInt) -> Result<f64> {
    if q.is_zero() {
        return Err(Error::Invalid("denominator must be nonzero".into()));
    }
    Ok((q.norm() as f64).ln())
}

/// [`d_of_r`] for a rational integer denominator.
pub fn d_of_r_int(q: i64) -> Result<f64> {
    if q == 0 {
        return Err(Error::Invalid("denominator must be nonzero".into()));
    }
    Ok(2.0 * (q.unsigned_abs() as f64).ln())
}

/// The stabilizer of `∞` acting on the boundary: translations by a lattice
/// and rotations `z ↦ u² z` by squares of units.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspStabilizer {
    lattice: Lattice,
    rotations: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
enum Lattice {
    Integers,
    Order(OrderSpec),
}

impl CuspStabilizer {
    /// `z ↦ z + n`, `n ∈ Z`, on the real line.
    pub fn integers() -> Self {
        CuspStabilizer { lattice: Lattice::Integers, rotations: vec![Complex64::new(1.0, 0.0)] }
    }

    /// Translations by the order only.
    pub fn translations(order: OrderSpec) -> Self {
        CuspStabilizer { lattice: Lattice::Order(order), rotations: vec![Complex64::new(1.0, 0.0)] }
    }

    /// Translations by the order twisted by the unit rotations `u²`.
    pub fn with_units(order: OrderSpec) -> Self {
        let mut rotations: Vec<Complex64> = Vec::new();
        for u in order.units() {
            let r = (u * u).to_complex();
            if !rotations.iter().any(|s| (s - r).norm() < 1e-12) {
                rotations.push(r);
            }
        }
        CuspStabilizer { lattice: Lattice::Order(order), rotations }
    }

    pub fn rotations(&self) -> &[Complex64] {
        &self.rotations
    }

    /// The image of `v` under the stabilizer that is nearest to `u`, with its
    /// distance.
    pub fn nearest_image(&self, u: Complex64, v: Complex64) -> (Complex64, f64) {
        let mut best = (v, f64::INFINITY);
        for r in &self.rotations {
            let rv = r * v;
            let target = u - rv;
            let shifts: Vec<Complex64> = match &self.lattice {
                Lattice::Integers => {
                    let n = target.re.floor();
                    vec![Complex64::new(n, 0.0), Complex64::new(n + 1.0, 0.0)]
                }
                Lattice::Order(o) => o
                    .points_in_disk(target, o.covering_radius() + 1e-9)
                    .iter()
                    .map(QuadInt::to_complex)
                    .collect(),
            };
            for t in shifts {
                let img = rv + t;
                let dist = (u - img).norm();
                if dist < best.1 {
                    best = (img, dist);
                }
            }
        }
        best
    }
}

/// `min_{γ ∈ Γ∞} |u − γ v|`; the lattice covering radius bounds the search.
pub fn cuspidal_distance(u: Complex64, v: Complex64, stab: &CuspStabilizer) -> f64 {
    stab.nearest_image(u, v).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn penetration_examples() {
        let unit = Mobius::real(0.0, -1.0, 1.0, 0.0).unwrap();
        assert!(horoball_penetration(&unit).unwrap().abs() < 1e-15);
        let three = Mobius::real(1.0, 0.0, 3.0, 1.0).unwrap();
        assert!((horoball_penetration(&three).unwrap() - 2.0 * 3f64.ln()).abs() < 1e-12);
        // [[1, 0], [2 + i, 1]]
        let g = Mobius::new(c(1.0, 0.0), c(0.0, 0.0), c(2.0, 1.0), c(1.0, 0.0)).unwrap();
        assert!((horoball_penetration(&g).unwrap() - 5f64.ln()).abs() < 1e-12);
        assert_eq!(horoball_penetration(&Mobius::real(1.0, 5.0, 0.0, 1.0).unwrap()), Err(Error::SameHoroball));
    }

    #[test]
    fn d_of_r_examples() {
        let o = OrderSpec::gaussian();
        assert_eq!(d_of_r(&o.one()).unwrap(), 0.0);
        assert!((d_of_r(&o.elem(1, 1)).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((d_of_r_int(5).unwrap() - 2.0 * 5f64.ln()).abs() < 1e-15);
        assert!(d_of_r(&o.zero()).is_err());
    }

    #[test]
    fn cuspidal_distance_examples() {
        let z = CuspStabilizer::integers();
        assert_eq!(cuspidal_distance(c(0.4, 0.0), c(0.4, 0.0), &z), 0.0);
        assert!((cuspidal_distance(c(0.9, 0.0), c(0.05, 0.0), &z) - 0.15).abs() < 1e-15);
        let gi = CuspStabilizer::translations(OrderSpec::gaussian());
        assert!((cuspidal_distance(c(0.3, 0.0), c(0.4, 0.0), &gi) - 0.1).abs() < 1e-15);
        // rotation by i² = −1 brings 0.4 to −0.4, nearer to −0.35
        let gu = CuspStabilizer::with_units(OrderSpec::gaussian());
        assert_eq!(gu.rotations().len(), 2);
        assert!((cuspidal_distance(c(-0.35, 0.0), c(0.4, 0.0), &gu) - 0.05).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn symmetric_and_triangle(a in -3.0..3.0f64, b in -3.0..3.0f64, cc in -3.0..3.0f64,
                                  d in -3.0..3.0f64, e in -3.0..3.0f64, f in -3.0..3.0f64,
                                  m in prop::sample::select(vec![1i64, 2, 3, 7])) {
            let st = CuspStabilizer::with_units(OrderSpec::maximal(m).unwrap());
            let (u, v, w) = (c(a, b), c(cc, d), c(e, f));
            let uv = cuspidal_distance(u, v, &st);
            prop_assert!((uv - cuspidal_distance(v, u, &st)).abs() < 1e-12);
            prop_assert!(cuspidal_distance(u, w, &st) <= uv + cuspidal_distance(v, w, &st) + 1e-12);
        }
    }
}
