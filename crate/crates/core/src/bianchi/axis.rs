use std::fmt;

use num_complex::Complex64;

use crate::error::Result;
use crate::hypgeo::{axis_endpoints, QuadMatrix};
use crate::numkit::QuadInt;

/// A fixed point `(a − d ± √Δ) / 2c` of a loxodromic element, kept exact in
/// `K(√Δ)` with `Δ = tr² − 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisPoint {
    pub a_minus_d: QuadInt,
    pub disc: QuadInt,
    /// `+1` for the attracting endpoint, `−1` for the repelling one.
    pub sign: i8,
    pub two_c: QuadInt,
}

impl AxisPoint {
    pub fn to_complex(&self) -> Complex64 {
        let root = self.disc.to_complex().sqrt() * f64::from(self.sign);
        (self.a_minus_d.to_complex() + root) / self.two_c.to_complex()
    }
}

impl fmt::Display for AxisPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { '+' } else { '-' };
        write!(f, "(({}) {s} sqrt({}))/({})", self.a_minus_d, self.disc, self.two_c)
    }
}

/// Exact endpoints of the axis of a loxodromic `γ ∈ SL₂(O)`, attracting
/// first. Rejects non-loxodromic elements and axes ending at `∞`.
pub fn loxodromic_axis(gamma: &QuadMatrix) -> Result<(AxisPoint, AxisPoint)> {
    axis_endpoints(gamma)?;
    let make = |sign| AxisPoint {
        a_minus_d: gamma.a - gamma.d,
        disc: gamma.discriminant(),
        sign,
        two_c: gamma.c * 2,
    };
    // at ξ the derivative is 1/(cξ + d)², and cξ + d = (tr ± √Δ)/2
    let lambda = (gamma.trace().to_complex() + gamma.discriminant().to_complex().sqrt()) / 2.0;
    if lambda.norm() > 1.0 {
        Ok((make(1), make(-1)))
    } else {
        Ok((make(-1), make(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::numkit::OrderSpec;

    #[test]
    fn fixed_points() {
        let o = OrderSpec::gaussian();
        let i = o.omega();
        // [[2 + i, 1 + i], [1, 1]]
        let g = QuadMatrix::new(o.int(2) + i, o.one() + i, o.one(), o.one()).unwrap();
        let (p, m) = loxodromic_axis(&g).unwrap();
        let gm = g.to_mobius();
        for x in [p.to_complex(), m.to_complex()] {
            assert!((gm.act_boundary(Some(x)).unwrap() - x).norm() < 1e-12);
        }
        // forward iterates of a generic point approach the attracting end
        let mut z = Some(Complex64::new(0.1, -0.3));
        for _ in 0..60 {
            z = gm.act_boundary(z);
        }
        assert!((z.unwrap() - p.to_complex()).norm() < 1e-9);
        assert!((gm.inverse().act_boundary(Some(m.to_complex())).unwrap() - m.to_complex()).norm() < 1e-12);
    }

    #[test]
    fn rejections() {
        let o = OrderSpec::gaussian();
        let par = QuadMatrix::integer(o, 1, 1, 0, 1).unwrap();
        assert_eq!(loxodromic_axis(&par).unwrap_err(), Error::NotLoxodromic("parabolic"));
        let rot = QuadMatrix::new(o.omega(), o.zero(), o.zero(), -o.omega()).unwrap();
        assert_eq!(loxodromic_axis(&rot).unwrap_err(), Error::NotLoxodromic("elliptic"));
    }
}
