use std::fmt;

use num_complex::Complex64;

use super::point::ModelPoint;
use crate::error::{Error, Result};
use crate::numkit::{OrderSpec, QuadInt};

/// A Möbius map `[[a, b], [c, d]]` with complex float entries and
/// determinant 1, acting on upper half-space by the Poincaré extension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mobius {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm()).powi(2).max(1.0);
        if (det - 1.0).norm() > 1e-12 * scale {
            return Err(Error::NotInGroup(format!("determinant {det} is not 1")));
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let r = |x| Complex64::new(x, 0.0);
        Self::new(r(a), r(b), r(c), r(d))
    }

    /// `γ·(z, h)`: height `h / (|cz + d|² + |c|²h²)`.
    pub fn act(&self, p: &ModelPoint) -> ModelPoint {
        let (z, h) = (p.z, p.height);
        let den_c = self.c * z + self.d;
        let den = den_c.norm_sqr() + self.c.norm_sqr() * h * h;
        let num = (self.a * z + self.b) * den_c.conj() + self.a * self.c.conj() * (h * h);
        ModelPoint { z: num / den, height: h / den }
    }

    /// Image of a boundary point; `None` for `∞`.
    pub fn act_boundary(&self, z: Option<Complex64>) -> Option<Complex64> {
        match z {
            None if self.c == Complex64::new(0.0, 0.0) => None,
            None => Some(self.a / self.c),
            Some(z) => {
                let den = self.c * z + self.d;
                if den == Complex64::new(0.0, 0.0) {
                    None
                } else {
                    Some((self.a * z + self.b) / den)
                }
            }
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn compose(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// Element of `SL₂(O)` with exact entries in an imaginary quadratic order.
/// Integer matrices (`PSL₂(Z)`) are the special case of rational-integer
/// entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadMatrix {
    pub a: QuadInt,
    pub b: QuadInt,
    pub c: QuadInt,
    pub d: QuadInt,
}

/// Conjugacy type of an element of `SL₂(C)` read off its trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

impl QuadMatrix {
    pub fn new(a: QuadInt, b: QuadInt, c: QuadInt, d: QuadInt) -> Result<Self> {
        let det = a * d - b * c;
        if det != a.order().one() {
            return Err(Error::NotInGroup(format!("determinant {det} is not 1")));
        }
        Ok(QuadMatrix { a, b, c, d })
    }

    /// Integer matrix carried in `order`.
    pub fn integer(order: OrderSpec, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(order.int(a), order.int(b), order.int(c), order.int(d))
    }

    pub fn identity(order: OrderSpec) -> Self {
        QuadMatrix { a: order.one(), b: order.zero(), c: order.zero(), d: order.one() }
    }

    pub fn order(&self) -> OrderSpec {
        self.a.order()
    }

    /// Parses `[[a,b],[c,d]]` with entries as in [`QuadInt::parse`].
    pub fn parse(s: &str, order: OrderSpec) -> Result<Self> {
        let flat: String = s.chars().filter(|c| !matches!(c, '[' | ']') && !c.is_whitespace()).collect();
        let entries = flat.split(',').map(|e| QuadInt::parse(e, order)).collect::<Result<Vec<_>>>()?;
        match entries[..] {
            [a, b, c, d] => Self::new(a, b, c, d),
            _ => Err(Error::Parse(format!("expected [[a,b],[c,d]], got {s:?}"))),
        }
    }

    pub fn trace(&self) -> QuadInt {
        self.a + self.d
    }

    pub fn is_integer(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().all(|x| x.is_rational_integer())
    }

    /// `tr² − 4`, the discriminant of the fixed-point equation.
    pub fn discriminant(&self) -> QuadInt {
        let t = self.trace();
        t * t - self.order().int(4)
    }

    /// Loxodromic iff `tr² ∉ [0, 4]`.
    pub fn classify(&self) -> Classification {
        let t = self.trace();
        let t2 = t * t;
        if *self == Self::identity(self.order()) || *self == Self::identity(self.order()) * -1 {
            return Classification::Identity;
        }
        if !t2.is_rational_integer() {
            return Classification::Loxodromic;
        }
        match t2.a {
            4 => Classification::Parabolic,
            0..=3 => Classification::Elliptic,
            _ => Classification::Loxodromic,
        }
    }

    pub fn inverse(&self) -> Self {
        QuadMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn to_mobius(&self) -> Mobius {
        Mobius {
            a: self.a.to_complex(),
            b: self.b.to_complex(),
            c: self.c.to_complex(),
            d: self.d.to_complex(),
        }
    }
}

impl std::ops::Mul for QuadMatrix {
    type Output = QuadMatrix;
    fn mul(self, o: QuadMatrix) -> QuadMatrix {
        QuadMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl std::ops::Mul<i64> for QuadMatrix {
    type Output = QuadMatrix;
    fn mul(self, k: i64) -> QuadMatrix {
        QuadMatrix { a: self.a * k, b: self.b * k, c: self.c * k, d: self.d * k }
    }
}

impl fmt::Display for QuadMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_preserves_hyperbolic_distance() {
        use super::super::point::hyperbolic_distance;
        let g = Mobius::new(
            Complex64::new(2.0, 1.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.8, -0.4),
        )
        .unwrap();
        let p = ModelPoint::new(Complex64::new(0.3, -0.7), 0.8).unwrap();
        let q = ModelPoint::new(Complex64::new(-1.1, 0.2), 2.5).unwrap();
        let d0 = hyperbolic_distance(&p, &q);
        let d1 = hyperbolic_distance(&g.act(&p), &g.act(&q));
        assert!((d0 - d1).abs() < 1e-12);
        let back = g.inverse().act(&g.act(&p));
        assert!((back.z - p.z).norm() < 1e-12 && (back.height - p.height).abs() < 1e-12);
    }

    #[test]
    fn parsing() {
        let o = OrderSpec::gaussian();
        let m = QuadMatrix::parse("[[2+i, 1+i], [1, 1]]", o).unwrap();
        assert_eq!(m.to_string(), "[[2+w,1+w],[1,1]]");
        assert!(matches!(QuadMatrix::parse("[[1,2],[3]]", o), Err(Error::Parse(_))));
        assert!(matches!(QuadMatrix::parse("[[1,2],[3,4]]", o), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn determinant_is_checked() {
        assert!(Mobius::real(1.0, 1.0, 1.0, 1.0).is_err());
        let o = OrderSpec::gaussian();
        assert!(QuadMatrix::integer(o, 2, 1, 1, 1).is_ok());
        assert!(matches!(QuadMatrix::integer(o, 2, 1, 1, 2), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn classification() {
        let o = OrderSpec::gaussian();
        let m = |a, b, c, d| QuadMatrix::integer(o, a, b, c, d).unwrap();
        assert_eq!(m(1, 1, 0, 1).classify(), Classification::Parabolic);
        assert_eq!(m(0, -1, 1, 0).classify(), Classification::Elliptic);
        assert_eq!(m(3, 4, 2, 3).classify(), Classification::Loxodromic);
        assert_eq!(m(-1, 0, 0, -1).classify(), Classification::Identity);
        let i = o.omega();
        let g = QuadMatrix::new(o.one() + i, o.one(), i, o.one()).unwrap();
        assert_eq!(g.classify(), Classification::Loxodromic);
    }
}
