use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkit::OrderSpec;

/// An element `a + bω` of an imaginary quadratic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
    order: OrderSpec,
}

impl QuadInt {
    pub fn new(a: i64, b: i64, order: OrderSpec) -> Self {
        QuadInt { a, b, order }
    }

    pub fn order(&self) -> OrderSpec {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Galois conjugate; `ω̄ = t − ω`.
    pub fn conj(&self) -> Self {
        QuadInt::new(self.a + self.b * self.order.trace(), -self.b, self.order)
    }

    /// `x · x̄ = a² + abt + b²n`, the squared absolute value.
    pub fn norm(&self) -> i64 {
        let (a, b) = (self.a as i128, self.b as i128);
        let n = a * a + a * b * self.order.trace() as i128 + b * b * self.order.norm() as i128;
        i64::try_from(n).expect("norm overflows i64")
    }

    /// `x + x̄ = 2 Re x`.
    pub fn trace(&self) -> i64 {
        2 * self.a + self.b * self.order.trace()
    }

    /// `2 Re(x ȳ)`, exact.
    pub fn re2_mul_conj(&self, other: &QuadInt) -> i64 {
        (*self * other.conj()).trace()
    }

    /// Real iff the `ω` coefficient vanishes.
    pub fn is_rational_integer(&self) -> bool {
        self.b == 0
    }

    pub fn to_complex(&self) -> Complex64 {
        let w = self.order.omega_complex();
        Complex64::new(self.a as f64 + self.b as f64 * w.re, self.b as f64 * w.im)
    }

    pub fn abs(&self) -> f64 {
        (self.norm() as f64).sqrt()
    }

    /// `self / other` when the quotient lies in the order.
    pub fn div_exact(&self, other: &QuadInt) -> Option<QuadInt> {
        let n = other.norm();
        if n == 0 {
            return None;
        }
        let num = *self * other.conj();
        if num.a % n == 0 && num.b % n == 0 {
            Some(QuadInt::new(num.a / n, num.b / n, self.order))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// Parses `"a+b*w"` (also `"a"`, `"b*w"`, `"-w"`, `"3-2*w"`, whitespace tolerated);
    /// over the Gaussian integers `i` may stand for `w`.
    pub fn parse(s: &str, order: OrderSpec) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty quadratic integer".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let (mut a, mut b) = (0i64, 0i64);
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'+') => (1, &term[1..]),
                Some(b'-') => (-1, &term[1..]),
                _ => (1, term),
            };
            let bad = || Error::Parse(format!("cannot parse quadratic integer {s:?}"));
            let gaussian_i = order.m() == 1 && order.trace() == 0;
            let omega_coef = body.strip_suffix('w').or_else(|| body.strip_suffix('i').filter(|_| gaussian_i));
            if let Some(coef) = omega_coef {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let v: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
                b += sign * v;
            } else {
                let v: i64 = body.parse().map_err(|_| bad())?;
                a += sign * v;
            }
        }
        Ok(QuadInt::new(a, b, order))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let omega = |b: i64| match b {
            1 => "w".to_string(),
            -1 => "-w".to_string(),
            _ => format!("{b}*w"),
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{}", omega(b)),
            (a, b) if b > 0 => write!(f, "{a}+{}", omega(b)),
            (a, b) => write!(f, "{a}{}", omega(b)),
        }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        debug_assert_eq!(self.order, rhs.order);
        QuadInt::new(self.a + rhs.a, self.b + rhs.b, self.order)
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        debug_assert_eq!(self.order, rhs.order);
        QuadInt::new(self.a - rhs.a, self.b - rhs.b, self.order)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-self.a, -self.b, self.order)
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        debug_assert_eq!(self.order, rhs.order);
        // ω² = tω − n
        let (t, n) = (self.order.trace(), self.order.norm());
        let bd = self.b * rhs.b;
        QuadInt::new(
            self.a * rhs.a - bd * n,
            self.a * rhs.b + self.b * rhs.a + bd * t,
            self.order,
        )
    }
}

impl Mul<i64> for QuadInt {
    type Output = QuadInt;
    fn mul(self, k: i64) -> QuadInt {
        QuadInt::new(self.a * k, self.b * k, self.order)
    }
}

/// Squared absolute value, as a free function.
pub fn quad_norm(x: &QuadInt) -> i64 {
    x.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn norm_examples() {
        let g = OrderSpec::gaussian();
        assert_eq!(quad_norm(&g.elem(1, 1)), 2);
        assert_eq!(quad_norm(&g.zero()), 0);
        let e = OrderSpec::maximal(3).unwrap();
        // ω = (1 + i√3)/2: ωω̄ = (1 + 3)/4
        assert_eq!(quad_norm(&e.omega()), 1);
    }

    #[test]
    fn norm_is_squared_length_of_embedding() {
        for m in [1, 2, 3, 7, 11] {
            let o = OrderSpec::maximal(m).unwrap();
            let x = o.elem(3, -5);
            assert!((x.to_complex().norm_sqr() - x.norm() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn parse_and_display() {
        let g = OrderSpec::gaussian();
        assert_eq!(QuadInt::parse("1+1*w", g).unwrap(), g.elem(1, 1));
        assert_eq!(QuadInt::parse(" -3 - 2*w ", g).unwrap(), g.elem(-3, -2));
        assert_eq!(QuadInt::parse("w", g).unwrap(), g.elem(0, 1));
        assert_eq!(QuadInt::parse("7", g).unwrap(), g.elem(7, 0));
        assert_eq!(QuadInt::parse("-w+4", g).unwrap(), g.elem(4, -1));
        assert!(QuadInt::parse("1+x", g).is_err());
        assert_eq!(g.elem(2, -3).to_string(), "2-3*w");
        for (x, shown) in [(g.elem(1, 1), "1+w"), (g.int(-4), "-4"), (g.elem(0, -1), "-w"), (g.zero(), "0")] {
            assert_eq!(x.to_string(), shown);
            assert_eq!(QuadInt::parse(shown, g).unwrap(), x);
        }
        let x = g.elem(-4, 9);
        assert_eq!(QuadInt::parse(&x.to_string(), g).unwrap(), x);
    }

    #[test]
    fn exact_division() {
        let g = OrderSpec::gaussian();
        let two = g.int(2);
        let q = two.div_exact(&g.elem(1, 1)).unwrap();
        assert_eq!(q, g.elem(1, -1));
        assert!(g.int(1).div_exact(&g.elem(1, 1)).is_none());
    }

    fn order_strategy() -> impl Strategy<Value = OrderSpec> {
        prop_oneof![
            Just(OrderSpec::gaussian()),
            Just(OrderSpec::maximal(2).unwrap()),
            Just(OrderSpec::maximal(3).unwrap()),
            Just(OrderSpec::maximal(7).unwrap()),
            Just(OrderSpec::maximal(19).unwrap()),
            Just(OrderSpec::with_omega(3, 0, 3).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(o in order_strategy(), a in -300i64..300, b in -300i64..300,
                                  c in -300i64..300, d in -300i64..300) {
            let x = o.elem(a, b);
            let y = o.elem(c, d);
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
            prop_assert!(x.norm() >= 0);
            prop_assert_eq!(x.norm() == 0, x.is_zero());
        }

        #[test]
        fn ring_axioms(o in order_strategy(), v in proptest::collection::vec(-50i64..50, 6)) {
            let x = o.elem(v[0], v[1]);
            let y = o.elem(v[2], v[3]);
            let z = o.elem(v[4], v[5]);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
            prop_assert_eq!((x + y).conj(), x.conj() + y.conj());
            prop_assert_eq!(x.conj().conj(), x);
        }
    }
}
