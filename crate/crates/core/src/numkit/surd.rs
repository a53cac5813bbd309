use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;

use crate::error::{Error, Result};

/// An element `(p + q√d) / r` of a real quadratic field, with exact
/// `i128` coefficients.
///
/// Invariants: `r > 0`, `d ≥ 2` is not a perfect square (or `q = 0`, in which
/// case the value is rational and `d` is kept only as a field tag), and
/// `gcd(p, q, r) = 1`. Arithmetic panics on `i128` overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    p: i128,
    q: i128,
    r: i128,
    d: i128,
}

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("i128 overflow in quadratic surd arithmetic")
}

fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("i128 overflow in quadratic surd arithmetic")
}

/// Floor of `√n` for `n ≥ 0`.
pub(crate) fn isqrt(n: i128) -> i128 {
    assert!(n >= 0);
    (n as u128).isqrt() as i128
}

fn squarefree_split(d: i128) -> (i128, i128) {
    // d = k² · d'  with d' squarefree (trial division, d small in practice)
    let mut k = 1i128;
    let mut rest = d;
    let mut f = 2i128;
    while f * f <= rest {
        while rest % (f * f) == 0 {
            rest /= f * f;
            k *= f;
        }
        f += 1;
    }
    (k, rest)
}

impl QuadSurd {
    /// `(p + q√d) / r`. Square factors of `d` are absorbed into `q`.
    pub fn new(p: i128, q: i128, d: i128, r: i128) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        if d < 0 {
            return Err(Error::Invalid("negative radicand".into()));
        }
        let (k, core) = if d == 0 { (0, 1) } else { squarefree_split(d) };
        if core == 1 {
            return Ok(Self::normalized(add(p, mul(q, k)), 0, 1, r));
        }
        Ok(Self::normalized(p, mul(q, k), core, r))
    }

    fn normalized(mut p: i128, mut q: i128, d: i128, mut r: i128) -> Self {
        if r < 0 {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if g > 1 {
            p /= g;
            q /= g;
            r /= g;
        }
        let d = if q == 0 { 1 } else { d };
        QuadSurd { p, q, r, d }
    }

    pub fn rational(p: i128, r: i128) -> Self {
        assert!(r != 0, "zero denominator");
        Self::normalized(p, 0, 1, r)
    }

    pub fn integer(n: i128) -> Self {
        Self::rational(n, 1)
    }

    /// `√d` itself.
    pub fn sqrt(d: i128) -> Result<Self> {
        QuadSurd::new(0, 1, d, 1)
    }

    pub fn parts(&self) -> (i128, i128, i128, i128) {
        (self.p, self.q, self.d, self.r)
    }

    pub fn radicand(&self) -> i128 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    /// Galois conjugate `(p − q√d)/r`.
    pub fn conj(&self) -> Self {
        QuadSurd { q: -self.q, ..*self }
    }

    fn field(&self, other: &Self) -> i128 {
        match (self.q == 0, other.q == 0) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "quadratic surds from different fields");
                self.d
            }
        }
    }

    /// Exact sign.
    pub fn signum(&self) -> i32 {
        let sp = self.p.signum();
        let sq = self.q.signum();
        if sq == 0 {
            return sp as i32;
        }
        if sp == 0 || sp == sq {
            return sq as i32;
        }
        // opposite signs: compare p² with q²d
        let lhs = mul(self.p, self.p);
        let rhs = mul(mul(self.q, self.q), self.d);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp as i32,
            Ordering::Less => sq as i32,
            Ordering::Equal => 0,
        }
    }

    /// `p² − q²d`, times `r²` gives `x · x̄ · r²`.
    fn field_norm_numerator(&self) -> i128 {
        mul(self.p, self.p) - mul(mul(self.q, self.q), self.d)
    }

    /// Nearest `f64`, avoiding cancellation via the conjugate when the two
    /// terms have opposite signs.
    pub fn to_f64(&self) -> f64 {
        let sd = (self.d as f64).sqrt();
        let r = self.r as f64;
        if self.q == 0 || self.p == 0 || self.p.signum() == self.q.signum() {
            return (self.p as f64 + self.q as f64 * sd) / r;
        }
        let num = self.field_norm_numerator() as f64;
        num / (r * (self.p as f64 - self.q as f64 * sd))
    }

    /// Exact floor.
    pub fn floor(&self) -> i128 {
        if self.q == 0 {
            return Integer::div_floor(&self.p, &self.r);
        }
        let s = isqrt(mul(mul(self.q, self.q), self.d));
        // q√d lies strictly between consecutive integers because d is not a square
        let lower = if self.q > 0 { add(self.p, s) } else { self.p - s - 1 };
        Integer::div_floor(&lower, &self.r)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        // r / (p + q√d) = r (p − q√d) / (p² − q²d)
        let den = self.field_norm_numerator();
        Ok(Self::normalized(mul(self.r, self.p), -mul(self.r, self.q), self.d, den))
    }

    /// `c·x + e` for integers `c, e`, as an exact surd.
    pub fn affine(&self, c: i128, e: i128) -> Self {
        Self::normalized(add(mul(c, self.p), mul(e, self.r)), mul(c, self.q), self.d, self.r)
    }

    /// `c·x + e` evaluated to full relative precision.
    pub fn affine_f64(&self, c: i128, e: i128) -> f64 {
        let num_p = add(mul(c, self.p), mul(e, self.r));
        let num_q = mul(c, self.q);
        let sd = (self.d as f64).sqrt();
        let r = self.r as f64;
        if num_q == 0 || num_p == 0 || num_p.signum() == num_q.signum() {
            return (num_p as f64 + num_q as f64 * sd) / r;
        }
        let norm = mul(num_p, num_p) - mul(mul(num_q, num_q), self.d);
        norm as f64 / (r * (num_p as f64 - num_q as f64 * sd))
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl Add for QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: QuadSurd) -> QuadSurd {
        let d = self.field(&o);
        QuadSurd::normalized(
            add(mul(self.p, o.r), mul(o.p, self.r)),
            add(mul(self.q, o.r), mul(o.q, self.r)),
            d,
            mul(self.r, o.r),
        )
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd { p: -self.p, q: -self.q, ..self }
    }
}

impl Sub for QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: QuadSurd) -> QuadSurd {
        self + (-o)
    }
}

impl Mul for QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: QuadSurd) -> QuadSurd {
        let d = self.field(&o);
        QuadSurd::normalized(
            add(mul(self.p, o.p), mul(mul(self.q, o.q), d)),
            add(mul(self.p, o.q), mul(self.q, o.p)),
            d,
            mul(self.r, o.r),
        )
    }
}

impl Div for QuadSurd {
    type Output = QuadSurd;
    fn div(self, o: QuadSurd) -> QuadSurd {
        self * o.recip().expect("division by zero")
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q, self.r) {
            (0, 1) => write!(f, "{}", self.p),
            (0, r) => write!(f, "{}/{}", self.p, r),
            (q, 1) => write!(f, "{}{:+}*sqrt{}", self.p, q, self.d),
            (q, r) => write!(f, "({}{:+}*sqrt{})/{}", self.p, q, self.d, r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn golden() -> QuadSurd {
        QuadSurd::new(1, 1, 5, 2).unwrap()
    }

    #[test]
    fn construction_absorbs_square_factors() {
        let x = QuadSurd::new(0, 1, 8, 1).unwrap();
        assert_eq!(x.parts(), (0, 2, 2, 1));
        let y = QuadSurd::new(3, 2, 9, 1).unwrap();
        assert!(y.is_rational());
        assert_eq!(y, QuadSurd::integer(9));
    }

    #[test]
    fn golden_ratio_identities() {
        let phi = golden();
        assert_eq!(phi * phi, phi + QuadSurd::integer(1));
        assert_eq!(phi.recip().unwrap(), phi - QuadSurd::integer(1));
        assert_eq!(phi.floor(), 1);
        assert!((phi.to_f64() - 1.618033988749895).abs() < 1e-15);
        assert_eq!(phi.conj().floor(), -1);
    }

    #[test]
    fn cancellation_free_evaluation() {
        // 99 − 70√2 ≈ 0.00505: naive evaluation loses ~4 digits
        let x = QuadSurd::new(99, -70, 2, 1).unwrap();
        let exact = 1.0 / (99.0 + 70.0 * 2f64.sqrt());
        assert!((x.to_f64() - exact).abs() < 1e-17);
        assert!((golden().affine_f64(-1597, 2584) - (2584.0 - 1597.0 * 1.618033988749895)).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn floor_brackets_value(p in -10_000i128..10_000, q in -500i128..500, d in 2i128..200, r in 1i128..300) {
            let x = QuadSurd::new(p, q, d, r).unwrap();
            let f = x.floor();
            prop_assert!(QuadSurd::integer(f) <= x);
            prop_assert!(x < QuadSurd::integer(f + 1));
        }

        #[test]
        fn order_agrees_with_floats(a in -1000i128..1000, b in -50i128..50, c in -1000i128..1000, e in -50i128..50) {
            let x = QuadSurd::new(a, b, 7, 3).unwrap();
            let y = QuadSurd::new(c, e, 7, 5).unwrap();
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x < y, fx < fy);
            }
            prop_assert_eq!((x * y) / y, x);
        }
    }
}
