use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Tolerance on `2 Re z − |w|²` for float points, relative to the scale.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// A point `(z, w)` of `Heis₃(R)`: `2 Re z = |w|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisPoint {
    pub z: Complex64,
    pub w: Complex64,
}

impl HeisPoint {
    pub fn new(z: Complex64, w: Complex64) -> Result<Self> {
        let residual = 2.0 * z.re - w.norm_sqr();
        let scale = 1.0f64.max(z.re.abs()).max(w.norm_sqr());
        if residual.abs() > CONSTRAINT_TOL * scale || !residual.is_finite() {
            return Err(Error::HeisenbergConstraint(residual));
        }
        Ok(HeisPoint { z, w })
    }

    /// `(|w|²/2 + i t, w)`, the point over `w` at vertical coordinate `t`.
    pub fn over(w: Complex64, t: f64) -> Self {
        HeisPoint { z: Complex64::new(0.5 * w.norm_sqr(), t), w }
    }

    pub fn origin() -> Self {
        HeisPoint { z: Complex64::new(0.0, 0.0), w: Complex64::new(0.0, 0.0) }
    }

    /// `(z̄, −w)`.
    pub fn inverse(&self) -> Self {
        HeisPoint { z: self.z.conj(), w: -self.w }
    }

    /// `√(2|z| + |w|²)`, the modified Cygan distance to the origin.
    pub fn gauge(&self) -> f64 {
        (2.0 * self.z.norm() + self.w.norm_sqr()).sqrt()
    }
}

impl fmt::Display for HeisPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.z.re, self.z.im, self.w.re, self.w.im)
    }
}

/// `(z, w)·(z', w') = (z + z' + w'·w̄, w + w')`.
pub fn heis_mul(x: &HeisPoint, y: &HeisPoint) -> HeisPoint {
    HeisPoint { z: x.z + y.z + y.w * x.w.conj(), w: x.w + y.w }
}

/// Left-invariant modified Cygan distance: the gauge of `x⁻¹ y`.
pub fn cygan_dist(x: &HeisPoint, y: &HeisPoint) -> f64 {
    heis_mul(&x.inverse(), y).gauge()
}

/// A rational complex number `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl QComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        QComplex { re, im }
    }

    pub fn zero() -> Self {
        QComplex { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn conj(&self) -> Self {
        QComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn add(&self, o: &QComplex) -> QComplex {
        QComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn mul(&self, o: &QComplex) -> QComplex {
        QComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn neg(&self) -> QComplex {
        QComplex { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

/// A Heisenberg point with rational coordinates in `Q(i)`, checked exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisExact {
    pub z: QComplex,
    pub w: QComplex,
}

impl HeisExact {
    pub fn new(z: QComplex, w: QComplex) -> Result<Self> {
        let two = BigRational::from_integer(BigInt::from(2));
        let residual = two * &z.re - w.norm_sqr();
        if !residual.is_zero() {
            return Err(Error::HeisenbergConstraint(residual.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(HeisExact { z, w })
    }

    pub fn satisfies_constraint(&self) -> bool {
        BigRational::from_integer(BigInt::from(2)) * &self.z.re == self.w.norm_sqr()
    }

    pub fn mul(&self, y: &HeisExact) -> HeisExact {
        HeisExact { z: self.z.add(&y.z).add(&y.w.mul(&self.w.conj())), w: self.w.add(&y.w) }
    }

    pub fn inverse(&self) -> HeisExact {
        HeisExact { z: self.z.conj(), w: self.w.neg() }
    }

    pub fn identity() -> HeisExact {
        HeisExact { z: QComplex::zero(), w: QComplex::zero() }
    }

    pub fn to_point(&self) -> HeisPoint {
        HeisPoint { z: self.z.to_complex(), w: self.w.to_complex() }
    }

    fn is_real(&self) -> bool {
        self.z.im.is_zero() && self.w.im.is_zero()
    }
}

impl fmt::Display for HeisExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.z.re, self.z.im, self.w.re, self.w.im)
    }
}

/// A Heisenberg point as given by the user: exact when every component is
/// an integer or fraction, approximate when any is a decimal.
#[derive(Debug, Clone, PartialEq)]
pub enum HeisInput {
    Exact(HeisExact),
    Approx(HeisPoint),
}

impl HeisInput {
    pub fn to_point(&self) -> HeisPoint {
        match self {
            HeisInput::Exact(e) => e.to_point(),
            HeisInput::Approx(p) => *p,
        }
    }

    /// Membership in `Heis₃(K)` for `K = Q(i√m)`: exact inputs only.
    pub fn is_field_point(&self, m: i64) -> bool {
        match self {
            HeisInput::Exact(e) => m == 1 || e.is_real(),
            HeisInput::Approx(_) => false,
        }
    }
}

enum Component {
    Exact(BigRational),
    Approx(f64),
}

fn parse_component(s: &str) -> Option<Component> {
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        return s.parse::<f64>().ok().filter(|x| x.is_finite()).map(Component::Approx);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if den.is_zero() {
        return None;
    }
    Some(Component::Exact(BigRational::new(num, den)))
}

impl FromStr for HeisInput {
    type Err = Error;

    /// `z_re,z_im;w_re,w_im`, e.g. `1,1/3;1,1` or `1,0.4142;1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected z_re,z_im;w_re,w_im, got {s:?}"));
        let (zs, ws) = s.split_once(';').ok_or_else(bad)?;
        let mut parts = Vec::new();
        for half in [zs, ws] {
            let (a, b) = half.split_once(',').ok_or_else(bad)?;
            parts.push(parse_component(a).ok_or_else(bad)?);
            parts.push(parse_component(b).ok_or_else(bad)?);
        }
        if parts.iter().all(|c| matches!(c, Component::Exact(_))) {
            let mut q = parts.into_iter().map(|c| match c {
                Component::Exact(r) => r,
                Component::Approx(_) => unreachable!(),
            });
            let mut next = || q.next().expect("four components");
            let z = QComplex::new(next(), next());
            let w = QComplex::new(next(), next());
            return HeisExact::new(z, w).map(HeisInput::Exact);
        }
        let f: Vec<f64> = parts
            .iter()
            .map(|c| match c {
                Component::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
                Component::Approx(x) => *x,
            })
            .collect();
        HeisPoint::new(Complex64::new(f[0], f[1]), Complex64::new(f[2], f[3])).map(HeisInput::Approx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn group_law_examples() {
        let x = HeisPoint::new(c(2.0, 0.0), c(2.0, 0.0)).unwrap();
        assert_eq!(heis_mul(&x, &HeisPoint::origin()), x);
        let xx = heis_mul(&x, &x);
        assert_eq!((xx.z, xx.w), (c(8.0, 0.0), c(4.0, 0.0)));
        let y = HeisPoint::over(c(0.3, -1.2), 0.7);
        let e = heis_mul(&y, &y.inverse());
        assert!(e.z.norm() < 1e-15 && e.w.norm() < 1e-15);
        assert!(HeisPoint::new(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn cygan_examples() {
        let o = HeisPoint::origin();
        let x = HeisPoint::new(c(2.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!((cygan_dist(&o, &x) - 8f64.sqrt()).abs() < 1e-15);
        assert_eq!(cygan_dist(&x, &o), cygan_dist(&o, &x));
        assert_eq!(cygan_dist(&x, &x), 0.0);
    }

    #[test]
    fn parsing() {
        let e: HeisInput = "1,1/3;1,1".parse().unwrap();
        assert!(matches!(e, HeisInput::Exact(_)));
        assert!(e.is_field_point(1) && !e.is_field_point(2));
        let a: HeisInput = "1,0.25;1,1".parse().unwrap();
        assert!(matches!(a, HeisInput::Approx(_)));
        assert!(matches!("1,0;1,0".parse::<HeisInput>(), Err(Error::HeisenbergConstraint(_))));
        assert!(matches!("1,0".parse::<HeisInput>(), Err(Error::Parse(_))));
    }

    fn small_q() -> impl Strategy<Value = BigRational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn exact_point() -> impl Strategy<Value = HeisExact> {
        (small_q(), small_q(), small_q()).prop_map(|(t, a, b)| {
            let w = QComplex::new(a, b);
            let z = QComplex::new(w.norm_sqr() / BigRational::from_integer(2.into()), t);
            HeisExact::new(z, w).unwrap()
        })
    }

    fn float_point() -> impl Strategy<Value = HeisPoint> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(t, a, b)| HeisPoint::over(c(a, b), t))
    }

    proptest! {
        #[test]
        fn exact_associativity_and_closure(x in exact_point(), y in exact_point(), z in exact_point()) {
            let xy = x.mul(&y);
            prop_assert!(xy.satisfies_constraint());
            prop_assert_eq!(xy.mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&x.inverse()), HeisExact::identity());
        }

        #[test]
        fn left_invariance(g in float_point(), x in float_point(), y in float_point()) {
            let d0 = cygan_dist(&x, &y);
            let d1 = cygan_dist(&heis_mul(&g, &x), &heis_mul(&g, &y));
            prop_assert!((d0 - d1).abs() < 1e-12 * d0.max(1.0));
        }
    }
}
