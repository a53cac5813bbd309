use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};

use super::word::CFWord;
use crate::error::{Error, Result};
use crate::numkit::{isqrt, QuadSurd};

/// A real number to be expanded.
#[derive(Debug, Clone, PartialEq)]
pub enum RealInput {
    Quadratic(QuadSurd),
    Rational(i128, i128),
    /// A floating value known to within `abs_err`.
    Approx { value: f64, abs_err: f64 },
}

/// Expands `x` into a continued-fraction word.
///
/// Quadratic irrationals come back with their exact period (detected on the
/// `(P, Q)` state of the complete quotients `(P + √D)/Q`), independently of
/// `n`. Approximate reals give a sampled prefix of `n` terms, or
/// [`Error::PrecisionExhausted`] when fewer terms are determined.
pub fn expand(x: &RealInput, n: usize) -> Result<CFWord> {
    match x {
        RealInput::Rational(..) => Err(Error::RationalInput),
        RealInput::Quadratic(s) if s.is_rational() => Err(Error::RationalInput),
        RealInput::Quadratic(s) => expand_quadratic(s),
        RealInput::Approx { value, abs_err } => expand_interval(*value, *abs_err, n),
    }
}

fn expand_quadratic(x: &QuadSurd) -> Result<CFWord> {
    let (p, q, d, r) = x.parts();
    // (p + q√d)/r  ->  (P + √D)/Q with Q | D − P²
    let (sign, q) = if q < 0 { (-1, -q) } else { (1, q) };
    let big = |v: Option<i128>| v.ok_or(Error::Overflow);
    let mut pp = sign * p;
    let mut dd = big(q.checked_mul(q).and_then(|v| v.checked_mul(d)))?;
    let mut qq = sign * r;
    if (dd - pp * pp) % qq != 0 {
        let s = qq.abs();
        pp = big(pp.checked_mul(s))?;
        dd = big(dd.checked_mul(s).and_then(|v| v.checked_mul(s)))?;
        qq = big(qq.checked_mul(s))?;
    }
    let root = isqrt(dd);
    let mut seen: HashMap<(i128, i128), usize> = HashMap::new();
    let mut terms = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(pp, qq)) {
            let period = terms.split_off(start);
            let pre = terms.into_iter().map(|a: i128| a as i64).collect();
            return CFWord::periodic(pre, period.into_iter().map(|a| a as i64).collect());
        }
        seen.insert((pp, qq), terms.len());
        // floor((P + √D)/Q), √D irrational
        let a = if qq > 0 { Integer::div_floor(&(pp + root), &qq) } else { Integer::div_floor(&(pp + root + 1), &qq) };
        i64::try_from(a).map_err(|_| Error::Overflow)?;
        terms.push(a);
        pp = a * qq - pp;
        qq = (dd - pp * pp) / qq;
    }
}

fn rational_cf(mut num: BigInt, mut den: BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    while !den.is_zero() {
        let (a, rem) = num.div_mod_floor(&den);
        out.push(a);
        num = std::mem::replace(&mut den, rem);
    }
    out
}

fn expand_interval(value: f64, abs_err: f64, n: usize) -> Result<CFWord> {
    if !value.is_finite() || !abs_err.is_finite() || abs_err < 0.0 {
        return Err(Error::Invalid("approximate input must be finite with a nonnegative error".into()));
    }
    let to_ratio = |v: f64| BigRational::from_f64(v).ok_or_else(|| Error::Invalid("non-finite value".into()));
    let lo = to_ratio(value - abs_err)?;
    let hi = to_ratio(value + abs_err)?;
    let a = rational_cf(lo.numer().clone(), lo.denom().clone());
    let b = rational_cf(hi.numer().clone(), hi.denom().clone());
    let common = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    // the last agreeing term may sit on an endpoint of the cylinder
    let safe = common.min(a.len().min(b.len()).saturating_sub(1));
    if n > safe {
        return Err(Error::PrecisionExhausted { max_safe: safe });
    }
    let mut terms = Vec::with_capacity(n);
    for t in &a[..n] {
        let v: i64 = t.try_into().map_err(|_| Error::Overflow)?;
        if !terms.is_empty() && !t.is_positive() {
            return Err(Error::PrecisionExhausted { max_safe: terms.len() });
        }
        terms.push(v);
    }
    CFWord::sampled_prefix(terms)
}
