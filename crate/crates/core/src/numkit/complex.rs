use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numkit::order::is_squarefree;

/// An exact complex number `re + im·i√k` with rational `re`, `im` and
/// squarefree `k ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactComplex {
    pub re: Ratio<i64>,
    pub im: Ratio<i64>,
    pub k: i64,
}

impl ExactComplex {
    pub fn new(re: Ratio<i64>, im: Ratio<i64>, k: i64) -> Result<Self> {
        if !is_squarefree(k) {
            return Err(Error::Invalid(format!("radicand {k} must be squarefree")));
        }
        Ok(ExactComplex { re, im, k })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN) * (self.k as f64).sqrt(),
        )
    }

    /// Membership in `K_{-m} = Q(i√m)`.
    pub fn in_field(&self, m: i64) -> bool {
        self.im.is_zero() || self.k == m
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+({})*i*sqrt{}", self.re, self.im, self.k)
    }
}

/// A complex input: exact when it was written with rationals and square
/// roots, approximate when it contained a decimal literal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComplexInput {
    Exact(ExactComplex),
    Approx(Complex64),
}

impl ComplexInput {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            ComplexInput::Exact(x) => x.to_complex(),
            ComplexInput::Approx(z) => *z,
        }
    }

    /// Parses expressions such as `(1+i*sqrt3)/2`, `1/2+i/3`, `2-3*i*sqrt(7)`,
    /// `0.25+0.4i`.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("cannot parse complex number {s:?}"));
        let (body, outer_den) = split_outer_division(&compact).ok_or_else(bad)?;
        let terms = parse_sum(body).ok_or_else(bad)?;

        let mut re = Ratio::zero();
        let mut im = Ratio::zero();
        let mut k = None;
        let mut approx = Complex64::new(0.0, 0.0);
        let mut is_approx = false;
        for t in &terms {
            approx += t.value();
            match t {
                Term::Exact { coef, imag, root } => {
                    // √(s²k') = s√k'
                    let (s, core) = split_square(*root).ok_or_else(bad)?;
                    let c = *coef * Ratio::from_integer(s);
                    match (imag, core) {
                        (false, 1) => re += c,
                        (true, core) => {
                            if let Some(k0) = k {
                                if k0 != core {
                                    is_approx = true;
                                }
                            }
                            k = Some(core);
                            im += c;
                        }
                        (false, _) => is_approx = true,
                    }
                }
                Term::Float { .. } => is_approx = true,
            }
        }
        let den = outer_den.unwrap_or(1);
        if den == 0 {
            return Err(bad());
        }
        if is_approx {
            return Ok(ComplexInput::Approx(approx / den as f64));
        }
        let d = Ratio::from_integer(den);
        Ok(ComplexInput::Exact(ExactComplex::new(re / d, im / d, k.unwrap_or(1))?))
    }
}

enum Term {
    Exact { coef: Ratio<i64>, imag: bool, root: i64 },
    Float { value: Complex64 },
}

impl Term {
    fn value(&self) -> Complex64 {
        match self {
            Term::Exact { coef, imag, root } => {
                let v = coef.to_f64().unwrap_or(f64::NAN) * (*root as f64).sqrt();
                if *imag {
                    Complex64::new(0.0, v)
                } else {
                    Complex64::new(v, 0.0)
                }
            }
            Term::Float { value } => *value,
        }
    }
}

fn split_square(n: i64) -> Option<(i64, i64)> {
    if n < 1 {
        return None;
    }
    let (mut s, mut rest, mut f) = (1i64, n, 2i64);
    while f * f <= rest {
        while rest % (f * f) == 0 {
            rest /= f * f;
            s *= f;
        }
        f += 1;
    }
    Some((s, rest))
}

fn split_outer_division(s: &str) -> Option<(&str, Option<i64>)> {
    if let Some(rest) = s.strip_prefix('(') {
        let close = rest.rfind(')')?;
        let inner = &rest[..close];
        let tail = &rest[close + 1..];
        if tail.is_empty() {
            return Some((inner, None));
        }
        let den = tail.strip_prefix('/')?.parse().ok()?;
        return Some((inner, Some(den)));
    }
    Some((s, None))
}

fn parse_sum(s: &str) -> Option<Vec<Term>> {
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut depth = 0;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if i > 0 && depth == 0 && !matches!(bytes[i - 1], b'e' | b'E') => {
                terms.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    terms.push(&s[start..]);
    terms.into_iter().map(parse_term).collect()
}

fn parse_term(t: &str) -> Option<Term> {
    let (sign, body) = match t.as_bytes().first()? {
        b'+' => (1i64, &t[1..]),
        b'-' => (-1i64, &t[1..]),
        _ => (1, t),
    };
    if body.is_empty() {
        return None;
    }
    // split off a trailing "/den"
    let (body, den) = match body.rfind('/') {
        Some(pos) if !body[pos + 1..].contains(|c: char| !c.is_ascii_digit()) => {
            (&body[..pos], body[pos + 1..].parse::<i64>().ok()?)
        }
        _ => (body, 1),
    };
    let mut imag = false;
    let mut root = 1i64;
    let mut coef: Option<&str> = None;
    let mut float = false;
    for factor in body.split('*') {
        if factor == "i" {
            imag = true;
        } else if let Some(r) = factor.strip_prefix("sqrt") {
            let r = r.trim_start_matches('(').trim_end_matches(')');
            root *= r.parse::<i64>().ok()?;
        } else if let Some(num) = factor.strip_suffix('i') {
            imag = true;
            coef = Some(num);
        } else {
            coef = Some(factor);
        }
    }
    if den == 0 {
        return None;
    }
    let coef_str = coef.unwrap_or("1");
    if coef_str.contains('.') || coef_str.contains('e') {
        float = true;
    }
    if float {
        let v: f64 = coef_str.parse().ok()?;
        let v = sign as f64 * v * (root as f64).sqrt() / den as f64;
        let value = if imag { Complex64::new(0.0, v) } else { Complex64::new(v, 0.0) };
        return Some(Term::Float { value });
    }
    let n: i64 = coef_str.parse().ok()?;
    Some(Term::Exact { coef: Ratio::new(sign * n, den), imag, root })
}
