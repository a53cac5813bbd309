use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numkit::QuadSurd;

/// What a [`CFWord`] stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordKind {
    /// Eventually periodic: an exact quadratic irrational, and a closed geodesic.
    Periodic,
    /// The first terms of some real number whose remaining terms are unknown.
    SampledPrefix,
    /// A complete finite expansion, i.e. a rational number.
    Finite,
}

/// A continued-fraction word `[a0; a1, ..., (b1, ..., bk)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CFWord {
    preperiod: Vec<i64>,
    period: Vec<i64>,
    kind: WordKind,
}

fn check_quotients(terms: &[i64], first_free: bool) -> Result<()> {
    for (i, &a) in terms.iter().enumerate() {
        if (i > 0 || !first_free) && a < 1 {
            return Err(Error::Invalid(format!("partial quotient {a} at position {i} must be >= 1")));
        }
    }
    Ok(())
}

impl CFWord {
    /// `[pre; (period)]`. The first entry of `pre` may be any integer.
    pub fn periodic(preperiod: Vec<i64>, period: Vec<i64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyWord);
        }
        check_quotients(&preperiod, true)?;
        check_quotients(&period, false)?;
        Ok(CFWord { preperiod, period, kind: WordKind::Periodic })
    }

    /// Purely periodic word `[(period)]`.
    pub fn purely_periodic(period: Vec<i64>) -> Result<Self> {
        Self::periodic(Vec::new(), period)
    }

    /// The known leading terms of an otherwise unspecified real number.
    pub fn sampled_prefix(terms: Vec<i64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyWord);
        }
        check_quotients(&terms, true)?;
        Ok(CFWord { preperiod: terms, period: Vec::new(), kind: WordKind::SampledPrefix })
    }

    /// A finite expansion, which denotes a rational number.
    pub fn finite(terms: Vec<i64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyWord);
        }
        check_quotients(&terms, true)?;
        Ok(CFWord { preperiod: terms, period: Vec::new(), kind: WordKind::Finite })
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn is_periodic(&self) -> bool {
        self.kind == WordKind::Periodic
    }

    pub fn preperiod(&self) -> &[i64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    /// Number of explicitly stored terms (preperiod + one period).
    pub fn stored_len(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    /// The `i`-th partial quotient, if determined.
    pub fn term(&self, i: usize) -> Option<i64> {
        if i < self.preperiod.len() {
            return Some(self.preperiod[i]);
        }
        if self.period.is_empty() {
            return None;
        }
        let j = (i - self.preperiod.len()) % self.period.len();
        Some(self.period[j])
    }

    /// The first `n` partial quotients (fewer for finite words).
    pub fn terms(&self, n: usize) -> Vec<i64> {
        (0..n).map_while(|i| self.term(i)).collect()
    }

    /// Exact value of a periodic word.
    pub fn value(&self) -> Result<QuadSurd> {
        match self.kind {
            WordKind::Periodic => {}
            WordKind::Finite => return Err(Error::RationalInput),
            WordKind::SampledPrefix => {
                return Err(Error::Invalid("a sampled prefix has no exact value".into()))
            }
        }
        let tail = purely_periodic_value(&self.period);
        // x = [pre; tail] = (P·tail + P')/(Q·tail + Q')
        let (mut p, mut p_prev, mut q, mut q_prev) = (1i128, 0i128, 0i128, 1i128);
        for &a in &self.preperiod {
            let a = a as i128;
            (p, p_prev) = (a * p + p_prev, p);
            (q, q_prev) = (a * q + q_prev, q);
        }
        let num = tail * QuadSurd::integer(p) + QuadSurd::integer(p_prev);
        let den = tail * QuadSurd::integer(q) + QuadSurd::integer(q_prev);
        Ok(num / den)
    }

    /// The same closed geodesic read from a different starting point.
    pub fn rotate_period(&self, k: usize) -> Result<Self> {
        if self.period.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = self.period.len();
        let rotated: Vec<i64> = (0..n).map(|i| self.period[(i + k) % n]).collect();
        CFWord::periodic(self.preperiod.clone(), rotated)
    }
}

/// `y = [(b1, ..., bk)]`, the positive root of `q_k y² + (q_{k−1} − p_k) y − p_{k−1} = 0`.
pub(crate) fn purely_periodic_value(period: &[i64]) -> QuadSurd {
    let (mut p, mut p_prev, mut q, mut q_prev) = (1i128, 0i128, 0i128, 1i128);
    for &a in period {
        let a = a as i128;
        (p, p_prev) = (a * p + p_prev, p);
        (q, q_prev) = (a * q + q_prev, q);
    }
    let b = p - q_prev;
    let disc = b * b + 4 * q * p_prev;
    QuadSurd::new(b, 1, disc, 2 * q).expect("periodic continued fraction has a valid discriminant")
}

fn join(terms: &[i64]) -> String {
    terms.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for CFWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.preperiod.split_first() {
            Some((a0, [])) => format!("{a0}"),
            Some((a0, rest)) => format!("{a0}; {}", join(rest)),
            None => String::new(),
        };
        let sep = if self.preperiod.len() == 1 { "; " } else { ", " };
        match self.kind {
            WordKind::Periodic if head.is_empty() => write!(f, "[({})]", join(&self.period)),
            WordKind::Periodic => write!(f, "[{head}{sep}({})]", join(&self.period)),
            WordKind::SampledPrefix => write!(f, "[{head}{sep}...]"),
            WordKind::Finite => write!(f, "[{head}]"),
        }
    }
}

impl FromStr for CFWord {
    type Err = Error;

    /// Accepts `[a0; a1, (b1, b2)]` (periodic), `[a0; a1, a2, ...]`
    /// (sampled prefix) and `[a0; a1, a2]` (finite, rational).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("cannot parse continued fraction {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected [...]"))?;
        let (inner, sampled) = match inner.strip_suffix("...") {
            Some(rest) => (rest.trim_end_matches([',', ';']), true),
            None => (inner, false),
        };
        let normalized = inner.replace(';', ",");
        let mut pre = Vec::new();
        let mut period = Vec::new();
        let mut in_period = false;
        let mut closed = false;
        for tok in normalized.split(',').filter(|t| !t.is_empty()) {
            if closed {
                return Err(bad("terms after the closing parenthesis"));
            }
            let mut tok = tok;
            if let Some(rest) = tok.strip_prefix('(') {
                if in_period {
                    return Err(bad("nested parenthesis"));
                }
                in_period = true;
                tok = rest;
            }
            if let Some(rest) = tok.strip_suffix(')') {
                if !in_period {
                    return Err(bad("unbalanced parenthesis"));
                }
                closed = true;
                tok = rest;
            }
            let a: i64 = tok.parse().map_err(|_| bad("non-integer term"))?;
            if in_period {
                period.push(a);
            } else {
                pre.push(a);
            }
        }
        if in_period && !closed {
            return Err(bad("unbalanced parenthesis"));
        }
        match (in_period, sampled) {
            (true, true) => Err(bad("a periodic word cannot also be a sampled prefix")),
            (true, false) => CFWord::periodic(pre, period),
            (false, true) => CFWord::sampled_prefix(pre),
            (false, false) => CFWord::finite(pre),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let g: CFWord = "[1;(1)]".parse().unwrap();
        assert_eq!(g.preperiod(), &[1]);
        assert_eq!(g.period(), &[1]);
        assert_eq!(g.to_string(), "[1; (1)]");

        let e: CFWord = "[2;1,2,1,1,4,...]".parse().unwrap();
        assert_eq!(e.kind(), WordKind::SampledPrefix);
        assert_eq!(e.to_string(), "[2; 1, 2, 1, 1, 4, ...]");

        let r: CFWord = "[2]".parse().unwrap();
        assert_eq!(r.kind(), WordKind::Finite);

        let p: CFWord = "[(2, 2, 1, 1)]".parse().unwrap();
        assert!(p.preperiod().is_empty());
        assert_eq!(p.to_string(), "[(2, 2, 1, 1)]");
        assert_eq!(p.to_string().parse::<CFWord>().unwrap(), p);

        let q: CFWord = "[3; 1, 4, (2, 5)]".parse().unwrap();
        assert_eq!(q.to_string().parse::<CFWord>().unwrap(), q);
    }

    #[test]
    fn parse_errors() {
        for bad in ["1;2", "[1;(2]", "[1;2),3]", "[1;(2),3]", "[1;x]", "[(1),...]", "[1;0,(2)]"] {
            assert!(bad.parse::<CFWord>().is_err(), "{bad} should fail");
        }
        assert_eq!(CFWord::periodic(vec![1], vec![]), Err(Error::EmptyWord));
    }

    #[test]
    fn exact_values() {
        let phi = CFWord::purely_periodic(vec![1]).unwrap().value().unwrap();
        assert_eq!(phi, QuadSurd::new(1, 1, 5, 2).unwrap());
        let sqrt2 = CFWord::periodic(vec![1], vec![2]).unwrap().value().unwrap();
        assert_eq!(sqrt2, QuadSurd::sqrt(2).unwrap());
        // [1; 1, 1, ...] with preperiod is also φ
        let phi2 = CFWord::periodic(vec![1], vec![1]).unwrap().value().unwrap();
        assert_eq!(phi2, phi);
        let neg = CFWord::periodic(vec![-2], vec![1]).unwrap().value().unwrap();
        assert_eq!(neg, QuadSurd::integer(-2) + phi.recip().unwrap());
    }

    #[test]
    fn terms_cycle_through_the_period() {
        let w = CFWord::periodic(vec![3, 1], vec![2, 5]).unwrap();
        assert_eq!(w.terms(7), vec![3, 1, 2, 5, 2, 5, 2]);
        let f = CFWord::finite(vec![1, 2]).unwrap();
        assert_eq!(f.terms(5), vec![1, 2]);
    }
}
