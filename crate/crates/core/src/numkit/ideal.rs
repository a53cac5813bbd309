use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkit::{OrderSpec, QuadInt};

/// A nonzero ideal of an imaginary quadratic order.
///
/// The ideal is stored as a ℤ-basis `{s, u + vω}` in Hermite normal form
/// (`s, v > 0`, `0 ≤ u < s`), so membership is two divisibility tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    generators: Vec<QuadInt>,
    order: OrderSpec,
    s: i64,
    u: i64,
    v: i64,
}

/// HNF of the ℤ-span of integer vectors `(a, b)`; `None` for rank < 2.
fn hnf(mut vecs: Vec<(i64, i64)>) -> Option<(i64, i64, i64)> {
    vecs.retain(|&(a, b)| a != 0 || b != 0);
    // Euclid on the second coordinate until one vector carries it.
    loop {
        let pivot = vecs
            .iter()
            .enumerate()
            .filter(|(_, v)| v.1 != 0)
            .min_by_key(|(_, v)| v.1.abs())
            .map(|(i, _)| i);
        let p = pivot?;
        let (pa, pb) = vecs[p];
        let mut reduced = false;
        for (i, v) in vecs.iter_mut().enumerate() {
            if i != p && v.1 != 0 {
                let k = v.1.div_euclid(pb);
                v.0 -= k * pa;
                v.1 -= k * pb;
                reduced = true;
            }
        }
        vecs.retain(|&(a, b)| a != 0 || b != 0);
        if !reduced {
            let (mut u, mut v) = vecs.iter().copied().find(|x| x.1 != 0).unwrap();
            let s = vecs
                .iter()
                .filter(|x| x.1 == 0)
                .fold(0i64, |g, x| num_integer::gcd(g, x.0));
            if s == 0 {
                return None;
            }
            if v < 0 {
                u = -u;
                v = -v;
            }
            return Some((s, u.rem_euclid(s), v));
        }
    }
}

impl IdealSpec {
    /// The ideal generated by `generators` as a module over the order.
    pub fn new(generators: Vec<QuadInt>) -> Result<Self> {
        let order = generators
            .first()
            .map(|g| g.order())
            .ok_or(Error::ZeroIdeal)?;
        if generators.iter().all(|g| g.is_zero()) {
            return Err(Error::ZeroIdeal);
        }
        let w = order.omega();
        let mut vecs = Vec::with_capacity(2 * generators.len());
        for g in &generators {
            let gw = *g * w;
            vecs.push((g.a, g.b));
            vecs.push((gw.a, gw.b));
        }
        let (s, u, v) = hnf(vecs).ok_or(Error::ZeroIdeal)?;
        Ok(IdealSpec { generators, order, s, u, v })
    }

    /// The unit ideal `O`.
    pub fn unit(order: OrderSpec) -> Self {
        IdealSpec::new(vec![order.one()]).expect("unit ideal")
    }

    /// Parses a comma-separated generator list, e.g. `"1+1*w"` or `"2,1+w"`.
    pub fn parse(s: &str, order: OrderSpec) -> Result<Self> {
        let gens = s
            .split(',')
            .map(|g| QuadInt::parse(g, order))
            .collect::<Result<Vec<_>>>()?;
        IdealSpec::new(gens)
    }

    pub fn order(&self) -> OrderSpec {
        self.order
    }

    pub fn generators(&self) -> &[QuadInt] {
        &self.generators
    }

    /// The HNF ℤ-basis `(s, u + vω)`.
    pub fn basis(&self) -> (QuadInt, QuadInt) {
        (self.order.int(self.s), self.order.elem(self.u, self.v))
    }

    /// Index `[O : I]`, which is also the ideal norm.
    pub fn index(&self) -> i64 {
        self.s * self.v
    }

    pub fn is_unit(&self) -> bool {
        self.index() == 1
    }

    pub fn contains(&self, x: &QuadInt) -> bool {
        if x.b % self.v != 0 {
            return false;
        }
        let k = x.b / self.v;
        (x.a - k * self.u) % self.s == 0
    }

    pub fn contains_ideal(&self, other: &IdealSpec) -> bool {
        let (b1, b2) = other.basis();
        self.contains(&b1) && self.contains(&b2)
    }

    /// Every element of the ideal within `radius` of `center`.
    pub fn points_in_disk(&self, center: Complex64, radius: f64) -> Vec<QuadInt> {
        let mut out = Vec::new();
        if !(radius >= 0.0) || !radius.is_finite() {
            return out;
        }
        // x = k1·s + k2·(u + vω); Im x = k2·v·Im ω.
        let w = self.order.omega_complex();
        let e1 = self.s as f64;
        let e2 = Complex64::new(self.u as f64 + self.v as f64 * w.re, self.v as f64 * w.im);
        let k2_lo = ((center.im - radius) / e2.im).ceil() as i64;
        let k2_hi = ((center.im + radius) / e2.im).floor() as i64;
        let r2 = radius * radius;
        for k2 in k2_lo..=k2_hi {
            let base = e2 * k2 as f64;
            let dy = base.im - center.im;
            let span = (r2 - dy * dy).max(0.0).sqrt();
            let k1_lo = ((center.re - span - base.re) / e1).ceil() as i64;
            let k1_hi = ((center.re + span - base.re) / e1).floor() as i64;
            for k1 in k1_lo..=k1_hi {
                let x = self.order.elem(k1 * self.s + k2 * self.u, k2 * self.v);
                if (x.to_complex() - center).norm_sqr() <= r2 * (1.0 + 1e-12) + 1e-300 {
                    out.push(x);
                }
            }
        }
        out
    }

    /// Nonzero elements with norm at most `bound`, sorted by (norm, a, b).
    pub fn elements_up_to_norm(&self, bound: i64) -> Vec<QuadInt> {
        if bound < 1 {
            return Vec::new();
        }
        let mut out: Vec<QuadInt> = self
            .points_in_disk(Complex64::new(0.0, 0.0), (bound as f64).sqrt() + 1e-9)
            .into_iter()
            .filter(|x| !x.is_zero() && x.norm() <= bound)
            .collect();
        out.sort_by_key(|x| (x.norm(), x.a, x.b));
        out
    }

    /// An upper bound for the covering radius of the ideal lattice.
    pub fn covering_radius(&self) -> f64 {
        let (b1, b2) = self.basis();
        0.5 * (b1.abs() + b2.abs())
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", gens.join(","))
    }
}

/// True iff the generators span the whole order.
pub fn ideal_is_unit(gens: &[QuadInt]) -> Result<bool> {
    Ok(IdealSpec::new(gens.to_vec())?.is_unit())
}

/// Membership of `x` in `ideal`.
pub fn ideal_contains(ideal: &IdealSpec, x: &QuadInt) -> bool {
    ideal.contains(x)
}
