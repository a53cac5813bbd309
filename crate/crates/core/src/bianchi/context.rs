use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::hypgeo::{CuspGroup, CuspStabilizer};
use crate::numkit::{IdealSpec, OrderSpec, QuadInt};

/// The congruence group `Γ = {γ ∈ SL₂(O) : c ∈ I}` of an order `O` and a
/// nonzero ideal `I`, with its unit group and cusp stabilizer.
#[derive(Debug, Clone)]
pub struct BianchiContext {
    order: OrderSpec,
    ideal: IdealSpec,
    units: Vec<QuadInt>,
}

impl BianchiContext {
    pub fn new(ideal: IdealSpec) -> Self {
        let order = ideal.order();
        BianchiContext { order, units: order.units(), ideal }
    }

    /// `I = O`.
    pub fn full(order: OrderSpec) -> Self {
        Self::new(IdealSpec::unit(order))
    }

    pub fn order(&self) -> OrderSpec {
        self.order
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn units(&self) -> &[QuadInt] {
        &self.units
    }

    pub fn stabilizer(&self) -> CuspStabilizer {
        CuspStabilizer::with_units(self.order)
    }

    /// Representative of `x` up to multiplication by units: the one with the
    /// smallest `(a, b)`.
    pub fn unit_canonical(&self, x: &QuadInt) -> QuadInt {
        self.units.iter().map(|u| *u * *x).min_by_key(|y| (y.a, y.b)).unwrap_or(*x)
    }
}

impl fmt::Display for BianchiContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}, I=<{}>", self.order.m(), self.ideal)
    }
}

/// `(p, q) ∈ E_I`: `q ∈ I` and `⟨p, q⟩ = O`.
pub fn is_in_ei(ctx: &BianchiContext, p: &QuadInt, q: &QuadInt) -> bool {
    if p.is_zero() && q.is_zero() {
        return false;
    }
    ctx.ideal.contains(q) && IdealSpec::new(vec![*p, *q]).map(|i| i.is_unit()).unwrap_or(false)
}

/// A rational point `p/q` of the boundary, with `(p, q) ∈ E_I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FractionPoint {
    pub p: QuadInt,
    pub q: QuadInt,
}

impl FractionPoint {
    pub fn new(ctx: &BianchiContext, p: QuadInt, q: QuadInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Invalid("denominator must be nonzero".into()));
        }
        if !is_in_ei(ctx, &p, &q) {
            return Err(Error::Invalid(format!("({p}, {q}) is not in E_I")));
        }
        Ok(FractionPoint { p, q })
    }

    pub fn to_complex(&self) -> Complex64 {
        self.p.to_complex() / self.q.to_complex()
    }

    /// `N(q) |x − p/q|`.
    pub fn approximation_quality(&self, x: Complex64) -> f64 {
        self.q.norm() as f64 * (x - self.to_complex()).norm()
    }
}

impl fmt::Display for FractionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.p, self.q)
    }
}

/// `p − t q` with `t ∈ O` chosen so that `p/q − t` has lattice coordinates
/// in `[0, 1)²`. Exact: uses `p q̄ / N(q)`.
fn into_cell(p: &QuadInt, q: &QuadInt) -> QuadInt {
    let o = p.order();
    let n = q.norm();
    let pq = *p * q.conj();
    let t = o.elem(Integer::div_floor(&pq.a, &n), Integer::div_floor(&pq.b, &n));
    *p - t * *q
}

/// All `(p, q) ∈ E_I` with `N(q) ≤ norm_bound`, `p/q` in the fundamental
/// cell `[0, 1)·1 + [0, 1)·ω` of the translation lattice, ordered by
/// `(N(q), q, p)`.
pub fn enumerate_ei(ctx: &BianchiContext, norm_bound: i64) -> Vec<FractionPoint> {
    let mut out = Vec::new();
    for q in ctx.ideal.elements_up_to_norm(norm_bound) {
        // residues of O modulo qO via the HNF basis (s, u + vω) of qO
        let qo = IdealSpec::new(vec![q]).expect("q is nonzero");
        let (s, uv) = qo.basis();
        let mut ps = Vec::new();
        for b in 0..uv.b {
            for a in 0..s.a {
                let p = into_cell(&ctx.order.elem(a, b), &q);
                if is_in_ei(ctx, &p, &q) {
                    ps.push(p);
                }
            }
        }
        ps.sort_by_key(|p| (p.a, p.b));
        out.extend(ps.into_iter().map(|p| FractionPoint { p, q }));
    }
    out
}

/// The image of `r` under the cusp stabilizer whose point is nearest `x`,
/// together with `N(q)|x − p'/q'|` for that image.
pub fn nearest_representative(ctx: &BianchiContext, x: Complex64, r: &FractionPoint) -> (FractionPoint, f64) {
    let mut best: Option<(FractionPoint, f64)> = None;
    for u in &ctx.units {
        // [[u, t], [0, ū]] sends p/q to (u p + t ū q)/(ū q)... with ū = u⁻¹
        let uinv = u.conj();
        let (p1, q1) = (*u * r.p, uinv * r.q);
        let base = p1.to_complex() / q1.to_complex();
        let radius = ctx.order.covering_radius() + 1e-9;
        for t in ctx.order.points_in_disk(x - base, radius) {
            let cand = FractionPoint { p: p1 + t * q1, q: q1 };
            let v = cand.approximation_quality(x);
            if best.as_ref().is_none_or(|b| v < b.1) {
                best = Some((cand, v));
            }
        }
    }
    best.expect("covering disk is never empty")
}

impl CuspGroup for BianchiContext {
    fn order(&self) -> OrderSpec {
        self.order
    }

    fn is_real(&self) -> bool {
        false
    }

    fn lower_left(&self, c_max: f64) -> Vec<QuadInt> {
        let bound = (c_max * c_max + 1e-9).floor() as i64;
        let mut out: Vec<QuadInt> = self
            .ideal
            .elements_up_to_norm(bound)
            .into_iter()
            .filter(|c| self.unit_canonical(c) == *c)
            .collect();
        out.sort_by_key(|c| (c.norm(), c.a, c.b));
        out
    }

    fn is_row(&self, c: &QuadInt, d: &QuadInt) -> bool {
        is_in_ei(self, d, c)
    }

    fn rotations(&self) -> Vec<Complex64> {
        self.stabilizer().rotations().to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> OrderSpec {
        OrderSpec::gaussian()
    }

    #[test]
    fn ei_examples() {
        let o = g();
        let full = BianchiContext::full(o);
        assert!(is_in_ei(&full, &o.omega(), &o.elem(1, 1)));
        assert!(!is_in_ei(&full, &o.int(2), &o.elem(1, 1)));
        let half = BianchiContext::new(IdealSpec::new(vec![o.elem(1, 1)]).unwrap());
        assert!(is_in_ei(&half, &o.one(), &o.int(2)));
        assert!(!is_in_ei(&half, &o.int(2), &o.one()));
    }

    #[test]
    fn enumeration_examples() {
        let o = g();
        let full = BianchiContext::full(o);
        let e1 = enumerate_ei(&full, 1);
        assert_eq!(e1.len(), 4);
        assert!(e1.iter().all(|f| f.p.is_zero() && f.q.is_unit()));
        assert!(enumerate_ei(&full, 0).is_empty());
        let half = BianchiContext::new(IdealSpec::new(vec![o.elem(1, 1)]).unwrap());
        assert!(enumerate_ei(&half, 1).is_empty());
        assert!(!enumerate_ei(&half, 2).is_empty());
    }

    #[test]
    fn enumeration_is_complete_and_in_cell() {
        let o = OrderSpec::maximal(3).unwrap();
        let ctx = BianchiContext::full(o);
        let pts = enumerate_ei(&ctx, 30);
        for f in &pts {
            let (a, b) = o.coordinates(f.to_complex());
            assert!((-1e-12..1.0 - 1e-12).contains(&a) && (-1e-12..1.0 - 1e-12).contains(&b), "{f}");
            assert!(is_in_ei(&ctx, &f.p, &f.q));
        }
        // count per q equals #(O/qO)^× = Euler phi of q
        for q in ctx.ideal().elements_up_to_norm(30) {
            let n = pts.iter().filter(|f| f.q == q).count();
            let brute = (0..q.norm())
                .flat_map(|a| (0..q.norm()).map(move |b| (a, b)))
                .map(|(a, b)| into_cell(&o.elem(a, b), &q))
                .filter(|p| is_in_ei(&ctx, p, &q))
                .collect::<std::collections::HashSet<_>>()
                .len();
            assert_eq!(n, brute, "q = {q}");
        }
    }

    #[test]
    fn nearest_representative_is_nearest() {
        let o = g();
        let ctx = BianchiContext::full(o);
        let x = Complex64::new(0.3, 0.77);
        for f in enumerate_ei(&ctx, 20) {
            let (img, v) = nearest_representative(&ctx, x, &f);
            let d = crate::hypgeo::cuspidal_distance(x, f.to_complex(), &ctx.stabilizer());
            assert!((v - d * f.q.norm() as f64).abs() < 1e-9);
            assert_eq!(img.q.norm(), f.q.norm());
            assert!(is_in_ei(&ctx, &img.p, &img.q));
        }
    }

    #[test]
    fn rows_and_lower_left() {
        let o = g();
        let ctx = BianchiContext::full(o);
        let ll = ctx.lower_left(2f64.sqrt());
        // one per unit class: 1 and 1+i
        assert_eq!(ll.len(), 2);
        assert!(ctx.is_row(&o.elem(1, 1), &o.one()));
        assert!(!ctx.is_row(&o.elem(1, 1), &o.int(2)));
    }
}
