use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::point::{cygan_dist, HeisInput, HeisPoint};
use crate::bianchi::BianchiContext;
use crate::error::{Error, Result};
use crate::numkit::{near_rational, IdealSpec, OrderSpec, QuadInt, RATIONAL_DENOMINATOR_BOUND};
use crate::spectra::{Direction, EstimatorTrace};

/// Triples with `|c| d(x, r)` at or above this are never searched for.
pub const SEARCH_CAP: f64 = 16.0;

/// `(a, α, c)` representing the rational point `(a/c, α/c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HeisRational {
    pub a: QuadInt,
    pub alpha: QuadInt,
    pub c: QuadInt,
}

impl HeisRational {
    pub fn to_point(&self) -> HeisPoint {
        let c = self.c.to_complex();
        HeisPoint { z: self.a.to_complex() / c, w: self.alpha.to_complex() / c }
    }
}

impl fmt::Display for HeisRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, alpha={}, c={})", self.a, self.alpha, self.c)
    }
}

/// `(a, α, c) ∈ E'_I`: `α, c ∈ I`, `2 Re a c̄ = N(α)` and `⟨a, α, c⟩ = O`.
/// Only maximal orders are supported.
pub fn is_in_eprime_i(ctx: &BianchiContext, a: &QuadInt, alpha: &QuadInt, c: &QuadInt) -> Result<bool> {
    if !ctx.order().is_maximal() {
        return Err(Error::NonMaximalOrder);
    }
    Ok(admissible(ctx, a, alpha, c))
}

fn admissible(ctx: &BianchiContext, a: &QuadInt, alpha: &QuadInt, c: &QuadInt) -> bool {
    ctx.ideal().contains(alpha)
        && ctx.ideal().contains(c)
        && a.re2_mul_conj(c) == alpha.norm()
        && IdealSpec::new(vec![*a, *alpha, *c]).map(|i| i.is_unit()).unwrap_or(false)
}

/// `log|c| + log(2 Im ω)`, the depth to which the horoball of `(a/c, α/c)`
/// enters the one at `∞`.
pub fn heis_penetration(c: &QuadInt) -> Result<f64> {
    if c.is_zero() {
        return Err(Error::Invalid("c must be nonzero".into()));
    }
    Ok(c.abs().ln() + (2.0 * c.order().im_omega()).ln())
}

/// A left translation `(ζ, η)` with `ζ, η ∈ O`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Translation {
    zeta: QuadInt,
    eta: QuadInt,
}

impl Translation {
    fn point(&self) -> HeisPoint {
        HeisPoint { z: self.zeta.to_complex(), w: self.eta.to_complex() }
    }

    fn inverse(&self) -> Translation {
        Translation { zeta: self.zeta.conj(), eta: -self.eta }
    }

    /// `λ · (a/c, α/c) = ((ζc + a + αη̄)/c, (α + ηc)/c)`.
    fn act(&self, r: &HeisRational) -> HeisRational {
        HeisRational { a: self.zeta * r.c + r.a + r.alpha * self.eta.conj(), alpha: r.alpha + self.eta * r.c, c: r.c }
    }
}

/// Some `ζ ∈ O` with `2 Re ζ = n`, if one exists.
fn zeta_with_trace(order: OrderSpec, n: i64) -> Option<QuadInt> {
    // 2 Re(x + yω) = 2x + y t
    let t = order.trace();
    (0..2).find_map(|y| {
        let rest = n - y * t;
        (rest % 2 == 0).then(|| order.elem(rest / 2, y))
    })
}

/// Moves `x` near the origin by an integral left translation.
fn reduce(order: OrderSpec, x: &HeisPoint) -> (HeisPoint, Translation) {
    let cands = order.points_in_disk(x.w, 2.0 * order.covering_radius() + 1.0);
    let shift = cands
        .into_iter()
        .filter_map(|eta| zeta_with_trace(order, eta.norm()).map(|zeta| (eta, zeta)))
        .min_by(|p, q| (p.0.to_complex() - x.w).norm().total_cmp(&(q.0.to_complex() - x.w).norm()));
    let mut lam = match shift {
        Some((eta, zeta)) => Translation { zeta, eta }.inverse(),
        None => Translation { zeta: order.zero(), eta: order.zero() },
    };
    let mut y = super::point::heis_mul(&lam.point(), x);
    // vertical translations by the purely imaginary elements of O
    let v = order.omega() * 2 - order.int(order.trace());
    let k = (y.z.im / v.to_complex().im).round() as i64;
    if k != 0 {
        let step = Translation { zeta: v * -k, eta: order.zero() };
        y = super::point::heis_mul(&step.point(), &y);
        lam = Translation { zeta: step.zeta + lam.zeta, eta: lam.eta };
    }
    (y, lam)
}

/// Liminf estimate of `|c| d(x, (a/c, α/c))` over `E'_I`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CPrimeEstimate {
    pub estimate: f64,
    #[serde(skip)]
    pub witness: HeisRational,
    /// Running minimum, one shell per norm value in the window.
    pub trace: EstimatorTrace,
    /// Norm window `[start, bound]`.
    pub window: (i64, i64),
    /// Set when a float input is within rounding of a rational point.
    pub suspect_parabolic: bool,
}

/// Best triple with denominator `c` for the reduced point `x`, among those
/// with `|c| d < cap`.
fn best_for_denominator(ctx: &BianchiContext, x: &HeisPoint, c: &QuadInt, cap: f64) -> Option<(HeisRational, f64)> {
    let order = ctx.order();
    let cc = c.to_complex();
    let abs_c = cc.norm();
    let mut best: Option<(HeisRational, f64)> = None;
    // |c| d < cap forces |α − c w| < cap and |a − (α w̄ − c z̄)| < cap²/(2|c|)
    for alpha in ctx.ideal().points_in_disk(cc * x.w, cap) {
        let center = alpha.to_complex() * x.w.conj() - cc * x.z.conj();
        for a in order.points_in_disk(center, cap * cap / (2.0 * abs_c)) {
            if a.re2_mul_conj(c) != alpha.norm() || !admissible(ctx, &a, &alpha, c) {
                continue;
            }
            let r = HeisRational { a, alpha, c: *c };
            let v = abs_c * cygan_dist(x, &r.to_point());
            if v < best.as_ref().map_or(cap, |b| b.1) {
                best = Some((r, v));
            }
        }
    }
    best
}

/// Estimates `c'_I(x) = liminf |c| d(x, (a/c, α/c))` by the running minimum
/// over denominators with `√B ≤ N(c) ≤ B`. Maximal orders only.
pub fn c_prime_estimate(ctx: &BianchiContext, x: &HeisInput, norm_bound: i64) -> Result<CPrimeEstimate> {
    let order = ctx.order();
    if !order.is_maximal() {
        return Err(Error::NonMaximalOrder);
    }
    if norm_bound < 1 {
        return Err(Error::Invalid(format!("norm bound {norm_bound} must be positive")));
    }
    if x.is_field_point(order.m()) {
        return Err(Error::ParabolicPoint);
    }
    let p = x.to_point();
    let suspect_parabolic = matches!(x, HeisInput::Approx(_)) && looks_rational(order, &p);
    let (y, lam) = reduce(order, &p);
    let back = lam.inverse();

    let start = (norm_bound as f64).sqrt().ceil() as i64;
    let mut trace = EstimatorTrace::new(Direction::Min, start as f64);
    let mut best: Option<(HeisRational, f64)> = None;
    let mut cs = ctx.ideal().elements_up_to_norm(norm_bound);
    cs.retain(|c| c.norm() >= start);
    cs.sort_by_key(|c| (c.norm(), c.a, c.b));

    let mut i = 0;
    while i < cs.len() {
        let n = cs[i].norm();
        let mut shell: Option<(HeisRational, f64)> = None;
        while i < cs.len() && cs[i].norm() == n {
            let cap = best.as_ref().map_or(SEARCH_CAP, |b| b.1);
            if let Some((r, v)) = best_for_denominator(ctx, &y, &cs[i], cap) {
                if shell.as_ref().is_none_or(|s| v < s.1) {
                    shell = Some((r, v));
                }
            }
            i += 1;
        }
        if let Some((r, v)) = shell {
            let r = back.act(&r);
            if best.as_ref().is_none_or(|b| v < b.1) {
                best = Some((r, v));
            }
            trace.record(n as f64, v, || r.to_string(), false);
        } else if !trace.is_empty() {
            trace.record(n as f64, f64::INFINITY, String::new, false);
        }
    }
    let (witness, estimate) = best.ok_or(Error::NoAdmissibleTriples)?;
    Ok(CPrimeEstimate { estimate, witness, trace, window: (start, norm_bound), suspect_parabolic })
}

fn looks_rational(order: OrderSpec, p: &HeisPoint) -> bool {
    let near = |z: Complex64| {
        let (a, b) = order.coordinates(z);
        near_rational(a, RATIONAL_DENOMINATOR_BOUND).is_some() && near_rational(b, RATIONAL_DENOMINATOR_BOUND).is_some()
    };
    near(p.z) && near(p.w)
}
