use num_complex::Complex64;
use serde::Serialize;

use super::context::{is_in_ei, BianchiContext, FractionPoint};
use crate::error::{Error, Result};
use crate::numkit::{near_rational, ComplexInput, QuadInt, RATIONAL_DENOMINATOR_BOUND};
use crate::spectra::{Direction, EstimatorTrace};

/// Liminf estimate of `N(q) |x − p/q|` over `(p, q) ∈ E_I`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CiEstimate {
    pub estimate: f64,
    #[serde(skip)]
    pub witness: FractionPoint,
    /// Running minimum, one shell per norm value in the window.
    pub trace: EstimatorTrace,
    /// Norm window `[start, bound]`.
    pub window: (i64, i64),
    /// Set when a float input is within rounding of a field element.
    pub suspect_parabolic: bool,
}

/// The best `p` for a fixed `q`: among coprime `p` near `q x`, the one
/// minimizing `|q x − p|`, searched within `radius` of `q x`.
fn best_numerator(ctx: &BianchiContext, x: Complex64, q: &QuadInt, radius: f64) -> Option<(QuadInt, f64)> {
    let qx = q.to_complex() * x;
    ctx.order()
        .points_in_disk(qx, radius)
        .into_iter()
        .filter(|p| is_in_ei(ctx, p, q))
        .map(|p| {
            let v = (qx - p.to_complex()).norm();
            (p, v)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Estimates `c_I(x) = liminf N(q)|x − p/q|` by the running minimum over
/// denominators with `√B ≤ N(q) ≤ B`.
///
/// Exact inputs in the field are cusps and rejected; float inputs that look
/// like field elements are flagged.
pub fn c_i_estimate(ctx: &BianchiContext, x: &ComplexInput, norm_bound: i64) -> Result<CiEstimate> {
    if norm_bound < 1 {
        return Err(Error::Invalid(format!("norm bound {norm_bound} must be positive")));
    }
    let suspect_parabolic = match x {
        ComplexInput::Exact(e) if e.in_field(ctx.order().m()) => return Err(Error::ParabolicPoint),
        ComplexInput::Exact(_) => false,
        ComplexInput::Approx(z) => {
            let (a, b) = ctx.order().coordinates(*z);
            near_rational(a, RATIONAL_DENOMINATOR_BOUND).is_some()
                && near_rational(b, RATIONAL_DENOMINATOR_BOUND).is_some()
        }
    };
    let z = x.to_complex();
    // translation invariance: work with a representative near the origin
    let shift = ctx.order().nearest(z);
    let x0 = z - shift.to_complex();

    let start = (norm_bound as f64).sqrt().ceil() as i64;
    let mut trace = EstimatorTrace::new(Direction::Min, start as f64);
    let mut best: Option<(FractionPoint, f64)> = None;
    let mut qs = ctx.ideal().elements_up_to_norm(norm_bound);
    qs.retain(|q| q.norm() >= start);
    qs.sort_by_key(|q| (q.norm(), q.a, q.b));

    let cover = 2.0 * ctx.order().covering_radius() + 1e-9;
    let mut i = 0;
    while i < qs.len() {
        let n = qs[i].norm();
        let mut shell_best: Option<(FractionPoint, f64)> = None;
        while i < qs.len() && qs[i].norm() == n {
            let q = qs[i];
            i += 1;
            let abs_q = q.abs();
            let radius = match &best {
                Some((_, v)) => (v / abs_q).min(cover),
                None => cover,
            };
            if let Some((p, dist)) = best_numerator(ctx, x0, &q, radius) {
                let v = abs_q * dist;
                if shell_best.as_ref().is_none_or(|s| v < s.1) {
                    shell_best = Some((FractionPoint { p: p + shift * q, q }, v));
                }
            }
        }
        if let Some((f, v)) = shell_best {
            if best.as_ref().is_none_or(|b| v < b.1) {
                best = Some((f, v));
            }
            trace.record(n as f64, v, || f.to_string(), false);
        } else if !trace.is_empty() {
            trace.record(n as f64, f64::INFINITY, String::new, false);
        }
    }
    let (witness, estimate) = best.ok_or(Error::NoAdmissiblePairs)?;
    Ok(CiEstimate { estimate, witness, trace, window: (start, norm_bound), suspect_parabolic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{IdealSpec, OrderSpec};

    #[test]
    fn unit_denominators_give_distance_to_lattice() {
        let o = OrderSpec::gaussian();
        let ctx = BianchiContext::full(o);
        let z = Complex64::new(2.3, -0.45);
        let e = c_i_estimate(&ctx, &ComplexInput::Approx(z), 1).unwrap();
        let expect = (0.3f64.powi(2) + 0.45f64.powi(2)).sqrt();
        assert!((e.estimate - expect).abs() < 1e-12);
        assert_eq!(e.window, (1, 1));
    }

    #[test]
    fn matches_brute_force() {
        let o = OrderSpec::maximal(2).unwrap();
        let ctx = BianchiContext::new(IdealSpec::new(vec![o.int(2)]).unwrap());
        let z = Complex64::new(0.3179, 0.5772);
        let bound = 150;
        let e = c_i_estimate(&ctx, &ComplexInput::Approx(z), bound).unwrap();
        let start = (bound as f64).sqrt().ceil() as i64;
        let mut brute = f64::INFINITY;
        for q in ctx.ideal().elements_up_to_norm(bound) {
            if q.norm() < start {
                continue;
            }
            let qx = q.to_complex() * z;
            for p in o.points_in_disk(qx, 3.0) {
                if is_in_ei(&ctx, &p, &q) {
                    brute = brute.min(q.abs() * (qx - p.to_complex()).norm());
                }
            }
        }
        assert!((e.estimate - brute).abs() < 1e-12, "{} vs {brute}", e.estimate);
        assert!((e.witness.approximation_quality(z) - e.estimate).abs() < 1e-9);
        assert!(e.trace.is_monotone());
    }

    #[test]
    fn field_points_and_empty_windows() {
        let o = OrderSpec::gaussian();
        let ctx = BianchiContext::full(o);
        let exact = ComplexInput::parse("1/2+i/3").unwrap();
        assert_eq!(c_i_estimate(&ctx, &exact, 10).unwrap_err(), Error::ParabolicPoint);
        let flagged = c_i_estimate(&ctx, &ComplexInput::Approx(Complex64::new(0.5, 0.25)), 10).unwrap();
        assert!(flagged.suspect_parabolic);
        let half = BianchiContext::new(IdealSpec::new(vec![o.elem(1, 1)]).unwrap());
        let r = c_i_estimate(&half, &ComplexInput::Approx(Complex64::new(0.1, 0.2)), 1);
        assert_eq!(r.unwrap_err(), Error::NoAdmissiblePairs);
    }
}
