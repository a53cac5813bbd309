use num_complex::Complex64;

use super::group::{CuspGroup, Row};
use super::mobius::{Classification, QuadMatrix};
use crate::contfrac::{expand, period_lambdas, RealInput};
use crate::error::{Error, Result};
use crate::numkit::{near_rational, QuadInt, QuadSurd, RATIONAL_DENOMINATOR_BOUND};

/// A geodesic of upper half-space given by its two finite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSpec {
    pub plus: Complex64,
    pub minus: Complex64,
}

impl GeodesicSpec {
    pub fn new(plus: Complex64, minus: Complex64) -> Result<Self> {
        if plus == minus {
            return Err(Error::NotClosedGeodesic("endpoints coincide".into()));
        }
        Ok(GeodesicSpec { plus, minus })
    }

    pub fn real(plus: f64, minus: f64) -> Result<Self> {
        Self::new(Complex64::new(plus, 0.0), Complex64::new(minus, 0.0))
    }

    /// Naive height of the top point, `log(|ξ⁺ − ξ⁻| / 2)`.
    pub fn top_height(&self) -> f64 {
        ((self.plus - self.minus).norm() / 2.0).ln()
    }
}

/// Height of a closed geodesic in the quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicHeight {
    pub value: f64,
    /// Row realizing the sup over the orbit.
    pub row: Row,
    /// `min |G|` of the associated binary form (exact route only).
    pub form_min: Option<QuadInt>,
    pub certified: bool,
    /// Set when a float endpoint looks like a cusp of the group.
    pub suspect_parabolic: bool,
}

fn looks_parabolic<G: CuspGroup + ?Sized>(z: Complex64, group: &G) -> bool {
    let (a, b) = group.order().coordinates(z);
    near_rational(a, RATIONAL_DENOMINATOR_BOUND).is_some()
        && near_rational(b, RATIONAL_DENOMINATOR_BOUND).is_some()
}

/// `sup_γ` of the top-point height over the orbit of the geodesic, from the
/// endpoints as floats: `log(|ξ⁺ − ξ⁻|/2) − min log(|cξ⁺ + d| |cξ⁻ + d|)`.
///
/// Rows are enumerated with `|c| ≤ cutoff`. No tail bound is available in
/// this form, so the result is never certified; see [`form_height`].
pub fn geodesic_height<G: CuspGroup + ?Sized>(
    spec: &GeodesicSpec,
    group: &G,
    cutoff: f64,
) -> Result<GeodesicHeight> {
    let (xp, xm) = (spec.plus, spec.minus);
    let delta = (xp - xm).norm();
    let product = |r: &Row| {
        let (c, d) = (r.c.to_complex(), r.d.to_complex());
        (c * xp + d).norm() * (c * xm + d).norm()
    };
    let mut row = Row::identity(group.order());
    let mut best = 1.0;
    for c in group.lower_left(cutoff) {
        // one factor is at least |c|Δ/2, so the other is at most 2P/(|c|Δ)
        let radius = 2.0 * best / (c.abs() * delta);
        let mut cands = group.completions(&c, xp, radius);
        cands.extend(group.completions(&c, xm, radius));
        for r in cands {
            let p = product(&r);
            if p < best {
                best = p;
                row = r;
            }
        }
    }
    Ok(GeodesicHeight {
        value: (delta / (2.0 * best)).ln(),
        row,
        form_min: None,
        certified: false,
        suspect_parabolic: looks_parabolic(xp, group) || looks_parabolic(xm, group),
    })
}

/// `G(r, s) = c s² + (a − d) r s − b r²`, so that
/// `|r ξ⁺ + s| |r ξ⁻ + s| = |G(r, s)| / |c|`.
pub fn axis_form(m: &QuadMatrix, r: &QuadInt, s: &QuadInt) -> QuadInt {
    m.c * *s * *s + (m.a - m.d) * *r * *s - m.b * *r * *r
}

fn require_loxodromic(m: &QuadMatrix) -> Result<()> {
    match m.classify() {
        Classification::Loxodromic => Ok(()),
        Classification::Parabolic => Err(Error::NotLoxodromic("parabolic")),
        Classification::Elliptic => Err(Error::NotLoxodromic("elliptic")),
        Classification::Identity => Err(Error::NotLoxodromic("identity")),
    }
}

/// Fixed points of a loxodromic element as floats, `ξ⁺` first.
pub fn axis_endpoints(m: &QuadMatrix) -> Result<GeodesicSpec> {
    require_loxodromic(m)?;
    if m.c.is_zero() {
        return Err(Error::NotClosedGeodesic("one fixed point is the cusp at infinity".into()));
    }
    let (a, d, c) = (m.a.to_complex(), m.d.to_complex(), m.c.to_complex());
    let root = m.discriminant().to_complex().sqrt();
    GeodesicSpec::new((a - d + root) / (2.0 * c), (a - d - root) / (2.0 * c))
}

/// Exact `ξ⁺ = (a − d + √(tr² − 4)) / 2c` for an integer matrix.
pub fn real_axis_endpoint(m: &QuadMatrix) -> Result<QuadSurd> {
    if !m.is_integer() {
        return Err(Error::Invalid("matrix has non-real entries".into()));
    }
    require_loxodromic(m)?;
    if m.c.is_zero() {
        return Err(Error::NotClosedGeodesic("one fixed point is the cusp at infinity".into()));
    }
    QuadSurd::new((m.a.a - m.d.a) as i128, 1, m.discriminant().a as i128, 2 * m.c.a as i128)
}

/// Height of the closed geodesic of a loxodromic `m`, through the exact
/// minimum of its axis form over the group's rows:
/// `log(√|tr² − 4| / (2 min |G|))`.
///
/// Certified when `|min G| = 1`, or, for integer matrices, when the minimum
/// matches `√Δ / max λ_n` computed from the continued fraction of `ξ⁺`.
pub fn form_height<G: CuspGroup + ?Sized>(m: &QuadMatrix, group: &G, cutoff: f64) -> Result<GeodesicHeight> {
    let spec = axis_endpoints(m)?;
    let (xp, xm) = (spec.plus, spec.minus);
    let delta = (xp - xm).norm();
    let c_abs = m.c.abs();
    let mut row = Row::identity(group.order());
    let mut gmin = axis_form(m, &row.c, &row.d);
    for r in group.lower_left(cutoff) {
        let radius = 2.0 * (gmin.abs() / c_abs) / (r.abs() * delta);
        let mut cands = group.completions(&r, xp, radius);
        cands.extend(group.completions(&r, xm, radius));
        for cand in cands {
            let g = axis_form(m, &cand.c, &cand.d);
            if g.norm() < gmin.norm() {
                gmin = g;
                row = cand;
            }
        }
    }
    let disc = m.discriminant();
    let value = 0.25 * (disc.norm() as f64).ln() - 0.5 * (gmin.norm() as f64).ln() - 2f64.ln();
    let certified = gmin.norm() == 1 || (m.is_integer() && real_certificate(m, &gmin)?);
    Ok(GeodesicHeight { value, row, form_min: Some(gmin), certified, suspect_parabolic: false })
}

fn real_certificate(m: &QuadMatrix, gmin: &QuadInt) -> Result<bool> {
    let xi = real_axis_endpoint(m)?;
    let word = expand(&RealInput::Quadratic(xi), 0)?;
    let lambda = period_lambdas(word.period()).into_iter().max().ok_or(Error::EmptyWord)?;
    let scaled = lambda * QuadSurd::integer(gmin.a as i128);
    Ok(scaled * scaled == QuadSurd::integer(m.discriminant().a as i128))
}
