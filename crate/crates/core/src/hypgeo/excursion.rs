use num_complex::Complex64;
use serde::Serialize;

use super::group::{modular_reduce_exact, CuspGroup};
use crate::error::{Error, Result};
use crate::numkit::{near_rational, QuadSurd, RATIONAL_DENOMINATOR_BOUND};
use crate::spectra::{Direction, EstimatorTrace};

/// Ratio of the geometric time grid.
pub const GRID_RATIO: f64 = 1.05;
/// The late window starts at this fraction of the depth.
pub const LATE_WINDOW_START: f64 = 0.4;
/// Maximal spacing of reduction probes inside one grid interval.
const PROBE_STEP: f64 = 0.25;

/// Limsup estimate of the Busemann height along the geodesic ray from `∞`
/// to a boundary point, normalized so that time 0 is at height 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Excursion {
    pub estimate: f64,
    pub trace: EstimatorTrace,
    /// Time window `[start, depth]` over which the running max is taken.
    pub window: (f64, f64),
    /// Set when a float input looks like a cusp.
    pub suspect_parabolic: bool,
}

/// `0 = t_0 < 1 < r < r² < ... < depth`, ending exactly at `depth`.
pub fn time_grid(depth: f64) -> Vec<f64> {
    let mut grid = vec![0.0];
    let mut t = 1.0;
    while t < depth {
        grid.push(t);
        t *= GRID_RATIO;
    }
    grid.push(depth);
    grid
}

/// Max over `h ∈ [lo, hi]` of `log(h / (ε² + c² h²))`, peaked at `h = ε/|c|`.
fn row_sup(c: f64, eps: f64, lo: f64, hi: f64) -> f64 {
    let f = |h: f64| (h / (eps * eps + c * c * h * h)).ln();
    if c == 0.0 {
        return f(hi);
    }
    f((eps / c.abs()).clamp(lo, hi))
}

/// Running max over the late grid intervals of the exact per-row sup, with
/// rows given as `(|c|, |c x + d|, label)` by `rows_for(t_a, t_b)`.
fn collect(
    depth: f64,
    mut rows_for: impl FnMut(f64, f64) -> Vec<(f64, f64, String)>,
) -> Result<(EstimatorTrace, f64)> {
    if !(depth > 0.0) {
        return Err(Error::InsufficientDepth);
    }
    let grid = time_grid(depth);
    let start = LATE_WINDOW_START * depth;
    let mut trace = EstimatorTrace::new(Direction::Max, start);
    for w in grid.windows(2) {
        let (ta, tb) = (w[0], w[1]);
        if ta < start {
            continue;
        }
        let (lo, hi) = ((-tb).exp(), (-ta).exp());
        let mut best = (f64::NEG_INFINITY, String::new());
        for (c, eps, label) in rows_for(ta, tb) {
            let v = row_sup(c, eps, lo, hi);
            if v > best.0 {
                best = (v, label);
            }
        }
        let (v, label) = best;
        trace.record(tb, v, || label, false);
    }
    if trace.is_empty() {
        return Err(Error::InsufficientDepth);
    }
    Ok((trace, start))
}

/// Limsup height along the ray from `∞` to a real quadratic irrational `x`
/// in `PSL₂(Z)∖H²`.
///
/// Time is sampled on a geometric grid with ratio 1.05. Inside each grid
/// interval the point is reduced to the standard fundamental domain at
/// probes spaced at most 0.25 apart; every bottom row met this way is then
/// maximized exactly over the interval. The estimate is the running max over
/// intervals starting at or after `0.4 · depth`.
pub fn excursion_limsup(x: &QuadSurd, depth: u32) -> Result<Excursion> {
    if x.is_rational() {
        return Err(Error::ParabolicPoint);
    }
    let depth = depth as f64;
    let (trace, start) = collect(depth, |ta, tb| {
        let probes = ((tb - ta) / PROBE_STEP).ceil().max(1.0) as usize;
        let mut rows: Vec<(i128, i128)> = vec![(0, 1)];
        for k in 0..=probes {
            let t = ta + (tb - ta) * k as f64 / probes as f64;
            let (m, _, _) = modular_reduce_exact(x, (-t).exp());
            let (c, d) = if m[1][0] < 0 { (-m[1][0], -m[1][1]) } else { (m[1][0], m[1][1]) };
            if !rows.contains(&(c, d)) {
                rows.push((c, d));
            }
        }
        rows.into_iter()
            .map(|(c, d)| (c as f64, x.affine_f64(c, d).abs(), format!("c={c},d={d}")))
            .collect()
    })?;
    let estimate = trace.estimate().expect("nonempty trace");
    Ok(Excursion { estimate, trace, window: (start, depth), suspect_parabolic: false })
}

/// Limsup height along the ray from `∞` to `x` for a general cusp group,
/// enumerating rows with `|c| ≤ cutoff` whose peak reaches height `−log 2`.
///
/// A shell is certified when `cutoff ≥ e^{t/2}`: rows with larger `|c|`
/// cannot peak before time `t`.
pub fn excursion_limsup_in<G: CuspGroup + ?Sized>(
    x: Complex64,
    group: &G,
    depth: u32,
    cutoff: f64,
) -> Result<Excursion> {
    let (a, b) = group.order().coordinates(x);
    let exact_looking = near_rational(a, RATIONAL_DENOMINATOR_BOUND).is_some()
        && near_rational(b, RATIONAL_DENOMINATOR_BOUND).is_some();
    let mut rows: Vec<(f64, f64, String)> = vec![(0.0, 1.0, "identity".into())];
    for c in group.lower_left(cutoff) {
        for r in group.completions(&c, x, 1.0 / c.abs()) {
            let eps = (r.c.to_complex() * x + r.d.to_complex()).norm();
            rows.push((c.abs(), eps, r.to_string()));
        }
    }
    let depth_f = depth as f64;
    let (mut trace, start) = collect(depth_f, |_, _| rows.clone())?;
    for s in &mut trace.shells {
        s.certified = cutoff >= (s.cutoff / 2.0).exp();
    }
    let estimate = trace.estimate().expect("nonempty trace");
    Ok(Excursion { estimate, trace, window: (start, depth_f), suspect_parabolic: exact_looking })
}
