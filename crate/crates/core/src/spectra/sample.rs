use std::fmt;

use serde::Serialize;

use super::duality::duality_inverse;
use crate::bianchi::HeightSample;

/// Minimum number of points in `(v, v + ε)` for an accumulation candidate.
pub const ACCUMULATION_MIN_POINTS: usize = 5;
/// Relative tolerance of the `value = e^{−height}/2` check.
const DUALITY_TOL: f64 = 1e-12;

/// Which arithmetic setting a sample comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Setting {
    Rational,
    Bianchi { m: i64, ideal: String },
    Heisenberg { m: i64, ideal: String },
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setting::Rational => write!(f, "rational"),
            Setting::Bianchi { m, ideal } => write!(f, "bianchi(m={m}, I=<{ideal}>)"),
            Setting::Heisenberg { m, ideal } => write!(f, "heisenberg(m={m}, I=<{ideal}>)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub value: f64,
    pub height: f64,
    pub witness: String,
    pub certified: bool,
}

impl SpectrumRow {
    pub fn from_height(height: f64, witness: String, certified: bool) -> Self {
        SpectrumRow { value: duality_inverse(height), height, witness, certified }
    }
}

/// Spectrum values with their dual heights, sorted ascending by value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSample {
    pub setting: Setting,
    rows: Vec<SpectrumRow>,
}

impl SpectrumSample {
    pub fn new(setting: Setting, mut rows: Vec<SpectrumRow>) -> Self {
        rows.sort_by(|a, b| a.value.total_cmp(&b.value).then_with(|| a.witness.cmp(&b.witness)));
        SpectrumSample { setting, rows }
    }

    pub fn from_heights(setting: Setting, heights: Vec<HeightSample>) -> Self {
        let rows = heights.into_iter().map(|h| SpectrumRow::from_height(h.height, h.word, h.certified)).collect();
        Self::new(setting, rows)
    }

    pub fn rows(&self) -> &[SpectrumRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.value).collect()
    }
}

/// A value approached from above by at least [`ACCUMULATION_MIN_POINTS`]
/// sample points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Accumulation {
    pub value: f64,
    pub height: f64,
    /// Sample points in `(value, value + ε)`.
    pub count: usize,
}

/// Nearest closed-geodesic height to a supplied asymptotic-height estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightGap {
    pub estimate: f64,
    pub nearest_height: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    pub accumulation_candidates: Vec<Accumulation>,
    pub nearest: Vec<HeightGap>,
}

/// Evidence for closedness of the spectrum: clusters of values thickening
/// toward a limit, and the distance from generic-orbit height estimates to
/// the nearest sampled closed geodesic. Advisory, never a verdict.
///
/// A sorted value `v` qualifies when `(v, v + ε)` holds at least five points
/// and its lower half holds more than its upper half. Qualifying values in
/// one chain of overlapping windows yield a single candidate: the one whose
/// window is fullest, the larger value on ties.
pub fn closure_diagnostics(values: &[f64], eps: f64, height_estimates: &[f64]) -> ClosureReport {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    let count_in = |lo: f64, hi: f64| {
        let a = v.partition_point(|x| *x <= lo);
        let b = v.partition_point(|x| *x < hi);
        b.saturating_sub(a)
    };
    let mut candidates: Vec<Accumulation> = Vec::new();
    let mut chain_end = f64::NEG_INFINITY;
    for &x in &v {
        let n = count_in(x, x + eps);
        let lower = count_in(x, x + eps / 2.0);
        if n < ACCUMULATION_MIN_POINTS || 2 * lower <= n {
            continue;
        }
        let cand = Accumulation { value: x, height: super::duality(x).unwrap_or(f64::NAN), count: n };
        match candidates.last_mut() {
            Some(last) if x <= chain_end => {
                if n >= last.count {
                    *last = cand;
                }
            }
            _ => candidates.push(cand),
        }
        chain_end = x + eps;
    }

    let heights: Vec<f64> = v.iter().filter(|x| **x > 0.0).map(|x| -(2.0 * x).ln()).collect();
    let nearest = height_estimates
        .iter()
        .filter_map(|&e| {
            heights
                .iter()
                .map(|&h| (h, (h - e).abs()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(h, gap)| HeightGap { estimate: e, nearest_height: h, gap })
        })
        .collect();
    ClosureReport { accumulation_candidates: candidates, nearest }
}

/// Extremes of a sample and the Hurwitz-type bound it should respect.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub max_value: Option<f64>,
    pub min_height: Option<f64>,
    /// `1/√5` for rationals, `1/√3` for Gaussian integers; advisory for the
    /// latter.
    pub bound: Option<f64>,
    pub within_bound: Option<bool>,
}

pub fn bound_check(s: &SpectrumSample) -> BoundReport {
    let max_value = s.rows.iter().map(|r| r.value).max_by(f64::total_cmp);
    let min_height = s.rows.iter().map(|r| r.height).min_by(f64::total_cmp);
    let (bound, tol) = match &s.setting {
        Setting::Rational => (Some(1.0 / 5f64.sqrt()), 1e-12),
        Setting::Bianchi { m: 1, .. } => (Some(1.0 / 3f64.sqrt()), 1e-9),
        _ => (None, 0.0),
    };
    let within_bound = match (bound, max_value) {
        (Some(b), Some(v)) => Some(v <= b + tol),
        _ => None,
    };
    BoundReport { max_value, min_height, bound, within_bound }
}

/// Rows whose value and height break `value = e^{−height}/2`.
pub fn duality_violations(s: &SpectrumSample) -> Vec<SpectrumRow> {
    s.rows
        .iter()
        .filter(|r| (r.value - duality_inverse(r.height)).abs() > DUALITY_TOL * r.value.abs().max(1e-300))
        .cloned()
        .collect()
}

/// The combined JSON-facing report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub setting: Setting,
    pub max_value: Option<f64>,
    pub min_height: Option<f64>,
    pub within_bound: Option<bool>,
    pub accumulation_candidates: Vec<Accumulation>,
    pub nearest_heights: Vec<HeightGap>,
    pub duality_violations: Vec<SpectrumRow>,
}

pub fn spectrum_report(s: &SpectrumSample, eps: f64, height_estimates: &[f64]) -> SpectrumReport {
    let bounds = bound_check(s);
    let closure = closure_diagnostics(&s.values(), eps, height_estimates);
    SpectrumReport {
        setting: s.setting.clone(),
        max_value: bounds.max_value,
        min_height: bounds.min_height,
        within_bound: bounds.within_bound,
        accumulation_candidates: closure.accumulation_candidates,
        nearest_heights: closure.nearest,
        duality_violations: duality_violations(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::{markov_numbers, markov_value};

    #[test]
    fn markov_values_accumulate_at_one_third() {
        let mut values: Vec<f64> = markov_numbers(100_000).into_iter().map(|m| markov_value(m).unwrap()).collect();
        // a few stragglers well away from the cluster
        values.extend([0.30, 0.31, 0.25]);
        let r = closure_diagnostics(&values, 1e-3, &[]);
        assert_eq!(r.accumulation_candidates.len(), 1);
        let c = &r.accumulation_candidates[0];
        assert!((c.value - 1.0 / 3.0).abs() < 1e-3, "{}", c.value);
        assert!(((c.height) - 1.5f64.ln()).abs() < 1e-2);
    }

    #[test]
    fn singletons_and_gaps() {
        assert!(closure_diagnostics(&[0.4], 1e-3, &[]).accumulation_candidates.is_empty());
        let r = closure_diagnostics(&[1.0 / 5f64.sqrt(), 0.3], 1e-3, &[0.1116]);
        assert!((r.nearest[0].nearest_height - (5f64.sqrt() / 2.0).ln()).abs() < 1e-12);
        assert!(r.nearest[0].gap < 1e-4);
    }

    #[test]
    fn permutation_invariant() {
        let mut v: Vec<f64> = markov_numbers(5000).into_iter().map(|m| markov_value(m).unwrap()).collect();
        let a = closure_diagnostics(&v, 1e-3, &[0.2]);
        v.reverse();
        v.swap(0, 3);
        assert_eq!(closure_diagnostics(&v, 1e-3, &[0.2]), a);
    }

    #[test]
    fn bounds_and_duality_rows() {
        let rows = vec![
            SpectrumRow::from_height((5f64.sqrt() / 2.0).ln(), "T L".into(), true),
            SpectrumRow::from_height(0.5 * 2f64.ln(), "T^2 L^2".into(), true),
        ];
        let s = SpectrumSample::new(Setting::Rational, rows);
        assert!(s.rows()[0].value < s.rows()[1].value);
        let b = bound_check(&s);
        assert!((b.max_value.unwrap() - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(b.within_bound, Some(true));
        assert!(duality_violations(&s).is_empty());
        let empty = bound_check(&SpectrumSample::new(Setting::Rational, vec![]));
        assert_eq!((empty.max_value, empty.within_bound), (None, None));
        let bad = SpectrumSample::new(
            Setting::Rational,
            vec![SpectrumRow { value: 0.4, height: 0.0, witness: String::new(), certified: false }],
        );
        assert_eq!(duality_violations(&bad).len(), 1);
    }
}
