use serde::Serialize;

use super::word::{purely_periodic_value, CFWord, WordKind};
use crate::error::{Error, Result};
use crate::numkit::{isqrt, QuadSurd};
use crate::spectra::{Direction, EstimatorTrace};

/// Result of [`approx_constant`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxConstant {
    pub value: f64,
    /// `max λ_n` over one period, exactly (periodic words only).
    #[serde(skip)]
    pub lambda: Option<QuadSurd>,
    /// Position realizing the maximum: a rotation of the period, or an index
    /// into the prefix.
    pub position: usize,
    /// True when `value` is a windowed estimate rather than exact.
    pub estimate: bool,
    /// Positions `[start, end]` that contributed.
    pub window: (usize, usize),
    pub trace: Option<EstimatorTrace>,
}

/// `λ` at the start of each rotation of a period:
/// `[b_j; b_{j+1}, ...] + [0; b_{j−1}, b_{j−2}, ...]`.
pub fn period_lambdas(period: &[i64]) -> Vec<QuadSurd> {
    let k = period.len();
    (0..k)
        .map(|j| {
            let forward: Vec<i64> = (0..k).map(|i| period[(j + i) % k]).collect();
            let backward: Vec<i64> = (0..k).map(|i| period[(j + 2 * k - 1 - i) % k]).collect();
            let f = purely_periodic_value(&forward);
            let r = purely_periodic_value(&backward);
            f + r.recip().expect("periodic values are positive")
        })
        .collect()
}

/// The classical approximation constant `c(x) = liminf q²|x − p/q|`.
///
/// Exact for periodic words (`1 / max λ_n` over one period). For a sampled
/// prefix `a_0..a_N` the result is a running min of `1/λ_n` over the late
/// window `n ∈ [⌈√N⌉, N−1]`, with truncated forward tails, flagged as an
/// estimate.
pub fn approx_constant(w: &CFWord) -> Result<ApproxConstant> {
    match w.kind() {
        WordKind::Periodic => {
            let lambdas = period_lambdas(w.period());
            let (position, lambda) = lambdas
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1))
                .map(|(i, l)| (i, *l))
                .ok_or(Error::EmptyWord)?;
            let value = lambda.recip()?.to_f64();
            Ok(ApproxConstant {
                value,
                lambda: Some(lambda),
                position,
                estimate: false,
                window: (0, w.period().len() - 1),
                trace: None,
            })
        }
        WordKind::SampledPrefix => prefix_estimate(w.preperiod()),
        WordKind::Finite => Err(Error::RationalInput),
    }
}

fn prefix_estimate(a: &[i64]) -> Result<ApproxConstant> {
    let n_max = a.len().saturating_sub(1);
    if n_max < 2 {
        return Err(Error::Invalid("a sampled prefix needs at least three terms".into()));
    }
    let start = (isqrt(n_max as i128) as usize).max(1);
    let start = if start * start < n_max { start + 1 } else { start }.min(n_max - 1);

    // backward[n] = q_{n−1}/q_n = [0; a_n, ..., a_1]
    let mut backward = vec![0.0; n_max + 1];
    for n in 1..=n_max {
        backward[n] = 1.0 / (a[n] as f64 + backward[n - 1]);
    }
    // forward[n] = [a_n; a_{n+1}, ..., a_N]
    let mut forward = vec![0.0; n_max + 2];
    forward[n_max] = a[n_max] as f64;
    for n in (1..n_max).rev() {
        forward[n] = a[n] as f64 + 1.0 / forward[n + 1];
    }

    let mut trace = EstimatorTrace::new(Direction::Min, start as f64);
    let mut position = start;
    for n in start..n_max {
        let lambda = forward[n + 1] + backward[n];
        let before = trace.estimate();
        trace.record(n as f64, 1.0 / lambda, || format!("n={n}"), false);
        if trace.estimate() != before {
            position = n;
        }
    }
    Ok(ApproxConstant {
        value: trace.estimate().expect("window is nonempty"),
        lambda: None,
        position,
        estimate: true,
        window: (start, n_max - 1),
        trace: Some(trace),
    })
}

/// Result of [`brute_force_constant`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForce {
    pub value: f64,
    pub q: i128,
    pub p: i128,
}

/// Direct search for `min q·|q x − p|` over `q ∈ [⌈√Qmax⌉, Qmax]` and the
/// nearest integers `p` (both on a tie).
///
/// Small `q` are skipped because isolated early approximations can dip well
/// below the liminf (for the golden ratio `q = 1` gives `0.382`).
pub fn brute_force_constant(x: &QuadSurd, qmax: u64) -> Result<BruteForce> {
    if qmax == 0 {
        return Err(Error::Invalid("Qmax must be at least 1".into()));
    }
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    let qmax = qmax as i128;
    let root = isqrt(qmax);
    let lo = if root * root < qmax { root + 1 } else { root }.max(1);
    let mut best = BruteForce { value: f64::INFINITY, q: 0, p: 0 };
    for q in lo..=qmax {
        let p0 = x.affine(q, 0).floor();
        for p in [p0, p0 + 1] {
            let v = q as f64 * x.affine_f64(q, -p).abs();
            if v < best.value {
                best = BruteForce { value: v, q, p };
            }
        }
    }
    Ok(best)
}
