use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::numkit::{OrderSpec, QuadInt, QuadSurd};

/// Bottom row `(c, d)` of a group element; it alone determines the height
/// of the image of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Row {
    pub c: QuadInt,
    pub d: QuadInt,
}

impl Row {
    pub fn identity(order: OrderSpec) -> Self {
        Row { c: order.zero(), d: order.one() }
    }

    /// `|c z + d|² + |c|² h²`, the factor by which heights shrink.
    pub fn denominator(&self, z: Complex64, h: f64) -> f64 {
        (self.c.to_complex() * z + self.d.to_complex()).norm_sqr() + self.c.norm() as f64 * h * h
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(c={}, d={})", self.c, self.d)
    }
}

/// A discrete group with a cusp at `∞`, described only through the bottom
/// rows of its elements.
pub trait CuspGroup {
    /// Order carrying the matrix entries.
    fn order(&self) -> OrderSpec;

    /// True when all entries are rational integers (a Fuchsian group).
    fn is_real(&self) -> bool;

    /// Nonzero lower-left entries with `|c| ≤ c_max`, one per unit class.
    fn lower_left(&self, c_max: f64) -> Vec<QuadInt>;

    /// Whether `(c, d)` is the bottom row of some element.
    fn is_row(&self, c: &QuadInt, d: &QuadInt) -> bool;

    /// Rotations `u²` by which the cusp stabilizer acts on the boundary.
    fn rotations(&self) -> Vec<Complex64>;

    /// Rows `(c, d)` with `|c z + d| ≤ radius`.
    fn completions(&self, c: &QuadInt, z: Complex64, radius: f64) -> Vec<Row> {
        let center = -(c.to_complex() * z);
        self.order()
            .points_in_disk(center, radius)
            .into_iter()
            .filter(|d| !self.is_real() || d.is_rational_integer())
            .filter(|d| self.is_row(c, d))
            .map(|d| Row { c: *c, d })
            .collect()
    }
}

/// `PSL₂(Z)` acting on the upper half-plane.
#[derive(Debug, Clone, Copy, Default)]
pub struct Modular;

impl CuspGroup for Modular {
    fn order(&self) -> OrderSpec {
        OrderSpec::gaussian()
    }

    fn is_real(&self) -> bool {
        true
    }

    fn lower_left(&self, c_max: f64) -> Vec<QuadInt> {
        let o = self.order();
        (1..=c_max.floor() as i64).map(|c| o.int(c)).collect()
    }

    fn is_row(&self, c: &QuadInt, d: &QuadInt) -> bool {
        c.is_rational_integer() && d.is_rational_integer() && c.a.gcd(&d.a) == 1
    }

    fn rotations(&self) -> Vec<Complex64> {
        vec![Complex64::new(1.0, 0.0)]
    }

    fn completions(&self, c: &QuadInt, z: Complex64, radius: f64) -> Vec<Row> {
        // |c z + d|² = (c x + d)² + (c y)²
        let o = self.order();
        let cz = c.to_complex() * z;
        let slack = radius * radius - cz.im * cz.im;
        if slack < 0.0 {
            return Vec::new();
        }
        let span = slack.sqrt();
        let lo = (-cz.re - span).ceil() as i64;
        let hi = (-cz.re + span).floor() as i64;
        (lo..=hi)
            .map(|d| o.int(d))
            .filter(|d| self.is_row(c, d))
            .map(|d| Row { c: *c, d })
            .collect()
    }
}

/// The trivial group: only the identity row.
#[derive(Debug, Clone, Copy)]
pub struct TrivialGroup(pub OrderSpec);

impl CuspGroup for TrivialGroup {
    fn order(&self) -> OrderSpec {
        self.0
    }

    fn is_real(&self) -> bool {
        false
    }

    fn lower_left(&self, _c_max: f64) -> Vec<QuadInt> {
        Vec::new()
    }

    fn is_row(&self, c: &QuadInt, d: &QuadInt) -> bool {
        c.is_zero() && d.norm() == 1
    }

    fn rotations(&self) -> Vec<Complex64> {
        vec![Complex64::new(1.0, 0.0)]
    }
}

/// Integer matrix `[[a, b], [c, d]]` in `SL₂(Z)`.
pub type IntMatrix = [[i128; 2]; 2];

fn mul(m: &IntMatrix, n: &IntMatrix) -> IntMatrix {
    [
        [m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]],
        [m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]],
    ]
}

const MAX_STEPS: usize = 10_000;

/// Moves `(x, h)` into the standard fundamental domain of `PSL₂(Z)`
/// (`|x| ≤ 1/2`, `x² + h² ≥ 1`). Returns the reducing matrix and the image.
pub fn modular_reduce(x: f64, h: f64) -> (IntMatrix, f64, f64) {
    let mut m: IntMatrix = [[1, 0], [0, 1]];
    let (mut x, mut h) = (x, h);
    for _ in 0..MAX_STEPS {
        let n = x.round();
        x -= n;
        m = mul(&[[1, -(n as i128)], [0, 1]], &m);
        let r2 = x * x + h * h;
        if r2 >= 1.0 {
            break;
        }
        x = -x / r2;
        h /= r2;
        m = mul(&[[0, -1], [1, 0]], &m);
    }
    (m, x, h)
}

/// As [`modular_reduce`] for a point `(x, h)` with `x` an exact quadratic
/// irrational. The image is recomputed from the accumulated matrix at every
/// step, using cancellation-free evaluations of `a x + b` and `c x + d`, so
/// heights far below `f64` resolution of `x` are handled correctly.
pub fn modular_reduce_exact(x: &QuadSurd, h: f64) -> (IntMatrix, f64, f64) {
    let image = |m: &IntMatrix| {
        let num = x.affine_f64(m[0][0], m[0][1]);
        let den = x.affine_f64(m[1][0], m[1][1]);
        let c = m[1][0] as f64;
        let q = den * den + c * c * h * h;
        ((num * den + m[0][0] as f64 * c * h * h) / q, h / q)
    };
    let mut m: IntMatrix = [[1, 0], [0, 1]];
    for _ in 0..MAX_STEPS {
        let (xi, _) = image(&m);
        let n = xi.round() as i128;
        if n != 0 {
            m = mul(&[[1, -n], [0, 1]], &m);
        }
        let (xi, hi) = image(&m);
        if xi * xi + hi * hi >= 1.0 {
            return (m, xi, hi);
        }
        m = mul(&[[0, -1], [1, 0]], &m);
    }
    let (xi, hi) = image(&m);
    (m, xi, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_lands_in_fundamental_domain() {
        for (x, h) in [(0.3, 0.01), (-2.7, 0.5), (0.1234, 1e-6), (5.0, 3.0)] {
            let (m, xr, hr) = modular_reduce(x, h);
            assert!(xr.abs() <= 0.5 + 1e-12 && xr * xr + hr * hr >= 1.0 - 1e-12);
            assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
            let den = (m[1][0] as f64 * x + m[1][1] as f64).powi(2) + (m[1][0] as f64 * h).powi(2);
            assert!((hr - h / den).abs() < 1e-9 * hr);
        }
    }

    #[test]
    fn exact_reduction_matches_float_reduction() {
        let x = QuadSurd::new(1, 1, 5, 2).unwrap();
        for h in [0.3, 1e-3, 1e-6] {
            let (m1, _, h1) = modular_reduce(x.to_f64(), h);
            let (m2, _, h2) = modular_reduce_exact(&x, h);
            assert!((h1 - h2).abs() < 1e-9 * h2);
            assert_eq!(m1[1][0].abs(), m2[1][0].abs());
        }
        // far below f64 resolution of x: row is a Fibonacci pair
        let (m, _, hr) = modular_reduce_exact(&x, 1e-30);
        assert!(hr > 0.8);
        let (c, d) = (m[1][0].abs(), m[1][1].abs());
        assert!(c > 1_000_000_000_000);
        assert!((d as f64 / c as f64 - x.to_f64()).abs() < 1e-12);
    }

    #[test]
    fn modular_rows() {
        let o = OrderSpec::gaussian();
        let g = Modular;
        assert!(g.is_row(&o.int(3), &o.int(4)));
        assert!(!g.is_row(&o.int(2), &o.int(4)));
        let rows = g.completions(&o.int(2), Complex64::new(0.3, 0.0), 1.0);
        let ds: Vec<i64> = rows.iter().map(|r| r.d.a).collect();
        assert_eq!(ds, vec![-1]);
    }
}
