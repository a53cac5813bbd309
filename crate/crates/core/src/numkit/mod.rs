//! Exact arithmetic shared by every other module: imaginary quadratic orders
//! and their ideals, real quadratic surds, and exactly specified complex
//! inputs. Floating-point values are derived from the exact data only at the
//! edges; predicates such as membership and coprimality never touch floats.

mod complex;
mod ideal;
mod order;
mod quadint;
mod surd;

pub use complex::{ComplexInput, ExactComplex};
pub use ideal::{ideal_contains, ideal_is_unit, IdealSpec};
pub use order::OrderSpec;
pub use quadint::{quad_norm, QuadInt};
pub use surd::QuadSurd;

pub(crate) use surd::isqrt;

/// Renders `x` with 15 significant digits, the fixed precision used for all
/// CSV and JSON output.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.14e}")
    }
}

/// Denominator bound for the float "is this point rational?" heuristic.
pub const RATIONAL_DENOMINATOR_BOUND: i64 = 1_000_000;

/// The fraction `p/q` with `q ≤ max_den` equal to `x` up to a few ulps, if
/// any. Used only to flag float inputs that look parabolic.
pub fn near_rational(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let tol = 8.0 * f64::EPSILON * x.abs().max(1.0);
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
        if q2 > max_den {
            return None;
        }
        if (x - p2 as f64 / q2 as f64).abs() <= tol {
            return Some((p2, q2));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = y - a;
        if frac == 0.0 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::{format_sig, near_rational};

    #[test]
    fn rational_heuristic() {
        assert_eq!(near_rational(0.5, 1_000_000), Some((1, 2)));
        assert_eq!(near_rational(-7.0 / 3.0, 1_000_000), Some((-7, 3)));
        assert_eq!(near_rational(2f64.sqrt(), 1_000_000), None);
        assert_eq!(near_rational(std::f64::consts::PI, 1_000_000), None);
    }

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(format_sig(1.0 / 5f64.sqrt()), "0.447213595499958");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(-2.0), "-2");
        assert_eq!(format_sig(123.456), "123.456");
        assert_eq!(format_sig(0.0), "0");
    }
}
