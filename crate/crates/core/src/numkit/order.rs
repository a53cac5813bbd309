use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::QuadInt;

/// An order `Z + ωZ` in the imaginary quadratic field `Q(i√m)`.
///
/// `ω` is stored through its minimal polynomial `X² − tX + n`, so
/// `ω = (t + i√(4n − t²)) / 2` with positive imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderSpec {
    m: i64,
    trace: i64,
    norm: i64,
}

pub(crate) fn is_squarefree(m: i64) -> bool {
    if m <= 0 {
        return false;
    }
    let mut k = 2i64;
    while k * k <= m {
        if m % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl OrderSpec {
    /// The maximal order `O_{-m}`: `ω = (1 + i√m)/2` when `m ≡ 3 mod 4`,
    /// `ω = i√m` otherwise.
    pub fn maximal(m: i64) -> Result<Self> {
        if !is_squarefree(m) {
            return Err(Error::Invalid(format!("m = {m} is not a squarefree positive integer")));
        }
        Ok(if m % 4 == 3 {
            OrderSpec { m, trace: 1, norm: (1 + m) / 4 }
        } else {
            OrderSpec { m, trace: 0, norm: m }
        })
    }

    /// The Gaussian integers `Z[i]`.
    pub fn gaussian() -> Self {
        OrderSpec { m: 1, trace: 0, norm: 1 }
    }

    /// An arbitrary order given by the trace and norm of its generator `ω`.
    /// Requires `4n − t² = f²m` for some `f ≥ 1`.
    pub fn with_omega(m: i64, trace: i64, norm: i64) -> Result<Self> {
        if !is_squarefree(m) {
            return Err(Error::Invalid(format!("m = {m} is not a squarefree positive integer")));
        }
        let disc = 4 * norm - trace * trace;
        if disc <= 0 || disc % m != 0 {
            return Err(Error::Invalid(format!(
                "omega with trace {trace} and norm {norm} does not generate an order of Q(i sqrt {m})"
            )));
        }
        let f2 = disc / m;
        let f = f2.isqrt();
        if f * f != f2 {
            return Err(Error::Invalid(format!(
                "omega with trace {trace} and norm {norm} does not generate an order of Q(i sqrt {m})"
            )));
        }
        Ok(OrderSpec { m, trace, norm })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Trace `t = ω + ω̄`.
    pub fn trace(&self) -> i64 {
        self.trace
    }

    /// Norm `n = ωω̄`.
    pub fn norm(&self) -> i64 {
        self.norm
    }

    /// Discriminant `t² − 4n` of the order.
    pub fn discriminant(&self) -> i64 {
        self.trace * self.trace - 4 * self.norm
    }

    pub fn is_maximal(&self) -> bool {
        let field_disc = if self.m % 4 == 3 { -self.m } else { -4 * self.m };
        self.discriminant() == field_disc
    }

    pub fn omega(&self) -> QuadInt {
        QuadInt::new(0, 1, *self)
    }

    pub fn one(&self) -> QuadInt {
        QuadInt::new(1, 0, *self)
    }

    pub fn zero(&self) -> QuadInt {
        QuadInt::new(0, 0, *self)
    }

    pub fn int(&self, a: i64) -> QuadInt {
        QuadInt::new(a, 0, *self)
    }

    pub fn elem(&self, a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b, *self)
    }

    pub fn im_omega(&self) -> f64 {
        ((4 * self.norm - self.trace * self.trace) as f64).sqrt() / 2.0
    }

    pub fn omega_complex(&self) -> Complex64 {
        Complex64::new(self.trace as f64 / 2.0, self.im_omega())
    }

    /// All units of the order (elements of norm 1).
    pub fn units(&self) -> Vec<QuadInt> {
        // |x|² = 1 forces |b| Im ω ≤ 1 and |a + b t/2| ≤ 1.
        let mut out = Vec::new();
        for b in -2..=2 {
            for a in -3..=3 {
                let x = self.elem(a, b);
                if x.norm() == 1 {
                    out.push(x);
                }
            }
        }
        out
    }

    /// An upper bound for the covering radius of the lattice `Z + ωZ`.
    pub fn covering_radius(&self) -> f64 {
        0.5 * (1.0 + self.omega_complex().norm())
    }

    /// Lattice coordinates `(a, b)` with `a + bω = z`, as reals.
    pub fn coordinates(&self, z: Complex64) -> (f64, f64) {
        let b = z.im / self.im_omega();
        let a = z.re - b * self.trace as f64 / 2.0;
        (a, b)
    }

    /// Every element of the order within Euclidean distance `radius` of `center`.
    pub fn points_in_disk(&self, center: Complex64, radius: f64) -> Vec<QuadInt> {
        let mut out = Vec::new();
        if !(radius >= 0.0) || !radius.is_finite() {
            return out;
        }
        let im_w = self.im_omega();
        let re_w = self.trace as f64 / 2.0;
        let b_lo = ((center.im - radius) / im_w).ceil() as i64;
        let b_hi = ((center.im + radius) / im_w).floor() as i64;
        let r2 = radius * radius;
        for b in b_lo..=b_hi {
            let dy = b as f64 * im_w - center.im;
            let span = (r2 - dy * dy).max(0.0).sqrt();
            let shift = b as f64 * re_w;
            let a_lo = (center.re - span - shift).ceil() as i64;
            let a_hi = (center.re + span - shift).floor() as i64;
            for a in a_lo..=a_hi {
                let x = self.elem(a, b);
                if (x.to_complex() - center).norm_sqr() <= r2 * (1.0 + 1e-12) + 1e-300 {
                    out.push(x);
                }
            }
        }
        out
    }

    /// The element of the order nearest to `z` (ties broken by enumeration order).
    pub fn nearest(&self, z: Complex64) -> QuadInt {
        let cands = self.points_in_disk(z, self.covering_radius() + 1e-9);
        cands
            .into_iter()
            .min_by(|x, y| {
                let dx = (x.to_complex() - z).norm_sqr();
                let dy = (y.to_complex() - z).norm_sqr();
                dx.total_cmp(&dy)
            })
            .expect("covering radius disk always contains a lattice point")
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[w], w^2 = {}w - {} (m = {})", self.trace, self.norm, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximal_orders_pick_the_right_omega() {
        let o1 = OrderSpec::maximal(1).unwrap();
        assert_eq!((o1.trace(), o1.norm()), (0, 1));
        assert!(o1.is_maximal());
        let o3 = OrderSpec::maximal(3).unwrap();
        assert_eq!((o3.trace(), o3.norm()), (1, 1));
        assert!(o3.is_maximal());
        let o2 = OrderSpec::maximal(2).unwrap();
        assert_eq!((o2.trace(), o2.norm()), (0, 2));
        assert!(OrderSpec::maximal(4).is_err());
    }

    #[test]
    fn non_maximal_order_via_explicit_omega() {
        // Z[i√3] has index 2 in O_{-3}.
        let o = OrderSpec::with_omega(3, 0, 3).unwrap();
        assert!(!o.is_maximal());
        assert!(OrderSpec::with_omega(3, 0, 2).is_err());
    }

    #[test]
    fn unit_groups() {
        assert_eq!(OrderSpec::gaussian().units().len(), 4);
        assert_eq!(OrderSpec::maximal(3).unwrap().units().len(), 6);
        assert_eq!(OrderSpec::maximal(2).unwrap().units().len(), 2);
        assert_eq!(OrderSpec::maximal(7).unwrap().units().len(), 2);
    }

    #[test]
    fn disk_enumeration_matches_brute_force() {
        let o = OrderSpec::maximal(7).unwrap();
        let c = Complex64::new(0.3, -1.2);
        let got = o.points_in_disk(c, 2.5).len();
        let mut want = 0;
        for a in -20..20 {
            for b in -20..20 {
                if (o.elem(a, b).to_complex() - c).norm() <= 2.5 {
                    want += 1;
                }
            }
        }
        assert_eq!(got, want);
    }
}
