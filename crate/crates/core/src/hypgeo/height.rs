use super::group::{CuspGroup, Row};
use super::point::{busemann_height, ModelPoint};
use crate::error::{Error, Result};

/// Height of a point in the quotient `Γ∖X`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientHeight {
    /// `sup_γ log height(γ p)` over the enumerated rows.
    pub value: f64,
    /// Row realizing the sup.
    pub row: Row,
    /// True when rows beyond the cutoff provably cannot increase the sup.
    pub certified: bool,
}

/// Sup of the Busemann height over the `Γ`-orbit of `p`, enumerating rows
/// with `|c| ≤ cutoff`.
///
/// Since `height(γp) ≤ 1/(|c|² h)`, the result is certified once
/// `1/(cutoff² h)` does not exceed the best height found.
pub fn quotient_height<G: CuspGroup + ?Sized>(p: &ModelPoint, group: &G, cutoff: f64) -> Result<QuotientHeight> {
    if !(cutoff >= 0.0) {
        return Err(Error::Invalid(format!("cutoff must be nonnegative, got {cutoff}")));
    }
    let h = p.height;
    let mut best = h;
    let mut row = Row::identity(group.order());
    for c in group.lower_left(cutoff) {
        let c2 = c.norm() as f64;
        // need |cz + d|² < h/best − |c|²h²
        let slack = h / best - c2 * h * h;
        if slack <= 0.0 {
            continue;
        }
        for cand in group.completions(&c, p.z, slack.sqrt()) {
            let image = h / cand.denominator(p.z, h);
            if image > best {
                best = image;
                row = cand;
            }
        }
    }
    let certified = cutoff > 0.0 && 1.0 / (cutoff * cutoff * h) <= best;
    Ok(QuotientHeight { value: busemann_height(&ModelPoint { z: p.z, height: best }), row, certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypgeo::group::{modular_reduce, Modular, TrivialGroup};
    use crate::numkit::OrderSpec;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let p = ModelPoint::real(0.5, 2.0).unwrap();
        let q = quotient_height(&p, &Modular, 10.0).unwrap();
        assert!((q.value - 2f64.ln()).abs() < 1e-15);
        assert!(q.row.c.is_zero() && q.certified);

        let i = ModelPoint::real(0.0, 1.0).unwrap();
        let q = quotient_height(&i, &Modular, 10.0).unwrap();
        assert!(q.value.abs() < 1e-15);

        let t = quotient_height(&p, &TrivialGroup(OrderSpec::gaussian()), 10.0).unwrap();
        assert_eq!(t.value, busemann_height(&p));
    }

    #[test]
    fn small_cutoff_is_uncertified() {
        let p = ModelPoint::real(0.3, 0.001).unwrap();
        assert!(!quotient_height(&p, &Modular, 3.0).unwrap().certified);
        assert!(quotient_height(&p, &Modular, 40.0).unwrap().certified);
    }

    proptest! {
        #[test]
        fn agrees_with_fundamental_domain_reduction(x in -3.0..3.0f64, lh in -6.0..1.0f64) {
            let h = lh.exp();
            let p = ModelPoint::real(x, h).unwrap();
            let cutoff = (1.0 / h).sqrt() + 2.0;
            let q = quotient_height(&p, &Modular, cutoff).unwrap();
            let (_, _, hr) = modular_reduce(x, h);
            prop_assert!(q.certified);
            prop_assert!((q.value - hr.ln()).abs() < 1e-9);
        }
    }
}
