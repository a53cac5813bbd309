use super::word::CFWord;

/// Convergents `p_n / q_n` of a continued-fraction word.
///
/// Iteration stops when the word runs out (finite words and prefixes) or
/// when the next convergent would overflow `i128`.
#[derive(Debug, Clone)]
pub struct ConvergentSeq<'a> {
    word: &'a CFWord,
    n: usize,
    p: (i128, i128),
    q: (i128, i128),
}

impl<'a> ConvergentSeq<'a> {
    pub fn new(word: &'a CFWord) -> Self {
        ConvergentSeq { word, n: 0, p: (1, 0), q: (0, 1) }
    }
}

impl Iterator for ConvergentSeq<'_> {
    type Item = (i128, i128);

    fn next(&mut self) -> Option<(i128, i128)> {
        let a = self.word.term(self.n)? as i128;
        let p = a.checked_mul(self.p.0)?.checked_add(self.p.1)?;
        let q = a.checked_mul(self.q.0)?.checked_add(self.q.1)?;
        self.p = (p, self.p.0);
        self.q = (q, self.q.0);
        self.n += 1;
        Some((p, q))
    }
}

impl CFWord {
    pub fn convergents(&self) -> ConvergentSeq<'_> {
        ConvergentSeq::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn golden_convergents_are_fibonacci_ratios() {
        let w = CFWord::purely_periodic(vec![1]).unwrap();
        let c: Vec<_> = w.convergents().take(6).collect();
        assert_eq!(c, vec![(1, 1), (2, 1), (3, 2), (5, 3), (8, 5), (13, 8)]);
    }

    #[test]
    fn stops_on_overflow() {
        let w = CFWord::purely_periodic(vec![1]).unwrap();
        let n = w.convergents().count();
        assert!(n > 150 && n < 200);
    }

    proptest! {
        #[test]
        fn determinant_identity(pre in prop::collection::vec(1i64..50, 0..5),
                                per in prop::collection::vec(1i64..50, 1..6),
                                a0 in -20i64..20) {
            let mut pre = pre;
            pre.insert(0, a0);
            let w = CFWord::periodic(pre, per).unwrap();
            let c: Vec<_> = w.convergents().take(10).collect();
            for n in 1..c.len() {
                let (p, q) = c[n];
                let (pp, qp) = c[n - 1];
                let det = p * qp - pp * q;
                prop_assert_eq!(det, if n % 2 == 1 { 1 } else { -1 });
                prop_assert!(q > qp || n == 1);
            }
        }
    }
}
