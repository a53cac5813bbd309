use std::fmt::Write as _;

use serde::Serialize;

use super::context::BianchiContext;
use crate::error::{Error, Result};
use crate::hypgeo::{form_height, Classification, CuspGroup, QuadMatrix};
use crate::numkit::{OrderSpec, QuadInt};

/// Words whose entries exceed this norm are not extended further.
const MAX_ENTRY_NORM: i64 = 1 << 40;
/// Heights closer than this are treated as one value.
pub const HEIGHT_DEDUP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
struct Letter {
    base: String,
    power: i32,
    matrix: QuadMatrix,
    inverse: Option<usize>,
}

/// A finite alphabet of group elements. Words are reduced when the alphabet
/// is closed under inverses and positive otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    letters: Vec<Letter>,
}

fn same_in_psl(a: &QuadMatrix, b: &QuadMatrix) -> bool {
    a == b || *a == *b * -1
}

impl GeneratorSet {
    /// Builds an alphabet from named elements, optionally adding inverses
    /// (an involution in `PSL₂` is its own inverse).
    pub fn new(gens: Vec<(String, QuadMatrix)>, with_inverses: bool) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut letters: Vec<Letter> = gens
            .into_iter()
            .map(|(base, matrix)| Letter { base, power: 1, matrix, inverse: None })
            .collect();
        if with_inverses {
            let n = letters.len();
            for i in 0..n {
                let inv = letters[i].matrix.inverse();
                if let Some(j) = letters.iter().position(|l| same_in_psl(&l.matrix, &inv)) {
                    letters[i].inverse = Some(j);
                    letters[j].inverse = Some(i);
                } else {
                    let j = letters.len();
                    letters.push(Letter { base: letters[i].base.clone(), power: -1, matrix: inv, inverse: Some(i) });
                    letters[i].inverse = Some(j);
                }
            }
        }
        Ok(GeneratorSet { letters })
    }

    /// The positive monoid on `T = [[1,1],[0,1]]` and `L = [[1,0],[1,1]]`
    /// inside `PSL₂(Z)`; every hyperbolic class has a positive representative.
    pub fn modular_positive() -> Self {
        let o = OrderSpec::gaussian();
        let t = QuadMatrix::integer(o, 1, 1, 0, 1).expect("unimodular");
        let l = QuadMatrix::integer(o, 1, 0, 1, 1).expect("unimodular");
        Self::new(vec![("T".into(), t), ("L".into(), l)], false).expect("nonempty")
    }

    /// Upper translations by `1` and `ω`, lower translations by a basis of
    /// `I`, and the inversion when `1 ∈ I`, with inverses.
    pub fn bianchi(ctx: &BianchiContext) -> Self {
        let o = ctx.order();
        let (one, zero) = (o.one(), o.zero());
        let upper = |x: QuadInt| QuadMatrix::new(one, x, zero, one).expect("unimodular");
        let lower = |x: QuadInt| QuadMatrix::new(one, zero, x, one).expect("unimodular");
        let mut gens = vec![("T".to_string(), upper(one)), ("Tw".to_string(), upper(o.omega()))];
        let (b1, b2) = ctx.ideal().basis();
        for b in [b1, b2] {
            gens.push((format!("L[{b}]"), lower(b)));
        }
        if ctx.ideal().contains(&one) {
            gens.push(("S".into(), QuadMatrix::new(zero, -one, one, zero).expect("unimodular")));
        }
        Self::new(gens, true).expect("nonempty")
    }

    /// The trivial group: the identity alone.
    pub fn trivial(order: OrderSpec) -> Self {
        Self::new(vec![("I".into(), QuadMatrix::identity(order))], false).expect("nonempty")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Renders a word with runs collapsed into powers, e.g. `T^2 L^2 T L`.
    pub fn render(&self, word: &[usize]) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            let l = &self.letters[word[i]];
            let k = l.power * (j - i) as i32;
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&l.base);
            if k != 1 {
                let _ = write!(out, "^{k}");
            }
            i = j;
        }
        out
    }

    fn follows(&self, prev: usize, next: usize) -> bool {
        self.letters[prev].inverse != Some(next)
    }

    /// Cyclically reduced and lexicographically least among its rotations.
    fn is_canonical(&self, w: &[usize]) -> bool {
        if w.len() > 1 && !self.follows(w[w.len() - 1], w[0]) {
            return false;
        }
        (1..w.len()).all(|k| {
            let rot = w[k..].iter().chain(&w[..k]);
            w.iter().cmp(rot) != std::cmp::Ordering::Greater
        })
    }
}

/// A sampled closed geodesic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightSample {
    pub height: f64,
    pub word: String,
    #[serde(skip)]
    pub matrix: QuadMatrix,
    pub certified: bool,
}

fn max_entry_norm(m: &QuadMatrix) -> i64 {
    [m.a, m.b, m.c, m.d].iter().map(QuadInt::norm).max().unwrap_or(0)
}

/// Heights of closed geodesics from words of length `1..=word_length`,
/// one word per cyclic class, deduplicated within [`HEIGHT_DEDUP_TOL`]
/// (the shortest word is kept) and sorted ascending.
pub fn spectrum_sample<G: CuspGroup + ?Sized>(
    gens: &GeneratorSet,
    group: &G,
    word_length: usize,
    cutoff: f64,
) -> Result<Vec<HeightSample>> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut found: Vec<HeightSample> = Vec::new();
    let identity = QuadMatrix::identity(group.order());
    for len in 1..=word_length {
        let mut word = Vec::with_capacity(len);
        let mut stack = vec![identity];
        extend(gens, group, cutoff, len, &mut word, &mut stack, &mut found)?;
    }
    found.sort_by(|a, b| a.height.total_cmp(&b.height));
    let mut out: Vec<HeightSample> = Vec::new();
    for s in found {
        match out.last_mut() {
            Some(prev) if (s.height - prev.height).abs() <= HEIGHT_DEDUP_TOL => {
                prev.certified |= s.certified;
                if s.word.len() < prev.word.len() {
                    prev.word = s.word;
                    prev.matrix = s.matrix;
                }
            }
            _ => out.push(s),
        }
    }
    Ok(out)
}

fn extend<G: CuspGroup + ?Sized>(
    gens: &GeneratorSet,
    group: &G,
    cutoff: f64,
    len: usize,
    word: &mut Vec<usize>,
    stack: &mut Vec<QuadMatrix>,
    found: &mut Vec<HeightSample>,
) -> Result<()> {
    if word.len() == len {
        if gens.is_canonical(word) {
            let m = *stack.last().expect("nonempty stack");
            // congruence condition on the product
            if m.classify() == Classification::Loxodromic && !m.c.is_zero() && group.is_row(&m.c, &m.d) {
                let h = form_height(&m, group, cutoff)?;
                found.push(HeightSample { height: h.value, word: gens.render(word), matrix: m, certified: h.certified });
            }
        }
        return Ok(());
    }
    let top = *stack.last().expect("nonempty stack");
    for (i, l) in gens.letters.iter().enumerate() {
        if let Some(&prev) = word.last() {
            if !gens.follows(prev, i) {
                continue;
            }
        }
        // a canonical word starts with its least letter
        if word.first().is_some_and(|&f| i < f) {
            continue;
        }
        let next = top * l.matrix;
        if max_entry_norm(&next) > MAX_ENTRY_NORM {
            continue;
        }
        word.push(i);
        stack.push(next);
        extend(gens, group, cutoff, len, word, stack, found)?;
        stack.pop();
        word.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypgeo::{Modular, TrivialGroup};

    #[test]
    fn real_sampler_lowest_heights() {
        let s = spectrum_sample(&GeneratorSet::modular_positive(), &Modular, 8, 100.0).unwrap();
        let expect = [(5f64.sqrt() / 2.0).ln(), 0.5 * 2f64.ln(), (221f64.sqrt() / 10.0).ln()];
        for (got, want) in s.iter().zip(expect) {
            assert!((got.height - want).abs() < 1e-12, "{} vs {want}", got.height);
            assert!(got.certified);
        }
        assert_eq!(s[0].word, "T L");
        assert!(s.windows(2).all(|w| w[1].height - w[0].height > HEIGHT_DEDUP_TOL));
    }

    #[test]
    fn canonical_words() {
        let g = GeneratorSet::modular_positive();
        assert!(g.is_canonical(&[0, 0, 1]));
        assert!(!g.is_canonical(&[0, 1, 0]));
        assert_eq!(g.render(&[0, 0, 1, 1, 0, 1]), "T^2 L^2 T L");
        let b = GeneratorSet::bianchi(&BianchiContext::full(OrderSpec::gaussian()));
        // T, Tw, L[1], L[i], S and four inverses
        assert_eq!(b.len(), 9);
    }

    #[test]
    fn degenerate_inputs() {
        let o = OrderSpec::gaussian();
        let t = spectrum_sample(&GeneratorSet::trivial(o), &TrivialGroup(o), 4, 10.0).unwrap();
        assert!(t.is_empty());
        assert_eq!(GeneratorSet::new(vec![], true).unwrap_err(), Error::EmptyGenerators);
    }

    #[test]
    fn bianchi_sampler_respects_congruence() {
        let o = OrderSpec::gaussian();
        let ctx = BianchiContext::new(crate::numkit::IdealSpec::new(vec![o.elem(1, 1)]).unwrap());
        let s = spectrum_sample(&GeneratorSet::bianchi(&ctx), &ctx, 3, 10.0).unwrap();
        assert!(!s.is_empty());
        for h in &s {
            assert!(ctx.ideal().contains(&h.matrix.c));
            assert!(h.height.is_finite());
        }
    }
}
