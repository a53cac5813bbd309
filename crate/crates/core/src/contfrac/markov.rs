use std::collections::{BTreeSet, VecDeque};

use super::constant::approx_constant;
use super::word::CFWord;
use crate::error::{Error, Result};
use crate::numkit::QuadSurd;

/// All Markov numbers `≤ bound`, ascending, found by walking the Markov
/// tree from `(1, 1, 1)` with Vieta jumps.
pub fn markov_numbers(bound: u64) -> Vec<u64> {
    let mut found = BTreeSet::new();
    if bound == 0 {
        return Vec::new();
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(1u128, 1u128, 1u128)]);
    while let Some((x, y, z)) = queue.pop_front() {
        if !seen.insert((x, y, z)) {
            continue;
        }
        found.extend([x, y, z].map(|v| v as u64));
        // replace x or y; the new entry becomes the largest
        for (a, b) in [(y, x), (x, y)] {
            let jump = 3 * b * z - a;
            if jump <= bound as u128 {
                let mut t = [b, z, jump];
                t.sort_unstable();
                queue.push_back((t[0], t[1], t[2]));
            }
        }
    }
    found.into_iter().collect()
}

/// `m / √(9m² − 4)` for a Markov number `m`.
pub fn markov_value(m: u64) -> Result<f64> {
    if m == 0 || markov_numbers(m).last() != Some(&m) {
        return Err(Error::NotMarkov(m));
    }
    let m = m as f64;
    Ok(m / (9.0 * m * m - 4.0).sqrt())
}

/// A period word whose approximation constant is the Markov value of `m`,
/// searched among `[(1)]`, `[(2)]` and words built from the blocks `1,1` and
/// `2,2` with at most `max_blocks` blocks.
pub fn markov_word(m: u64, max_blocks: usize) -> Result<CFWord> {
    markov_value(m)?;
    let m = m as i128;
    let target = QuadSurd::rational(9 * m * m - 4, m * m);
    let mut candidates = vec![vec![1], vec![2]];
    for len in 1..=max_blocks {
        for mask in 0u32..(1 << len) {
            let mut w = Vec::with_capacity(2 * len);
            for i in 0..len {
                let b = if mask >> i & 1 == 1 { 2 } else { 1 };
                w.extend([b, b]);
            }
            candidates.push(w);
        }
    }
    for period in candidates {
        let word = CFWord::purely_periodic(period)?;
        let lambda = approx_constant(&word)?.lambda.expect("periodic");
        if lambda * lambda == target {
            return Ok(word);
        }
    }
    Err(Error::NotMarkov(m as u64))
}
