//! Brute-force proximity: the least length of a word `w` with `x₂ = x₁·w`.
//!
//! Enumeration order is by length, then tree shape, then leaf assignment.
//! Shapes for `n` leaves list the split point `1..n` outermost, then the
//! node kind (sum before product), then the left and right subshapes. Leaves
//! are drawn from `0, 1, -1` followed by the bound generators in name order,
//! and assignments count in mixed radix with the leftmost leaf most
//! significant.

use crate::error::{Error, Result};
use crate::rowfin::FinVec;
use crate::words::{RingWord, WordEnv};

/// Default cap on the number of words the oracle may enumerate.
pub const DEFAULT_WORD_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proximity {
    Found { r: u64, witness: RingWord },
    NotWithin(u64),
}

#[derive(Clone, Debug)]
enum Shape {
    Leaf,
    Node { sum: bool, left: Box<Shape>, right: Box<Shape> },
}

fn shapes(n: usize, memo: &mut Vec<Vec<Shape>>) -> Vec<Shape> {
    while memo.len() <= n {
        let m = memo.len();
        let mut out = Vec::new();
        if m == 1 {
            out.push(Shape::Leaf);
        }
        for k in 1..m.max(1) {
            for sum in [true, false] {
                for l in &memo[k] {
                    for r in &memo[m - k] {
                        out.push(Shape::Node { sum, left: Box::new(l.clone()), right: Box::new(r.clone()) });
                    }
                }
            }
        }
        memo.push(out);
    }
    memo[n].clone()
}

fn fill(shape: &Shape, leaves: &mut impl Iterator<Item = RingWord>) -> RingWord {
    match shape {
        Shape::Leaf => leaves.next().expect("leaf count matches shape"),
        Shape::Node { sum, left, right } => {
            let l = fill(left, leaves);
            let r = fill(right, leaves);
            if *sum {
                RingWord::sum(l, r)
            } else {
                RingWord::prod(l, r)
            }
        }
    }
}

/// Number of words of each length `1..=r_max` over `alphabet` leaves.
pub fn word_counts(alphabet: u64, r_max: u64) -> Vec<u128> {
    // shapes(n) = Σ_k 2·shapes(k)·shapes(n−k)
    let mut s = vec![0u128, 1];
    for n in 2..=r_max as usize {
        let v = (1..n).map(|k| 2 * s[k] * s[n - k]).sum();
        s.push(v);
    }
    (1..=r_max as usize).map(|n| s[n].saturating_mul((alphabet as u128).saturating_pow(n as u32))).collect()
}

/// Searches lengths `1..=r_max` for a word with `x₂ = x₁·w`.
///
/// Fails with [`Error::BoundExceeded`] before starting a length whose words
/// would push the running total past `word_cap`.
pub fn proximity_oracle(x1: &FinVec, x2: &FinVec, env: &WordEnv, r_max: u64, word_cap: u64) -> Result<Proximity> {
    env.ring().ensure_same(x1.ring())?;
    env.ring().ensure_same(x2.ring())?;
    let mut alphabet = vec![RingWord::Zero, RingWord::One, RingWord::NegOne];
    alphabet.extend(env.names().map(RingWord::gen));
    let counts = word_counts(alphabet.len() as u64, r_max);
    let mut memo = vec![Vec::new()];
    let mut total: u128 = 0;
    for r in 1..=r_max {
        total += counts[r as usize - 1];
        if total > word_cap as u128 {
            return Err(Error::BoundExceeded(format!(
                "proximity search needs {total} words up to length {r}, cap is {word_cap}"
            )));
        }
        let n = r as usize;
        for shape in shapes(n, &mut memo) {
            let mut digits = vec![0usize; n];
            loop {
                let w = fill(&shape, &mut digits.iter().map(|&d| alphabet[d].clone()));
                if env.apply(x1, &w)? == *x2 {
                    return Ok(Proximity::Found { r, witness: w });
                }
                // increment, rightmost leaf fastest
                let mut i = n;
                let exhausted = loop {
                    if i == 0 {
                        break true;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < alphabet.len() {
                        break false;
                    }
                    digits[i] = 0;
                };
                if exhausted {
                    break;
                }
            }
        }
    }
    Ok(Proximity::NotWithin(r_max))
}
