//! Exact evaluation of weighted nested chain sums
//!
//! ```text
//!   Σ_{n ≥ v_1 ≥ ... ≥ v_M ≥ 1}  Π_{i=1}^{M-1} c_i^{v_i - v_{i+1}} · seed(v_M) · Π_{i=1}^{M-1} 1/v_i
//! ```
//!
//! where `seed` carries the innermost `1/v_M` factor (and any `z^{v_M}`-style
//! weight). Geometric pair weights are folded with the recurrence
//! `B[v] = c·B[v-1] + f(v)`, so the whole sum costs O(n·M) rational
//! operations instead of enumerating chains.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::Rational;

/// Pair weight between adjacent chain indices; `None` is weight 1.
pub type PairWeight = Option<Rational>;

pub fn weighted_chain_sum(
    n: u32,
    pair_weights: &[PairWeight],
    seed: impl Fn(u32) -> Rational,
) -> Rational {
    let n = n as usize;
    if n == 0 {
        return Rational::zero();
    }
    let mut layer: Vec<Rational> = (0..=n)
        .map(|v| if v == 0 { Rational::zero() } else { seed(v as u32) })
        .collect();
    // innermost pair first
    for w in pair_weights.iter().rev() {
        let mut next = vec![Rational::zero(); n + 1];
        let mut acc = Rational::zero();
        for v in 1..=n {
            match w {
                Some(c) => acc = acc * c + &layer[v],
                None => acc += &layer[v],
            }
            next[v] = Rational::new(acc.numer().clone(), acc.denom() * BigInt::from(v));
        }
        layer = next;
    }
    let mut total = Rational::zero();
    for v in 1..=n {
        total += &layer[v];
    }
    total
}
