//! High-precision numeric evaluation of multiple zeta star partial sums
//! `ζ*_N(m+2, {1}_{r-1})` and of the combined polylogarithmic difference
//! series that shares their limit, plus a convergence demonstrator for the
//! binomial partial sums.
//!
//! The two polylog-star terms of the limit identity contain the argument
//! `1/y > 1` and blow up in isolation; only their combined difference sum
//!
//! ```text
//!   Σ_{n_1 ≥ ... ≥ n_{m+r+1} ≥ 1} y^{n_1 - n_{m+2}} (1 - y^{n_{m+r+1}}) / (n_1 ... n_{m+r+1})
//! ```
//!
//! is evaluated, where every geometric factor telescopes to an exponent
//! `<= 0`. Truncation error is estimated heuristically by comparing against
//! the half-truncation value; it is not a certified tail bound.

pub mod fixed;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicEvaluator;
use crate::rational::{binomial, power_table, Rational};

pub use fixed::{Fixed, FixedCtx};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 50;

/// Default truncation bound for series of depth <= 3.
pub const DEFAULT_TRUNCATION: u32 = 20_000;

/// Guard digits carried internally beyond the requested precision.
const GUARD_DIGITS: u32 = 10;

/// Truncation default follows the O(N·depth) cost model: keep N·depth near
/// the depth-3 budget.
pub fn default_truncation(depth: u32) -> u32 {
    if depth <= 3 {
        DEFAULT_TRUNCATION
    } else {
        (3 * DEFAULT_TRUNCATION / depth).max(1000)
    }
}

/// A truncated-series value with a heuristic error estimate.
#[derive(Clone, Debug)]
pub struct ApproxValue {
    pub value: Fixed,
    /// Requested precision (the value itself carries guard digits).
    pub digits: u32,
    /// `|value(N) - value(ceil(N/2))|`, a truncation-doubling heuristic.
    pub err_estimate: f64,
}

impl ApproxValue {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn decimal_string(&self) -> String {
        self.value.decimal_string(self.digits)
    }
}

fn check_common(trunc: u32, digits: u32) -> Result<()> {
    if trunc < 1 {
        return Err(Error::domain("truncation bound must be >= 1"));
    }
    if digits < 15 {
        return Err(Error::domain("working precision must be >= 15 digits"));
    }
    Ok(())
}

/// Partial sum `ζ*_N(m+2, {1}_{r-1})` in fixed-point arithmetic, by the same
/// innermost-first scheme as the exact evaluators.
pub fn mzsv_star_numeric(m: u32, r: u32, trunc: u32, digits: u32) -> Result<ApproxValue> {
    if r < 1 {
        return Err(Error::domain("depth parameter r must be >= 1"));
    }
    check_common(trunc, digits)?;
    let ctx = FixedCtx::new(digits + GUARD_DIGITS);
    let n = trunc as usize;
    let parts: Vec<u32> = std::iter::once(m + 2)
        .chain(std::iter::repeat_n(1, r as usize - 1))
        .collect();
    let d = parts.len();
    let mut prefix: Vec<Fixed> = Vec::with_capacity(n + 1);
    prefix.push(ctx.zero());
    {
        let mut acc = ctx.zero();
        for v in 1..=n {
            let term = inv_power(&ctx, v as u64, parts[d - 1]);
            acc = ctx.add(&acc, &term);
            prefix.push(acc.clone());
        }
    }
    for j in (0..d - 1).rev() {
        let mut acc = ctx.zero();
        let mut next: Vec<Fixed> = Vec::with_capacity(n + 1);
        next.push(ctx.zero());
        for v in 1..=n {
            let term = div_power(&ctx, &prefix[v], v as u64, parts[j]);
            acc = ctx.add(&acc, &term);
            next.push(acc.clone());
        }
        prefix = next;
    }
    let value = prefix[n].clone();
    let half = prefix[n.div_ceil(2)].clone();
    let err_estimate = ctx.sub(&value, &half).abs().to_f64();
    Ok(ApproxValue {
        value,
        digits,
        err_estimate,
    })
}

fn inv_power(ctx: &FixedCtx, v: u64, k: u32) -> Fixed {
    ctx.from_rational(&Rational::new(BigInt::one(), BigInt::from(v).pow(k)))
}

fn div_power(ctx: &FixedCtx, a: &Fixed, v: u64, k: u32) -> Fixed {
    let mut out = a.clone();
    for _ in 0..k {
        out = ctx.div_uint(&out, v);
    }
    out
}

/// The combined difference series truncated at `n_1 <= trunc`, for
/// `y ∈ (0,1)`. Agrees with `mzsv_star_numeric` in the limit.
pub fn thm4_rhs_numeric(
    m: u32,
    r: u32,
    y: &Rational,
    trunc: u32,
    digits: u32,
) -> Result<ApproxValue> {
    if r < 1 {
        return Err(Error::domain("depth parameter r must be >= 1"));
    }
    check_common(trunc, digits)?;
    if y <= &Rational::zero() || y >= &Rational::one() {
        return Err(Error::domain("y must lie strictly between 0 and 1"));
    }
    let ctx = FixedCtx::new(digits + GUARD_DIGITS);
    let n = trunc as usize;
    let d = (m + r + 1) as usize;
    let yfix = ctx.from_rational(y);

    // innermost seed (1 - y^v)/v
    let mut layer: Vec<Fixed> = Vec::with_capacity(n + 1);
    layer.push(ctx.zero());
    {
        let one = ctx.one();
        let mut ypow = ctx.one();
        for v in 1..=n {
            ypow = ctx.mul(&ypow, &yfix);
            layer.push(ctx.div_uint(&ctx.sub(&one, &ypow), v as u64));
        }
    }
    // pair i couples (n_i, n_{i+1}); the telescoped exponent y^{n_1 - n_{m+2}}
    // puts the geometric weight on pairs 1..=m+1
    for i in (1..d).rev() {
        let weighted = i as u32 <= m + 1;
        let mut acc = ctx.zero();
        let mut next: Vec<Fixed> = Vec::with_capacity(n + 1);
        next.push(ctx.zero());
        for v in 1..=n {
            acc = if weighted {
                ctx.add(&ctx.mul(&acc, &yfix), &layer[v])
            } else {
                ctx.add(&acc, &layer[v])
            };
            next.push(ctx.div_uint(&acc, v as u64));
        }
        layer = next;
    }
    let mut total = ctx.zero();
    let mut half = ctx.zero();
    let half_n = n.div_ceil(2);
    for (v, term) in layer.iter().enumerate().skip(1) {
        total = ctx.add(&total, term);
        if v == half_n {
            half = total.clone();
        }
    }
    let err_estimate = ctx.sub(&total, &half).abs().to_f64();
    Ok(ApproxValue {
        value: total,
        digits,
        err_estimate,
    })
}

/// One binomial partial sum of the triangular weight system.
#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub n: u32,
    /// Exact rational value of `Σ_k C(n,k)(1-y)^k y^{n-k} ζ*_k(m+2,{1}_{r-1})`.
    pub partial: Rational,
    pub value: f64,
    /// `value - limit`.
    pub delta: f64,
}

/// Convergence trace of the binomial partial sums toward the series limit.
#[derive(Clone, Debug)]
pub struct ConvergenceTrace {
    pub entries: Vec<TraceEntry>,
    pub limit: ApproxValue,
}

/// `Σ_k C(n,k)(1-y)^k y^{n-k}`, exactly; equals 1 for every n.
pub fn row_weight_sum(n: u32, y: &Rational) -> Rational {
    let x = Rational::one() - y;
    let xp = power_table(&x, n as usize);
    let yp = power_table(y, n as usize);
    let mut acc = Rational::zero();
    for k in 0..=n as usize {
        acc += Rational::from_integer(binomial(n as u64, k as u64)) * &xp[k] * &yp[n as usize - k];
    }
    acc
}

/// Exact binomial partial sums at each requested `n` (sorted, deduplicated),
/// paired with the reference limit from [`mzsv_star_numeric`].
pub fn toeplitz_trace(
    ev: &HarmonicEvaluator,
    m: u32,
    r: u32,
    y: &Rational,
    n_list: &[u32],
    limit_trunc: u32,
    digits: u32,
) -> Result<ConvergenceTrace> {
    if y <= &Rational::zero() || y >= &Rational::one() {
        return Err(Error::domain("y must lie strictly between 0 and 1"));
    }
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(Error::domain("n list must contain positive entries"));
    }
    let mut ns: Vec<u32> = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let limit = mzsv_star_numeric(m, r, limit_trunc, digits)?;
    let limit_f = limit.to_f64();
    let n_max = *ns.last().unwrap();
    let comp = Composition::concat(&[
        Composition::new(vec![m + 2])?,
        Composition::ones(r as usize - 1),
    ]);
    let vals = ev.mhss_prefix(n_max, &comp);
    let x = Rational::one() - y;
    let xp = power_table(&x, n_max as usize);
    let yp = power_table(y, n_max as usize);
    let entries = ns
        .into_iter()
        .map(|n| {
            let mut acc = Rational::zero();
            for k in 0..=n as usize {
                acc += Rational::from_integer(binomial(n as u64, k as u64))
                    * &xp[k]
                    * &yp[n as usize - k]
                    * &vals[k];
            }
            let value = rational_to_f64(&acc);
            TraceEntry {
                n,
                partial: acc,
                value,
                delta: value - limit_f,
            }
        })
        .collect();
    Ok(ConvergenceTrace { entries, limit })
}

fn rational_to_f64(q: &Rational) -> f64 {
    // scaled fixed-point round-trip keeps precision for huge numer/denom
    let ctx = FixedCtx::new(30);
    ctx.from_rational(q).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::chain::{weighted_chain_sum, PairWeight};
    use crate::rational::rat;

    #[test]
    fn mzsv_matches_exact_partial_sum() {
        let ev = HarmonicEvaluator::new();
        for (m, r) in [(0u32, 1u32), (0, 2), (1, 1), (1, 2)] {
            let comp = Composition::concat(&[
                Composition::new(vec![m + 2]).unwrap(),
                Composition::ones(r as usize - 1),
            ]);
            let exact = ev.mhss(40, &comp);
            let approx = mzsv_star_numeric(m, r, 40, 30).unwrap();
            let ctx = FixedCtx::new(30 + 10);
            let diff = ctx.sub(&approx.value, &ctx.from_rational(&exact)).abs();
            assert!(diff.to_f64() < 1e-25, "m={m} r={r} diff={diff:?}");
        }
    }

    #[test]
    fn thm4_matches_exact_chain_truncation() {
        // the same truncated sum evaluated in exact rational arithmetic
        for (m, r) in [(0u32, 1u32), (0, 2), (1, 1)] {
            let y = rat(1, 2);
            let n = 30u32;
            let d = (m + r + 1) as usize;
            let ypow = power_table(&y, n as usize);
            let weights: Vec<PairWeight> = (1..d)
                .map(|i| {
                    if (i as u32) <= m + 1 {
                        Some(y.clone())
                    } else {
                        None
                    }
                })
                .collect();
            let exact = weighted_chain_sum(n, &weights, |v| {
                Rational::new(
                    (Rational::one() - &ypow[v as usize]).numer().clone(),
                    (Rational::one() - &ypow[v as usize]).denom() * BigInt::from(v),
                )
            });
            let approx = thm4_rhs_numeric(m, r, &y, n, 30).unwrap();
            let ctx = FixedCtx::new(30 + 10);
            let diff = ctx.sub(&approx.value, &ctx.from_rational(&exact)).abs();
            assert!(diff.to_f64() < 1e-25, "m={m} r={r} diff={diff:?}");
        }
    }

    #[test]
    fn domain_checks() {
        assert!(thm4_rhs_numeric(0, 1, &rat(3, 2), 100, 30).is_err());
        assert!(thm4_rhs_numeric(0, 1, &rat(0, 1), 100, 30).is_err());
        assert!(thm4_rhs_numeric(0, 1, &rat(1, 1), 100, 30).is_err());
        assert!(thm4_rhs_numeric(0, 0, &rat(1, 2), 100, 30).is_err());
        assert!(mzsv_star_numeric(0, 1, 0, 30).is_err());
        assert!(mzsv_star_numeric(0, 1, 100, 10).is_err());
    }

    #[test]
    fn row_weights_sum_to_one() {
        for n in 0..=40u32 {
            assert_eq!(row_weight_sum(n, &rat(1, 2)), Rational::one());
            assert_eq!(row_weight_sum(n, &rat(2, 7)), Rational::one());
        }
    }

    #[test]
    fn trace_orders_and_converges() {
        let ev = HarmonicEvaluator::new();
        let trace = toeplitz_trace(&ev, 0, 1, &rat(1, 2), &[50, 10, 50], 2000, 20).unwrap();
        let ns: Vec<u32> = trace.entries.iter().map(|e| e.n).collect();
        assert_eq!(ns, vec![10, 50]);
        assert!(trace.entries[1].delta.abs() < trace.entries[0].delta.abs());
    }

    #[test]
    fn depth_one_trace_entry_at_n_one() {
        // partial(1) = (1-y)·ζ*_1(m+2, {1}_{r-1}) = 1-y for every depth
        let ev = HarmonicEvaluator::new();
        for r in [1u32, 2, 3] {
            let trace = toeplitz_trace(&ev, 0, r, &rat(1, 3), &[1], 500, 20).unwrap();
            assert_eq!(trace.entries[0].partial, rat(2, 3));
        }
    }

    #[test]
    fn truncation_is_monotone() {
        // all terms positive for y in (0,1)
        let y = rat(2, 3);
        let mut last = 0.0;
        for n in [50u32, 100, 200, 400] {
            let v = thm4_rhs_numeric(1, 2, &y, n, 20).unwrap().to_f64();
            assert!(v >= last, "partial sum decreased at N={n}");
            last = v;
        }
    }

    #[test]
    fn default_truncation_cost_model() {
        assert_eq!(default_truncation(1), DEFAULT_TRUNCATION);
        assert_eq!(default_truncation(3), DEFAULT_TRUNCATION);
        assert!(default_truncation(6) < DEFAULT_TRUNCATION);
        assert!(default_truncation(60) >= 1000);
    }
}
