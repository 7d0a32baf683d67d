//! The identities themselves: exact evaluators for both sides of every
//! binomial-sum identity in the registry.
//!
//! Left-hand sides are always computed term by term from the defining
//! binomial sum with memoized harmonic-type values, so they stay an
//! independent witness against the right-hand forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::harmonic::{alt_harmonic_prefix, harmonic_prefix};
use crate::rational::{binomial, factorial, power_table, rational_pow, Rational};
use crate::stirling_bell::{bell_number_table, bell_numbers_row};

use super::chain::{weighted_chain_sum, PairWeight};
use super::params::{ParamPoint, Slot};
use super::registry::{EvalCtx, IdentityDef};
use super::report::Form;

fn int(v: u32) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `q / v` for positive integer `v`.
fn over(q: Rational, v: u32) -> Rational {
    Rational::new(q.numer().clone(), q.denom() * BigInt::from(v))
}

/// `(-1)^e`.
fn sign(e: u32) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `[1/0!, 1/1!, ..., 1/n!]`.
fn inv_factorials(n: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Rational::one());
    for j in 1..=n as usize {
        out.push(over(out[j - 1].clone(), j as u32));
    }
    out
}

/// `Σ_{k=0}^n x^k y^{n-k} C(n,k) vals[k]`.
fn binomial_weighted_sum(n: u32, x: &Rational, y: &Rational, vals: &[Rational]) -> Rational {
    let n_us = n as usize;
    let xp = power_table(x, n_us);
    let yp = power_table(y, n_us);
    let mut acc = Rational::zero();
    for k in 0..=n_us {
        let c = binomial(n as u64, k as u64);
        acc += Rational::from_integer(c) * &xp[k] * &yp[n_us - k] * &vals[k];
    }
    acc
}

/// `[(-1)^i Y_i(t)/i!]` for `i = 0..count`.
fn signed_bell_weights(t: u32, count: u32) -> Vec<Rational> {
    if count == 0 {
        return Vec::new();
    }
    let ys = bell_numbers_row(count - 1, t);
    let ifact = inv_factorials(count - 1);
    (0..count as usize)
        .map(|i| sign(i as u32) * &ys[i] * &ifact[i])
        .collect()
}

fn require_xy(pt: &ParamPoint, id: &str) -> Result<(Rational, Rational, Rational)> {
    let x = pt.require_rat(id, Slot::X)?.clone();
    let y = pt.require_rat(id, Slot::Y)?.clone();
    let s = &x + &y;
    if s.is_zero() {
        return Err(Error::domain("x + y = 0"));
    }
    Ok((x, y, s))
}

// ---------------------------------------------------------------------------
// soft (theorem-stated) domain constraints
// ---------------------------------------------------------------------------

fn soft_none(_: &ParamPoint) -> Option<String> {
    None
}

fn soft_xy_ratio(pt: &ParamPoint) -> Option<String> {
    let (Some(x), Some(y)) = (&pt.x, &pt.y) else {
        return None;
    };
    let s = x + y;
    if s.is_zero() {
        return None; // hard error surfaces at evaluation
    }
    // x/(x+y) >= 0  <=>  x·(x+y) >= 0
    if (x * &s).is_negative() {
        Some("x/(x+y) < 0".to_string())
    } else {
        None
    }
}

fn soft_xy_ratio_and_z(pt: &ParamPoint) -> Option<String> {
    if let Some(z) = &pt.z {
        if z > &Rational::one() {
            return Some("z > 1".to_string());
        }
    }
    soft_xy_ratio(pt)
}

// ---------------------------------------------------------------------------
// the classical binomial sums of harmonic numbers
// ---------------------------------------------------------------------------

fn eval_mneimneh(_ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let n = pt.n;
    let p = pt.require_rat("mneimneh", Slot::Prob)?;
    let q = Rational::one() - p;
    let h = harmonic_prefix(n, 1);
    let lhs = binomial_weighted_sum(n, p, &q, &h);
    let mut rhs = Rational::zero();
    let mut qpow = Rational::one();
    for i in 1..=n {
        qpow = &qpow * &q;
        rhs += over(Rational::one() - &qpow, i);
    }
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("telescoped-sum", rhs)])
}

fn eval_pow2(_ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let n = pt.n;
    let h = harmonic_prefix(n, 1);
    let mut lhs = Rational::zero();
    for k in 0..=n {
        lhs += Rational::from_integer(binomial(n as u64, k as u64)) * &h[k as usize];
    }
    // 2^n (H_n - Σ_j 1/(j·2^j))
    let mut tail = Rational::zero();
    let mut pow2 = BigInt::one();
    for j in 1..=n {
        pow2 *= 2;
        tail += Rational::new(BigInt::one(), BigInt::from(j) * &pow2);
    }
    let rhs = Rational::from_integer(pow2) * (&h[n as usize] - tail);
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("power-form", rhs)])
}

fn gencev_forms(ctx: &EvalCtx, pt: &ParamPoint, id: &str, literal: bool) -> Result<Vec<Form>> {
    let n = pt.n;
    let p = pt.require_rat(id, Slot::Prob)?;
    let z = pt.require_rat(id, Slot::Z)?;
    let r = pt.require_uint(id, Slot::R)?;
    if r < 1 {
        return Err(Error::domain("r must be >= 1"));
    }
    if p.is_one() {
        return Err(Error::domain("p = 1 excluded"));
    }
    let q = Rational::one() - p;
    let comp = Composition::new(vec![r])?;
    let vals = ctx.harmonic.mhts_prefix(n, &comp, z);
    let lhs = if literal {
        // the printed reading: weights p^k (1-p)^k
        let pq = p * &q;
        binomial_weighted_sum(n, &pq, &Rational::one(), &vals)
    } else {
        binomial_weighted_sum(n, p, &q, &vals)
    };
    // Σ (1-p)^{n_1} ((1 + zp/(1-p))^{n_r} - 1) / (n_1 ... n_r), folded so no
    // intermediate divides by 1-p: seed (( 1-p+zp )^v - (1-p)^v)/v.
    let a = &q + z * p;
    let n_us = n as usize;
    let apow = power_table(&a, n_us);
    let qpow = power_table(&q, n_us);
    let weights: Vec<PairWeight> = vec![Some(q.clone()); r as usize - 1];
    let rhs = weighted_chain_sum(n, &weights, |v| {
        over(&apow[v as usize] - &qpow[v as usize], v)
    });
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("nested-sum", rhs)])
}

fn eval_gencev(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    gencev_forms(ctx, pt, "gencev", false)
}

fn eval_gencev_literal(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    gencev_forms(ctx, pt, "gencev-literal", true)
}

// ---------------------------------------------------------------------------
// the three Mneimneh-type theorems
// ---------------------------------------------------------------------------

/// `Σ_{i=0}^{count-1} weights[i]·s(j, order-i)` for each `j`, divided by `j!`.
fn stirling_bracket_column(
    ctx: &EvalCtx,
    n: u32,
    order: u32,
    weights: &[Rational],
    inv_fact: &[Rational],
) -> Vec<Rational> {
    ctx.with_stirling(|st| {
        st.ensure(n as usize);
        (0..=n)
            .map(|j| {
                let mut acc = Rational::zero();
                for (i, wgt) in weights.iter().enumerate() {
                    let s = st.get(j, order - i as u32);
                    if !s.is_zero() {
                        acc += wgt * Rational::from_integer(s);
                    }
                }
                acc * &inv_fact[j as usize]
            })
            .collect()
    })
}

fn eval_thm1(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let id = "thm1";
    let n = pt.n;
    let (x, y, s) = require_xy(pt, id)?;
    let z = pt.require_rat(id, Slot::Z)?;
    let p = pt.require_uint(id, Slot::P)?;
    if p < 1 {
        return Err(Error::domain("p must be >= 1"));
    }
    let comp = Composition::ones(p as usize);
    let vals = ctx.harmonic.mhts_prefix(n, &comp, z);
    let lhs = binomial_weighted_sum(n, &x, &y, &vals);

    let a = (&x * z + &y) / &s;
    let b = &y / &s;
    let n_us = n as usize;
    let apow = power_table(&a, n_us);
    let bpow = power_table(&b, n_us);
    let ifact = inv_factorials(n);
    let sb = signed_bell_weights(n, p);
    let bracket = stirling_bracket_column(ctx, n, p, &sb, &ifact);
    let mut sum = Rational::zero();
    for j in 1..=n_us {
        sum += (&apow[j] - &bpow[j]) * &bracket[j];
    }
    let spow_n = rational_pow(&s, n as i64)?;
    let rhs_sb = sign(p - 1) * &spow_n * sum;

    let closed = &spow_n * (ctx.harmonic.mhts(n, &comp, &a) - ctx.harmonic.mhts(n, &comp, &b));
    Ok(vec![
        Form::new("binomial-sum", lhs),
        Form::new("stirling-bell-sum", rhs_sb),
        Form::new("star-difference", closed),
    ])
}

struct Thm2Params {
    n: u32,
    x: Rational,
    y: Rational,
    s: Rational,
    z: Rational,
}

fn thm2_common(pt: &ParamPoint, id: &str) -> Result<Thm2Params> {
    let (x, y, s) = require_xy(pt, id)?;
    if y.is_zero() {
        return Err(Error::domain("y = 0"));
    }
    let z = pt.require_rat(id, Slot::Z)?.clone();
    Ok(Thm2Params { n: pt.n, x, y, s, z })
}

/// The double Stirling/Bell sum shared by the depth-(p+m) theorem and both
/// of its corollaries.
fn thm2_stirling_bell_rhs(ctx: &EvalCtx, t: &Thm2Params, p: u32, m: u32) -> Result<Rational> {
    let n = t.n;
    let n_us = n as usize;
    let w = &t.y / &t.s;
    let u = Rational::one() + &t.x * &t.z / &t.y;
    let wpow = power_table(&w, n_us);
    let upow = power_table(&u, n_us);
    let ifact = inv_factorials(n);
    let sbp = signed_bell_weights(n, p);
    let pb = stirling_bracket_column(ctx, n, p, &sbp, &ifact);
    let bell = bell_number_table(m.saturating_sub(1), n);
    let ifact_m = inv_factorials(m.saturating_sub(1));
    let mut total = Rational::zero();
    ctx.with_stirling(|st| {
        st.ensure(n_us);
        for j in 1..=n_us {
            if pb[j].is_zero() {
                continue;
            }
            let sbm: Vec<Rational> = (0..m as usize)
                .map(|h| sign(h as u32) * &bell[j][h] * &ifact_m[h])
                .collect();
            let mut inner = Rational::zero();
            for l in 1..=j {
                let mut mb = Rational::zero();
                for (h, wgt) in sbm.iter().enumerate() {
                    let sv = st.get(l as u32, m - h as u32);
                    if !sv.is_zero() {
                        mb += wgt * Rational::from_integer(sv);
                    }
                }
                if !mb.is_zero() {
                    inner += (&upow[l] - Rational::one()) * mb * &ifact[l];
                }
            }
            total += &wpow[j] * &pb[j] * inner;
        }
    });
    Ok(sign(m + p) * rational_pow(&t.s, n as i64)? * total)
}

/// Nested alternative form: chain of depth p+m with geometric pair weights
/// from position p on and seed ((xz+y)/(x+y))^v - (y/(x+y))^v over v.
fn thm2_nested_rhs(t: &Thm2Params, p: u32, m: u32) -> Result<Rational> {
    let n = t.n;
    let w = &t.y / &t.s;
    let a = (&t.x * &t.z + &t.y) / &t.s;
    let n_us = n as usize;
    let apow = power_table(&a, n_us);
    let wpow = power_table(&w, n_us);
    let depth = (p + m) as usize;
    let weights: Vec<PairWeight> = (1..depth)
        .map(|i| if i as u32 >= p { Some(w.clone()) } else { None })
        .collect();
    let chain = weighted_chain_sum(n, &weights, |v| {
        over(&apow[v as usize] - &wpow[v as usize], v)
    });
    Ok(rational_pow(&t.s, n as i64)? * chain)
}

fn eval_thm2(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let id = "thm2";
    let t = thm2_common(pt, id)?;
    let p = pt.require_uint(id, Slot::P)?;
    let m = pt.require_uint(id, Slot::M)?;
    if p < 1 || m < 1 {
        return Err(Error::domain("p and m must be >= 1"));
    }
    let comp = Composition::concat(&[
        Composition::ones(p as usize - 1),
        Composition::new(vec![m + 1])?,
    ]);
    let vals = ctx.harmonic.mhts_prefix(t.n, &comp, &t.z);
    let lhs = binomial_weighted_sum(t.n, &t.x, &t.y, &vals);
    let rhs = thm2_stirling_bell_rhs(ctx, &t, p, m)?;
    let rhs_alt = thm2_nested_rhs(&t, p, m)?;
    Ok(vec![
        Form::new("binomial-sum", lhs),
        Form::new("stirling-bell-sum", rhs),
        Form::new("nested-sum", rhs_alt),
    ])
}

fn eval_cor1(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let id = "cor1";
    let t = thm2_common(pt, id)?;
    let p = pt.require_uint(id, Slot::P)?;
    if p < 1 {
        return Err(Error::domain("p must be >= 1"));
    }
    let n = t.n;
    let n_us = n as usize;
    let comp = Composition::concat(&[
        Composition::ones(p as usize - 1),
        Composition::new(vec![2])?,
    ]);
    let vals = ctx.harmonic.mhts_prefix(n, &comp, &t.z);
    let lhs = binomial_weighted_sum(n, &t.x, &t.y, &vals);

    let w = &t.y / &t.s;
    let u = Rational::one() + &t.x * &t.z / &t.y;
    let wpow = power_table(&w, n_us);
    let upow = power_table(&u, n_us);
    let ifact = inv_factorials(n);
    let sbp = signed_bell_weights(n, p);
    let pb = stirling_bracket_column(ctx, n, p, &sbp, &ifact);
    let mut total = Rational::zero();
    for j in 1..=n_us {
        if pb[j].is_zero() {
            continue;
        }
        let mut inner = Rational::zero();
        for l in 1..=j {
            inner += over(&upow[l] - Rational::one(), l as u32);
        }
        total += &wpow[j] * &pb[j] * inner;
    }
    let rhs = sign(p - 1) * rational_pow(&t.s, n as i64)? * total;
    let via_parent = thm2_stirling_bell_rhs(ctx, &t, p, 1)?;
    Ok(vec![
        Form::new("binomial-sum", lhs),
        Form::new("stirling-bell-sum", rhs),
        Form::new("parent-specialization", via_parent),
    ])
}

fn eval_cor2(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let id = "cor2";
    let t = thm2_common(pt, id)?;
    let m = pt.require_uint(id, Slot::M)?;
    if m < 1 {
        return Err(Error::domain("m must be >= 1"));
    }
    let n = t.n;
    let n_us = n as usize;
    let comp = Composition::new(vec![m + 1])?;
    let vals = ctx.harmonic.mhts_prefix(n, &comp, &t.z);
    let lhs = binomial_weighted_sum(n, &t.x, &t.y, &vals);

    let w = &t.y / &t.s;
    let u = Rational::one() + &t.x * &t.z / &t.y;
    let wpow = power_table(&w, n_us);
    let upow = power_table(&u, n_us);
    let ifact = inv_factorials(n);
    let bell = bell_number_table(m - 1, n);
    let ifact_m = inv_factorials(m - 1);
    let mut total = Rational::zero();
    ctx.with_stirling(|st| {
        st.ensure(n_us);
        for j in 1..=n_us {
            let sbm: Vec<Rational> = (0..m as usize)
                .map(|h| sign(h as u32) * &bell[j][h] * &ifact_m[h])
                .collect();
            let mut inner = Rational::zero();
            for l in 1..=j {
                let mut mb = Rational::zero();
                for (h, wgt) in sbm.iter().enumerate() {
                    let sv = st.get(l as u32, m - h as u32);
                    if !sv.is_zero() {
                        mb += wgt * Rational::from_integer(sv);
                    }
                }
                if !mb.is_zero() {
                    inner += (&upow[l] - Rational::one()) * mb * &ifact[l];
                }
            }
            total += over(&wpow[j] * inner, j as u32);
        }
    });
    let rhs = sign(m - 1) * rational_pow(&t.s, n as i64)? * total;
    let via_parent = thm2_stirling_bell_rhs(ctx, &t, 1, m)?;
    Ok(vec![
        Form::new("binomial-sum", lhs),
        Form::new("stirling-bell-sum", rhs),
        Form::new("parent-specialization", via_parent),
    ])
}

fn eval_thm3(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let id = "thm3";
    let (x, y, s) = require_xy(pt, id)?;
    if y.is_zero() {
        return Err(Error::domain("y = 0"));
    }
    let p = pt.require_uint(id, Slot::P)?;
    let m = pt.require_uint(id, Slot::M)?;
    let r = pt.require_uint(id, Slot::R)?;
    if p < 1 || r < 1 {
        return Err(Error::domain("p and r must be >= 1"));
    }
    let n = pt.n;
    let comp = Composition::concat(&[
        Composition::ones(p as usize - 1),
        Composition::new(vec![m + 2])?,
        Composition::ones(r as usize - 1),
    ]);
    let vals = ctx.harmonic.mhss_prefix(n, &comp);
    let lhs = binomial_weighted_sum(n, &x, &y, &vals);

    let w = &y / &s;
    let wpow = power_table(&w, n as usize);
    let depth = (p + m + r) as usize;
    // the exponent n_p - n_{p+m+1} telescopes over adjacent pairs p..=p+m
    let weights: Vec<PairWeight> = (1..depth)
        .map(|i| {
            let i = i as u32;
            if i >= p && i <= p + m {
                Some(w.clone())
            } else {
                None
            }
        })
        .collect();
    let chain = weighted_chain_sum(n, &weights, |v| {
        over(Rational::one() - &wpow[v as usize], v)
    });
    let rhs = rational_pow(&s, n as i64)? * chain;
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("nested-sum", rhs)])
}

// ---------------------------------------------------------------------------
// shifted-index lemma and the two nested-sum propositions
// ---------------------------------------------------------------------------

fn eval_lemma_shift(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let id = "lemma-shift";
    let n = pt.n;
    if n < 1 {
        return Err(Error::domain("n must be >= 1"));
    }
    let k = pt.require_comp(id)?;
    if k.is_empty() {
        return Err(Error::domain("composition must be nonempty"));
    }
    let l = pt.require_uint(id, Slot::L)?;
    let parts = k.parts();
    let d = parts.len();

    // LHS: weak chain with every index shifted by l
    let n_us = n as usize;
    let mut prefix = vec![Rational::zero(); n_us + 1];
    {
        let mut acc = Rational::zero();
        for v in 1..=n_us {
            acc += Rational::new(
                BigInt::one(),
                BigInt::from(v as u32 + l).pow(parts[d - 1]),
            );
            prefix[v] = acc.clone();
        }
    }
    for j in (0..d - 1).rev() {
        let mut acc = Rational::zero();
        let mut next = vec![Rational::zero(); n_us + 1];
        for v in 1..=n_us {
            acc += &prefix[v]
                * Rational::new(
                    BigInt::one(),
                    BigInt::from(v as u32 + l).pow(parts[j]),
                );
            next[v] = acc.clone();
        }
        prefix = next;
    }
    let lhs = prefix[n_us].clone();

    // RHS: (-1)^r Σ_j (-1)^j ζ*_{n+l}(k_1..k_j) ζ_l(k_r..k_{j+1})
    let mut rhs = Rational::zero();
    for j in 0..=d {
        let star = ctx.harmonic.mhss(n + l, &k.prefix(j));
        let strict = ctx.harmonic.mhs(l, &k.reversed_suffix(j + 1));
        rhs += sign(j as u32) * star * strict;
    }
    rhs = sign(d as u32) * rhs;
    Ok(vec![Form::new("shifted-chain", lhs), Form::new("split-products", rhs)])
}

fn eval_prop_nested(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let id = "prop-nested";
    let j = pt.n;
    if j < 1 {
        return Err(Error::domain("j must be >= 1"));
    }
    let a = pt.require_rat(id, Slot::A)?;
    if a.is_zero() {
        return Err(Error::domain("a = 0 excluded"));
    }
    let z = pt.require_rat(id, Slot::Z)?;
    let m = pt.require_uint(id, Slot::M)?;
    if m < 1 {
        return Err(Error::domain("m must be >= 1"));
    }
    let c = a * z + Rational::one();
    let cpow = power_table(&c, j as usize);
    let weights: Vec<PairWeight> = vec![None; m as usize - 1];
    let lhs = weighted_chain_sum(j, &weights, |v| {
        over(&cpow[v as usize] - Rational::one(), v)
    });

    let ifact = inv_factorials(j);
    let bell = bell_numbers_row(m - 1, j);
    let ifact_m = inv_factorials(m - 1);
    let sbm: Vec<Rational> = (0..m as usize)
        .map(|h| sign(h as u32) * &bell[h] * &ifact_m[h])
        .collect();
    let mut total = Rational::zero();
    ctx.with_stirling(|st| {
        st.ensure(j as usize);
        for l in 1..=j {
            let mut mb = Rational::zero();
            for (h, wgt) in sbm.iter().enumerate() {
                let sv = st.get(l, m - h as u32);
                if !sv.is_zero() {
                    mb += wgt * Rational::from_integer(sv);
                }
            }
            if !mb.is_zero() {
                total += (&cpow[l as usize] - Rational::one()) * mb * &ifact[l as usize];
            }
        }
    });
    let rhs = sign(m - 1) * total;
    Ok(vec![Form::new("nested-sum", lhs), Form::new("stirling-bell-sum", rhs)])
}

fn eval_prop5(_ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let id = "prop5";
    let j = pt.n;
    if j < 1 {
        return Err(Error::domain("j must be >= 1"));
    }
    let alpha = pt.require_rat(id, Slot::Alpha)?;
    if alpha.is_zero() {
        return Err(Error::domain("alpha = 0 excluded"));
    }
    let ap1 = alpha + Rational::one();
    if ap1.is_zero() {
        return Err(Error::domain("alpha = -1 excluded"));
    }
    let m = pt.require_uint(id, Slot::M)?;
    if m < 1 {
        return Err(Error::domain("m must be >= 1"));
    }
    let m_fact = Rational::from_integer(factorial(m as u64));
    let weights: Vec<PairWeight> = vec![None; m as usize - 1];

    // left route: factor (α+1)^j/(α j) against the (α+1)^{-v} chain
    let inv = Rational::one() / &ap1;
    let ipow = power_table(&inv, j as usize);
    let chain_l = weighted_chain_sum(j, &weights, |v| {
        over(&ipow[v as usize] - Rational::one(), v)
    });
    let lhs = sign(m + 1)
        * &m_fact
        * over(rational_pow(&ap1, j as i64)? / alpha, j)
        * chain_l;

    // right route: the substitution a = -α/(1+α) turns it into the z = 1
    // nested-sum evaluation
    let a = -(alpha / &ap1);
    let a1 = &a + Rational::one();
    let apow = power_table(&a1, j as usize);
    let chain_r = weighted_chain_sum(j, &weights, |v| {
        over(&apow[v as usize] - Rational::one(), v)
    });
    let rhs = sign(m)
        * &m_fact
        * over(
            Rational::one() / (&a * rational_pow(&a1, j as i64 - 1)?),
            j,
        )
        * chain_r;
    Ok(vec![Form::new("alpha-form", lhs), Form::new("substituted-form", rhs)])
}

// ---------------------------------------------------------------------------
// the six explicit example identities
// ---------------------------------------------------------------------------

struct ExampleCtx {
    n: u32,
    x: Rational,
    y: Rational,
    s: Rational,
    spow: Vec<Rational>,
    ypow: Vec<Rational>,
    h1: Vec<Rational>,
}

fn example_common(pt: &ParamPoint, id: &str) -> Result<ExampleCtx> {
    let (x, y, s) = require_xy(pt, id)?;
    let n = pt.n;
    Ok(ExampleCtx {
        n,
        spow: power_table(&s, n as usize),
        ypow: power_table(&y, n as usize),
        h1: harmonic_prefix(n, 1),
        x,
        y,
        s,
    })
}

fn eval_ex_alt_h2(_ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let e = example_common(pt, "ex-alt-h2")?;
    let n = e.n as usize;
    let vals = alt_harmonic_prefix(e.n, 2);
    let lhs = binomial_weighted_sum(e.n, &e.x, &e.y, &vals);
    let diff = &e.y - &e.x;
    let dpow = power_table(&diff, n);
    let mut rhs = Rational::zero();
    for jj in 1..=n {
        for l in 1..=jj {
            let term = &e.spow[n - jj] * &e.ypow[jj - l] * (&e.ypow[l] - &dpow[l]);
            rhs += over(over(term, jj as u32), l as u32);
        }
    }
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("double-sum", rhs)])
}

fn eval_ex_h3(_ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let e = example_common(pt, "ex-h3")?;
    let n = e.n as usize;
    let vals = harmonic_prefix(e.n, 3);
    let lhs = binomial_weighted_sum(e.n, &e.x, &e.y, &vals);
    let mut rhs = Rational::zero();
    for jj in 1..=n {
        for l in 1..=jj {
            let term = &e.spow[n - jj]
                * &e.ypow[jj - l]
                * (&e.spow[l] - &e.ypow[l])
                * (&e.h1[jj] - &e.h1[l - 1]);
            rhs += over(over(term, jj as u32), l as u32);
        }
    }
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("double-sum", rhs)])
}

fn eval_ex_z12(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let e = example_common(pt, "ex-z12")?;
    let n = e.n as usize;
    let comp = Composition::new(vec![1, 2])?;
    let vals = ctx.harmonic.mhss_prefix(e.n, &comp);
    let lhs = binomial_weighted_sum(e.n, &e.x, &e.y, &vals);
    let mut rhs = Rational::zero();
    for jj in 1..=n {
        for l in 1..=jj {
            let term = &e.spow[n - jj]
                * &e.ypow[jj - l]
                * (&e.spow[l] - &e.ypow[l])
                * (&e.h1[n] - &e.h1[jj - 1]);
            rhs += over(over(term, jj as u32), l as u32);
        }
    }
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("double-sum", rhs)])
}

fn eval_ex_z21(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let e = example_common(pt, "ex-z21")?;
    let n = e.n as usize;
    let comp = Composition::new(vec![2, 1])?;
    let vals = ctx.harmonic.mhss_prefix(e.n, &comp);
    let lhs = binomial_weighted_sum(e.n, &e.x, &e.y, &vals);
    let mut rhs = Rational::zero();
    for jj in 1..=n {
        for l in 1..=jj {
            for h in 1..=l {
                // (x+y)^l (1 - (x+y)^{-h} y^h) kept in nonnegative powers
                let term = &e.spow[n - jj]
                    * &e.ypow[jj - l]
                    * (&e.spow[l] - &e.spow[l - h] * &e.ypow[h]);
                rhs += over(over(over(term, jj as u32), l as u32), h as u32);
            }
        }
    }
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("triple-sum", rhs)])
}

/// `g(l) = Σ_{h=1}^l (x+y)^{l-h} y^h / h`, the inner geometric-harmonic sum
/// of the product examples.
fn geometric_harmonic(e: &ExampleCtx) -> Vec<Rational> {
    let n = e.n as usize;
    let mut g = vec![Rational::zero(); n + 1];
    for l in 1..=n {
        g[l] = &e.s * &g[l - 1] + over(e.ypow[l].clone(), l as u32);
    }
    g
}

fn hkhk2_sums(e: &ExampleCtx) -> (Rational, Rational) {
    let n = e.n as usize;
    let g = geometric_harmonic(e);
    let mut sum1 = Rational::zero();
    let mut sum2 = Rational::zero();
    for jj in 1..=n {
        for l in 1..=jj {
            let base = over(over(&e.spow[n - jj] * &e.ypow[jj - l], jj as u32), l as u32);
            let factor = &e.h1[n] - int(2) * &e.h1[jj] + &e.h1[l]
                + over(Rational::one(), jj as u32)
                - over(Rational::one(), l as u32);
            sum1 += &base * (&e.spow[l] - &e.ypow[l]) * factor;
            sum2 += &base * (&e.spow[l] * &e.h1[l] - &g[l]);
        }
    }
    (sum1, sum2)
}

fn eval_ex_hkhk2(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let e = example_common(pt, "ex-hkhk2")?;
    let h2 = harmonic_prefix(e.n, 2);
    let vals: Vec<Rational> = (0..=e.n as usize)
        .map(|k| &e.h1[k] * &h2[k])
        .collect();
    let lhs = binomial_weighted_sum(e.n, &e.x, &e.y, &vals);
    let (sum1, sum2) = hkhk2_sums(&e);
    let rhs = sum1 + sum2;
    // stuffle cross-check: H_k H_k^{(2)} = ζ*_k(1,2) + ζ*_k(2,1) - H_k^{(3)}
    let z12 = ctx.harmonic.mhss_prefix(e.n, &Composition::new(vec![1, 2])?);
    let z21 = ctx.harmonic.mhss_prefix(e.n, &Composition::new(vec![2, 1])?);
    let h3 = harmonic_prefix(e.n, 3);
    let stuffle: Vec<Rational> = (0..=e.n as usize)
        .map(|k| &z12[k] + &z21[k] - &h3[k])
        .collect();
    let lhs_stuffle = binomial_weighted_sum(e.n, &e.x, &e.y, &stuffle);
    Ok(vec![
        Form::new("binomial-sum", lhs),
        Form::new("double-sum", rhs),
        Form::new("stuffle-sum", lhs_stuffle),
    ])
}

fn eval_ex_hk3(_ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let e = example_common(pt, "ex-hk3")?;
    let n = e.n as usize;
    let vals: Vec<Rational> = (0..=n).map(|k| &e.h1[k] * &e.h1[k] * &e.h1[k]).collect();
    let lhs = binomial_weighted_sum(e.n, &e.x, &e.y, &vals);

    let h2 = harmonic_prefix(e.n, 2);
    let mut first = Rational::zero();
    for jj in 1..=n {
        let factor = &e.h1[n] * &e.h1[n] + &h2[n] - int(2) * &e.h1[n] * &e.h1[jj - 1]
            + &e.h1[jj - 1] * &e.h1[jj - 1]
            - &h2[jj - 1];
        first += over(&e.spow[n - jj] * (&e.spow[jj] - &e.ypow[jj]) * factor, jj as u32);
    }
    first = int(3) * first;

    let g = geometric_harmonic(&e);
    let mut second = Rational::zero();
    let mut third = Rational::zero();
    for jj in 1..=n {
        for l in 1..=jj {
            let base = over(over(&e.spow[n - jj] * &e.ypow[jj - l], jj as u32), l as u32);
            let factor = int(3) * &e.h1[n] - int(4) * &e.h1[jj] + &e.h1[l]
                + over(int(3), jj as u32)
                - over(Rational::one(), l as u32);
            second += &base * (&e.spow[l] - &e.ypow[l]) * factor;
            third += &base * (&e.spow[l] * &e.h1[l] - &g[l]);
        }
    }
    let rhs = first - second - int(3) * third;
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("combined-sum", rhs)])
}

// ---------------------------------------------------------------------------
// the general interleaved conjecture
// ---------------------------------------------------------------------------

/// `({1}_{p_1-1}, m_1+2, ..., {1}_{p_r-1}, m_r+2, {1}_{p_{r+1}-1})`.
pub fn conjecture_composition(p_vec: &[u32], m_vec: &[u32]) -> Result<Composition> {
    let r = m_vec.len();
    if p_vec.len() != r + 1 {
        return Err(Error::domain(
            "pvec must have exactly one more entry than mvec",
        ));
    }
    if p_vec.contains(&0) {
        return Err(Error::domain("pvec entries must be >= 1"));
    }
    let mut blocks = Vec::with_capacity(2 * r + 1);
    for jj in 0..r {
        blocks.push(Composition::ones(p_vec[jj] as usize - 1));
        blocks.push(Composition::new(vec![m_vec[jj] + 2])?);
    }
    blocks.push(Composition::ones(p_vec[r] as usize - 1));
    Ok(Composition::concat(&blocks))
}

fn eval_conjecture(ctx: &EvalCtx, pt: &ParamPoint) -> Result<Vec<Form>> {
    let id = "conjecture";
    let (x, y, s) = require_xy(pt, id)?;
    if y.is_zero() {
        return Err(Error::domain("y = 0"));
    }
    let p_vec = pt.require_p_vec(id)?;
    let m_vec = pt.require_m_vec(id)?;
    let comp = conjecture_composition(p_vec, m_vec)?;
    let r = m_vec.len() as u32;
    let total_p: u32 = p_vec.iter().sum();
    let total_m: u32 = m_vec.iter().sum();
    let index_count = total_p + total_m + r;
    if index_count <= 1 {
        return Err(Error::domain(
            "degenerate shape: the nested sum has no indices",
        ));
    }
    let depth = (index_count - 1) as usize;
    let n = pt.n;
    let vals = ctx.harmonic.mhss_prefix(n, &comp);
    let lhs = binomial_weighted_sum(n, &x, &y, &vals);

    let w = &y / &s;
    let wpow = power_table(&w, n as usize);
    // pairs inside each [a_j, b_j) block carry the geometric weight; the
    // blocks are disjoint because every p_i >= 1
    let mut weights: Vec<PairWeight> = vec![None; depth - 1];
    let mut pw = 0u32;
    let mut mw = 0u32;
    for jj in 1..=r {
        pw += p_vec[jj as usize - 1];
        let a = pw + mw + jj - 1;
        mw += m_vec[jj as usize - 1];
        let b = pw + mw + jj;
        for i in a..b {
            weights[i as usize - 1] = Some(w.clone());
        }
    }
    let chain = weighted_chain_sum(n, &weights, |v| {
        over(Rational::one() - &wpow[v as usize], v)
    });
    let rhs = rational_pow(&s, n as i64)? * chain;
    Ok(vec![Form::new("binomial-sum", lhs), Form::new("nested-sum", rhs)])
}

// ---------------------------------------------------------------------------
// registry wiring
// ---------------------------------------------------------------------------

pub fn standard_defs() -> Vec<IdentityDef> {
    use Slot::*;
    vec![
        IdentityDef {
            id: "mneimneh",
            summary: "binomial sum of harmonic numbers vs its telescoped form",
            slots: &[N, Prob],
            in_default_set: true,
            soft_domain: soft_none,
            eval: eval_mneimneh,
        },
        IdentityDef {
            id: "pow2",
            summary: "unweighted binomial sum of harmonic numbers vs 2^n form",
            slots: &[N],
            in_default_set: true,
            soft_domain: soft_none,
            eval: eval_pow2,
        },
        IdentityDef {
            id: "gencev",
            summary: "probability-weighted binomial sum of depth-one harmonic-type sums",
            slots: &[N, Prob, R, Z],
            in_default_set: true,
            soft_domain: soft_none,
            eval: eval_gencev,
        },
        IdentityDef {
            id: "gencev-literal",
            summary: "literal printed weighting p^k(1-p)^k; kept for comparison, fails in general",
            slots: &[N, Prob, R, Z],
            in_default_set: false,
            soft_domain: soft_none,
            eval: eval_gencev_literal,
        },
        IdentityDef {
            id: "thm1",
            summary: "binomial sum of ζ*_k({1}_p; z) vs Stirling/Bell and star-difference forms",
            slots: &[N, X, Y, Z, P],
            in_default_set: true,
            soft_domain: soft_xy_ratio_and_z,
            eval: eval_thm1,
        },
        IdentityDef {
            id: "thm2",
            summary: "binomial sum of ζ*_k({1}_{p-1}, m+1; z), three-way check",
            slots: &[N, X, Y, Z, P, M],
            in_default_set: true,
            soft_domain: soft_xy_ratio_and_z,
            eval: eval_thm2,
        },
        IdentityDef {
            id: "thm3",
            summary: "binomial sum of ζ*_k({1}_{p-1}, m+2, {1}_{r-1}) vs nested sum",
            slots: &[N, X, Y, P, M, R],
            in_default_set: true,
            soft_domain: soft_xy_ratio,
            eval: eval_thm3,
        },
        IdentityDef {
            id: "cor1",
            summary: "specialization m = 1: binomial sum of ζ*_k({1}_{p-1}, 2; z)",
            slots: &[N, X, Y, Z, P],
            in_default_set: true,
            soft_domain: soft_xy_ratio_and_z,
            eval: eval_cor1,
        },
        IdentityDef {
            id: "cor2",
            summary: "specialization p = 1: binomial sum of ζ*_k(m+1; z)",
            slots: &[N, X, Y, Z, M],
            in_default_set: true,
            soft_domain: soft_xy_ratio_and_z,
            eval: eval_cor2,
        },
        IdentityDef {
            id: "lemma-shift",
            summary: "shifted weak chain vs alternating star/strict product sum",
            slots: &[N, Comp, L],
            in_default_set: true,
            soft_domain: soft_none,
            eval: eval_lemma_shift,
        },
        IdentityDef {
            id: "prop-nested",
            summary: "nested ((az+1)^{j_m}-1) chain vs Stirling/Bell single sum",
            slots: &[N, A, Z, M],
            in_default_set: true,
            soft_domain: soft_none,
            eval: eval_prop_nested,
        },
        IdentityDef {
            id: "prop5",
            summary: "two algebraic routes of the log-integral nested sum",
            slots: &[N, Alpha, M],
            in_default_set: true,
            soft_domain: soft_none,
            eval: eval_prop5,
        },
        IdentityDef {
            id: "ex-alt-h2",
            summary: "binomial sum of alternating harmonic numbers of order 2",
            slots: &[N, X, Y],
            in_default_set: true,
            soft_domain: soft_xy_ratio,
            eval: eval_ex_alt_h2,
        },
        IdentityDef {
            id: "ex-h3",
            summary: "binomial sum of H_k^{(3)}",
            slots: &[N, X, Y],
            in_default_set: true,
            soft_domain: soft_xy_ratio,
            eval: eval_ex_h3,
        },
        IdentityDef {
            id: "ex-z12",
            summary: "binomial sum of ζ*_k(1,2)",
            slots: &[N, X, Y],
            in_default_set: true,
            soft_domain: soft_xy_ratio,
            eval: eval_ex_z12,
        },
        IdentityDef {
            id: "ex-z21",
            summary: "binomial sum of ζ*_k(2,1)",
            slots: &[N, X, Y],
            in_default_set: true,
            soft_domain: soft_xy_ratio,
            eval: eval_ex_z21,
        },
        IdentityDef {
            id: "ex-hkhk2",
            summary: "binomial sum of H_k H_k^{(2)}, with stuffle cross-check",
            slots: &[N, X, Y],
            in_default_set: true,
            soft_domain: soft_xy_ratio,
            eval: eval_ex_hkhk2,
        },
        IdentityDef {
            id: "ex-hk3",
            summary: "binomial sum of H_k^3",
            slots: &[N, X, Y],
            in_default_set: true,
            soft_domain: soft_xy_ratio,
            eval: eval_ex_hk3,
        },
        IdentityDef {
            id: "conjecture",
            summary: "interleaved-composition binomial sum vs general nested form",
            slots: &[N, X, Y, PVec, MVec],
            in_default_set: true,
            soft_domain: soft_none,
            eval: eval_conjecture,
        },
    ]
}
