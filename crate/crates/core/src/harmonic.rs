//! Evaluators for multiple harmonic sums `ζ_n(k)` (strict indices), star
//! sums `ζ*_n(k)` (weak indices), and harmonic-type sums `ζ*_n(k; z)` which
//! attach `z^{n_r}` to the innermost index, together with generalized and
//! alternating harmonic numbers and a brute-force enumeration oracle.
//!
//! Evaluation is innermost-first dynamic programming: tabulate the innermost
//! layer for every index value up to `n`, prefix-sum it, then fold outer
//! layers. Cost is O(n·depth) exact rational operations; one pass yields the
//! whole prefix `ζ*_0 .. ζ*_n`, which binomial-sum identities consume term by
//! term.

use std::num::NonZeroUsize;

use lru::LruCache;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use parking_lot::Mutex;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::rational::{rational_pow, Rational};

/// Default bound on the memoization cache (entry count, LRU eviction).
pub const DEFAULT_CACHE_CAPACITY: usize = 1 << 20;

/// Default cap on brute-force enumeration size (tuple count).
pub const DEFAULT_ENUM_CAP: u128 = 10_000_000;

/// Cache key for a single evaluated sum. `z: None` and `z: Some(1)` are
/// distinct keys even though the values coincide.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MemoKey {
    pub n: u32,
    pub k: Composition,
    pub z: Option<Rational>,
    /// Strict (`ζ_n`) vs weak (`ζ*_n`) index ordering.
    pub strict: bool,
}

/// Shared evaluator with a bounded LRU memo cache. All evaluation is pure;
/// the cache tolerates concurrent access through an internal lock.
pub struct HarmonicEvaluator {
    cache: Mutex<LruCache<MemoKey, Rational>>,
}

impl Default for HarmonicEvaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl HarmonicEvaluator {
    pub fn new() -> Self {
        Self::with_capacity(DEFAULT_CACHE_CAPACITY)
    }

    pub fn with_capacity(cap: usize) -> Self {
        let cap = NonZeroUsize::new(cap.max(1)).unwrap();
        HarmonicEvaluator {
            cache: Mutex::new(LruCache::new(cap)),
        }
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().len()
    }

    /// `ζ_n(k)`: strictly decreasing indices. 0 when `n < depth`, 1 for the
    /// empty composition.
    pub fn mhs(&self, n: u32, k: &Composition) -> Rational {
        self.cached(n, k, None, true)
    }

    /// `ζ*_n(k)`: weakly decreasing indices. 1 for the empty composition,
    /// 0 when `n = 0` with nonempty `k`.
    pub fn mhss(&self, n: u32, k: &Composition) -> Rational {
        self.cached(n, k, None, false)
    }

    /// `ζ*_n(k; z)`: weak sum with `z^{n_r}` on the innermost index.
    pub fn mhts(&self, n: u32, k: &Composition, z: &Rational) -> Rational {
        self.cached(n, k, Some(z), false)
    }

    /// Prefix `[ζ_0(k), ..., ζ_n(k)]`.
    pub fn mhs_prefix(&self, n: u32, k: &Composition) -> Vec<Rational> {
        let table = strict_table(n, k);
        self.populate(k, None, true, &table);
        table
    }

    /// Prefix `[ζ*_0(k), ..., ζ*_n(k)]`.
    pub fn mhss_prefix(&self, n: u32, k: &Composition) -> Vec<Rational> {
        let table = weak_table(n, k, None);
        self.populate(k, None, false, &table);
        table
    }

    /// Prefix `[ζ*_0(k;z), ..., ζ*_n(k;z)]`.
    pub fn mhts_prefix(&self, n: u32, k: &Composition, z: &Rational) -> Vec<Rational> {
        let table = weak_table(n, k, Some(z));
        self.populate(k, Some(z), false, &table);
        table
    }

    fn cached(&self, n: u32, k: &Composition, z: Option<&Rational>, strict: bool) -> Rational {
        let key = MemoKey {
            n,
            k: k.clone(),
            z: z.cloned(),
            strict,
        };
        if let Some(v) = self.cache.lock().get(&key) {
            return v.clone();
        }
        let table = if strict {
            strict_table(n, k)
        } else {
            weak_table(n, k, z)
        };
        let result = table[n as usize].clone();
        self.populate(k, z, strict, &table);
        result
    }

    // One DP pass computes the value at every m <= n; keep them all.
    fn populate(&self, k: &Composition, z: Option<&Rational>, strict: bool, table: &[Rational]) {
        let mut cache = self.cache.lock();
        for (m, val) in table.iter().enumerate() {
            cache.put(
                MemoKey {
                    n: m as u32,
                    k: k.clone(),
                    z: z.cloned(),
                    strict,
                },
                val.clone(),
            );
        }
    }
}

#[inline]
fn div_int(q: &Rational, d: BigInt) -> Rational {
    debug_assert!(d > BigInt::zero());
    Rational::new(q.numer().clone(), q.denom() * d)
}

/// `[ζ*_m(k; z)]` for `m = 0..=n`; `z: None` means the plain star sum.
fn weak_table(n: u32, k: &Composition, z: Option<&Rational>) -> Vec<Rational> {
    let n = n as usize;
    if k.is_empty() {
        return vec![Rational::one(); n + 1];
    }
    let parts = k.parts();
    let d = parts.len();
    let mut prefix = vec![Rational::zero(); n + 1];
    {
        let mut acc = Rational::zero();
        let mut zpow = Rational::one();
        for v in 1..=n {
            let den = BigInt::from(v).pow(parts[d - 1]);
            match z {
                Some(z) => {
                    zpow = &zpow * z;
                    acc += div_int(&zpow, den);
                }
                None => acc += Rational::new(BigInt::one(), den),
            }
            prefix[v] = acc.clone();
        }
    }
    for j in (0..d - 1).rev() {
        let mut acc = Rational::zero();
        let mut next = vec![Rational::zero(); n + 1];
        for v in 1..=n {
            acc += div_int(&prefix[v], BigInt::from(v).pow(parts[j]));
            next[v] = acc.clone();
        }
        prefix = next;
    }
    prefix
}

/// `[ζ_m(k)]` for `m = 0..=n` (strict indices).
fn strict_table(n: u32, k: &Composition) -> Vec<Rational> {
    let n = n as usize;
    if k.is_empty() {
        return vec![Rational::one(); n + 1];
    }
    let parts = k.parts();
    let d = parts.len();
    let mut prefix = vec![Rational::zero(); n + 1];
    {
        let mut acc = Rational::zero();
        for v in 1..=n {
            acc += Rational::new(BigInt::one(), BigInt::from(v).pow(parts[d - 1]));
            prefix[v] = acc.clone();
        }
    }
    for j in (0..d - 1).rev() {
        let mut acc = Rational::zero();
        let mut next = vec![Rational::zero(); n + 1];
        for v in 1..=n {
            // inner indices stay strictly below v
            acc += div_int(&prefix[v - 1], BigInt::from(v).pow(parts[j]));
            next[v] = acc.clone();
        }
        prefix = next;
    }
    prefix
}

/// Generalized harmonic number `H_n^{(p)} = Σ_{j=1}^n j^{-p}`; `H_0 = 0`.
pub fn harmonic_number(n: u32, p: u32) -> Rational {
    harmonic_prefix(n, p)[n as usize].clone()
}

/// `[H_0^{(p)}, ..., H_n^{(p)}]`.
pub fn harmonic_prefix(n: u32, p: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Rational::zero());
    let mut acc = Rational::zero();
    for j in 1..=n as usize {
        acc += Rational::new(BigInt::one(), BigInt::from(j).pow(p));
        out.push(acc.clone());
    }
    out
}

/// Alternating harmonic number `H̄_n^{(p)} = Σ_{j=1}^n (-1)^{j-1} j^{-p}`.
pub fn alt_harmonic_number(n: u32, p: u32) -> Rational {
    alt_harmonic_prefix(n, p)[n as usize].clone()
}

/// `[H̄_0^{(p)}, ..., H̄_n^{(p)}]`.
pub fn alt_harmonic_prefix(n: u32, p: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Rational::zero());
    let mut acc = Rational::zero();
    for j in 1..=n as usize {
        let den = BigInt::from(j).pow(p);
        let num = if j % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        acc += Rational::new(num, den);
        out.push(acc.clone());
    }
    out
}

/// Number of weakly (resp. strictly) decreasing r-tuples with values in 1..=n.
fn tuple_count(n: u32, r: usize, strict: bool) -> BigInt {
    let n = n as u64;
    let r = r as u64;
    if strict {
        crate::rational::binomial(n, r)
    } else {
        if n == 0 && r > 0 {
            return BigInt::zero();
        }
        crate::rational::binomial(n + r - 1, r)
    }
}

fn bruteforce(
    n: u32,
    k: &Composition,
    z: Option<&Rational>,
    strict: bool,
    cap: u128,
) -> Result<Rational> {
    if k.is_empty() {
        return Ok(Rational::one());
    }
    let count = tuple_count(n, k.depth(), strict);
    if count > BigInt::from(cap) {
        return Err(Error::EnumerationCap {
            tuples: u128::MAX,
            cap,
        });
    }
    let count: u128 = count.try_into().unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::EnumerationCap { tuples: count, cap });
    }
    let zpow = z.map(|z| {
        (0..=n as i64)
            .map(|e| rational_pow(z, e).expect("nonnegative exponent"))
            .collect::<Vec<_>>()
    });
    let mut total = Rational::zero();
    recurse(n, k.parts(), strict, zpow.as_deref(), &Rational::one(), &mut total);
    Ok(total)
}

fn recurse(
    upper: u32,
    parts: &[u32],
    strict: bool,
    zpow: Option<&[Rational]>,
    factor: &Rational,
    total: &mut Rational,
) {
    let (&k0, rest) = parts.split_first().expect("nonempty parts");
    for v in 1..=upper {
        let f = div_int(factor, BigInt::from(v).pow(k0));
        if rest.is_empty() {
            match zpow {
                Some(zp) => *total += &f * &zp[v as usize],
                None => *total += f,
            }
        } else {
            let next_upper = if strict { v - 1 } else { v };
            if next_upper >= 1 || rest.is_empty() {
                recurse(next_upper, rest, strict, zpow, &f, total);
            }
        }
    }
}

/// Direct enumeration oracle for `ζ*_n(k; z)`; errors if the tuple count
/// exceeds `cap`.
pub fn mhts_bruteforce(n: u32, k: &Composition, z: &Rational, cap: u128) -> Result<Rational> {
    bruteforce(n, k, Some(z), false, cap)
}

/// Direct enumeration oracle for `ζ*_n(k)`.
pub fn mhss_bruteforce(n: u32, k: &Composition, cap: u128) -> Result<Rational> {
    bruteforce(n, k, None, false, cap)
}

/// Direct enumeration oracle for `ζ_n(k)` (strict).
pub fn mhs_bruteforce(n: u32, k: &Composition, cap: u128) -> Result<Rational> {
    bruteforce(n, k, None, true, cap)
}
