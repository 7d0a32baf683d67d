//! Unsigned Stirling numbers of the first kind, exponential complete Bell
//! polynomials, the harmonic-input Bell numbers `Y_k(n)`, and their exact
//! bridges to multiple harmonic (star) sums.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::composition::Composition;
use crate::harmonic::{harmonic_number, harmonic_prefix, HarmonicEvaluator};
use crate::rational::{factorial, Rational};

/// Grow-only triangle of unsigned Stirling numbers of the first kind.
/// `s(0,0) = 1`, `s(n,0) = s(0,k) = 0` otherwise, `s(n,k) = 0` for `n < k`,
/// and `s(n,k) = s(n-1,k-1) + (n-1)·s(n-1,k)`.
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl Default for StirlingTable {
    fn default() -> Self {
        Self::new()
    }
}

impl StirlingTable {
    pub fn new() -> Self {
        StirlingTable {
            rows: vec![vec![BigInt::one()]],
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Extend the triangle so rows `0..=n` exist.
    pub fn ensure(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len();
            let prev = &self.rows[m - 1];
            let mut row = vec![BigInt::zero(); m + 1];
            for k in 1..=m {
                let mut v = prev[k - 1].clone();
                if k < m {
                    v += &prev[k] * BigInt::from(m - 1);
                }
                row[k] = v;
            }
            self.rows.push(row);
        }
    }

    /// Unsigned `s(n, k)`; 0 when `k > n`.
    pub fn get(&mut self, n: u32, k: u32) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.ensure(n as usize);
        self.rows[n as usize][k as usize].clone()
    }
}

/// One-shot unsigned `s(n, k)`.
pub fn stirling1(n: u32, k: u32) -> BigInt {
    StirlingTable::new().get(n, k)
}

/// `s(n,k)` through the bridge `(n-1)!·ζ_{n-1}({1}_{k-1})`; integer-valued,
/// returned as a rational. Requires `n, k >= 1`.
pub fn stirling1_via_mhs(ev: &HarmonicEvaluator, n: u32, k: u32) -> Rational {
    assert!(n >= 1 && k >= 1, "bridge needs n, k >= 1");
    let fact = Rational::from_integer(factorial(n as u64 - 1));
    fact * ev.mhs(n - 1, &Composition::ones(k as usize - 1))
}

/// Complete exponential Bell polynomial `Y_n(x_1, ..., x_n)` via
/// `Y_n = Σ_{j=0}^{n-1} C(n-1, j) x_{n-j} Y_j`, with `Y_0 = 1`.
pub fn complete_bell(xs: &[Rational]) -> Rational {
    complete_bell_seq(xs).pop().unwrap()
}

/// All of `Y_0, ..., Y_n` for the given inputs.
pub fn complete_bell_seq(xs: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut y: Vec<Rational> = Vec::with_capacity(n + 1);
    y.push(Rational::one());
    for t in 1..=n {
        let mut acc = Rational::zero();
        for j in 0..t {
            let c = crate::rational::binomial(t as u64 - 1, j as u64);
            acc += Rational::from_integer(c) * &xs[t - 1 - j] * &y[j];
        }
        y.push(acc);
    }
    y
}

/// Bell number `Y_k(n) = Y_k(H_n, 1!·H_n^{(2)}, ..., (k-1)!·H_n^{(k)})`.
pub fn bell_number_y(k: u32, n: u32) -> Rational {
    bell_numbers_row(k, n).pop().unwrap()
}

/// `[Y_0(n), ..., Y_k(n)]`.
pub fn bell_numbers_row(k: u32, n: u32) -> Vec<Rational> {
    let xs: Vec<Rational> = (1..=k)
        .map(|i| Rational::from_integer(factorial(i as u64 - 1)) * harmonic_number(n, i))
        .collect();
    complete_bell_seq(&xs)
}

/// Table `t[j][h] = Y_h(j)` for `j = 0..=n_max`, `h = 0..=k_max`. Used where
/// a double sum needs Bell numbers at every intermediate index.
pub fn bell_number_table(k_max: u32, n_max: u32) -> Vec<Vec<Rational>> {
    let prefixes: Vec<Vec<Rational>> = (1..=k_max).map(|i| harmonic_prefix(n_max, i)).collect();
    let facts: Vec<Rational> = (1..=k_max)
        .map(|i| Rational::from_integer(factorial(i as u64 - 1)))
        .collect();
    (0..=n_max as usize)
        .map(|j| {
            let xs: Vec<Rational> = (0..k_max as usize)
                .map(|i| &facts[i] * &prefixes[i][j])
                .collect();
            complete_bell_seq(&xs)
        })
        .collect()
}

/// `ζ*_n({1}_m)` through the bridge `Y_m(n)/m!`.
pub fn mhss_ones_via_bell(n: u32, m: u32) -> Rational {
    bell_number_y(m, n) / Rational::from_integer(factorial(m as u64))
}
