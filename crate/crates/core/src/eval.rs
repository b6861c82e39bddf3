//! Exact evaluation of a scheme at arbitrary `n`.
//!
//! With `n = Σ i_t p^t`, the state vector is
//! `a(n) = M_{i_0} M_{i_1} ⋯ M_{i_{T-1}} a(0)`. Digits are extracted
//! least-significant first and the products are applied from the most
//! significant digit down, starting at the base vector.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::scheme::Scheme;

/// Residue counts with unbounded entries; `counts()[i - 1]` counts residue `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigHistogram(Vec<BigUint>);

impl BigHistogram {
    pub fn counts(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_counts(self) -> Vec<BigUint> {
        self.0
    }

    pub fn weighted_sum(&self) -> BigUint {
        self.0
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigUint::from(i as u64 + 1))
            .sum()
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }
}

/// Base-`p` digits of `n`, least significant first; empty for `n = 0`.
pub fn base_digits(n: &BigUint, p: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut n = n.clone();
    while !n.is_zero() {
        let d = (&n % p).to_u32().unwrap_or(0);
        out.push(d);
        n /= p;
    }
    out
}

fn apply_digit(s: &Scheme, digit: u32, v: &[BigUint]) -> Vec<BigUint> {
    (0..s.state_count())
        .map(|j| s.targets(j, digit).iter().map(|&l| &v[l]).sum())
        .collect()
}

fn apply_digit_hist(s: &Scheme, digit: u32, v: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let width = s.prime().get() as usize - 1;
    (0..s.state_count())
        .map(|j| {
            let mut acc = vec![BigUint::zero(); width];
            for &l in s.targets(j, digit) {
                for (a, b) in acc.iter_mut().zip(&v[l]) {
                    *a += b;
                }
            }
            acc
        })
        .collect()
}

fn base_vector(s: &Scheme) -> Vec<BigUint> {
    s.base_scalar().iter().map(|&b| BigUint::from(b)).collect()
}

fn base_hist_vectors(s: &Scheme) -> Vec<Vec<BigUint>> {
    s.base_histogram()
        .iter()
        .map(|h| h.counts().iter().map(|&c| BigUint::from(c)).collect())
        .collect()
}

/// The full state vector `a(n)` and the number of matrix-vector products
/// performed (the number of base-`p` digits of `n`).
pub fn eval_vector(s: &Scheme, n: &BigUint) -> (Vec<BigUint>, usize) {
    let digits = base_digits(n, s.prime().get());
    let mut v = base_vector(s);
    for &d in digits.iter().rev() {
        v = apply_digit(s, d, &v);
    }
    (v, digits.len())
}

/// `a_1(n)`, the functional of `Q_1 · P^n`.
pub fn eval_at(s: &Scheme, n: &BigUint) -> BigUint {
    eval_vector(s, n).0.swap_remove(0)
}

pub fn eval_histogram_at(s: &Scheme, n: &BigUint) -> BigHistogram {
    let digits = base_digits(n, s.prime().get());
    let mut v = base_hist_vectors(s);
    for &d in digits.iter().rev() {
        v = apply_digit_hist(s, d, &v);
    }
    BigHistogram(v.swap_remove(0))
}

/// Top-down evaluation `a_j(pn + i) = Σ_{l ∈ S_i(j)} a_l(n)` with memoization
/// on `(state, n)`. Independent of the digit-matrix chain in [`eval_at`].
pub fn eval_at_recursive(s: &Scheme, n: &BigUint) -> BigUint {
    let p = BigUint::from(s.prime().get());
    let mut memo: BTreeMap<(usize, BigUint), BigUint> = BTreeMap::new();
    recurse(s, &p, 0, n, &mut memo)
}

fn recurse(
    s: &Scheme,
    p: &BigUint,
    state: usize,
    n: &BigUint,
    memo: &mut BTreeMap<(usize, BigUint), BigUint>,
) -> BigUint {
    if n.is_zero() {
        return BigUint::from(s.base_scalar()[state]);
    }
    let key = (state, n.clone());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let quotient = n / p;
    let digit = (n % p).to_u32().unwrap_or(0);
    let mut acc = BigUint::zero();
    for &l in s.targets(state, digit) {
        acc += recurse(s, p, l, &quotient, memo);
    }
    memo.insert(key, acc.clone());
    acc
}

/// `[a_1(0), …, a_1(count-1)]`, built bottom-up from `a(n) = M_{n mod p} a(n / p)`.
pub fn terms_prefix(s: &Scheme, count: usize) -> Vec<BigUint> {
    let p = s.prime().get() as usize;
    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(count);
    for n in 0..count {
        let v = if n == 0 {
            base_vector(s)
        } else {
            apply_digit(s, (n % p) as u32, &table[n / p])
        };
        table.push(v);
    }
    table.into_iter().map(|mut v| v.swap_remove(0)).collect()
}

pub fn histogram_prefix(s: &Scheme, count: usize) -> Vec<BigHistogram> {
    let p = s.prime().get() as usize;
    let mut table: Vec<Vec<Vec<BigUint>>> = Vec::with_capacity(count);
    for n in 0..count {
        let v = if n == 0 {
            base_hist_vectors(s)
        } else {
            apply_digit_hist(s, (n % p) as u32, &table[n / p])
        };
        table.push(v);
    }
    table
        .into_iter()
        .map(|mut v| BigHistogram(v.swap_remove(0)))
        .collect()
}

/// `[c(0), …, c(k)]` with `c(k) = a_1(p^k - 1)`, via repeated application of
/// the top-digit matrix.
pub fn sparse_terms(s: &Scheme, k: usize) -> Vec<BigUint> {
    sparse_vectors(s, k)
        .into_iter()
        .map(|mut v| v.swap_remove(0))
        .collect()
}

/// State vectors `c(0), …, c(k)` for all states.
pub fn sparse_vectors(s: &Scheme, k: usize) -> Vec<Vec<BigUint>> {
    let top = s.prime().get() - 1;
    let mut v = base_vector(s);
    let mut out = Vec::with_capacity(k + 1);
    for _ in 0..k {
        let next = apply_digit(s, top, &v);
        out.push(v);
        v = next;
    }
    out.push(v);
    out
}

/// `p^k - 1`.
pub fn pow_minus_one(p: u32, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), k as usize) - 1u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RltError {
    /// `n` has a run of this many 1-bits but fewer sparse terms were given.
    RunTooLong {
        run: usize,
        available: usize,
    },
    NotBinary(u32),
}

impl fmt::Display for RltError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RltError::RunTooLong { run, available } => write!(
                f,
                "run of {run} one-bits needs sparse term {run}, only {available} available"
            ),
            RltError::NotBinary(p) => write!(f, "run-length transform needs p = 2, got {p}"),
        }
    }
}

impl core::error::Error for RltError {}

/// Product of `b[L]` over the lengths `L` of maximal runs of 1-bits of `n`.
pub fn rlt_expand(b: &[BigUint], n: &BigUint) -> Result<BigUint, RltError> {
    let mut acc = BigUint::one();
    let mut run = 0usize;
    let bits = n.bits();
    for i in 0..=bits {
        if i < bits && n.bit(i) {
            run += 1;
            continue;
        }
        if run > 0 {
            let term = b.get(run).ok_or(RltError::RunTooLong {
                run,
                available: b.len(),
            })?;
            acc *= term;
            run = 0;
        }
    }
    Ok(acc)
}

/// Outcome of comparing the scheme against its own run-length transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RltReport {
    pub checked: usize,
    /// `(n, scheme value, transform value)` for the first disagreement.
    pub counterexample: Option<(usize, BigUint, BigUint)>,
}

impl RltReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `a_1(n) = rlt_expand(c, n)` for all `n < count`.
pub fn rlt_check(s: &Scheme, count: usize) -> Result<RltReport, RltError> {
    let p = s.prime().get();
    if p != 2 {
        return Err(RltError::NotBinary(p));
    }
    // ⌈log2 count⌉ + 1 covers every run length of n < count.
    let k = (usize::BITS - count.saturating_sub(1).leading_zeros()) as usize + 1;
    let sparse = sparse_terms(s, k);
    let values = terms_prefix(s, count);
    for (n, got) in values.into_iter().enumerate() {
        let expected = rlt_expand(&sparse, &BigUint::from(n))?;
        if expected != got {
            return Ok(RltReport {
                checked: n + 1,
                counterexample: Some((n, got, expected)),
            });
        }
    }
    Ok(RltReport {
        checked: count,
        counterexample: None,
    })
}
