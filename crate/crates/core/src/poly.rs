//! Sparse multivariate polynomials with coefficients in `Z/pZ`.
//!
//! Coefficients are stored already reduced into `1..p`; a zero coefficient is
//! never stored. Terms live in a `BTreeMap` keyed by exponent vector, so every
//! iteration (and therefore every printed form) is lexicographic in the
//! declared variable order.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Exponent vector of a monomial, one entry per ambient variable.
///
/// Negative entries only occur before [`ModPoly::canonicalize`].
pub type ExponentVector = Vec<i32>;

/// A prime modulus `2 <= p <= 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub const MAX: u32 = 1 << 16;

    pub fn new(p: u32) -> Result<Self, PolyError> {
        if !(2..=Self::MAX).contains(&p) || !is_prime(p) {
            return Err(PolyError::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces a signed integer into `0..p`.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    NotPrime(u32),
    ModulusMismatch(u32, u32),
    VariableMismatch,
    ExponentOverflow,
    ZeroPolynomial,
    NegativeExponent,
    ArityMismatch { expected: usize, got: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NotPrime(p) => write!(f, "modulus {p} is not a prime in 2..=65536"),
            PolyError::ModulusMismatch(a, b) => write!(f, "moduli differ ({a} vs {b})"),
            PolyError::VariableMismatch => f.write_str("variable lists differ"),
            PolyError::ExponentOverflow => f.write_str("exponent overflow"),
            PolyError::ZeroPolynomial => f.write_str("polynomial is zero modulo p"),
            PolyError::NegativeExponent => {
                f.write_str("negative exponent present; canonicalize first")
            }
            PolyError::ArityMismatch { expected, got } => {
                write!(f, "exponent vector has {got} entries, expected {expected}")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// Count of monomials per nonzero residue: `counts()[i - 1]` is the number of
/// coefficients equal to `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Histogram(Vec<u64>);

impl Histogram {
    pub fn zero(p: PrimeModulus) -> Self {
        Histogram(vec![0; p.get() as usize - 1])
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        Histogram(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// Number of coefficients equal to `residue` (`1 <= residue < p`).
    pub fn count(&self, residue: u32) -> u64 {
        self.0[residue as usize - 1]
    }

    /// Σ i·counts[i]; equals the scalar functional of the source polynomial.
    pub fn weighted_sum(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, c)| (i as u64 + 1) * c)
            .sum()
    }

    /// Σ counts[i], the number of nonzero coefficients.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn add_assign(&mut self, other: &Histogram) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }
}

/// Polynomial in `vars` over `Z/pZ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModPoly {
    p: PrimeModulus,
    vars: Arc<[String]>,
    terms: BTreeMap<ExponentVector, u32>,
}

impl ModPoly {
    pub fn zero(p: PrimeModulus, vars: Arc<[String]>) -> Self {
        ModPoly {
            p,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: PrimeModulus, vars: Arc<[String]>) -> Self {
        Self::constant(p, vars, 1)
    }

    pub fn constant(p: PrimeModulus, vars: Arc<[String]>, c: i64) -> Self {
        let k = vars.len();
        Self::monomial(p, vars, vec![0; k], c)
    }

    /// `c·x^exps`; panics if `exps` does not match the variable count.
    pub fn monomial(p: PrimeModulus, vars: Arc<[String]>, exps: ExponentVector, c: i64) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector arity");
        let mut out = Self::zero(p, vars);
        out.add_term(exps, p.reduce(c));
        out
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates and reducing modulo `p`.
    pub fn from_terms<I>(p: PrimeModulus, vars: Arc<[String]>, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (ExponentVector, i64)>,
    {
        let mut out = Self::zero(p, vars);
        for (e, c) in terms {
            if e.len() != out.vars.len() {
                return Err(PolyError::ArityMismatch {
                    expected: out.vars.len(),
                    got: e.len(),
                });
            }
            out.add_term(e, p.reduce(c));
        }
        Ok(out)
    }

    fn add_term(&mut self, e: ExponentVector, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p.get();
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    #[inline]
    pub fn prime(&self) -> PrimeModulus {
        self.p
    }

    #[inline]
    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, u32)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coefficient(&self, exps: &[i32]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn check_compatible(&self, other: &ModPoly) -> Result<(), PolyError> {
        if self.p != other.p {
            return Err(PolyError::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if !Arc::ptr_eq(&self.vars, &other.vars) && self.vars != other.vars {
            return Err(PolyError::VariableMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ModPoly) -> Result<ModPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> ModPoly {
        let p = self.p.get();
        ModPoly {
            p: self.p,
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), p - c))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ModPoly) -> Result<ModPoly, PolyError> {
        self.add(&other.neg())
    }

    /// Exact product with coefficients reduced modulo `p`.
    pub fn mul_mod(&self, other: &ModPoly) -> Result<ModPoly, PolyError> {
        self.check_compatible(other)?;
        let p = self.p.get() as u64;
        let mut acc: BTreeMap<ExponentVector, u64> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = add_exponents(ea, eb)?;
                let slot = acc.entry(e).or_insert(0);
                *slot = (*slot + ca as u64 * cb as u64) % p;
            }
        }
        Ok(ModPoly {
            p: self.p,
            vars: self.vars.clone(),
            terms: acc
                .into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(e, c)| (e, c as u32))
                .collect(),
        })
    }

    /// `self^e` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64) -> Result<ModPoly, PolyError> {
        let mut result = ModPoly::one(self.p, self.vars.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mod(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Result<ModPoly, PolyError> {
        if shift.len() != self.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars(),
                got: shift.len(),
            });
        }
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            terms.insert(add_exponents(e, shift)?, c);
        }
        Ok(ModPoly {
            p: self.p,
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Substitutes `x_v -> x_v^factor` for every variable.
    pub fn inflate(&self, factor: i32) -> Result<ModPoly, PolyError> {
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            let scaled = e
                .iter()
                .map(|&x| x.checked_mul(factor).ok_or(PolyError::ExponentOverflow))
                .collect::<Result<Vec<_>, _>>()?;
            terms.insert(scaled, c);
        }
        Ok(ModPoly {
            p: self.p,
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Per-variable minimum exponent, `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<ExponentVector> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for (a, &b) in acc.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
            acc
        }))
    }

    /// Per-variable maximum exponent, `None` for the zero polynomial.
    pub fn max_exponents(&self) -> Option<ExponentVector> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for (a, &b) in acc.iter_mut().zip(e) {
                *a = (*a).max(b);
            }
            acc
        }))
    }

    /// Divides out the greatest common monomial so that every variable's
    /// minimum exponent is 0.
    pub fn canonicalize(&self) -> Result<ModPoly, PolyError> {
        let min = self.min_exponents().ok_or(PolyError::ZeroPolynomial)?;
        if min.iter().all(|&m| m == 0) {
            return Ok(self.clone());
        }
        let neg = min
            .iter()
            .map(|&m| m.checked_neg().ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        self.shift(&neg)
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self.min_exponents(), Some(m) if m.iter().all(|&x| x == 0))
    }

    /// Sum of the reduced coefficients, i.e. the value at `x = (1, …, 1)`
    /// after reducing into `0..p`.
    pub fn functional_scalar(&self) -> u64 {
        self.terms.values().map(|&c| c as u64).sum()
    }

    pub fn functional_histogram(&self) -> Histogram {
        let mut h = Histogram::zero(self.p);
        for &c in self.terms.values() {
            h.0[c as usize - 1] += 1;
        }
        h
    }

    /// Splits `self = Σ_α x^α · R_α(x^p)` by exponent residues modulo `p`.
    ///
    /// Keys are residue vectors `α ∈ {0..p-1}^k` in lexicographic order; empty
    /// classes are omitted.
    pub fn frobenius_decompose(&self) -> Result<BTreeMap<ExponentVector, ModPoly>, PolyError> {
        let p = self.p.get() as i32;
        let mut classes: BTreeMap<ExponentVector, BTreeMap<ExponentVector, u32>> = BTreeMap::new();
        for (e, &c) in &self.terms {
            if e.iter().any(|&x| x < 0) {
                return Err(PolyError::NegativeExponent);
            }
            let alpha: Vec<i32> = e.iter().map(|&x| x % p).collect();
            let quot: Vec<i32> = e.iter().map(|&x| x / p).collect();
            classes.entry(alpha).or_default().insert(quot, c);
        }
        Ok(classes
            .into_iter()
            .map(|(alpha, terms)| {
                (
                    alpha,
                    ModPoly {
                        p: self.p,
                        vars: self.vars.clone(),
                        terms,
                    },
                )
            })
            .collect())
    }
}

fn add_exponents(a: &[i32], b: &[i32]) -> Result<ExponentVector, PolyError> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_add(y).ok_or(PolyError::ExponentOverflow))
        .collect()
}

/// Prints in the input grammar, terms in lexicographic exponent order:
/// `1+x`, `2*x^2*y`, `x^-1`, `0`.
impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, &c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str("+")?;
            }
            let mut wrote = false;
            if c != 1 || e.iter().all(|&x| x == 0) {
                write!(f, "{c}")?;
                wrote = true;
            }
            for (name, &x) in self.vars.iter().zip(e) {
                if x == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                f.write_str(name)?;
                if x != 1 {
                    write!(f, "^{x}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly(p={}, {})", self.p, self)
    }
}
