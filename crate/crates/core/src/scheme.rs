//! Synthesis of the base-`p` recurrence scheme.
//!
//! Each state `Q_j` stands for the sequence `a_j(n) = ⟨Q_j · P^n mod p⟩`, where
//! `⟨·⟩` sums the reduced coefficients. Writing `Q_j · P^i` as
//! `Σ_α x^α R_α(x^p)` and using `P^p ≡ P(x^p)` gives
//! `a_j(pn + i) = Σ_α a_{R_α}(n)`. The worklist below closes the set of
//! states under this rewrite, identifying polynomials that differ by a
//! monomial factor.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{ExponentVector, Histogram, ModPoly, PolyError, PrimeModulus};

pub const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeError {
    ZeroPolynomial,
    ZeroSeed,
    TooManyStates {
        limit: usize,
    },
    Poly(PolyError),
    DigitOutOfRange {
        digit: u32,
        p: u32,
    },
    /// A hand-assembled scheme is structurally inconsistent.
    Malformed(String),
}

impl fmt::Display for SchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeError::ZeroPolynomial => f.write_str("polynomial P is zero modulo p"),
            SchemeError::ZeroSeed => f.write_str("seed polynomial Q0 is zero modulo p"),
            SchemeError::TooManyStates { limit } => {
                write!(f, "state count exceeds the limit of {limit}")
            }
            SchemeError::Poly(e) => e.fmt(f),
            SchemeError::DigitOutOfRange { digit, p } => {
                write!(f, "digit {digit} out of range for p = {p}")
            }
            SchemeError::Malformed(msg) => write!(f, "malformed scheme: {msg}"),
        }
    }
}

impl core::error::Error for SchemeError {}

impl From<PolyError> for SchemeError {
    fn from(e: PolyError) -> Self {
        SchemeError::Poly(e)
    }
}

/// A synthesized recurrence scheme.
///
/// State indices are 0-based here; the scheme file format shifts them by one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    poly: ModPoly,
    q0: ModPoly,
    states: Vec<ModPoly>,
    transitions: Vec<Vec<Vec<usize>>>,
    base_scalar: Vec<u64>,
    base_histogram: Vec<Histogram>,
}

/// Multiplicity matrix of one digit: `entries[j][l]` counts `l` in `S_i(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitMatrix {
    pub digit: u32,
    pub entries: Vec<Vec<u64>>,
}

impl DigitMatrix {
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Per-variable bound `max(deg_v Q0, deg_v P)` on the degree of every state.
pub fn degree_bounds(poly: &ModPoly, q0: &ModPoly) -> ExponentVector {
    let k = poly.nvars();
    let dp = poly.max_exponents().unwrap_or_else(|| vec![0; k]);
    let dq = q0.max_exponents().unwrap_or_else(|| vec![0; k]);
    dp.iter().zip(&dq).map(|(&a, &b)| a.max(b)).collect()
}

/// Closes `canonicalize(q0)` under the digit rewrite for `poly`.
///
/// States are numbered in discovery order: states in index order, digits
/// ascending, residue classes `α` lexicographically.
pub fn synthesize(poly: &ModPoly, q0: &ModPoly, max_states: usize) -> Result<Scheme, SchemeError> {
    poly.check_compatible(q0)?;
    if poly.is_zero() {
        return Err(SchemeError::ZeroPolynomial);
    }
    if q0.is_zero() {
        return Err(SchemeError::ZeroSeed);
    }
    let p = poly.prime().get() as usize;
    let poly = poly.canonicalize()?;
    let q0 = q0.canonicalize()?;

    // P^0 .. P^{p-1}
    let mut powers = Vec::with_capacity(p);
    powers.push(ModPoly::one(poly.prime(), poly.vars().clone()));
    for i in 1..p {
        let next = powers[i - 1].mul_mod(&poly)?;
        powers.push(next);
    }

    let mut states: Vec<ModPoly> = vec![q0.clone()];
    let mut index: BTreeMap<ModPoly, usize> = BTreeMap::new();
    index.insert(q0.clone(), 0);
    let mut transitions: Vec<Vec<Vec<usize>>> = Vec::new();

    let mut j = 0;
    while j < states.len() {
        let mut row = Vec::with_capacity(p);
        for power in &powers {
            let product = states[j].mul_mod(power)?;
            let mut targets = Vec::new();
            for (_, r) in product.frobenius_decompose()? {
                let r = r.canonicalize()?;
                let l = match index.get(&r) {
                    Some(&l) => l,
                    None => {
                        if states.len() >= max_states {
                            return Err(SchemeError::TooManyStates { limit: max_states });
                        }
                        states.push(r.clone());
                        index.insert(r, states.len() - 1);
                        states.len() - 1
                    }
                };
                targets.push(l);
            }
            targets.sort_unstable();
            row.push(targets);
        }
        transitions.push(row);
        j += 1;
    }

    let base_scalar = states.iter().map(ModPoly::functional_scalar).collect();
    let base_histogram = states.iter().map(ModPoly::functional_histogram).collect();
    Ok(Scheme {
        poly,
        q0,
        states,
        transitions,
        base_scalar,
        base_histogram,
    })
}

impl Scheme {
    /// Reassembles a scheme from stored parts, checking structure only.
    ///
    /// Transitions are not re-derived, so a scheme with wrong transitions
    /// loads fine and is caught by the verifier instead. `poly` and `q0` are
    /// canonicalized; base values are recomputed from the states and must
    /// match the supplied ones when given.
    pub fn from_parts(
        poly: ModPoly,
        q0: ModPoly,
        states: Vec<ModPoly>,
        transitions: Vec<Vec<Vec<usize>>>,
        base_scalar: Option<Vec<u64>>,
        base_histogram: Option<Vec<Histogram>>,
    ) -> Result<Scheme, SchemeError> {
        let bad = |msg: &str| SchemeError::Malformed(String::from(msg));
        poly.check_compatible(&q0)?;
        if poly.is_zero() {
            return Err(SchemeError::ZeroPolynomial);
        }
        if q0.is_zero() {
            return Err(SchemeError::ZeroSeed);
        }
        let poly = poly.canonicalize()?;
        let q0 = q0.canonicalize()?;
        let p = poly.prime().get() as usize;
        let m = states.len();
        if m == 0 {
            return Err(bad("no states"));
        }
        let mut seen = BTreeMap::new();
        for (j, s) in states.iter().enumerate() {
            poly.check_compatible(s)?;
            if s.is_zero() || !s.is_canonical() {
                return Err(bad("state is zero or not canonical"));
            }
            if seen.insert(s.clone(), j).is_some() {
                return Err(bad("duplicate state"));
            }
        }
        if states[0] != q0 {
            return Err(bad("first state differs from canonical q0"));
        }
        if transitions.len() != m {
            return Err(bad("transition table length differs from state count"));
        }
        for row in &transitions {
            if row.len() != p {
                return Err(bad("transition row must have one entry per digit"));
            }
            for targets in row {
                if targets.iter().any(|&l| l >= m) {
                    return Err(bad("transition index out of range"));
                }
                if targets.windows(2).any(|w| w[0] > w[1]) {
                    return Err(bad("transition multiset not sorted"));
                }
            }
        }
        let scalar: Vec<u64> = states.iter().map(ModPoly::functional_scalar).collect();
        let hist: Vec<Histogram> = states.iter().map(ModPoly::functional_histogram).collect();
        if base_scalar.is_some_and(|b| b != scalar) {
            return Err(bad("base_scalar does not match the states"));
        }
        if base_histogram.is_some_and(|b| b != hist) {
            return Err(bad("base_histogram does not match the states"));
        }
        Ok(Scheme {
            poly,
            q0,
            states,
            transitions,
            base_scalar: scalar,
            base_histogram: hist,
        })
    }

    #[inline]
    pub fn prime(&self) -> PrimeModulus {
        self.poly.prime()
    }

    #[inline]
    pub fn vars(&self) -> &Arc<[String]> {
        self.poly.vars()
    }

    /// The canonical polynomial `P`.
    #[inline]
    pub fn poly(&self) -> &ModPoly {
        &self.poly
    }

    /// The canonical seed, equal to `states()[0]`.
    #[inline]
    pub fn q0(&self) -> &ModPoly {
        &self.q0
    }

    #[inline]
    pub fn states(&self) -> &[ModPoly] {
        &self.states
    }

    #[inline]
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// `transitions()[j][i]` is the sorted multiset `S_i(j)`.
    #[inline]
    pub fn transitions(&self) -> &[Vec<Vec<usize>>] {
        &self.transitions
    }

    #[inline]
    pub fn targets(&self, state: usize, digit: u32) -> &[usize] {
        &self.transitions[state][digit as usize]
    }

    #[inline]
    pub fn base_scalar(&self) -> &[u64] {
        &self.base_scalar
    }

    #[inline]
    pub fn base_histogram(&self) -> &[Histogram] {
        &self.base_histogram
    }

    pub fn digit_matrix(&self, digit: u32) -> Result<DigitMatrix, SchemeError> {
        let p = self.prime().get();
        if digit >= p {
            return Err(SchemeError::DigitOutOfRange { digit, p });
        }
        let m = self.state_count();
        let mut entries = vec![vec![0u64; m]; m];
        for (j, row) in self.transitions.iter().enumerate() {
            for &l in &row[digit as usize] {
                entries[j][l] += 1;
            }
        }
        Ok(DigitMatrix { digit, entries })
    }

    /// Replaces one transition multiset; used to build deliberately broken
    /// schemes for verifier tests.
    pub fn with_transition(
        mut self,
        state: usize,
        digit: u32,
        mut targets: Vec<usize>,
    ) -> Result<Scheme, SchemeError> {
        let m = self.state_count();
        if state >= m || targets.iter().any(|&l| l >= m) {
            return Err(SchemeError::Malformed(String::from("index out of range")));
        }
        let p = self.prime().get();
        if digit >= p {
            return Err(SchemeError::DigitOutOfRange { digit, p });
        }
        targets.sort_unstable();
        self.transitions[state][digit as usize] = targets;
        Ok(self)
    }
}
