//! Rational generating functions of the sparse subsequence `c(k) = a_1(p^k - 1)`.
//!
//! The state vector obeys `c(k) = M c(k-1)` with `M` the top-digit matrix, so
//! `f(t) = Σ c(k) t^k` solves `(I - tM) f = c(0)`. [`gf_prove`] solves that
//! system exactly; [`gf_guess`] fits a rational function to enough terms that
//! the degree bound `deg ≤ m` forces the answer.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::eval::sparse_terms;
use crate::scheme::Scheme;
use crate::upoly::IntPoly;

/// Largest state count [`gf_prove`] accepts by default.
pub const DEFAULT_SOLVE_THRESHOLD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GfError {
    TooManyStates {
        states: usize,
        limit: usize,
    },
    ZeroDenominator,
    /// `den(0) = 0`: no power-series expansion at `t = 0`.
    PoleAtZero,
    /// The reduced function has no integer-coefficient form with `den(0) = 1`.
    NonIntegralSeries,
    InsufficientTerms {
        given: usize,
        needed: usize,
    },
    NoFit {
        max_degree: usize,
    },
    /// Exact elimination produced an inexact division or a zero pivot.
    Elimination,
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::TooManyStates { states, limit } => write!(
                f,
                "{states} states exceed the exact-solve limit of {limit}; use the guessing route"
            ),
            GfError::ZeroDenominator => f.write_str("zero denominator"),
            GfError::PoleAtZero => f.write_str("denominator vanishes at t = 0"),
            GfError::NonIntegralSeries => {
                f.write_str("rational function has no integral normal form with den(0) = 1")
            }
            GfError::InsufficientTerms { given, needed } => {
                write!(f, "{given} terms given, at least {needed} needed")
            }
            GfError::NoFit { max_degree } => {
                write!(
                    f,
                    "no rational function of degree <= {max_degree} fits the terms"
                )
            }
            GfError::Elimination => f.write_str("exact elimination failed"),
        }
    }
}

impl core::error::Error for GfError {}

/// Reduced `num/den` with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalGf {
    num: IntPoly,
    den: IntPoly,
}

impl RationalGf {
    /// Reduces and normalizes `num/den`.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<RationalGf, GfError> {
        if den.is_zero() {
            return Err(GfError::ZeroDenominator);
        }
        if num.is_zero() {
            if den.eval_zero().is_zero() {
                return Err(GfError::PoleAtZero);
            }
            return Ok(RationalGf {
                num,
                den: IntPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).ok_or(GfError::Elimination)?;
        let mut den = den.div_exact(&g).ok_or(GfError::Elimination)?;
        let d0 = den.eval_zero();
        if d0.is_zero() {
            return Err(GfError::PoleAtZero);
        }
        let mut c = num.content().gcd(&den.content());
        if d0.is_negative() {
            c = -c;
        }
        num = num.div_scalar_exact(&c).ok_or(GfError::Elimination)?;
        den = den.div_scalar_exact(&c).ok_or(GfError::Elimination)?;
        let d0 = den.eval_zero();
        if !d0.is_one() {
            num = num
                .div_scalar_exact(&d0)
                .ok_or(GfError::NonIntegralSeries)?;
            den = den
                .div_scalar_exact(&d0)
                .ok_or(GfError::NonIntegralSeries)?;
        }
        Ok(RationalGf { num, den })
    }

    pub fn from_i64s(num: &[i64], den: &[i64]) -> Result<RationalGf, GfError> {
        Self::new(IntPoly::from_i64s(num), IntPoly::from_i64s(den))
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    /// First `count` power-series coefficients.
    pub fn series(&self, count: usize) -> Vec<BigInt> {
        gf_series(self, count)
    }
}

/// `num/den` in ascending powers of `t`, e.g. `(1+2*t)/(1-t-2*t^2)`.
impl fmt::Display for RationalGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

/// Power-series coefficients via `c_k = num_k - Σ_{i≥1} den_i c_{k-i}`.
pub fn gf_series(g: &RationalGf, count: usize) -> Vec<BigInt> {
    let den = g.den.coeffs();
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for k in 0..count {
        let mut c = g.num.coeff(k);
        for (i, d) in den.iter().enumerate().skip(1).take(k) {
            c -= d * &out[k - i];
        }
        out.push(c);
    }
    out
}

/// Result of a guessed generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfGuess {
    pub gf: RationalGf,
    pub terms_used: usize,
    /// True when the terms used cover the `2m + 2` bound that makes the fit
    /// unique among functions with numerator and denominator degree `≤ m`.
    pub rigorous: bool,
}

/// The matrix `I - t·M_{p-1}` as integer polynomials.
fn transfer_matrix(s: &Scheme) -> Vec<Vec<IntPoly>> {
    let m = s.state_count();
    let top = s.prime().get() - 1;
    let mut a = vec![vec![IntPoly::zero(); m]; m];
    for (j, row) in a.iter_mut().enumerate() {
        let mut mult = vec![0i64; m];
        for &l in s.targets(j, top) {
            mult[l] += 1;
        }
        for (l, cell) in row.iter_mut().enumerate() {
            let diag = if j == l { 1 } else { 0 };
            *cell = IntPoly::from_i64s(&[diag, -mult[l]]);
        }
    }
    a
}

/// Fraction-free Gauss-Jordan elimination. On return every diagonal entry
/// equals `±det` of the leading square block and each extra column holds the
/// corresponding Cramer numerators. Returns the sign of the row permutation.
fn fraction_free_gauss_jordan(a: &mut [Vec<IntPoly>]) -> Result<i32, GfError> {
    let m = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = IntPoly::one();
    let mut sign = 1;
    for k in 0..m {
        let pivot = (k..m)
            .find(|&r| !a[r][k].is_zero())
            .ok_or(GfError::Elimination)?;
        if pivot != k {
            a.swap(pivot, k);
            sign = -sign;
        }
        let (head, rest) = a.split_at_mut(k);
        let (row_k, tail) = rest.split_first_mut().ok_or(GfError::Elimination)?;
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let factor = core::mem::take(&mut row[k]);
            for j in 0..width {
                if j == k {
                    continue;
                }
                let num = row_k[k].mul(&row[j]).sub(&factor.mul(&row_k[j]));
                row[j] = num.div_exact(&prev).ok_or(GfError::Elimination)?;
            }
        }
        prev = row_k[k].clone();
    }
    Ok(sign)
}

/// `det(I - t·M_{p-1})`; every proved denominator divides it.
pub fn transfer_determinant(s: &Scheme) -> Result<IntPoly, GfError> {
    let mut a = transfer_matrix(s);
    let sign = fraction_free_gauss_jordan(&mut a)?;
    let last = a.len() - 1;
    let det = core::mem::take(&mut a[last][last]);
    Ok(if sign < 0 { det.neg() } else { det })
}

/// Proved generating functions `f_1, …, f_m` of every state.
pub fn gf_prove_all(s: &Scheme, limit: usize) -> Result<Vec<RationalGf>, GfError> {
    let m = s.state_count();
    if m > limit {
        return Err(GfError::TooManyStates { states: m, limit });
    }
    let mut a = transfer_matrix(s);
    for (row, &c) in a.iter_mut().zip(s.base_scalar()) {
        row.push(IntPoly::constant(BigInt::from(c)));
    }
    fraction_free_gauss_jordan(&mut a)?;
    a.iter()
        .enumerate()
        .map(|(j, row)| RationalGf::new(row[m].clone(), row[j].clone()))
        .collect()
}

/// Proved generating function of `c(k) = a_1(p^k - 1)`.
pub fn gf_prove(s: &Scheme) -> Result<RationalGf, GfError> {
    gf_prove_with_limit(s, DEFAULT_SOLVE_THRESHOLD)
}

pub fn gf_prove_with_limit(s: &Scheme, limit: usize) -> Result<RationalGf, GfError> {
    Ok(gf_prove_all(s, limit)?.swap_remove(0))
}

/// Minimal-denominator rational function `N/D` with `deg N ≤ max_num_deg`,
/// `deg D ≤ max_den_deg` whose series matches `terms`.
///
/// For each candidate denominator degree `d`, the coefficients of `t^k`,
/// `k > max_num_deg`, in `D·C` must vanish; that linear system in
/// `D = 1 + q_1 t + … + q_d t^d` is solved exactly over `Q`.
pub fn fit_rational(
    terms: &[BigInt],
    max_num_deg: usize,
    max_den_deg: usize,
) -> Result<RationalGf, GfError> {
    let c = |k: isize| -> BigRational {
        if k < 0 {
            BigRational::zero()
        } else {
            BigRational::from_integer(terms[k as usize].clone())
        }
    };
    for d in 0..=max_den_deg {
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for k in (max_num_deg + 1)..terms.len() {
            let mut row: Vec<BigRational> = (1..=d).map(|i| c(k as isize - i as isize)).collect();
            row.push(-c(k as isize));
            rows.push(row);
        }
        let Some(q) = solve_rational(rows, d) else {
            continue;
        };
        // Clear denominators: D = L·(1 + Σ q_i t^i) with L = lcm of denominators.
        let lcm = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut den = vec![lcm.clone()];
        den.extend(
            q.iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()),
        );
        let den = IntPoly::new(den);
        let series = IntPoly::new(terms.to_vec());
        let num = den.mul(&series).truncate(max_num_deg + 1);
        return RationalGf::new(num, den);
    }
    Err(GfError::NoFit {
        max_degree: max_den_deg,
    })
}

/// Solves an augmented system with `n` unknowns; free variables are set to 0.
fn solve_rational(mut rows: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][n].clone();
    }
    Some(sol)
}

/// Guesses the generating function from `terms` sparse terms.
pub fn gf_guess(s: &Scheme, terms: usize) -> Result<GfGuess, GfError> {
    if terms == 0 {
        return Err(GfError::InsufficientTerms {
            given: 0,
            needed: 1,
        });
    }
    let m = s.state_count();
    let values: Vec<BigInt> = sparse_terms(s, terms - 1)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let gf = fit_rational(&values, m, m)?;
    Ok(GfGuess {
        gf,
        terms_used: terms,
        rigorous: terms >= 2 * m + 2,
    })
}

/// First disagreement between a generating function and the sparse terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMismatch {
    pub k: usize,
    pub expected: BigInt,
    pub got: BigInt,
}

/// Compares the first `count` series coefficients of `g` with the scheme's
/// sparse terms.
pub fn gf_verify(g: &RationalGf, s: &Scheme, count: usize) -> Result<(), SeriesMismatch> {
    if count == 0 {
        return Ok(());
    }
    let expected = sparse_terms(s, count - 1);
    for (k, (got, exp)) in gf_series(g, count).into_iter().zip(expected).enumerate() {
        let exp = BigInt::from(exp);
        if got != exp {
            return Err(SeriesMismatch {
                k,
                expected: exp,
                got,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, variable_list};
    use crate::poly::{ModPoly, PrimeModulus};
    use crate::scheme::{synthesize, DEFAULT_MAX_STATES};
    use alloc::string::ToString;

    fn scheme(text: &str, names: &[&str], p: u32) -> Scheme {
        let vars = variable_list(names).unwrap();
        let p = PrimeModulus::new(p).unwrap();
        let poly = parse_poly(text, &vars, p).unwrap();
        synthesize(&poly, &ModPoly::one(p, vars), DEFAULT_MAX_STATES).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn toy_proved() {
        let s = scheme("1+x+x^2", &["x"], 2);
        let all = gf_prove_all(&s, 64).unwrap();
        assert_eq!(
            all[0],
            RationalGf::from_i64s(&[1, 2], &[1, -1, -2]).unwrap()
        );
        assert_eq!(all[0].num().coeffs(), ints(&[1, 2]));
        assert_eq!(all[0].den().coeffs(), ints(&[1, -1, -2]));
        assert_eq!(all[1].num().coeffs(), ints(&[2]));
        assert_eq!(all[1].den().coeffs(), ints(&[1, -1, -2]));
        assert_eq!(all[0].to_string(), "(1+2*t)/(1-t-2*t^2)");
    }

    #[test]
    fn binomial_mod_three_proved() {
        let s = scheme("1+x", &["x"], 3);
        let g = gf_prove(&s).unwrap();
        assert_eq!(g, RationalGf::from_i64s(&[1], &[1, -4, 3]).unwrap());
        assert_eq!(g.to_string(), "1/(1-4*t+3*t^2)");
        assert_eq!(gf_series(&g, 4), ints(&[1, 4, 13, 40]));
    }

    #[test]
    fn guesses() {
        let toy = scheme("1+x+x^2", &["x"], 2);
        let g = gf_guess(&toy, 8).unwrap();
        assert!(g.rigorous);
        assert_eq!(g.gf, gf_prove(&toy).unwrap());

        let b3 = scheme("1+x", &["x"], 3);
        let g = gf_guess(&b3, 8).unwrap();
        assert_eq!(g.gf, RationalGf::from_i64s(&[1], &[1, -4, 3]).unwrap());

        let mono = scheme("x^5", &["x"], 2);
        let g = gf_guess(&mono, 8).unwrap();
        assert_eq!(g.gf, RationalGf::from_i64s(&[1], &[1, -1]).unwrap());

        let short = gf_guess(&toy, 3).unwrap();
        assert!(!short.rigorous);
        assert!(matches!(
            gf_guess(&toy, 0),
            Err(GfError::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn series_examples() {
        let toy = RationalGf::from_i64s(&[1, 2], &[1, -1, -2]).unwrap();
        assert_eq!(gf_series(&toy, 6), ints(&[1, 3, 5, 11, 21, 43]));
        let geo = RationalGf::from_i64s(&[1], &[1, -1]).unwrap();
        assert_eq!(gf_series(&geo, 4), ints(&[1, 1, 1, 1]));
        assert!(gf_series(&geo, 0).is_empty());
    }

    #[test]
    fn verify_examples() {
        let s = scheme("1+x+x^2", &["x"], 2);
        let toy = RationalGf::from_i64s(&[1, 2], &[1, -1, -2]).unwrap();
        assert_eq!(gf_verify(&toy, &s, 20), Ok(()));
        let bad = RationalGf::from_i64s(&[1, 3], &[1, -1, -2]).unwrap();
        let err = gf_verify(&bad, &s, 20).unwrap_err();
        assert_eq!(err.k, 1);
        assert_eq!(err.expected, BigInt::from(3));
        assert_eq!(err.got, BigInt::from(4));
    }

    #[test]
    fn normalization() {
        // (2+4t)/(2-2t-4t^2) reduces to the toy function.
        let g = RationalGf::from_i64s(&[2, 4], &[2, -2, -4]).unwrap();
        assert_eq!(g, RationalGf::from_i64s(&[1, 2], &[1, -1, -2]).unwrap());
        // Common factor (1+t) cancels.
        let h = RationalGf::from_i64s(&[1, 3, 2], &[1, 0, -3, -2]).unwrap();
        assert_eq!(h, RationalGf::from_i64s(&[1, 2], &[1, -1, -2]).unwrap());
        // Negative constant term flips sign.
        let n = RationalGf::from_i64s(&[-1], &[-1, 1]).unwrap();
        assert_eq!(n, RationalGf::from_i64s(&[1], &[1, -1]).unwrap());
        assert_eq!(
            RationalGf::from_i64s(&[1], &[0, 1]),
            Err(GfError::PoleAtZero)
        );
        assert_eq!(
            RationalGf::from_i64s(&[1], &[2, 1]),
            Err(GfError::NonIntegralSeries)
        );
        assert_eq!(
            RationalGf::from_i64s(&[1], &[]),
            Err(GfError::ZeroDenominator)
        );
    }

    #[test]
    fn determinant_divisibility() {
        let s = scheme("1+x+x^2", &["x"], 2);
        let det = transfer_determinant(&s).unwrap();
        assert_eq!(det, IntPoly::from_i64s(&[1, -1, -2]));
        let g = gf_prove(&s).unwrap();
        assert!(det.div_exact(g.den()).is_some());
    }

    #[test]
    fn solve_threshold() {
        let s = scheme("1+x+x^2", &["x"], 2);
        assert_eq!(
            gf_prove_with_limit(&s, 1),
            Err(GfError::TooManyStates {
                states: 2,
                limit: 1
            })
        );
    }
}
