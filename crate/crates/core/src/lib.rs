//! Fast counting of nonzero coefficients of `Q·P^n mod p`.
//!
//! Given a polynomial `P` in any number of variables and a prime `p`, this
//! crate synthesizes a finite base-`p` recurrence scheme for
//! `a(n) = Σ coefficients of (Q·P^n mod p)`, evaluates it in time
//! logarithmic in `n`, and derives the rational generating function of
//! `a(p^k - 1)`. For `p = 2` and a neighborhood polynomial `P`, `a(n)` is the
//! number of ON cells after `n` generations of the odd-rule cellular
//! automaton with that neighborhood.
//!
//! ```
//! use oddrule_core::{eval_at, gf_prove, parse_poly, synthesize, variable_list, ModPoly, PrimeModulus};
//!
//! let vars = variable_list(&["x"]).unwrap();
//! let p = PrimeModulus::new(2).unwrap();
//! let poly = parse_poly("1+x+x^2", &vars, p).unwrap();
//! let s = synthesize(&poly, &ModPoly::one(p, vars), 100_000).unwrap();
//! assert_eq!(eval_at(&s, &5u32.into()), 9u32.into());
//! assert_eq!(gf_prove(&s).unwrap().to_string(), "(1+2*t)/(1-t-2*t^2)");
//! ```
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod eval;
pub mod genfun;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod scheme;
pub mod upoly;

pub use eval::{
    eval_at, eval_at_recursive, eval_histogram_at, rlt_check, rlt_expand, sparse_terms,
    terms_prefix, BigHistogram, RltError, RltReport,
};
pub use genfun::{gf_guess, gf_prove, gf_series, gf_verify, GfError, GfGuess, RationalGf};
pub use oracle::{brute_histogram, brute_scalar, verify_scheme, OracleError, VerificationReport};
pub use parse::{parse_poly, variable_list, ParseError};
pub use poly::{ExponentVector, Histogram, ModPoly, PolyError, PrimeModulus};
pub use scheme::{degree_bounds, synthesize, DigitMatrix, Scheme, SchemeError};
pub use upoly::IntPoly;
