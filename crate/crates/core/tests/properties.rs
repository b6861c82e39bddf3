mod common;

use std::sync::Arc;

use num_bigint::BigUint;
use oddrule_core::eval::{eval_at, eval_at_recursive, histogram_prefix, terms_prefix};
use oddrule_core::genfun::{gf_series, RationalGf};
use oddrule_core::{parse_poly, IntPoly, ModPoly, PrimeModulus};
use proptest::prelude::*;

const PRIMES: &[u32] = &[2, 3, 5, 7];

fn vars(k: usize) -> Arc<[String]> {
    ["x", "y", "z"][..k].iter().map(|s| s.to_string()).collect()
}

/// Polynomial with `k` variables, exponents in `lo..=hi`, over a small prime.
fn arb_poly(lo: i32, hi: i32) -> impl Strategy<Value = ModPoly> {
    (prop::sample::select(PRIMES), 1usize..=3).prop_flat_map(move |(p, k)| {
        prop::collection::vec((prop::collection::vec(lo..=hi, k), 0i64..50), 0..7).prop_map(
            move |terms| {
                ModPoly::from_terms(PrimeModulus::new(p).unwrap(), vars(k), terms).unwrap()
            },
        )
    })
}

fn arb_monomial_for(a: &ModPoly) -> impl Strategy<Value = ModPoly> {
    let p = a.prime();
    let v = a.vars().clone();
    let k = a.nvars();
    prop::collection::vec(-4i32..=4, k).prop_map(move |e| ModPoly::monomial(p, v.clone(), e, 1))
}

proptest! {
    #[test]
    fn stored_coefficients_are_reduced(a in arb_poly(-3, 5)) {
        let p = a.prime().get();
        prop_assert!(a.terms().all(|(_, c)| (1..p).contains(&c)));
        let keys: Vec<_> = a.terms().map(|(e, _)| e.clone()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(keys, sorted);
    }

    #[test]
    fn freshmans_dream(a in arb_poly(0, 4)) {
        let p = a.prime().get();
        prop_assert_eq!(a.pow_mod(p as u64).unwrap(), a.inflate(p as i32).unwrap());
    }

    #[test]
    fn frobenius_reconstruction(a in arb_poly(0, 9)) {
        let p = a.prime().get() as i32;
        let mut rebuilt = ModPoly::zero(a.prime(), a.vars().clone());
        for (alpha, r) in a.frobenius_decompose().unwrap() {
            prop_assert!(alpha.iter().all(|&x| (0..p).contains(&x)));
            prop_assert!(!r.is_zero());
            let part = r.inflate(p).unwrap().shift(&alpha).unwrap();
            rebuilt = rebuilt.add(&part).unwrap();
        }
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn functionals_ignore_monomial_factors(
        (a, m) in arb_poly(-3, 5).prop_flat_map(|a| { let m = arb_monomial_for(&a); (Just(a), m) })
    ) {
        let b = a.mul_mod(&m).unwrap();
        prop_assert_eq!(b.functional_scalar(), a.functional_scalar());
        prop_assert_eq!(b.functional_histogram(), a.functional_histogram());
    }

    #[test]
    fn canonicalize_idempotent_and_preserving(a in arb_poly(-3, 5)) {
        prop_assume!(!a.is_zero());
        let c = a.canonicalize().unwrap();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize().unwrap(), c.clone());
        prop_assert_eq!(c.functional_scalar(), a.functional_scalar());
        prop_assert_eq!(c.functional_histogram(), a.functional_histogram());
    }

    #[test]
    fn scalar_is_weighted_histogram(a in arb_poly(-3, 5)) {
        let h = a.functional_histogram();
        prop_assert_eq!(a.functional_scalar(), h.weighted_sum());
        prop_assert_eq!(h.total(), a.len() as u64);
    }

    #[test]
    fn display_parses_back(a in arb_poly(-3, 5)) {
        let b = parse_poly(&a.to_string(), a.vars(), a.prime()).unwrap();
        prop_assert_eq!(b, a);
    }

    #[test]
    fn pow_matches_repeated_product(a in arb_poly(-2, 3), e in 0u64..7) {
        let mut acc = ModPoly::one(a.prime(), a.vars().clone());
        for _ in 0..e {
            acc = acc.mul_mod(&a).unwrap();
        }
        prop_assert_eq!(a.pow_mod(e).unwrap(), acc);
    }

    #[test]
    fn renormalizing_is_a_noop(
        num in prop::collection::vec(-20i64..20, 0..5),
        den_tail in prop::collection::vec(-20i64..20, 0..5),
    ) {
        let mut den = vec![1i64];
        den.extend(den_tail);
        let g = RationalGf::from_i64s(&num, &den).unwrap();
        prop_assert!(g.den().eval_zero() == 1.into());
        prop_assert_eq!(g.num().gcd(g.den()), IntPoly::one());
        let again = RationalGf::new(g.num().clone(), g.den().clone()).unwrap();
        prop_assert_eq!(&again, &g);
        // Same series as the unreduced input.
        let raw = IntPoly::from_i64s(&num);
        let raw_den = IntPoly::from_i64s(&den);
        let series = gf_series(&g, 12);
        let back = raw_den.mul(&IntPoly::new(series)).truncate(12);
        prop_assert_eq!(back, raw.truncate(12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_seeds_close_soundly(
        (a, q) in (prop::sample::select(&[2u32, 3][..]), 1usize..=2).prop_flat_map(|(p, k)| {
            let p = PrimeModulus::new(p).unwrap();
            let term = (prop::collection::vec(0i32..=2, k), 1i64..50);
            let a = prop::collection::vec(term.clone(), 1..4)
                .prop_map(move |t| ModPoly::from_terms(p, vars(k), t).unwrap());
            let q = prop::collection::vec(term, 1..3)
                .prop_map(move |t| ModPoly::from_terms(p, vars(k), t).unwrap());
            (a, q)
        })
    ) {
        prop_assume!(!a.is_zero() && !q.is_zero());
        let s = match oddrule_core::synthesize(&a, &q, 400) {
            Ok(s) => s,
            Err(oddrule_core::SchemeError::TooManyStates { .. }) => return Ok(()),
            Err(e) => panic!("{e:?}"),
        };
        let bounds = oddrule_core::degree_bounds(s.poly(), s.q0());
        for st in s.states() {
            let d = st.max_exponents().unwrap();
            prop_assert!(d.iter().zip(&bounds).all(|(x, b)| x <= b));
        }
        let seq = oddrule_core::oracle::brute_sequence(&a, &q, 40, 1_000_000).unwrap();
        let fast = terms_prefix(&s, 40);
        let hist = histogram_prefix(&s, 40);
        for n in 0..40 {
            prop_assert_eq!(&fast[n], &BigUint::from(seq[n].weighted_sum()));
            let want: Vec<BigUint> = seq[n].counts().iter().map(|&c| BigUint::from(c)).collect();
            prop_assert_eq!(hist[n].counts(), &want[..]);
        }
    }

    #[test]
    fn matrix_chain_equals_recursion(n in any::<u64>()) {
        for (_, _, s) in common::corpus() {
            let n = BigUint::from(n);
            prop_assert_eq!(eval_at(&s, &n), eval_at_recursive(&s, &n));
        }
    }
}
