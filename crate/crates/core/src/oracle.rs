//! Brute-force ground truth and whole-scheme verification.
//!
//! The expansion here multiplies by `P` once per step with its own term map
//! and its own coefficient counting; it does not go through [`ModPoly`]
//! arithmetic, the Frobenius split, or any squaring shortcut, so it can
//! referee the fast path.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};

use crate::eval::{
    eval_at, histogram_prefix, pow_minus_one, rlt_check, sparse_terms, terms_prefix,
};
use crate::genfun::{gf_verify, RationalGf};
use crate::poly::{Histogram, ModPoly, PolyError};
use crate::scheme::Scheme;

pub const DEFAULT_TERM_BUDGET: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    Poly(PolyError),
    TermBudget { n: u64, terms: usize, budget: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Poly(e) => e.fmt(f),
            OracleError::TermBudget { n, terms, budget } => write!(
                f,
                "direct expansion at n = {n} reached {terms} terms, over the budget of {budget}"
            ),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<PolyError> for OracleError {
    fn from(e: PolyError) -> Self {
        OracleError::Poly(e)
    }
}

/// Walks `Q0·P^n mod p` for `n = 0, 1, 2, …`.
pub struct PowerWalk {
    p: u64,
    factor: Vec<(Vec<i64>, u64)>,
    current: BTreeMap<Vec<i64>, u64>,
    n: u64,
    budget: usize,
}

impl PowerWalk {
    pub fn new(poly: &ModPoly, q0: &ModPoly, budget: usize) -> Result<Self, OracleError> {
        poly.check_compatible(q0)?;
        let widen = |a: &ModPoly| -> Vec<(Vec<i64>, u64)> {
            a.terms()
                .map(|(e, c)| (e.iter().map(|&x| x as i64).collect(), c as u64))
                .collect()
        };
        Ok(PowerWalk {
            p: poly.prime().get() as u64,
            factor: widen(poly),
            current: widen(q0).into_iter().collect(),
            n: 0,
            budget,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of nonzero coefficients, the ON-cell count when `p = 2`.
    pub fn nonzero_count(&self) -> usize {
        self.current.len()
    }

    pub fn scalar(&self) -> u64 {
        self.current.values().sum()
    }

    pub fn histogram(&self) -> Histogram {
        let mut counts = vec![0u64; self.p as usize - 1];
        for &c in self.current.values() {
            counts[c as usize - 1] += 1;
        }
        Histogram::from_counts(counts)
    }

    /// Multiplies the current polynomial by `P` once.
    pub fn step(&mut self) -> Result<(), OracleError> {
        let mut next: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (e, &c) in &self.current {
            for (f, d) in &self.factor {
                let key: Vec<i64> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                let slot = next.entry(key).or_insert(0);
                *slot = (*slot + c * d) % self.p;
            }
        }
        next.retain(|_, c| *c != 0);
        self.n += 1;
        if next.len() > self.budget {
            return Err(OracleError::TermBudget {
                n: self.n,
                terms: next.len(),
                budget: self.budget,
            });
        }
        self.current = next;
        Ok(())
    }
}

/// Histograms of `Q0·P^n` for `n < count`.
pub fn brute_sequence(
    poly: &ModPoly,
    q0: &ModPoly,
    count: usize,
    budget: usize,
) -> Result<Vec<Histogram>, OracleError> {
    let mut walk = PowerWalk::new(poly, q0, budget)?;
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            walk.step()?;
        }
        out.push(walk.histogram());
    }
    Ok(out)
}

pub fn brute_scalar(
    poly: &ModPoly,
    q0: &ModPoly,
    n: u64,
    budget: usize,
) -> Result<u64, OracleError> {
    let mut walk = PowerWalk::new(poly, q0, budget)?;
    for _ in 0..n {
        walk.step()?;
    }
    Ok(walk.scalar())
}

pub fn brute_histogram(
    poly: &ModPoly,
    q0: &ModPoly,
    n: u64,
    budget: usize,
) -> Result<Histogram, OracleError> {
    let mut walk = PowerWalk::new(poly, q0, budget)?;
    for _ in 0..n {
        walk.step()?;
    }
    Ok(walk.histogram())
}

/// A value seen by a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observed {
    Scalar(BigInt),
    Histogram(Vec<BigUint>),
}

impl Observed {
    fn scalar(v: impl Into<BigInt>) -> Self {
        Observed::Scalar(v.into())
    }

    fn histogram(h: &Histogram) -> Self {
        Observed::Histogram(h.counts().iter().map(|&c| BigUint::from(c)).collect())
    }
}

impl fmt::Display for Observed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observed::Scalar(v) => write!(f, "{v}"),
            Observed::Histogram(h) => {
                f.write_str("(")?;
                for (i, c) in h.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Reproducible failure: `n` is the sequence index, `state` and `digit` are
/// 1-based state number and digit when the check is per-transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: BigUint,
    pub state: Option<usize>,
    pub digit: Option<u32>,
    pub expected: Observed,
    pub got: Observed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    OracleScalar,
    OracleHistogram,
    RecurrenceIdentity,
    FixedPoint,
    SparseAgreement,
    GfSeries,
    RunLengthTransform,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::OracleScalar => "oracle-scalar",
            CheckKind::OracleHistogram => "oracle-histogram",
            CheckKind::RecurrenceIdentity => "recurrence-identity",
            CheckKind::FixedPoint => "fixed-point",
            CheckKind::SparseAgreement => "sparse-agreement",
            CheckKind::GfSeries => "gf-series",
            CheckKind::RunLengthTransform => "run-length-transform",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub kind: CheckKind,
    pub passed: bool,
    /// Informational checks never fail the report.
    pub informational: bool,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub scheme: String,
    pub nmax: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    /// True unless a non-informational check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn check(&self, kind: CheckKind) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.kind == kind)
    }
}

/// One-line identity of a scheme for reports.
pub fn scheme_identity(s: &Scheme) -> String {
    format!(
        "p={} vars=[{}] P={} Q0={} states={}",
        s.prime(),
        s.vars().join(","),
        s.poly(),
        s.q0(),
        s.state_count()
    )
}

fn outcome(
    kind: CheckKind,
    detail: String,
    counterexample: Option<Counterexample>,
) -> CheckOutcome {
    CheckOutcome {
        kind,
        passed: counterexample.is_none(),
        informational: false,
        detail,
        counterexample,
    }
}

/// Runs every check against the brute-force oracle for indices below `nmax`.
///
/// Checks, in order: scalar and histogram agreement for state 1; the
/// per-transition identity `a_j(pn+i) = Σ_{l∈S_i(j)} a_l(n)` for
/// `n < nmax/p`; the digit-0 fixed point; sparse terms against the oracle
/// and the fast evaluator; the series of `gf` when given; and, for `p = 2`,
/// the run-length transform (informational).
pub fn verify_scheme(
    s: &Scheme,
    nmax: usize,
    gf: Option<&RationalGf>,
    budget: usize,
) -> Result<VerificationReport, OracleError> {
    let p = s.prime().get() as usize;
    let m = s.state_count();
    let mut checks = Vec::new();

    let per_state_len = p * (nmax / p).max(1);
    let seq_len = nmax.max(per_state_len);
    let mut brute: Vec<Vec<Histogram>> = Vec::with_capacity(m);
    for q in s.states() {
        brute.push(brute_sequence(s.poly(), q, seq_len, budget)?);
    }

    // (a) state 1 against the oracle.
    let fast = terms_prefix(s, nmax);
    let fast_hist = histogram_prefix(s, nmax);
    let mut cx = None;
    for (n, value) in fast.iter().enumerate() {
        let expected = brute[0][n].weighted_sum();
        if *value != BigUint::from(expected) {
            cx = Some(Counterexample {
                n: BigUint::from(n),
                state: Some(1),
                digit: None,
                expected: Observed::scalar(expected),
                got: Observed::scalar(value.clone()),
            });
            break;
        }
    }
    checks.push(outcome(CheckKind::OracleScalar, format!("n < {nmax}"), cx));
    let mut cx = None;
    for (n, h) in fast_hist.iter().enumerate() {
        let expected = Observed::histogram(&brute[0][n]);
        let got = Observed::Histogram(h.counts().to_vec());
        if expected != got {
            cx = Some(Counterexample {
                n: BigUint::from(n),
                state: Some(1),
                digit: None,
                expected,
                got,
            });
            break;
        }
    }
    checks.push(outcome(
        CheckKind::OracleHistogram,
        format!("n < {nmax}"),
        cx,
    ));

    // (b) per-transition identity, compared on histograms.
    let nn = per_state_len / p;
    let mut cx = None;
    'outer: for n in 0..nn {
        for j in 0..m {
            for i in 0..p {
                let lhs = &brute[j][p * n + i];
                let mut rhs = Histogram::zero(s.prime());
                for &l in s.targets(j, i as u32) {
                    rhs.add_assign(&brute[l][n]);
                }
                if *lhs != rhs {
                    cx = Some(Counterexample {
                        n: BigUint::from(p * n + i),
                        state: Some(j + 1),
                        digit: Some(i as u32),
                        expected: Observed::scalar(lhs.weighted_sum()),
                        got: Observed::scalar(rhs.weighted_sum()),
                    });
                    break 'outer;
                }
            }
        }
    }
    checks.push(outcome(
        CheckKind::RecurrenceIdentity,
        format!("{m} states, {p} digits, n < {nn}"),
        cx,
    ));

    // (c) a(0) = M_0 a(0).
    let mut cx = None;
    for j in 0..m {
        let got: u64 = s.targets(j, 0).iter().map(|&l| s.base_scalar()[l]).sum();
        if got != s.base_scalar()[j] {
            cx = Some(Counterexample {
                n: BigUint::from(0u32),
                state: Some(j + 1),
                digit: Some(0),
                expected: Observed::scalar(s.base_scalar()[j]),
                got: Observed::scalar(got),
            });
            break;
        }
    }
    checks.push(outcome(
        CheckKind::FixedPoint,
        String::from("a(0) = M0 a(0)"),
        cx,
    ));

    // (d) sparse terms against the oracle (p^k - 1 < nmax) and the fast path.
    const FAST_SPARSE_K: usize = 32;
    let sparse = sparse_terms(s, FAST_SPARSE_K);
    let mut cx = None;
    for (k, value) in sparse.iter().enumerate() {
        let n = pow_minus_one(p as u32, k as u32);
        let expected = if n < BigUint::from(nmax) {
            let idx = usize::try_from(&n).unwrap_or(usize::MAX);
            BigUint::from(brute[0][idx].weighted_sum())
        } else {
            eval_at(s, &n)
        };
        if *value != expected {
            cx = Some(Counterexample {
                n,
                state: Some(1),
                digit: None,
                expected: Observed::scalar(expected),
                got: Observed::scalar(value.clone()),
            });
            break;
        }
    }
    checks.push(outcome(
        CheckKind::SparseAgreement,
        format!("k <= {FAST_SPARSE_K}"),
        cx,
    ));

    // (e) series of an attached generating function.
    if let Some(g) = gf {
        let count = (2 * m + 4).max(FAST_SPARSE_K + 1);
        let cx = gf_verify(g, s, count).err().map(|e| Counterexample {
            n: pow_minus_one(p as u32, e.k as u32),
            state: Some(1),
            digit: None,
            expected: Observed::Scalar(e.expected),
            got: Observed::Scalar(e.got),
        });
        checks.push(outcome(
            CheckKind::GfSeries,
            format!("{g}, {count} terms"),
            cx,
        ));
    }

    // (f) run-length transform, informational.
    if p == 2 {
        if let Ok(r) = rlt_check(s, nmax) {
            let cx = r.counterexample.map(|(n, got, expected)| Counterexample {
                n: BigUint::from(n),
                state: Some(1),
                digit: None,
                expected: Observed::scalar(expected),
                got: Observed::scalar(got),
            });
            let mut o = outcome(CheckKind::RunLengthTransform, format!("n < {nmax}"), cx);
            o.informational = true;
            checks.push(o);
        }
    }

    Ok(VerificationReport {
        scheme: scheme_identity(s),
        nmax,
        checks,
    })
}
