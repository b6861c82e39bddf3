//! Text and JSON renderings of results.

use std::fmt::Display;

use oddrule_core::oracle::{CheckOutcome, Counterexample, Observed};
use oddrule_core::{BigHistogram, RationalGf, VerificationReport};
use serde_json::{json, Number, Value};

/// An integer of any size as a JSON number.
pub fn number(v: impl Display) -> Value {
    let n: Number = v
        .to_string()
        .parse()
        .expect("decimal integer is a JSON number");
    Value::Number(n)
}

pub fn numbers<T: Display>(vs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(vs.into_iter().map(number).collect())
}

/// Histogram counts as `c1,c2,...`.
pub fn histogram_text(h: &BigHistogram) -> String {
    h.counts()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn gf_json(g: &RationalGf, rigorous: bool) -> Value {
    json!({
        "num": numbers(g.num().coeffs()),
        "den": numbers(g.den().coeffs()),
        "rigorous": rigorous,
    })
}

fn observed_json(o: &Observed) -> Value {
    match o {
        Observed::Scalar(v) => number(v),
        Observed::Histogram(h) => numbers(h),
    }
}

fn counterexample_json(c: &Counterexample) -> Value {
    json!({
        "n": number(&c.n),
        "state": c.state,
        "digit": c.digit,
        "expected": observed_json(&c.expected),
        "got": observed_json(&c.got),
    })
}

fn check_json(c: &CheckOutcome) -> Value {
    json!({
        "name": c.kind.name(),
        "passed": c.passed,
        "informational": c.informational,
        "detail": c.detail,
        "counterexample": c.counterexample.as_ref().map(counterexample_json),
    })
}

pub fn report_json(r: &VerificationReport) -> Value {
    json!({
        "scheme": r.scheme,
        "nmax": r.nmax,
        "passed": r.passed(),
        "checks": r.checks.iter().map(check_json).collect::<Vec<_>>(),
    })
}

fn counterexample_text(c: &Counterexample) -> String {
    let mut out = format!("n={}", c.n);
    if let Some(j) = c.state {
        out += &format!(" state={j}");
    }
    if let Some(i) = c.digit {
        out += &format!(" digit={i}");
    }
    out + &format!(" expected {} got {}", c.expected, c.got)
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut out = format!("scheme: {}\nnmax: {}\n", r.scheme, r.nmax);
    for c in &r.checks {
        let tag = match (c.passed, c.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        out += &format!("{tag} {}: {}", c.kind.name(), c.detail);
        if let Some(cx) = &c.counterexample {
            out += &format!(" [{}]", counterexample_text(cx));
        }
        out.push('\n');
    }
    out += if r.passed() {
        "result: PASS\n"
    } else {
        "result: FAIL\n"
    };
    out
}
