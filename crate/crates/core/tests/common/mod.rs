#![allow(dead_code)]

use oddrule_core::{parse_poly, synthesize, variable_list, ModPoly, PrimeModulus, Scheme};

/// Small automata used across the integration tests, all seeded with Q0 = 1.
pub const CORPUS: &[(&str, &[&str], u32)] = &[
    ("1+x+x^2", &["x"], 2),
    ("1+x", &["x"], 2),
    ("1+x", &["x"], 3),
    ("1+x+x^2", &["x"], 3),
    ("1+x+y+x*y", &["x", "y"], 2),
    ("x^-1+x+y^-1+y", &["x", "y"], 2),
];

pub fn poly(text: &str, names: &[&str], p: u32) -> ModPoly {
    let vars = variable_list(names).unwrap();
    parse_poly(text, &vars, PrimeModulus::new(p).unwrap()).unwrap()
}

pub fn one_like(a: &ModPoly) -> ModPoly {
    ModPoly::one(a.prime(), a.vars().clone())
}

pub fn scheme(text: &str, names: &[&str], p: u32) -> Scheme {
    let a = poly(text, names, p);
    synthesize(&a, &one_like(&a), 100_000).unwrap()
}

pub fn corpus() -> Vec<(String, ModPoly, Scheme)> {
    CORPUS
        .iter()
        .map(|&(t, v, p)| {
            let a = poly(t, v, p);
            let s = synthesize(&a, &one_like(&a), 100_000).unwrap();
            (format!("{t} mod {p}"), a, s)
        })
        .collect()
}
