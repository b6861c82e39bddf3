//! The JSON scheme file.
//!
//! State indices in `transitions` are 1-based. Files are written one field
//! per line in a fixed order, so synthesizing twice gives identical bytes.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use oddrule_core::{parse_poly, variable_list, Histogram, ModPoly, PrimeModulus, Scheme};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub p: u32,
    pub vars: Vec<String>,
    pub polynomial: String,
    pub q0: String,
    pub states: Vec<String>,
    pub transitions: Vec<Vec<Vec<usize>>>,
    pub base_scalar: Vec<u64>,
    pub base_histogram: Vec<Vec<u64>>,
}

impl SchemeFile {
    pub fn from_scheme(s: &Scheme) -> SchemeFile {
        SchemeFile {
            p: s.prime().get(),
            vars: s.vars().to_vec(),
            polynomial: s.poly().to_string(),
            q0: s.q0().to_string(),
            states: s.states().iter().map(ToString::to_string).collect(),
            transitions: s
                .transitions()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|t| t.iter().map(|&l| l + 1).collect())
                        .collect()
                })
                .collect(),
            base_scalar: s.base_scalar().to_vec(),
            base_histogram: s
                .base_histogram()
                .iter()
                .map(|h| h.counts().to_vec())
                .collect(),
        }
    }

    /// Rebuilds and validates the scheme. Transitions are taken as given.
    pub fn to_scheme(&self) -> Result<Scheme> {
        let p = PrimeModulus::new(self.p)?;
        let vars = variable_list(&self.vars).map_err(|source| Error::Parse {
            what: "vars".into(),
            source,
        })?;
        let parse = |what: &str, text: &str| -> Result<ModPoly> {
            parse_poly(text, &vars, p).map_err(|source| Error::Parse {
                what: what.into(),
                source,
            })
        };
        let poly = parse("polynomial", &self.polynomial)?;
        let q0 = parse("q0", &self.q0)?;
        let states = self
            .states
            .iter()
            .enumerate()
            .map(|(j, t)| parse(&format!("states[{}]", j + 1), t))
            .collect::<Result<Vec<_>>>()?;
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for row in &self.transitions {
            let mut out = Vec::with_capacity(row.len());
            for targets in row {
                let shifted = targets
                    .iter()
                    .map(|&l| l.checked_sub(1))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| {
                        Error::Invalid("transition index 0 (indices are 1-based)".into())
                    })?;
                out.push(shifted);
            }
            transitions.push(out);
        }
        let width = self.p as usize - 1;
        if self.base_histogram.iter().any(|h| h.len() != width) {
            return Err(Error::Invalid(format!(
                "base_histogram rows must have {width} entries"
            )));
        }
        let hist = self
            .base_histogram
            .iter()
            .cloned()
            .map(Histogram::from_counts)
            .collect();
        Ok(Scheme::from_parts(
            poly,
            q0,
            states,
            transitions,
            Some(self.base_scalar.clone()),
            Some(hist),
        )?)
    }

    /// One field per line, values compact, trailing newline.
    pub fn to_json(&self) -> String {
        let fields: [(&str, String); 8] = [
            ("p", compact(&self.p)),
            ("vars", compact(&self.vars)),
            ("polynomial", compact(&self.polynomial)),
            ("q0", compact(&self.q0)),
            ("states", compact(&self.states)),
            ("transitions", compact(&self.transitions)),
            ("base_scalar", compact(&self.base_scalar)),
            ("base_histogram", compact(&self.base_histogram)),
        ];
        let body: Vec<String> = fields
            .iter()
            .map(|(k, v)| format!("  \"{k}\": {v}"))
            .collect();
        format!("{{\n{}\n}}\n", body.join(",\n"))
    }

    pub fn from_json(text: &str) -> serde_json::Result<SchemeFile> {
        serde_json::from_str(text)
    }
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

pub fn scheme_to_json(s: &Scheme) -> String {
    SchemeFile::from_scheme(s).to_json()
}

pub fn read_scheme(path: &Path) -> Result<Scheme> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    let file = SchemeFile::from_json(&text).map_err(|source| Error::Json {
        path: path.to_owned(),
        source,
    })?;
    file.to_scheme()
}

pub fn write_scheme(path: &Path, s: &Scheme) -> Result<()> {
    fs::write(path, scheme_to_json(s)).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Variables as given on the command line, comma separated.
pub fn vars_from_list(names: &[String]) -> Result<Arc<[String]>> {
    variable_list(names).map_err(|source| Error::Parse {
        what: "vars".into(),
        source,
    })
}
