//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use oddrule_core::eval::{histogram_prefix, pow_minus_one};
use oddrule_core::genfun::{gf_prove_with_limit, DEFAULT_SOLVE_THRESHOLD};
use oddrule_core::oracle::DEFAULT_TERM_BUDGET;
use oddrule_core::scheme::DEFAULT_MAX_STATES;
use oddrule_core::{
    eval_at, eval_histogram_at, gf_guess, gf_verify, parse_poly, sparse_terms, synthesize,
    terms_prefix, verify_scheme, ModPoly, PrimeModulus, Scheme,
};
use serde_json::{json, Value};

use crate::error::{Error, Result, EXIT_INPUT, EXIT_OK};
use crate::render::{gf_json, histogram_text, number, numbers, report_json, report_text};
use crate::scheme_file::{read_scheme, scheme_to_json, vars_from_list, write_scheme};

#[derive(Debug, Parser)]
#[command(
    name = "oddrule",
    version,
    about = "Base-p recurrence schemes for Q*P^n mod p"
)]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a scheme and write it as JSON.
    Synth(SynthArgs),
    /// Evaluate a(n) for one index.
    Eval(EvalArgs),
    /// Print a(0), a(1), ...
    Terms(TermsArgs),
    /// Print a(p^k - 1) for k = 0..=K.
    Sparse(SparseArgs),
    /// Generating function of a(p^k - 1).
    Gf(GfArgs),
    /// Verify a scheme against direct expansion.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(short = 'p', long = "prime")]
    pub p: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    pub vars: Vec<String>,
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value = "1")]
    pub q0: String,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: usize,
    /// Output file; stdout when absent.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("index").required(true).args(["n", "pow", "npow10"]))]
pub struct EvalArgs {
    #[arg(long)]
    pub scheme: PathBuf,
    /// Decimal index.
    #[arg(long)]
    pub n: Option<String>,
    /// Index p^K - 1.
    #[arg(long, value_name = "K")]
    pub pow: Option<u32>,
    /// Index 10^K.
    #[arg(long, value_name = "K")]
    pub npow10: Option<u32>,
    /// Print the residue histogram instead of the sum.
    #[arg(long)]
    pub histogram: bool,
}

#[derive(Debug, Args)]
pub struct TermsArgs {
    #[arg(long)]
    pub scheme: PathBuf,
    #[arg(long)]
    pub count: usize,
    /// Print `n c1,c2,...` histogram lines.
    #[arg(long)]
    pub histogram: bool,
}

#[derive(Debug, Args)]
pub struct SparseArgs {
    #[arg(long)]
    pub scheme: PathBuf,
    /// Largest k; K+1 terms are printed.
    #[arg(long, value_name = "K")]
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct GfArgs {
    #[arg(long)]
    pub scheme: PathBuf,
    /// Fit from terms instead of solving exactly.
    #[arg(long)]
    pub guess: bool,
    /// Terms used by --guess; defaults to 2m+2.
    #[arg(long, requires = "guess")]
    pub terms: Option<usize>,
    /// Largest state count solved exactly.
    #[arg(long, default_value_t = DEFAULT_SOLVE_THRESHOLD)]
    pub solve_limit: usize,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub scheme: PathBuf,
    #[arg(long, default_value_t = 256)]
    pub nmax: usize,
    /// Term budget of the direct expansion.
    #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
    pub budget: usize,
    /// Attach the proved generating function when m is at most this.
    #[arg(long, default_value_t = DEFAULT_SOLVE_THRESHOLD)]
    pub solve_limit: usize,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    emit(out, &format!("{v}\n"))
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Synth(a) => synth(a, cli.json, out),
        Command::Eval(a) => eval(a, cli.json, out),
        Command::Terms(a) => terms(a, cli.json, out),
        Command::Sparse(a) => sparse(a, cli.json, out),
        Command::Gf(a) => gf(a, cli.json, out),
        Command::Check(a) => check(a, cli.json, out),
    }
}

fn synth(a: &SynthArgs, json: bool, out: &mut dyn Write) -> Result<()> {
    if let Some(dir) = a.output.as_ref().and_then(|o| o.parent()) {
        if !dir.as_os_str().is_empty() && !dir.is_dir() {
            return Err(Error::Invalid(format!(
                "{}: no such directory",
                dir.display()
            )));
        }
    }
    let p = PrimeModulus::new(a.p)?;
    let vars = vars_from_list(&a.vars)?;
    let parse = |what: &str, text: &str| -> Result<ModPoly> {
        parse_poly(text, &vars, p).map_err(|source| Error::Parse {
            what: what.into(),
            source,
        })
    };
    let poly = parse("poly", &a.poly)?;
    let q0 = parse("q0", &a.q0)?;
    let s = synthesize(&poly, &q0, a.max_states)?;
    match &a.output {
        None => emit(out, &scheme_to_json(&s)),
        Some(path) => {
            write_scheme(path, &s)?;
            if json {
                emit_json(
                    out,
                    &json!({ "output": path.display().to_string(), "states": s.state_count() }),
                )
            } else {
                emit(
                    out,
                    &format!("wrote {} (states={})\n", path.display(), s.state_count()),
                )
            }
        }
    }
}

fn index(a: &EvalArgs, s: &Scheme) -> Result<BigUint> {
    if let Some(text) = &a.n {
        let digits = text.trim();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Invalid(format!(
                "--n expects a decimal integer, got {text:?}"
            )));
        }
        return Ok(digits.parse().expect("validated decimal"));
    }
    if let Some(k) = a.pow {
        return Ok(pow_minus_one(s.prime().get(), k));
    }
    let k = a.npow10.expect("clap requires one index flag");
    Ok(BigUint::from(10u32).pow(k))
}

fn eval(a: &EvalArgs, json: bool, out: &mut dyn Write) -> Result<()> {
    let s = read_scheme(&a.scheme)?;
    let n = index(a, &s)?;
    match (a.histogram, json) {
        (false, false) => emit(out, &format!("{}\n", eval_at(&s, &n))),
        (false, true) => emit_json(
            out,
            &json!({ "n": number(&n), "value": number(eval_at(&s, &n)) }),
        ),
        (true, false) => emit(
            out,
            &format!("{}\n", histogram_text(&eval_histogram_at(&s, &n))),
        ),
        (true, true) => {
            let h = eval_histogram_at(&s, &n);
            emit_json(
                out,
                &json!({ "n": number(&n), "histogram": numbers(h.counts()) }),
            )
        }
    }
}

fn terms(a: &TermsArgs, json: bool, out: &mut dyn Write) -> Result<()> {
    let s = read_scheme(&a.scheme)?;
    if a.histogram {
        let hs = histogram_prefix(&s, a.count);
        if json {
            let rows: Vec<Value> = hs.iter().map(|h| numbers(h.counts())).collect();
            return emit_json(out, &json!({ "histograms": rows }));
        }
        let text: String = hs
            .iter()
            .enumerate()
            .map(|(n, h)| format!("{n} {}\n", histogram_text(h)))
            .collect();
        return emit(out, &text);
    }
    let values = terms_prefix(&s, a.count);
    if json {
        return emit_json(out, &json!({ "terms": numbers(&values) }));
    }
    emit(
        out,
        &values.iter().map(|v| format!("{v}\n")).collect::<String>(),
    )
}

fn sparse(a: &SparseArgs, json: bool, out: &mut dyn Write) -> Result<()> {
    let s = read_scheme(&a.scheme)?;
    let values = sparse_terms(&s, a.count);
    if json {
        return emit_json(out, &json!({ "terms": numbers(&values) }));
    }
    emit(
        out,
        &values.iter().map(|v| format!("{v}\n")).collect::<String>(),
    )
}

fn gf(a: &GfArgs, json: bool, out: &mut dyn Write) -> Result<()> {
    let s = read_scheme(&a.scheme)?;
    let m = s.state_count();
    let g = if a.guess {
        let terms = a.terms.unwrap_or(2 * m + 2);
        let guess = gf_guess(&s, terms)?;
        // Agreement on 2m+2 terms pins down the function among degree <= m fits.
        let count = terms.max(2 * m + 2);
        if let Err(e) = gf_verify(&guess.gf, &s, count) {
            return Err(Error::Verification(format!(
                "guessed {} disagrees at k={}: series gives {}, scheme gives {}",
                guess.gf, e.k, e.got, e.expected
            )));
        }
        guess.gf
    } else {
        gf_prove_with_limit(&s, a.solve_limit)?
    };
    if json {
        emit_json(out, &gf_json(&g, true))
    } else {
        emit(out, &format!("{g}\n"))
    }
}

fn check(a: &CheckArgs, json: bool, out: &mut dyn Write) -> Result<()> {
    let s = read_scheme(&a.scheme)?;
    let g = if s.state_count() <= a.solve_limit {
        Some(gf_prove_with_limit(&s, a.solve_limit)?)
    } else {
        None
    };
    let report = verify_scheme(&s, a.nmax, g.as_ref(), a.budget)?;
    if json {
        emit_json(out, &report_json(&report))?;
    } else {
        emit(out, &report_text(&report))?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Verification("scheme failed verification".into()))
    }
}
