//! `elemsym` command-line front end: JSON in, JSON out.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use elemsym::api::{self, Outcome};
use elemsym::verify::{run_suite, SUITES};
use elemsym::Error;

const SAMPLING: &str = "\
Sampling used by `verify`:
  Every trial draws its own 64-bit seed from a ChaCha8 stream keyed by --seed, so a
  reported failure can be replayed from that trial seed alone.
  relations      rings uniform over {ℤ/25, ℤ/27, ℤ/121, (ℤ/27)[X]}, parameters uniform in
                 0..1000 reduced into the ring (degree ≤ 1 in X), n uniform in {2, 3};
                 the long-root family is drawn at n = 3.
  pfaffian       rings uniform over {ℤ/25, ℤ/27, ℤ/121}; alternating 4×4 and 6×6 matrices
                 with uniform entries; elementary words of up to 5 letters.
  all others     ℤ/27 with I = (3u), u uniform over the units {1, 2, 4, 5, 7, 8};
                 certificate coefficients uniform in 0..1000, polynomial coefficients of
                 degree ≤ 2 in X where a polynomial ring is involved; n uniform in {2, 3}
                 unless the construction needs n = 3; conjugating words of up to 6 letters.

Exit codes: 0 success, 1 verification failure (or failing trials), 2 malformed input.";

#[derive(Parser)]
#[command(name = "elemsym", version, about = "Exact elementary-group factorizations over ℤ/m and polynomial rings")]
#[command(after_help = SAMPLING)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run seeded verification suites (`all` runs every suite).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Rewrite g·se_ij(ab)·g⁻¹ as a word of I-certified symplectic generators.
    /// Input: {ring, ideal, n, g, i, j, a, b}.
    Decompose(Io),
    /// Rewrite ε·X_ij(Y^(4^r)·a)·ε⁻¹ over R[X, Y] with index-1, Y-divisible letters.
    /// Input: {mode: "linear"|"symplectic", ring, ideal, n, eps, i, j, aPoly[, vars, repair]}.
    Rewrite(Io),
    /// Pfaffian and determinant of an alternating matrix. Input: {ring, matrix}.
    Pfaffian(Io),
    /// Write φ ≡ ψ_n (mod I) as (1⊥ε)ᵗ ψ_n (1⊥ε) over ℤ/p^k. Input: {ring, ideal, phi}.
    Standardize(Io),
    /// Expand ρ/μ letters over ψ_n into se-letters, or regroup index-1 se-letters into ρ/μ.
    /// Input: {ring, n, word[, ideal]}; ρ/μ words are at size 2n, se-words at 2n + 2.
    Expand(Io),
}

#[derive(Args)]
struct Io {
    /// Input JSON file (stdin when absent).
    #[arg(long = "in")]
    input: Option<String>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<String>,
    /// Ring descriptor JSON, used when the input has no `ring` field.
    #[arg(long)]
    ring: Option<String>,
    /// Ideal JSON (generator list or {ring, gens}), used when the input has no `ideal` field.
    #[arg(long)]
    ideal: Option<String>,
    /// Compact single-line JSON instead of pretty output.
    #[arg(long)]
    json: bool,
}

/// Failure modes of a command, mapped onto exit codes.
enum Fail {
    Malformed(String),
    Verification(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_) => Fail::Verification(e.to_string()),
            other => Fail::Malformed(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail::Malformed(format!("JSON: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let io = match &cli.cmd {
        Cmd::Verify { io, .. } => io,
        Cmd::Decompose(io) | Cmd::Rewrite(io) | Cmd::Pfaffian(io) | Cmd::Standardize(io) | Cmd::Expand(io) => io,
    };
    if let Cmd::Verify { suite, trials, seed, io } = &cli.cmd {
        return verify(suite, *trials, *seed, io);
    }
    let command = match &cli.cmd {
        Cmd::Decompose(_) => "decompose",
        Cmd::Rewrite(_) => "rewrite",
        Cmd::Pfaffian(_) => "pfaffian",
        Cmd::Standardize(_) => "standardize",
        Cmd::Expand(_) => "expand",
        Cmd::Verify { .. } => unreachable!(),
    };
    let result: std::result::Result<Outcome, Fail> =
        read_input(io).and_then(|input| api::run(command, &input).map_err(Fail::from));
    let (doc, code) = match result {
        Ok((doc, true)) => (doc, 0),
        Ok((doc, false)) => (doc, 1),
        Err(Fail::Verification(m)) => (json!({"verified": false, "error": m}), 1),
        Err(Fail::Malformed(m)) => (json!({"verified": false, "error": m}), 2),
    };
    if let Some(e) = doc.get("error").and_then(Json::as_str) {
        eprintln!("elemsym: {e}");
    }
    match emit(io, &render(&doc, io.json)) {
        Ok(()) => ExitCode::from(code),
        Err(e) => {
            eprintln!("elemsym: {e}");
            ExitCode::from(2)
        }
    }
}

fn render(doc: &Json, compact: bool) -> String {
    if compact {
        doc.to_string()
    } else {
        serde_json::to_string_pretty(doc).expect("JSON values always serialize")
    }
}

fn emit(io: &Io, text: &str) -> io::Result<()> {
    match &io.out {
        Some(path) => fs::write(path, format!("{text}\n")),
        None => writeln!(io::stdout().lock(), "{text}"),
    }
}

/// Reads the input document and fills `ring` / `ideal` from the flags when absent.
fn read_input(io: &Io) -> std::result::Result<Json, Fail> {
    let text = match &io.input {
        Some(path) => fs::read_to_string(path).map_err(|e| Fail::Malformed(format!("{path}: {e}")))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Fail::Malformed(format!("stdin: {e}")))?;
            s
        }
    };
    let mut doc: Json = serde_json::from_str(&text)?;
    let obj = doc.as_object_mut().ok_or_else(|| Fail::Malformed("input must be a JSON object".into()))?;
    for (key, flag) in [("ring", &io.ring), ("ideal", &io.ideal)] {
        if let (None, Some(v)) = (obj.get(key), flag) {
            obj.insert(key.into(), serde_json::from_str(v)?);
        }
    }
    Ok(doc)
}

fn verify(suite: &str, trials: usize, seed: u64, io: &Io) -> ExitCode {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let start = Instant::now();
    let mut reports = vec![];
    for name in names {
        match run_suite(name, trials, seed) {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("elemsym: {e}");
                let _ = emit(io, &render(&json!({"error": e.to_string()}), io.json));
                return ExitCode::from(2);
            }
        }
    }
    let ok = reports.iter().all(|r| r.passed());
    let text = if io.json {
        Json::Array(reports.iter().map(|r| r.to_json()).collect()).to_string()
    } else {
        let mut lines = vec![];
        for r in &reports {
            lines.push(format!(
                "{:<20} {:>6} trials  {:>4} failures  {:.2}s",
                r.suite,
                r.trials,
                r.failures.len(),
                r.elapsed.as_secs_f64()
            ));
            for f in &r.failures {
                lines.push(format!(
                    "    seed {}  inputs {}  expected {}  achieved {}",
                    f.seed, f.inputs, f.expected, f.achieved
                ));
            }
        }
        lines.push(format!("{} in {:.2}s", if ok { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64()));
        lines.join("\n")
    };
    match emit(io, &text) {
        Ok(()) => ExitCode::from(if ok { 0 } else { 1 }),
        Err(e) => {
            eprintln!("elemsym: {e}");
            ExitCode::from(2)
        }
    }
}

