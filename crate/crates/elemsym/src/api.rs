//! JSON-in, JSON-out entry points shared by the command-line tool and the Python bindings.
//!
//! Each command returns the result document and its `verified` flag. `VerificationFailed`
//! signals a failed exact check; every other error means the input was malformed.

use serde::Deserialize;
use serde_json::{json, Value as Json};

use crate::bridge::{esp1_to_etranssp, etranssp_word_to_esp1, standardize_alternating, AlternatingForm};
use crate::decompose::decompose_conjugate;
use crate::error::{Error, Result};
use crate::ideal::{CertifiedElement, IdealPresentation};
use crate::matrix::ExactMatrix;
use crate::rewrite::{rewrite_conjugation_with, Kind, RewriteConfig};
use crate::ring::{poly, Ring, RingDescriptor};
use crate::word::{expand_mu, expand_rho, Generator, Word};

pub type Outcome = (Json, bool);

/// Command names accepted by [`run`].
pub const COMMANDS: [&str; 5] = ["decompose", "rewrite", "pfaffian", "standardize", "expand"];

pub fn run(command: &str, doc: &Json) -> Result<Outcome> {
    match command {
        "decompose" => decompose(doc),
        "rewrite" => rewrite(doc),
        "pfaffian" => pfaffian(doc),
        "standardize" => standardize(doc),
        "expand" => expand(doc),
        other => Err(Error::Malformed(format!("unknown command {other}"))),
    }
}

fn malformed(e: serde_json::Error) -> Error {
    Error::Malformed(format!("JSON: {e}"))
}

fn field<'a>(doc: &'a Json, key: &str) -> Result<&'a Json> {
    doc.get(key).ok_or_else(|| Error::Malformed(format!("missing field `{key}`")))
}

fn ring_and_ideal(doc: &Json) -> Result<(Ring, IdealPresentation)> {
    let ring = RingDescriptor::from_json(field(doc, "ring")?)?;
    let ideal = IdealPresentation::from_json(Some(&ring), field(doc, "ideal")?)?;
    Ok((ring, ideal))
}

#[derive(Deserialize)]
struct DecomposeInput {
    n: usize,
    i: usize,
    j: usize,
}

/// `{ring, ideal, n, g, i, j, a, b}`: writes `g se_ij(ab) g^-1` over `I`-certified generators.
pub fn decompose(doc: &Json) -> Result<Outcome> {
    let DecomposeInput { n, i, j } = DecomposeInput::deserialize(doc).map_err(malformed)?;
    let (ring, ideal) = ring_and_ideal(doc)?;
    let g = Word::from_json(&ring, 2 * n, Some(&ideal), field(doc, "g")?)?;
    let a = CertifiedElement::from_json(&ideal, field(doc, "a")?)?;
    let b = CertifiedElement::from_json(&ideal, field(doc, "b")?)?;
    let res = decompose_conjugate(&g, i, j, &a, &b)?;
    Ok((res.to_json(), res.verified))
}

#[derive(Deserialize)]
struct RewriteInput {
    mode: String,
    n: usize,
    i: usize,
    j: usize,
    #[serde(default = "default_vars")]
    vars: Vec<String>,
    #[serde(default = "yes")]
    repair: bool,
}

fn default_vars() -> Vec<String> {
    vec!["X".into()]
}

fn yes() -> bool {
    true
}

/// `{mode, ring, ideal, n, eps, i, j, aPoly[, vars, repair]}`: the conjugation rewrite over `R[X, Y]`.
pub fn rewrite(doc: &Json) -> Result<Outcome> {
    let input = RewriteInput::deserialize(doc).map_err(malformed)?;
    let (kind, size) = match input.mode.as_str() {
        "linear" => (Kind::Linear, input.n),
        "symplectic" => (Kind::Symplectic, 2 * input.n),
        other => return Err(Error::Malformed(format!("unknown mode {other}"))),
    };
    let (ring, ideal) = ring_and_ideal(doc)?;
    let eps = Word::from_json(&ring, size, Some(&ideal), field(doc, "eps")?)?;
    let vars: Vec<&str> = input.vars.iter().map(String::as_str).collect();
    let rx = poly(&ring, &vars)?;
    let a = CertifiedElement::from_json(&ideal.extend(&rx)?, field(doc, "aPoly")?)?;
    let cfg = RewriteConfig { repair: input.repair, ..RewriteConfig::default() };
    let res = rewrite_conjugation_with(kind, &eps, input.i, input.j, &a, &cfg)?;
    Ok((res.to_json(), res.verified))
}

/// `{ring, matrix}`: Pfaffian and determinant; verified when `pf² = det`.
pub fn pfaffian(doc: &Json) -> Result<Outcome> {
    let ring = RingDescriptor::from_json(field(doc, "ring")?)?;
    let m = ExactMatrix::from_json(&ring, field(doc, "matrix")?)?;
    let pf = crate::matrix::pfaffian(&m)?;
    let det = m.det()?;
    let consistent = pf.mul(&pf) == det;
    Ok((json!({"pfaffian": pf.to_json(), "det": det.to_json(), "verified": consistent}), consistent))
}

/// `{ring, ideal, phi}`: `φ = (1⊥ε)^t ψ_n (1⊥ε)` over `ℤ/p^k`.
pub fn standardize(doc: &Json) -> Result<Outcome> {
    let (ring, ideal) = ring_and_ideal(doc)?;
    let phi = AlternatingForm::from_json(&ring, field(doc, "phi")?)?;
    let res = standardize_alternating(&phi, &ideal)?;
    let mut out = res.to_json();
    out["pfaffian"] = phi.pfaffian_cache.to_json();
    Ok((out, res.verified))
}

#[derive(Deserialize)]
struct ExpandInput {
    n: usize,
}

/// `{ring, n, word[, ideal]}`: ρ/μ letters to se-letters, or index-1 se-letters regrouped into ρ/μ.
pub fn expand(doc: &Json) -> Result<Outcome> {
    let ExpandInput { n } = ExpandInput::deserialize(doc).map_err(malformed)?;
    let ring = RingDescriptor::from_json(field(doc, "ring")?)?;
    let ideal = doc.get("ideal").map(|j| IdealPresentation::from_json(Some(&ring), j)).transpose()?;
    let letters = field(doc, "word")?;
    let is_transvection = letters
        .as_array()
        .and_then(|a| a.first())
        .and_then(|l| l.get("gen"))
        .and_then(Json::as_str)
        .is_some_and(|g| g == "rho" || g == "mu");
    let word = Word::from_json(&ring, 2 * n + 2, ideal.as_ref(), letters)?;
    let (direction, out) = if is_transvection {
        let out = match &ideal {
            Some(ideal) if word.letters.iter().all(|l| l.is_certified_in(ideal)) => {
                etranssp_word_to_esp1(ideal, n, &word)?
            }
            _ => {
                let mut out = Word::new(&ring, 2 * n + 2);
                for l in &word.letters {
                    let w = match &l.gen {
                        Generator::Rho { q, alpha, .. } => expand_rho(q, alpha)?,
                        Generator::Mu { q, beta, .. } => expand_mu(q, beta)?,
                        _ => return Err(Error::Malformed("mixed ρ/μ and se letters".into())),
                    };
                    out.extend(&if l.inv { w.inverse() } else { w });
                }
                out
            }
        };
        ("expand", out)
    } else {
        let ideal = ideal.ok_or_else(|| Error::Malformed("regrouping se-letters needs an `ideal`".into()))?;
        ("regroup", esp1_to_etranssp(&ideal, &word)?)
    };
    let verified = out.evaluate()? == word.evaluate()?;
    Ok((json!({"direction": direction, "output": out.to_json(), "verified": verified}), verified))
}
