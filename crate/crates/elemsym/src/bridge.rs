//! Transvections in the free case: ρ/μ for a general alternating form, the dictionaries between
//! transvection words and first-row/column generators, transport of ρ/μ across a change of
//! form, and standardization of alternating forms over `ℤ/p^k`.

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ideal::{CertifiedElement, IdealPresentation};
use crate::matrix::{dot, mismatch, is_alternating, pfaffian, preserves_form, standard_symplectic_form, ExactMatrix};
use crate::ring::{Ring, RingDescriptor, RingElement};
use crate::word::{rho_word_at_cert, mu_word_at_cert, sigma, Generator, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingForm {
    pub matrix: ExactMatrix,
    pub pfaffian_cache: RingElement,
}

impl AlternatingForm {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        if !is_alternating(&matrix) {
            return Err(Error::NotAlternating);
        }
        let pfaffian_cache = pfaffian(&matrix)?;
        Ok(AlternatingForm { matrix, pfaffian_cache })
    }

    pub fn standard(ring: &Ring, n: usize) -> Self {
        AlternatingForm { matrix: standard_symplectic_form(ring, n), pfaffian_cache: RingElement::one(ring) }
    }

    pub fn size(&self) -> usize {
        self.matrix.rows
    }

    pub fn is_standard(&self) -> bool {
        self.matrix == standard_symplectic_form(&self.matrix.ring, self.size() / 2)
    }

    pub fn to_json(&self) -> Json {
        json!({"matrix": self.matrix.to_json(), "pfaffian": self.pfaffian_cache.to_json()})
    }

    /// Accepts `{"matrix": ..}` or a bare matrix; the Pfaffian is recomputed.
    pub fn from_json(ring: &Ring, j: &Json) -> Result<Self> {
        let m = j.get("matrix").unwrap_or(j);
        Self::new(ExactMatrix::from_json(ring, m)?)
    }
}

/// `ψ_1 ⊥ φ`.
fn extended_form(phi: &AlternatingForm) -> ExactMatrix {
    standard_symplectic_form(&phi.matrix.ring, 1).direct_sum(&phi.matrix)
}

fn check_isometry(m: &ExactMatrix, phi: &AlternatingForm) -> Result<ExactMatrix> {
    if !preserves_form(m, &extended_form(phi)) {
        return Err(Error::FormMismatch("result does not preserve ψ₁ ⊥ φ".into()));
    }
    Ok(m.clone())
}

pub fn rho_matrix(q: &[RingElement], alpha: &RingElement, phi: &AlternatingForm) -> Result<ExactMatrix> {
    check_isometry(&crate::word::rho_matrix(q, alpha, &phi.matrix)?, phi)
}

pub fn mu_matrix(q: &[RingElement], beta: &RingElement, phi: &AlternatingForm) -> Result<ExactMatrix> {
    check_isometry(&crate::word::mu_matrix(q, beta, &phi.matrix)?, phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransvectionKind {
    /// `[[1, 0], [x, I]]`
    E,
    /// `[[1, τ^t], [0, I]]`
    EStar,
}

pub fn linear_transvection_matrix(kind: TransvectionKind, x: &[RingElement], ring: &Ring) -> ExactMatrix {
    let mut m = ExactMatrix::identity(ring, x.len() + 1);
    for (k, v) in x.iter().enumerate() {
        match kind {
            TransvectionKind::E => m.set(k + 1, 0, v.clone()),
            TransvectionKind::EStar => m.set(0, k + 1, v.clone()),
        }
    }
    m
}

/// A linear transvection of `R ⊕ R^n` with certified coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transvection {
    pub kind: TransvectionKind,
    pub coords: Vec<CertifiedElement>,
}

impl Transvection {
    pub fn values(&self) -> Vec<RingElement> {
        self.coords.iter().map(|c| c.value.clone()).collect()
    }

    pub fn matrix(&self, ring: &Ring) -> ExactMatrix {
        linear_transvection_matrix(self.kind, &self.values(), ring)
    }

    pub fn to_json(&self) -> Json {
        let tag = match self.kind {
            TransvectionKind::E => "E",
            TransvectionKind::EStar => "E*",
        };
        json!({"gen": tag, "x": self.coords.iter().map(CertifiedElement::to_json).collect::<Vec<_>>()})
    }

    pub fn from_json(ideal: &IdealPresentation, j: &Json) -> Result<Self> {
        let kind = match j.get("gen").and_then(Json::as_str) {
            Some("E") => TransvectionKind::E,
            Some("E*") => TransvectionKind::EStar,
            _ => return Err(Error::Malformed("transvection: gen must be E or E*".into())),
        };
        let coords = j
            .get("x")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Malformed("transvection: missing x".into()))?
            .iter()
            .map(|c| CertifiedElement::from_json(ideal, c))
            .collect::<Result<_>>()?;
        Ok(Transvection { kind, coords })
    }
}

pub fn evaluate_transvections(ring: &Ring, n: usize, word: &[Transvection]) -> Result<ExactMatrix> {
    let mut m = ExactMatrix::identity(ring, n + 1);
    for t in word {
        if t.coords.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: t.coords.len() });
        }
        m = m.mul(&t.matrix(ring));
    }
    Ok(m)
}

fn certified_in(c: &CertifiedElement, ideal: &IdealPresentation) -> bool {
    c.ideal == *ideal && c.is_valid()
}

/// `E(x) ↦ ∏ E_{i+1,1}(x_i)`, `E*(τ) ↦ ∏ E_{1,i+1}(τ_i)`.
pub fn etrans_word_to_e1(ideal: &IdealPresentation, n: usize, word: &[Transvection]) -> Result<Word> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(format!("transvection dictionary needs rank n >= 2, got {n}")));
    }
    let mut out = Word::new(&ideal.ring, n + 1);
    for t in word {
        if t.coords.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: t.coords.len() });
        }
        if !t.coords.iter().all(|c| certified_in(c, ideal)) {
            return Err(Error::NotCertified("transvection coordinate lacks a valid certificate".into()));
        }
        for (k, c) in t.coords.iter().enumerate() {
            if c.value.is_zero() {
                continue;
            }
            out.push(match t.kind {
                TransvectionKind::E => Letter::e_cert(k + 2, 1, c.clone()),
                TransvectionKind::EStar => Letter::e_cert(1, k + 2, c.clone()),
            });
        }
    }
    Ok(out)
}

/// Groups maximal runs of column-1 (resp. row-1) letters into one `E` (resp. `E*`).
pub fn e1_to_etrans(ideal: &IdealPresentation, word: &Word) -> Result<Vec<Transvection>> {
    let n = word.size - 1;
    let mut out: Vec<Transvection> = vec![];
    for l in &word.letters {
        let l = l.normalized();
        let (i, j) = match &l.gen {
            Generator::E { i, j, .. } if (*i == 1) != (*j == 1) => (*i, *j),
            _ => return Err(Error::NotCertified("letter is not a first-row/column E".into())),
        };
        if !l.is_certified_in(ideal) {
            return Err(Error::NotCertified(format!("E_{i}{j} lacks a valid certificate")));
        }
        let (kind, k) = if j == 1 { (TransvectionKind::E, i - 2) } else { (TransvectionKind::EStar, j - 2) };
        if out.last().is_none_or(|t| t.kind != kind) {
            out.push(Transvection { kind, coords: vec![CertifiedElement::zero(ideal); n] });
        }
        let last = out.last_mut().unwrap();
        last.coords[k] = last.coords[k].add(&l.cert[0])?;
    }
    Ok(out)
}

fn standard_form_of(letter: &Letter) -> Result<(usize, bool)> {
    let (q, form, is_rho) = match &letter.gen {
        Generator::Rho { q, form, .. } => (q, form, true),
        Generator::Mu { q, form, .. } => (q, form, false),
        _ => return Err(Error::Malformed("expected a rho or mu letter".into())),
    };
    if *form != standard_symplectic_form(&form.ring, q.len() / 2) {
        return Err(Error::NonstandardForm);
    }
    Ok((q.len() / 2, is_rho))
}

/// ρ/μ letters over `ψ_n` to index-1 symplectic letters of size `2n+2`.
pub fn etranssp_word_to_esp1(ideal: &IdealPresentation, n: usize, word: &Word) -> Result<Word> {
    let mut out = Word::new(&ideal.ring, 2 * n + 2);
    for l in &word.letters {
        let (m, is_rho) = standard_form_of(l)?;
        if m != n {
            return Err(Error::FormMismatch(format!("letter over ψ_{m}, expected ψ_{n}")));
        }
        if !l.is_certified_in(ideal) {
            return Err(Error::NotCertified("transvection parameter lacks a valid certificate".into()));
        }
        let mut q = vec![CertifiedElement::zero(ideal); 2];
        q.extend(l.cert[..2 * n].iter().cloned());
        let s = &l.cert[2 * n];
        let w = if is_rho { rho_word_at_cert(&q, s, 1)? } else { mu_word_at_cert(&q, s, 1)? };
        out.extend(&if l.inv { w.inverse() } else { w });
    }
    Ok(out)
}

/// Index-1 symplectic letters to ρ/μ letters: runs of column-1 letters become one ρ, runs of
/// row-1 letters one μ, using `ρ(q,α)ρ(q',α') = ρ(q+q', α+α'+q^tψq')` and its μ analogue.
pub fn esp1_to_etranssp(ideal: &IdealPresentation, word: &Word) -> Result<Word> {
    let size = word.size;
    if size % 2 == 1 || size < 4 {
        return Err(Error::OddDimension(size));
    }
    let ring = &ideal.ring;
    let n = (size - 2) / 2;
    let psi = standard_symplectic_form(ring, n);
    let zero = CertifiedElement::zero(ideal);
    // (is_rho, q, scalar)
    let mut runs: Vec<(bool, Vec<CertifiedElement>, CertifiedElement)> = vec![];
    for l in &word.letters {
        let l = l.normalized();
        let (i, j) = match &l.gen {
            Generator::Se { i, j, .. } if (*i == 1) != (*j == 1) => (*i, *j),
            _ => return Err(Error::NotCertified("letter is not a first-row/column se".into())),
        };
        if !l.is_certified_in(ideal) {
            return Err(Error::NotCertified(format!("se_{i}{j} lacks a valid certificate")));
        }
        let z = &l.cert[0];
        let mut q = vec![zero.clone(); 2 * n];
        let mut s = zero.clone();
        let is_rho = j == 1;
        if is_rho {
            if i == 2 {
                s = z.neg();
            } else {
                q[i - 3] = z.neg();
            }
        } else if j == 2 {
            s = z.clone();
        } else {
            let sign = if j % 2 == 0 { -1 } else { 1 };
            q[sigma(j) - 3] = z.scale_int(sign);
        }
        match runs.last_mut() {
            Some((r, q0, s0)) if *r == is_rho => {
                let qpsi = ExactMatrix::row(ring, &q0.iter().map(|c| c.value.clone()).collect::<Vec<_>>()).mul(&psi);
                let mut cross = zero.clone();
                for (k, c) in q.iter().enumerate() {
                    cross = cross.add(&c.scale(qpsi.get(0, k)))?;
                }
                *s0 = s0.add(&s)?.add(&cross)?;
                for (a, b) in q0.iter_mut().zip(&q) {
                    *a = a.add(b)?;
                }
            }
            _ => runs.push((is_rho, q, s)),
        }
    }
    let mut out = Word::new(ring, size);
    for (is_rho, q, s) in runs {
        let qv: Vec<RingElement> = q.iter().map(|c| c.value.clone()).collect();
        let gen = if is_rho {
            Generator::Rho { q: qv, alpha: s.value.clone(), form: psi.clone() }
        } else {
            Generator::Mu { q: qv, beta: s.value.clone(), form: psi.clone() }
        };
        let mut cert = q;
        cert.push(s);
        out.push(Letter { gen, inv: false, cert });
    }
    let (got, want) = (out.evaluate()?, word.evaluate()?);
    if got != want {
        return Err(mismatch("regrouped transvections differ from the input word", &want, &got));
    }
    Ok(out)
}

/// `1 ⊥ ε` for a linear word of size `2n-1` (or `ε` itself if already of size `2n`).
fn embed_eps(eps: &Word, size: usize) -> Result<ExactMatrix> {
    let e = eps.evaluate()?;
    if eps.size == size {
        return Ok(e);
    }
    if eps.size + 1 != size {
        return Err(Error::FormMismatch(format!("conjugator of size {} for a form of size {size}", eps.size)));
    }
    Ok(ExactMatrix::identity(&eps.ring, 1).direct_sum(&e))
}

/// Moves a ρ/μ letter over `φ*` to the letter over `φ = (1⊥ε)^t φ* (1⊥ε)` it is conjugate to:
/// `(I₂ ⊥ (1⊥ε))^-1 ρ_{φ*}(q, α) (I₂ ⊥ (1⊥ε)) = ρ_φ((1⊥ε)^-1 q, α)`.
pub fn transport_conjugation(letter: &Letter, phi_star: &AlternatingForm, eps: &Word) -> Result<(Letter, AlternatingForm)> {
    let (q, s, is_rho) = match &letter.gen {
        Generator::Rho { q, alpha, .. } => (q, alpha, true),
        Generator::Mu { q, beta, .. } => (q, beta, false),
        _ => return Err(Error::Malformed("expected a rho or mu letter".into())),
    };
    let size = phi_star.size();
    if q.len() != size {
        return Err(Error::FormMismatch(format!("vector length {} vs form size {size}", q.len())));
    }
    let p = embed_eps(eps, size)?;
    let phi = AlternatingForm::new(p.transpose().mul(&phi_star.matrix).mul(&p))?;
    let pinv = p.inverse()?;
    let ring = &phi_star.matrix.ring;
    let q_new: Vec<RingElement> = (0..size).map(|r| dot(&pinv.row_vec(r), q)).collect();
    let cert = if letter.cert.is_empty() {
        vec![]
    } else {
        let qc = &letter.cert[..size];
        let mut out = vec![];
        for r in 0..size {
            let mut acc = CertifiedElement::zero(&qc[0].ideal);
            for (k, c) in qc.iter().enumerate() {
                acc = acc.add(&c.scale(pinv.get(r, k)))?;
            }
            out.push(acc);
        }
        out.push(letter.cert[size].clone());
        out
    };
    let gen = if is_rho {
        Generator::Rho { q: q_new, alpha: s.clone(), form: phi.matrix.clone() }
    } else {
        Generator::Mu { q: q_new, beta: s.clone(), form: phi.matrix.clone() }
    };
    let out = Letter { gen, inv: letter.inv, cert };
    let big = ExactMatrix::identity(ring, 2).direct_sum(&p);
    let old = Word::from_letters(ring, size + 2, vec![letter.clone()]).evaluate()?;
    let new = Word::from_letters(ring, size + 2, vec![out.clone()]).evaluate()?;
    let want = big.inverse()?.mul(&old).mul(&big);
    if want != new {
        return Err(mismatch("transported letter is not the conjugate", &want, &new));
    }
    Ok((out, phi))
}

/// Same as [`transport_conjugation`] with `φ` supplied; fails if the form relation does not hold.
pub fn transport_conjugation_to(
    letter: &Letter,
    phi_star: &AlternatingForm,
    eps: &Word,
    phi: &AlternatingForm,
) -> Result<Letter> {
    let p = embed_eps(eps, phi_star.size())?;
    if phi.size() != phi_star.size() || p.transpose().mul(&phi_star.matrix).mul(&p) != phi.matrix {
        return Err(Error::FormRelationFails);
    }
    transport_conjugation(letter, phi_star, eps).map(|(l, _)| l)
}

#[derive(Clone, Debug)]
pub struct StandardizationResult {
    /// Linear letters of size `2n-1`, acting as `1 ⊥ ε`.
    pub eps_word: Word,
    pub verified: bool,
    pub relative: bool,
}

impl StandardizationResult {
    pub fn to_json(&self) -> Json {
        json!({"eps": self.eps_word.to_json(), "verified": self.verified, "relative": self.relative})
    }
}

fn prime_power(m: u64) -> Option<u64> {
    let p = (2..=m).find(|d| m.is_multiple_of(*d))?;
    let mut r = m;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1).then_some(p)
}

struct Congruence<'a> {
    m: ExactMatrix,
    ops: Vec<Letter>,
    ideal: &'a IdealPresentation,
}

impl Congruence<'_> {
    /// `M ← E^t M E` with `E = E_ab(λ)`: column `b` and row `b` gain `λ` times column/row `a`.
    fn op(&mut self, a: usize, b: usize, lambda: RingElement) {
        if lambda.is_zero() {
            return;
        }
        let n = self.m.rows;
        for r in 0..n {
            let v = self.m.get(r, b).add(&self.m.get(r, a).mul(&lambda));
            self.m.set(r, b, v);
        }
        for c in 0..n {
            let v = self.m.get(b, c).add(&self.m.get(a, c).mul(&lambda));
            self.m.set(b, c, v);
        }
        // 0-based (a, b) in the big matrix is (a, b) 1-based in the (2n-1)-block.
        let letter = match self.ideal.certify_member(&lambda) {
            Some(c) => Letter::e_cert(a, b, c),
            None => Letter::e(a, b, lambda),
        };
        self.ops.push(letter);
    }
}

/// Finds `ε` with `(1⊥ε)^t ψ_n (1⊥ε) = φ` over `ℤ/p^k`, using letters with parameters in `I`
/// whenever the pivots allow.
pub fn standardize_alternating(phi: &AlternatingForm, ideal: &IdealPresentation) -> Result<StandardizationResult> {
    let ring = &phi.matrix.ring;
    match &**ring {
        RingDescriptor::Zmod { m } if prime_power(*m).is_some() => {}
        _ => return Err(Error::NotLocalRing),
    }
    if !phi.pfaffian_cache.is_one() {
        return Err(Error::PfaffianNotOne);
    }
    let size = phi.size();
    let n = size / 2;
    let psi = standard_symplectic_form(ring, n);
    for r in 0..size {
        for c in 0..size {
            let d = phi.matrix.get(r, c).sub(psi.get(r, c));
            if ideal.certify_member(&d).is_none() {
                return Err(Error::NotCongruentToStandard(format!("entry ({}, {}) differs by {d}", r + 1, c + 1)));
            }
        }
    }
    let mut st = Congruence { m: phi.matrix.clone(), ops: vec![], ideal };
    for p in (0..size).step_by(2) {
        // Clear row p beyond the pivot using column p+1.
        let u = st.m.get(p, p + 1).clone();
        let uinv = crate::ring::invert_unit(&u)?;
        for k in p + 2..size {
            let lambda = st.m.get(p, k).mul(&uinv).neg();
            st.op(p + 1, k, lambda);
        }
        // Bring the pivot to 1 through column p+2: u(1 + ab) = 1 with a, b in I when possible.
        let u = st.m.get(p, p + 1).clone();
        if !u.is_one() && p + 2 < size {
            let target = crate::ring::invert_unit(&u)?.sub(&RingElement::one(ring));
            let (a, b) = split_square(ideal, &target);
            st.op(p + 1, p + 2, a);
            st.op(p + 2, p + 1, b);
            let lambda = st.m.get(p, p + 2).neg();
            st.op(p + 1, p + 2, lambda);
        }
        if !st.m.get(p, p + 1).is_one() {
            return Err(Error::VerificationFailed(format!("pivot ({}, {}) is not 1", p + 1, p + 2)));
        }
        // Clear row p+1 by moving e_{p+1} within the trailing block.
        if p + 2 < size {
            let rest = size - p - 2;
            let b = ExactMatrix::from_fn(ring, rest, rest, |r, c| st.m.get(p + 2 + r, p + 2 + c).clone());
            let binv = b.inverse()?;
            let r: Vec<RingElement> = (0..rest).map(|k| st.m.get(p + 1, p + 2 + k).clone()).collect();
            // μ^t B = -r  ⇔  μ = -B^{-t} r
            let mu: Vec<RingElement> = (0..rest).map(|j| dot(&binv.col_vec(j), &r).neg()).collect();
            for (j, x) in mu.into_iter().enumerate() {
                st.op(p + 2 + j, p + 1, x);
            }
        }
    }
    if st.m != psi {
        return Err(mismatch("reduction did not reach the standard form", &psi, &st.m));
    }
    // ψ = Q^t φ Q with Q the product of the recorded steps, so ε = Q^-1 restricted to 2..2n.
    let ops: Vec<Letter> = st
        .ops
        .iter()
        .rev()
        .map(|l| {
            let l = l.inverse().normalized();
            let (i, j) = l.gen.indices().unwrap();
            let param = l.gen.param().unwrap().clone();
            Letter { gen: Generator::E { i, j, param }, inv: false, cert: l.cert }
        })
        .collect();
    let eps_word = Word::from_letters(ring, size - 1, ops);
    let relative = eps_word.letters.iter().all(|l| l.is_certified_in(ideal));
    let p = embed_eps(&eps_word, size)?;
    let back = p.transpose().mul(&psi).mul(&p);
    let verified = back == phi.matrix;
    if !verified {
        return Err(mismatch("standardization does not reconstruct the form", &phi.matrix, &back));
    }
    Ok(StandardizationResult { eps_word, verified, relative })
}

/// `(a, b)` with `ab = t`, both in `I` when `t = g s` for a generator `g` and some `s ∈ I`.
fn split_square(ideal: &IdealPresentation, t: &RingElement) -> (RingElement, RingElement) {
    for g in &ideal.generators {
        let Some(c) = IdealPresentation::principal(g).certify_member(t) else { continue };
        let s = c.coefficients[0].clone();
        if ideal.certify_member(&s).is_some() {
            return (g.clone(), s);
        }
    }
    (RingElement::one(&t.ring), t.clone())
}
