//! Words in relative elementary symplectic generators for `g se_ij(ab) g^-1`.
//!
//! Every builder takes vectors in the ambient `2n`-space and an auxiliary coordinate pair
//! `(p, p+1)` (with `p` odd) playing the role of the two extra hyperbolic coordinates.
//! Each builder checks its output against the closed form before returning.

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ideal::{product_certificate, CertifiedElement};
use crate::matrix::{kernel_decomposition, mismatch, pairing, tilde_vec, ExactMatrix};
use crate::ring::{half, RingElement};
use crate::word::{mu_word_at_cert, rho_word_at_cert, sigma, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: String,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub output: Word,
    pub target: ExactMatrix,
    pub achieved: ExactMatrix,
    pub verified: bool,
    pub lemma_trace: Vec<TraceEntry>,
}

impl DecompositionResult {
    pub fn to_json(&self) -> Json {
        let mut o = json!({
            "output": self.output.to_json(),
            "target": self.target.to_json(),
            "achieved": self.achieved.to_json(),
            "verified": self.verified,
            "lemma_trace": self.lemma_trace.iter()
                .map(|t| json!({"step": t.step, "detail": t.detail}))
                .collect::<Vec<_>>(),
        });
        if let Some((r, c, x, y)) = self.target.first_mismatch(&self.achieved) {
            o["mismatch"] = json!({"row": r + 1, "col": c + 1, "target": x, "achieved": y});
        }
        o
    }
}

type Trace = Vec<TraceEntry>;

fn note(trace: &mut Trace, step: &str, detail: String) {
    trace.push(TraceEntry { step: step.into(), detail });
}

fn outer(ring: &crate::ring::Ring, x: &[RingElement], y_row: &[RingElement]) -> ExactMatrix {
    ExactMatrix::from_fn(ring, x.len(), y_row.len(), |r, c| x[r].mul(&y_row[c]))
}

/// `I + s (v w~ + w v~)`, or `I + s v v~` when `w` is `None`.
pub fn root_matrix(v: &[RingElement], w: Option<&[RingElement]>, s: &RingElement) -> ExactMatrix {
    let ring = &s.ring;
    let n = v.len();
    let id = ExactMatrix::identity(ring, n);
    match w {
        None => id.add(&outer(ring, v, &tilde_vec(v)).scale(s)),
        Some(w) => id
            .add(&outer(ring, v, &tilde_vec(w)).scale(s))
            .add(&outer(ring, w, &tilde_vec(v)).scale(s)),
    }
}

fn verify(word: &Word, expected: &ExactMatrix, what: &str) -> Result<()> {
    let got = word.evaluate()?;
    if got == *expected {
        Ok(())
    } else {
        Err(mismatch(what, expected, &got))
    }
}

fn same_ideal(a: &CertifiedElement, b: &CertifiedElement) -> Result<()> {
    if a.ideal != b.ideal {
        return Err(Error::IdealMismatch);
    }
    Ok(())
}

fn check_aux(v: &[RingElement], p: usize) -> Result<()> {
    if v.len() % 2 == 1 {
        return Err(Error::OddDimension(v.len()));
    }
    if p.is_multiple_of(2) || p + 1 > v.len() {
        return Err(Error::BadIndices { i: p, j: p + 1, size: v.len() });
    }
    if !v[p - 1].is_zero() || !v[p].is_zero() {
        return Err(Error::SupportOverlap(p));
    }
    Ok(())
}

fn certified_vec(x: &CertifiedElement, v: &[RingElement], s: &RingElement) -> Vec<CertifiedElement> {
    v.iter().map(|vk| x.scale(&vk.mul(s))).collect()
}

fn is_zero_vec(v: &[RingElement]) -> bool {
    v.iter().all(RingElement::is_zero)
}

/// `I + ab v v~` as the commutator of a `μ`-type and a `ρ`-type transvection at pair `p`.
pub fn short_root_pair(v: &[RingElement], a: &CertifiedElement, b: &CertifiedElement, p: usize) -> Result<Word> {
    short_root_pair_t(v, a, b, p, &mut vec![])
}

fn short_root_pair_t(
    v: &[RingElement],
    a: &CertifiedElement,
    b: &CertifiedElement,
    p: usize,
    trace: &mut Trace,
) -> Result<Word> {
    same_ideal(a, b)?;
    check_aux(v, p)?;
    let ring = &a.value.ring;
    let h = half(ring)?;
    note(trace, "short-root", format!("pair ({}, {})", p, p + 1));
    if is_zero_vec(v) {
        return Ok(Word::new(ring, v.len()));
    }
    let zero = CertifiedElement::zero(&a.ideal);
    let m1 = mu_word_at_cert(&certified_vec(a, v, &h.neg()), &zero, p)?;
    let m2 = rho_word_at_cert(&certified_vec(b, v, &RingElement::one(ring)), &zero, p)?;
    let w = Word::commutator(&m1, &m2);
    verify(&w, &root_matrix(v, None, &a.value.mul(&b.value)), "short-root")?;
    Ok(w)
}

/// `I + ab (v w~ + w v~)` for `w~ v = 0`, as a commutator at pair `p`.
pub fn long_root_pair(
    v: &[RingElement],
    w: &[RingElement],
    a: &CertifiedElement,
    b: &CertifiedElement,
    p: usize,
) -> Result<Word> {
    long_root_pair_t(v, w, a, b, p, &mut vec![])
}

fn long_root_pair_t(
    v: &[RingElement],
    w: &[RingElement],
    a: &CertifiedElement,
    b: &CertifiedElement,
    p: usize,
    trace: &mut Trace,
) -> Result<Word> {
    same_ideal(a, b)?;
    check_aux(v, p)?;
    check_aux(w, p)?;
    if !pairing(w, v).is_zero() {
        return Err(Error::PairingNonzero);
    }
    let ring = &a.value.ring;
    note(trace, "long-root", format!("pair ({}, {})", p, p + 1));
    if is_zero_vec(v) || is_zero_vec(w) {
        return Ok(Word::new(ring, v.len()));
    }
    let zero = CertifiedElement::zero(&a.ideal);
    let m1 = rho_word_at_cert(&certified_vec(a, v, &RingElement::int(ring, -1)), &zero, p)?;
    let m2 = mu_word_at_cert(&certified_vec(b, w, &RingElement::int(ring, -1)), &zero, p)?;
    let out = Word::commutator(&m1, &m2);
    verify(&out, &root_matrix(v, Some(w), &a.value.mul(&b.value)), "long-root")?;
    Ok(out)
}

/// `I + ab (v w~ + w v~)` where `v` vanishes on the pair `p`; no extra coordinates needed.
pub fn long_root_reduce(
    v: &[RingElement],
    w: &[RingElement],
    a: &CertifiedElement,
    b: &CertifiedElement,
    p: usize,
) -> Result<Word> {
    long_root_reduce_t(v, w, a, b, p, &mut vec![])
}

fn long_root_reduce_t(
    v: &[RingElement],
    w: &[RingElement],
    a: &CertifiedElement,
    b: &CertifiedElement,
    p: usize,
    trace: &mut Trace,
) -> Result<Word> {
    same_ideal(a, b)?;
    if v.len() != w.len() {
        return Err(Error::LengthMismatch { expected: v.len(), got: w.len() });
    }
    half(&a.value.ring)?;
    match check_aux(v, p) {
        Err(Error::SupportOverlap(p)) => return Err(Error::PairNotZero(p)),
        r => r?,
    }
    if !pairing(w, v).is_zero() {
        return Err(Error::PairingNonzero);
    }
    let ring = &a.value.ring;
    note(trace, "long-root-reduce", format!("zero pair ({}, {})", p, p + 1));
    let (x, y) = (w[p - 1].clone(), w[p].clone());
    let mut wp = w.to_vec();
    wp[p - 1] = RingElement::zero(ring);
    wp[p] = RingElement::zero(ring);
    let ab = a.value.mul(&b.value);
    let zero = CertifiedElement::zero(&a.ideal);
    let mut out = long_root_pair_t(v, &wp, a, b, p, trace)?;
    if !is_zero_vec(v) {
        out.extend(&rho_word_at_cert(&certified_vec(a, v, &b.value.mul(&y)), &zero, p)?);
        out.extend(&mu_word_at_cert(&certified_vec(a, v, &b.value.mul(&x).neg()), &zero, p)?);
    }
    let a2 = a.scale(&ab.mul(&x).mul(&y));
    out.extend(&short_root_pair_t(v, &a2, b, p, trace)?);
    let out = out.normalized();
    verify(&out, &root_matrix(v, Some(w), &ab), "long-root-reduce")?;
    Ok(out)
}

/// `I + ab v v~` inside `2n` coordinates, splitting off the last pair.
pub fn short_root_split(v: &[RingElement], a: &CertifiedElement, b: &CertifiedElement) -> Result<Word> {
    short_root_split_t(v, a, b, &mut vec![])
}

fn short_root_split_t(
    v: &[RingElement],
    a: &CertifiedElement,
    b: &CertifiedElement,
    trace: &mut Trace,
) -> Result<Word> {
    same_ideal(a, b)?;
    let size = v.len();
    if size % 2 == 1 {
        return Err(Error::OddDimension(size));
    }
    if size < 4 {
        return Err(Error::DimensionTooSmall(format!("short-root split needs 2n >= 4, got {size}")));
    }
    let ring = &a.value.ring;
    half(ring)?;
    note(trace, "short-root-split", format!("size {size}"));
    let last = size - 1;
    let mut v1 = v.to_vec();
    let mut v2 = vec![RingElement::zero(ring); size];
    for k in [last - 1, last] {
        v2[k] = v[k].clone();
        v1[k] = RingElement::zero(ring);
    }
    let mut out = short_root_pair_t(&v1, a, b, last, trace)?;
    if !is_zero_vec(&v1) && !is_zero_vec(&v2) {
        out.extend(&long_root_reduce_t(&v1, &v2, a, b, last, trace)?);
    }
    out.extend(&short_root_pair_t(&v2, a, b, 1, trace)?);
    let out = out.normalized();
    verify(&out, &root_matrix(v, None, &a.value.mul(&b.value)), "short-root-split")?;
    Ok(out)
}

/// Correction `x` with `I + Σ (u_i w~ + w u_i~) = Π (I + u_i w~ + w u_i~) (I + x w w~)`.
pub fn sum_to_product(us: &[Vec<CertifiedElement>], w: &[RingElement]) -> Result<CertifiedElement> {
    let first = us.first().and_then(|u| u.first()).ok_or_else(|| Error::Malformed("no vectors".into()))?;
    let ideal = first.ideal.clone();
    for u in us {
        if u.len() != w.len() {
            return Err(Error::LengthMismatch { expected: w.len(), got: u.len() });
        }
        let vals: Vec<RingElement> = u.iter().map(|c| c.value.clone()).collect();
        if !pairing(&vals, w).is_zero() {
            return Err(Error::PairingNonzero);
        }
        if u.iter().any(|c| c.ideal != ideal) {
            return Err(Error::IdealMismatch);
        }
    }
    // u_i~ has entries -u_{i,2m}, u_{i,2m-1}; pair each with the plain values of u_j.
    let mut x = CertifiedElement::zero(&ideal);
    for i in 0..us.len() {
        for j in i + 1..us.len() {
            for k in 0..w.len() {
                let t = if k % 2 == 0 { us[i][k + 1].neg() } else { us[i][k - 1].clone() };
                x = x.sub(&t.scale(&us[j][k].value))?;
            }
        }
    }
    Ok(x)
}

/// Both sides of the sum-to-product identity, for checking.
pub fn sum_to_product_sides(
    us: &[Vec<RingElement>],
    w: &[RingElement],
    x: &RingElement,
) -> (ExactMatrix, ExactMatrix) {
    let ring = &x.ring;
    let one = RingElement::one(ring);
    let n = w.len();
    let mut lhs = ExactMatrix::identity(ring, n);
    let mut rhs = ExactMatrix::identity(ring, n);
    for u in us {
        let f = root_matrix(u, Some(w), &one);
        lhs = lhs.add(&f).sub(&ExactMatrix::identity(ring, n));
        rhs = rhs.mul(&f);
    }
    rhs = rhs.mul(&root_matrix(w, None, x));
    (lhs, rhs)
}

/// `ψ(w_j e_i - w_i e_j)`, a vector whose pairing with `w` vanishes (1-based `i < j`).
pub fn kernel_basis_vector(w: &[RingElement], i: usize, j: usize) -> Vec<RingElement> {
    let ring = &w[0].ring;
    let mut out = vec![RingElement::zero(ring); w.len()];
    let s = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
    out[sigma(i) - 1] = w[j - 1].scale(s(i));
    out[sigma(j) - 1] = out[sigma(j) - 1].sub(&w[i - 1].scale(s(j)));
    out
}

/// First pair `(p, p+1)` meeting none of the given 1-based coordinates.
fn free_pair(size: usize, avoid: &[usize]) -> Option<usize> {
    (1..size).step_by(2).find(|&p| !avoid.contains(&p) && !avoid.contains(&(p + 1)))
}

/// `I + ab (v w~ + w v~)` for unimodular `w` with certificate `u^t w = 1` and `v~ w = 0`.
pub fn long_root_unimodular(
    v: &[RingElement],
    w: &[RingElement],
    a: &CertifiedElement,
    b: &CertifiedElement,
    u: &[RingElement],
) -> Result<Word> {
    long_root_unimodular_t(v, w, a, b, u, &mut vec![])
}

fn long_root_unimodular_t(
    v: &[RingElement],
    w: &[RingElement],
    a: &CertifiedElement,
    b: &CertifiedElement,
    u: &[RingElement],
    trace: &mut Trace,
) -> Result<Word> {
    same_ideal(a, b)?;
    let size = v.len();
    if size % 2 == 1 {
        return Err(Error::OddDimension(size));
    }
    if size < 6 {
        return Err(Error::DimensionTooSmall(format!("unimodular long-root case needs n >= 3, got 2n = {size}")));
    }
    let ring = &a.value.ring;
    half(ring)?;
    if !pairing(v, w).is_zero() {
        return Err(Error::PairingNonzero);
    }
    let c = tilde_vec(v);
    let coeffs = kernel_decomposition(&c, w, u)?;
    note(trace, "long-root-unimodular", format!("{} kernel terms", coeffs.values().filter(|x| !x.is_zero()).count()));
    let ab = a.value.mul(&b.value);
    let mut out = Word::new(ring, size);
    let mut parts: Vec<Vec<RingElement>> = vec![];
    for (&(i, j), x) in &coeffs {
        if x.is_zero() {
            continue;
        }
        let part: Vec<RingElement> = kernel_basis_vector(w, i, j).iter().map(|e| e.mul(x)).collect();
        if is_zero_vec(&part) {
            continue;
        }
        let p = free_pair(size, &[i, j]).ok_or_else(|| Error::DimensionTooSmall("no free pair".into()))?;
        out.extend(&long_root_reduce_t(&part, w, a, b, p, trace)?);
        parts.push(part);
    }
    // Correction term: (ab)^2 times the ordered cross pairings of the parts.
    let us: Vec<Vec<CertifiedElement>> = parts.iter().map(|part| certified_vec(a, part, &b.value)).collect();
    if !us.is_empty() {
        let x = sum_to_product(&us, w)?;
        note(trace, "sum-to-product", format!("x = {}", x.value));
        let mut s = RingElement::zero(ring);
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                s = s.add(&pairing(&parts[i], &parts[j]));
            }
        }
        let b2 = b.scale(&ab.mul(&s).neg());
        debug_assert_eq!(a.value.mul(&b2.value), x.value);
        if !s.is_zero() {
            out.extend(&short_root_split_t(w, a, &b2, trace)?);
        }
    }
    let out = out.normalized();
    verify(&out, &root_matrix(v, Some(w), &ab), "long-root-unimodular")?;
    Ok(out)
}

/// Rewrite `g se_ij(ab) g^-1` as a word of `I`-certified symplectic generators.
pub fn decompose_conjugate(
    g: &Word,
    i: usize,
    j: usize,
    a: &CertifiedElement,
    b: &CertifiedElement,
) -> Result<DecompositionResult> {
    same_ideal(a, b)?;
    let ring = &a.value.ring;
    let size = g.size;
    half(ring)?;
    if size % 2 == 1 {
        return Err(Error::OddDimension(size));
    }
    if size < 6 {
        return Err(Error::DimensionTooSmall(format!("conjugate decomposition needs n >= 3, got n = {}", size / 2)));
    }
    if i == j || i == 0 || j == 0 || i > size || j > size {
        return Err(Error::BadIndices { i, j, size });
    }
    if g.letters.iter().any(|l| l.gen.tag() != "se") {
        return Err(Error::Malformed("conjugator must be a word in symplectic generators".into()));
    }
    let ab = a.value.mul(&b.value);
    let mut target_word = g.clone();
    target_word.push(Letter::se(i, j, ab.clone()));
    target_word.extend(&g.inverse());
    let target = target_word.evaluate()?;
    let mut trace = vec![];
    let output = if g.is_empty() {
        note(&mut trace, "include-square", format!("se_{i}{j}"));
        let p = product_certificate(a, b)?;
        crate::rewrite::include_i2_symplectic(size, i, j, &p, &a.ideal)?
    } else {
        let gm = g.evaluate()?;
        let v = gm.col_vec(i - 1);
        // g e_ij g^-1 = (-1)^j v w~, since row j of g^-1 is (-1)^j (column σ(j))~.
        let a_s = if j.is_multiple_of(2) { a.clone() } else { a.neg() };
        if i == sigma(j) {
            note(&mut trace, "conjugate", format!("short root, column {i}"));
            short_root_split_t(&v, &a_s, b, &mut trace)?
        } else {
            note(&mut trace, "conjugate", format!("long root, columns {i} and {}", sigma(j)));
            let w = gm.col_vec(sigma(j) - 1);
            let u = g.inverse().evaluate()?.row_vec(sigma(j) - 1);
            long_root_unimodular_t(&v, &w, &a_s, b, &u, &mut trace)?
        }
    };
    let achieved = output.evaluate()?;
    let verified = achieved == target;
    let res = DecompositionResult { output, target, achieved, verified, lemma_trace: trace };
    if !verified {
        let (r, c, x, y) = res.target.first_mismatch(&res.achieved).unwrap();
        return Err(Error::VerificationFailed(format!("entry ({}, {}): target {x}, achieved {y}", r + 1, c + 1)));
    }
    if !res.output.all_certified_in(&a.ideal) {
        return Err(Error::NotCertified("output letter without certificate".into()));
    }
    Ok(res)
}
