//! Elementary generators, words over them, and exact evaluation.

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ideal::{CertifiedElement, IdealPresentation};
use crate::matrix::{is_alternating, pfaffian, tilde_vec, vector_from_json, vector_to_json, ExactMatrix};
use crate::ring::{same_ring, Ring, RingElement};

/// The pair swap `2i <-> 2i-1` on 1-based indices.
pub fn sigma(i: usize) -> usize {
    if i % 2 == 1 { i + 1 } else { i - 1 }
}

fn sgn(e: usize) -> i64 {
    if e.is_multiple_of(2) { 1 } else { -1 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    E { i: usize, j: usize, param: RingElement },
    Se { i: usize, j: usize, param: RingElement },
    Rho { q: Vec<RingElement>, alpha: RingElement, form: ExactMatrix },
    Mu { q: Vec<RingElement>, beta: RingElement, form: ExactMatrix },
}

impl Generator {
    pub fn tag(&self) -> &'static str {
        match self {
            Generator::E { .. } => "E",
            Generator::Se { .. } => "se",
            Generator::Rho { .. } => "rho",
            Generator::Mu { .. } => "mu",
        }
    }

    pub fn indices(&self) -> Option<(usize, usize)> {
        match self {
            Generator::E { i, j, .. } | Generator::Se { i, j, .. } => Some((*i, *j)),
            _ => None,
        }
    }

    pub fn param(&self) -> Option<&RingElement> {
        match self {
            Generator::E { param, .. } | Generator::Se { param, .. } => Some(param),
            _ => None,
        }
    }

    /// Scalars a certificate list refers to, in order.
    fn scalars(&self) -> Vec<RingElement> {
        match self {
            Generator::E { param, .. } | Generator::Se { param, .. } => vec![param.clone()],
            Generator::Rho { q, alpha: s, .. } | Generator::Mu { q, beta: s, .. } => {
                q.iter().cloned().chain(std::iter::once(s.clone())).collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub gen: Generator,
    pub inv: bool,
    /// Empty when uncertified; otherwise one certificate per scalar parameter.
    pub cert: Vec<CertifiedElement>,
}

impl Letter {
    pub fn e(i: usize, j: usize, param: RingElement) -> Self {
        Letter { gen: Generator::E { i, j, param }, inv: false, cert: vec![] }
    }

    pub fn se(i: usize, j: usize, param: RingElement) -> Self {
        Letter { gen: Generator::Se { i, j, param }, inv: false, cert: vec![] }
    }

    pub fn e_cert(i: usize, j: usize, c: CertifiedElement) -> Self {
        Letter { gen: Generator::E { i, j, param: c.value.clone() }, inv: false, cert: vec![c] }
    }

    pub fn se_cert(i: usize, j: usize, c: CertifiedElement) -> Self {
        Letter { gen: Generator::Se { i, j, param: c.value.clone() }, inv: false, cert: vec![c] }
    }

    pub fn inverse(&self) -> Self {
        Letter { inv: !self.inv, ..self.clone() }
    }

    /// For E/se letters, the same generator with the inversion folded into the parameter.
    pub fn normalized(&self) -> Self {
        if !self.inv {
            return self.clone();
        }
        let cert = self.cert.iter().map(CertifiedElement::neg).collect();
        match &self.gen {
            Generator::E { i, j, param } => {
                Letter { gen: Generator::E { i: *i, j: *j, param: param.neg() }, inv: false, cert }
            }
            Generator::Se { i, j, param } => {
                Letter { gen: Generator::Se { i: *i, j: *j, param: param.neg() }, inv: false, cert }
            }
            _ => self.clone(),
        }
    }

    pub fn is_certified_in(&self, ideal: &IdealPresentation) -> bool {
        let scalars = self.gen.scalars();
        self.cert.len() == scalars.len()
            && self.cert.iter().zip(&scalars).all(|(c, s)| c.ideal == *ideal && c.is_valid() && c.value == *s)
    }

    pub fn to_json(&self) -> Json {
        let mut o = match &self.gen {
            Generator::E { i, j, param } | Generator::Se { i, j, param } => {
                json!({"gen": self.gen.tag(), "i": i, "j": j, "param": param.to_json()})
            }
            Generator::Rho { q, alpha, form } => json!({
                "gen": "rho", "q": vector_to_json(q), "alpha": alpha.to_json(), "form": form.to_json()
            }),
            Generator::Mu { q, beta, form } => json!({
                "gen": "mu", "q": vector_to_json(q), "beta": beta.to_json(), "form": form.to_json()
            }),
        };
        o["inv"] = json!(self.inv);
        if !self.cert.is_empty() {
            let lists: Vec<Json> = self
                .cert
                .iter()
                .map(|c| Json::Array(c.coefficients.iter().map(RingElement::to_json).collect()))
                .collect();
            o["cert"] = match &self.gen {
                Generator::E { .. } | Generator::Se { .. } => lists.into_iter().next().unwrap(),
                _ => Json::Array(lists),
            };
        }
        o
    }

    pub fn from_json(ring: &Ring, ideal: Option<&IdealPresentation>, j: &Json) -> Result<Self> {
        let bad = |s: &str| Error::Malformed(format!("letter: {s}"));
        let tag = j.get("gen").and_then(Json::as_str).ok_or_else(|| bad("missing gen"))?;
        let idx = |k: &str| -> Result<usize> {
            j.get(k).and_then(Json::as_u64).map(|x| x as usize).ok_or_else(|| bad(k))
        };
        let elem = |k: &str| -> Result<RingElement> {
            RingElement::from_json(ring, j.get(k).ok_or_else(|| bad(k))?)
        };
        let gen = match tag {
            "E" => Generator::E { i: idx("i")?, j: idx("j")?, param: elem("param")? },
            "se" => Generator::Se { i: idx("i")?, j: idx("j")?, param: elem("param")? },
            "rho" | "mu" => {
                let q = vector_from_json(ring, j.get("q").ok_or_else(|| bad("q"))?)?;
                let form = ExactMatrix::from_json(ring, j.get("form").ok_or_else(|| bad("form"))?)?;
                if tag == "rho" {
                    Generator::Rho { q, alpha: elem("alpha")?, form }
                } else {
                    Generator::Mu { q, beta: elem("beta")?, form }
                }
            }
            other => return Err(bad(&format!("unknown generator {other}"))),
        };
        let inv = j.get("inv").and_then(Json::as_bool).unwrap_or(false);
        let mut cert = vec![];
        if let Some(c) = j.get("cert") {
            let ideal = ideal.ok_or_else(|| bad("certificate without ideal"))?;
            cert = match gen {
                Generator::E { .. } | Generator::Se { .. } => vec![CertifiedElement::from_json(ideal, c)?],
                _ => c
                    .as_array()
                    .ok_or_else(|| bad("cert"))?
                    .iter()
                    .map(|x| CertifiedElement::from_json(ideal, x))
                    .collect::<Result<_>>()?,
            };
            let scalars = gen.scalars();
            if cert.len() != scalars.len() || cert.iter().zip(&scalars).any(|(c, s)| c.value != *s) {
                return Err(Error::CertificateInvalid("certificate disagrees with parameter".into()));
            }
        }
        Ok(Letter { gen, inv, cert })
    }
}

pub fn linear_generator(ring: &Ring, n: usize, i: usize, j: usize, l: &RingElement) -> Result<ExactMatrix> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::BadIndices { i, j, size: n });
    }
    let mut m = ExactMatrix::identity(ring, n);
    m.set(i - 1, j - 1, l.clone());
    Ok(m)
}

/// `se_ij(z)` of size `2n`.
pub fn symplectic_generator(ring: &Ring, n: usize, i: usize, j: usize, z: &RingElement) -> Result<ExactMatrix> {
    let size = 2 * n;
    if i == j || i == 0 || j == 0 || i > size || j > size {
        return Err(Error::BadIndices { i, j, size });
    }
    let mut m = ExactMatrix::identity(ring, size);
    m.set(i - 1, j - 1, z.clone());
    if i != sigma(j) {
        m.set(sigma(j) - 1, sigma(i) - 1, z.scale(-sgn(i + j)));
    }
    Ok(m)
}

fn check_form(form: &ExactMatrix, q: &[RingElement]) -> Result<()> {
    if !is_alternating(form) {
        return Err(Error::NotAlternating);
    }
    if form.rows != q.len() {
        return Err(Error::FormMismatch(format!("form size {} vs vector length {}", form.rows, q.len())));
    }
    Ok(())
}

/// `ρ_φ(q, α)`: rows `(1,0,0)`, `(-α,1,q^tφ)`, `(-q,0,I)`.
pub fn rho_matrix(q: &[RingElement], alpha: &RingElement, form: &ExactMatrix) -> Result<ExactMatrix> {
    check_form(form, q)?;
    let ring = &alpha.ring;
    let qphi = ExactMatrix::row(ring, q).mul(form);
    let mut m = ExactMatrix::identity(ring, q.len() + 2);
    m.set(1, 0, alpha.neg());
    for k in 0..q.len() {
        m.set(1, k + 2, qphi.get(0, k).clone());
        m.set(k + 2, 0, q[k].neg());
    }
    Ok(m)
}

/// `μ_φ(q, β)`: rows `(1,β,-q^tφ)`, `(0,1,0)`, `(0,-q,I)`.
pub fn mu_matrix(q: &[RingElement], beta: &RingElement, form: &ExactMatrix) -> Result<ExactMatrix> {
    check_form(form, q)?;
    let ring = &beta.ring;
    let qphi = ExactMatrix::row(ring, q).mul(form);
    let mut m = ExactMatrix::identity(ring, q.len() + 2);
    m.set(0, 1, beta.clone());
    for k in 0..q.len() {
        m.set(0, k + 2, qphi.get(0, k).neg());
        m.set(k + 2, 1, q[k].neg());
    }
    Ok(m)
}

/// Right-multiply `m` by the elementary matrix with parameter `z` at `(i, j)` (1-based):
/// column `j` gains `z` times column `i`.
fn col_op(m: &mut ExactMatrix, i: usize, j: usize, z: &RingElement) {
    if z.is_zero() {
        return;
    }
    for r in 0..m.rows {
        let a = m.get(r, i - 1);
        if !a.is_zero() {
            let v = m.get(r, j - 1).add(&a.mul(z));
            m.set(r, j - 1, v);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub ring: Ring,
    pub size: usize,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(ring: &Ring, size: usize) -> Self {
        Word { ring: ring.clone(), size, letters: vec![] }
    }

    pub fn from_letters(ring: &Ring, size: usize, letters: Vec<Letter>) -> Self {
        Word { ring: ring.clone(), size, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn extend(&mut self, o: &Word) {
        self.letters.extend(o.letters.iter().cloned());
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut w = self.clone();
        w.extend(o);
        w
    }

    /// Reverse the letters and flip every inversion flag.
    pub fn inverse(&self) -> Word {
        Word {
            ring: self.ring.clone(),
            size: self.size,
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// `a w a^-1`.
    pub fn conjugate(a: &Word, w: &Word) -> Word {
        a.concat(w).concat(&a.inverse())
    }

    /// Drop letters with zero parameter and fold inversion flags into E/se parameters.
    pub fn normalized(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .map(Letter::normalized)
            .filter(|l| l.gen.param().is_none_or(|p| !p.is_zero()))
            .collect();
        Word { ring: self.ring.clone(), size: self.size, letters }
    }

    pub fn evaluate(&self) -> Result<ExactMatrix> {
        let mut m = ExactMatrix::identity(&self.ring, self.size);
        for l in &self.letters {
            apply_letter(&mut m, l)?;
        }
        Ok(m)
    }

    pub fn all_certified_in(&self, ideal: &IdealPresentation) -> bool {
        self.letters.iter().all(|l| l.is_certified_in(ideal))
    }

    pub fn to_json(&self) -> Json {
        Json::Array(self.letters.iter().map(Letter::to_json).collect())
    }

    pub fn from_json(ring: &Ring, size: usize, ideal: Option<&IdealPresentation>, j: &Json) -> Result<Word> {
        let letters = j
            .as_array()
            .ok_or_else(|| Error::Malformed("word: expected array".into()))?
            .iter()
            .map(|l| Letter::from_json(ring, ideal, l))
            .collect::<Result<Vec<_>>>()?;
        let w = Word::from_letters(ring, size, letters);
        w.check_shape()?;
        Ok(w)
    }

    pub fn check_shape(&self) -> Result<()> {
        for l in &self.letters {
            match &l.gen {
                Generator::E { i, j, param } | Generator::Se { i, j, param } => {
                    if i == j || *i == 0 || *j == 0 || *i > self.size || *j > self.size {
                        return Err(Error::BadIndices { i: *i, j: *j, size: self.size });
                    }
                    if matches!(l.gen, Generator::Se { .. }) && self.size % 2 == 1 {
                        return Err(Error::OddDimension(self.size));
                    }
                    if !same_ring(&param.ring, &self.ring) {
                        return Err(Error::DescriptorMismatch);
                    }
                }
                Generator::Rho { q, form, .. } | Generator::Mu { q, form, .. } => {
                    check_form(form, q)?;
                    if q.len() + 2 != self.size {
                        return Err(Error::ShapeMismatch("transvection size".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Right-multiply `m` by the matrix of one letter.
pub fn apply_letter(m: &mut ExactMatrix, l: &Letter) -> Result<()> {
    match &l.gen {
        Generator::E { i, j, param } => {
            if i == j || *i > m.cols || *j > m.cols {
                return Err(Error::BadIndices { i: *i, j: *j, size: m.cols });
            }
            let z = if l.inv { param.neg() } else { param.clone() };
            col_op(m, *i, *j, &z);
        }
        Generator::Se { i, j, param } => {
            if i == j || *i > m.cols || *j > m.cols || m.cols % 2 == 1 {
                return Err(Error::BadIndices { i: *i, j: *j, size: m.cols });
            }
            let z = if l.inv { param.neg() } else { param.clone() };
            col_op(m, *i, *j, &z);
            if *i != sigma(*j) {
                col_op(m, sigma(*j), sigma(*i), &z.scale(-sgn(i + j)));
            }
        }
        Generator::Rho { q, alpha, form } => {
            let g = rho_matrix(q, alpha, form)?;
            let g = if l.inv { invert_checked(&g)? } else { g };
            *m = m.try_mul(&g)?;
        }
        Generator::Mu { q, beta, form } => {
            let g = mu_matrix(q, beta, form)?;
            let g = if l.inv { invert_checked(&g)? } else { g };
            *m = m.try_mul(&g)?;
        }
    }
    Ok(())
}

fn invert_checked(g: &ExactMatrix) -> Result<ExactMatrix> {
    let inv = g.inverse()?;
    if !g.mul(&inv).is_identity() {
        return Err(Error::VerificationFailed("adjugate inverse".into()));
    }
    Ok(inv)
}

fn in_first_row_or_col(w: &Word, ideal: &IdealPresentation, want: &str) -> bool {
    w.letters.iter().all(|l| {
        l.gen.tag() == want
            && l.gen.indices().is_some_and(|(i, j)| i == 1 || j == 1)
            && l.is_certified_in(ideal)
    })
}

/// Every letter is some `E_1i` or `E_j1` certified in `ideal`.
pub fn word_in_e1(w: &Word, ideal: &IdealPresentation) -> bool {
    in_first_row_or_col(w, ideal, "E")
}

/// Every letter is some `se_1i` or `se_j1` certified in `ideal`.
pub fn word_in_esp1(w: &Word, ideal: &IdealPresentation) -> bool {
    in_first_row_or_col(w, ideal, "se")
}

/// Scalar `Σ_k q_{2k-1} q_{2k}` over coordinates outside the pair starting at `p`.
fn pair_products(q: &[RingElement], p: usize) -> RingElement {
    let mut s = RingElement::zero(&q[0].ring);
    for k in (0..q.len()).step_by(2) {
        if k + 1 != p {
            s = s.add(&q[k].mul(&q[k + 1]));
        }
    }
    s
}

fn pair_products_cert(q: &[CertifiedElement], p: usize) -> CertifiedElement {
    let mut s = CertifiedElement::zero(&q[0].ideal);
    for k in (0..q.len()).step_by(2) {
        if k + 1 != p {
            s = s.add(&q[k].scale(&q[k + 1].value)).expect("same ideal");
        }
    }
    s
}

fn check_pair(size: usize, p: usize) -> Result<()> {
    if size % 2 == 1 {
        return Err(Error::OddDimension(size));
    }
    if p.is_multiple_of(2) || p + 1 > size {
        return Err(Error::BadIndices { i: p, j: p + 1, size });
    }
    Ok(())
}

/// `ρ` relative to the coordinate pair `(p, p+1)` of a `size`-dimensional space.
/// `q` has length `size` and must vanish on the pair.
pub fn rho_word_at(q: &[RingElement], alpha: &RingElement, p: usize) -> Result<Word> {
    let size = q.len();
    check_pair(size, p)?;
    if !q[p - 1].is_zero() || !q[p].is_zero() {
        return Err(Error::SupportOverlap(p));
    }
    let ring = &alpha.ring;
    let mut w = Word::new(ring, size);
    w.push(Letter::se(p + 1, p, alpha.neg().add(&pair_products(q, p))));
    for i in 1..=size {
        if i != p && i != p + 1 {
            w.push(Letter::se(i, p, q[i - 1].neg()));
        }
    }
    Ok(w)
}

/// `μ` relative to the coordinate pair `(p, p+1)`.
pub fn mu_word_at(q: &[RingElement], beta: &RingElement, p: usize) -> Result<Word> {
    let size = q.len();
    check_pair(size, p)?;
    if !q[p - 1].is_zero() || !q[p].is_zero() {
        return Err(Error::SupportOverlap(p));
    }
    let ring = &beta.ring;
    let mut w = Word::new(ring, size);
    w.push(Letter::se(p, p + 1, beta.add(&pair_products(q, p))));
    for i in 1..=size {
        if i != p && i != p + 1 {
            w.push(Letter::se(p, i, q[sigma(i) - 1].scale(sgn(i + 1))));
        }
    }
    Ok(w)
}

/// Certified version of [`rho_word_at`]: every emitted parameter carries a certificate.
pub fn rho_word_at_cert(q: &[CertifiedElement], alpha: &CertifiedElement, p: usize) -> Result<Word> {
    let size = q.len();
    check_pair(size, p)?;
    if !q[p - 1].value.is_zero() || !q[p].value.is_zero() {
        return Err(Error::SupportOverlap(p));
    }
    let mut w = Word::new(&alpha.value.ring, size);
    w.push(Letter::se_cert(p + 1, p, alpha.neg().add(&pair_products_cert(q, p))?));
    for i in 1..=size {
        if i != p && i != p + 1 {
            w.push(Letter::se_cert(i, p, q[i - 1].neg()));
        }
    }
    Ok(w)
}

pub fn mu_word_at_cert(q: &[CertifiedElement], beta: &CertifiedElement, p: usize) -> Result<Word> {
    let size = q.len();
    check_pair(size, p)?;
    if !q[p - 1].value.is_zero() || !q[p].value.is_zero() {
        return Err(Error::SupportOverlap(p));
    }
    let mut w = Word::new(&beta.value.ring, size);
    w.push(Letter::se_cert(p, p + 1, beta.add(&pair_products_cert(q, p))?));
    for i in 1..=size {
        if i != p && i != p + 1 {
            w.push(Letter::se_cert(p, i, q[sigma(i) - 1].scale_int(sgn(i + 1))));
        }
    }
    Ok(w)
}

/// Matrix of `ρ` at the pair `(p, p+1)`, the block matrix with the pair moved into place.
pub fn rho_matrix_at(q: &[RingElement], alpha: &RingElement, p: usize) -> Result<ExactMatrix> {
    check_pair(q.len(), p)?;
    let ring = &alpha.ring;
    let t = tilde_vec(q);
    let mut m = ExactMatrix::identity(ring, q.len());
    m.set(p, p - 1, alpha.neg());
    for k in 0..q.len() {
        if k + 1 != p && k != p {
            m.set(p, k, t[k].clone());
            m.set(k, p - 1, q[k].neg());
        }
    }
    Ok(m)
}

pub fn mu_matrix_at(q: &[RingElement], beta: &RingElement, p: usize) -> Result<ExactMatrix> {
    check_pair(q.len(), p)?;
    let ring = &beta.ring;
    let t = tilde_vec(q);
    let mut m = ExactMatrix::identity(ring, q.len());
    m.set(p - 1, p, beta.clone());
    for k in 0..q.len() {
        if k + 1 != p && k != p {
            m.set(p - 1, k, t[k].neg());
            m.set(k, p, q[k].neg());
        }
    }
    Ok(m)
}

/// Expansion of `ρ_{ψ_n}(q, α)` into index-1 symplectic letters of size `2n+2`.
pub fn expand_rho(q: &[RingElement], alpha: &RingElement) -> Result<Word> {
    let mut full = vec![RingElement::zero(&alpha.ring); 2];
    full.extend(q.iter().cloned());
    rho_word_at(&full, alpha, 1)
}

pub fn expand_mu(q: &[RingElement], beta: &RingElement) -> Result<Word> {
    let mut full = vec![RingElement::zero(&beta.ring); 2];
    full.extend(q.iter().cloned());
    mu_word_at(&full, beta, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `[E_ij(a), E_jk(b)] = E_ik(ab)`.
    Linear { i: usize, j: usize, k: usize },
    /// `[se_ik(a), se_kj(b)] = se_ij(ab)`.
    Long { i: usize, j: usize, k: usize },
    /// `[se_ik(a), se_{kσ(i)}(b)] = se_{iσ(i)}(2ab)`.
    Short { i: usize, k: usize },
    /// `[se_{iσ(i)}(a), se_{σ(i)j}(b)] = se_ij(ab) se_{σ(j)j}((-1)^{i+j} a b^2)`.
    Mixed { i: usize, j: usize },
    /// `[se_ij(a), se_kl(b)] = 1`.
    Disjoint { i: usize, j: usize, k: usize, l: usize },
}

impl Relation {
    pub fn name(&self) -> &'static str {
        match self {
            Relation::Linear { .. } => "linear",
            Relation::Long { .. } => "long",
            Relation::Short { .. } => "short",
            Relation::Mixed { .. } => "mixed",
            Relation::Disjoint { .. } => "disjoint",
        }
    }

    /// Both sides of the relation as words in dimension `size`.
    pub fn sides(&self, size: usize, a: &RingElement, b: &RingElement) -> Result<(Word, Word)> {
        let ring = &a.ring;
        let viol = |s: &str| Err(Error::SideConditionViolated(format!("{}: {s}", self.name())));
        let inr = |x: usize| x >= 1 && x <= size;
        let one = |l: Letter| Word::from_letters(ring, size, vec![l]);
        let (lhs, rhs) = match *self {
            Relation::Linear { i, j, k } => {
                if ![i, j, k].iter().all(|&x| inr(x)) || i == j || j == k || i == k {
                    return viol("indices must be distinct and in range");
                }
                let l = Word::commutator(&one(Letter::e(i, j, a.clone())), &one(Letter::e(j, k, b.clone())));
                (l, one(Letter::e(i, k, a.mul(b))))
            }
            Relation::Long { i, j, k } => {
                if size % 2 == 1 {
                    return Err(Error::OddDimension(size));
                }
                if ![i, j, k].iter().all(|&x| inr(x))
                    || i == j
                    || j == sigma(i)
                    || [i, j, sigma(i), sigma(j)].contains(&k)
                {
                    return viol("need i != j, σ(j) and k outside {i, j, σ(i), σ(j)}");
                }
                let l = Word::commutator(&one(Letter::se(i, k, a.clone())), &one(Letter::se(k, j, b.clone())));
                (l, one(Letter::se(i, j, a.mul(b))))
            }
            Relation::Short { i, k } => {
                if size % 2 == 1 {
                    return Err(Error::OddDimension(size));
                }
                if !inr(i) || !inr(k) || k == i || k == sigma(i) {
                    return viol("need k outside {i, σ(i)}");
                }
                let l = Word::commutator(
                    &one(Letter::se(i, k, a.clone())),
                    &one(Letter::se(k, sigma(i), b.clone())),
                );
                (l, one(Letter::se(i, sigma(i), a.mul(b).scale(2))))
            }
            Relation::Mixed { i, j } => {
                if size % 2 == 1 {
                    return Err(Error::OddDimension(size));
                }
                if !inr(i) || !inr(j) || j == i || j == sigma(i) {
                    return viol("need j outside {i, σ(i)}");
                }
                let l = Word::commutator(
                    &one(Letter::se(i, sigma(i), a.clone())),
                    &one(Letter::se(sigma(i), j, b.clone())),
                );
                let r = Word::from_letters(
                    ring,
                    size,
                    vec![
                        Letter::se(i, j, a.mul(b)),
                        Letter::se(sigma(j), j, a.mul(b).mul(b).scale(sgn(i + j))),
                    ],
                );
                (l, r)
            }
            Relation::Disjoint { i, j, k, l } => {
                if size % 2 == 1 {
                    return Err(Error::OddDimension(size));
                }
                if ![i, j, k, l].iter().all(|&x| inr(x))
                    || i == j
                    || k == l
                    || i == l
                    || i == sigma(k)
                    || j == k
                    || j == sigma(l)
                {
                    return viol("need i != l, σ(k) and j != k, σ(l)");
                }
                let w = Word::commutator(&one(Letter::se(i, j, a.clone())), &one(Letter::se(k, l, b.clone())));
                (w, Word::new(ring, size))
            }
        };
        Ok((lhs, rhs))
    }
}

/// Evaluate both sides of `rel` and compare exactly.
pub fn check_relation(rel: Relation, size: usize, a: &RingElement, b: &RingElement) -> Result<bool> {
    let (l, r) = rel.sides(size, a, b)?;
    Ok(l.evaluate()? == r.evaluate()?)
}

/// Pfaffian-1 alternating check shared by transvection inputs.
pub fn check_pfaffian_one(form: &ExactMatrix) -> Result<()> {
    if !pfaffian(form)?.is_one() {
        return Err(Error::PfaffianNotOne);
    }
    Ok(())
}
