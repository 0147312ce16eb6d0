//! Conjugation rewriting into first-row/first-column generators, and the inclusions of
//! the square of an ideal into the first-row/column subgroups.
//!
//! A conjugate `ε se_ij(Y^{4^r} a) ε^-1` is rewritten one conjugating letter at a time,
//! innermost first. Before each level every parameter has `Y` replaced by `Y^4`, so the
//! single-letter formulas always see a parameter of the form `Y^4 A`.

use std::collections::HashMap;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ideal::{CertifiedElement, IdealPresentation};
use crate::matrix::{mismatch, ExactMatrix};
use crate::ring::{half, poly, Ring, RingDescriptor, RingElement};
use crate::word::{sigma, word_in_e1, word_in_esp1, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Linear,
    Symplectic,
}

impl Kind {
    fn letter(self, i: usize, j: usize, c: CertifiedElement) -> Letter {
        match self {
            Kind::Linear => Letter::e_cert(i, j, c),
            Kind::Symplectic => Letter::se_cert(i, j, c),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Kind::Linear => "linear",
            Kind::Symplectic => "symplectic",
        }
    }
}

/// Splits `p`, certified over the pairwise products of `ideal`'s generators, into terms `x y`
/// with `x, y` certified in `ideal`.
fn square_terms(p: &CertifiedElement, ideal: &IdealPresentation) -> Result<Vec<(CertifiedElement, CertifiedElement)>> {
    if p.ideal != ideal.square() {
        return Err(Error::IdealMismatch);
    }
    let g = ideal.len();
    let mut out = vec![];
    let mut idx = 0;
    for k in 0..g {
        for l in k..g {
            let coef = &p.coefficients[idx];
            idx += 1;
            if coef.is_zero() {
                continue;
            }
            let x = CertifiedElement::generator(ideal, k).scale(coef);
            let y = CertifiedElement::generator(ideal, l);
            if !x.value.mul(&y.value).is_zero() {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

fn check_target(w: &Word, expected: &ExactMatrix, what: &str) -> Result<()> {
    let got = w.evaluate()?;
    if got == *expected {
        Ok(())
    } else {
        Err(mismatch(what, expected, &got))
    }
}


/// `E_ij(p)` for `p` in the square of `ideal`, as a word in first-row/column generators.
pub fn include_i2_linear(n: usize, i: usize, j: usize, p: &CertifiedElement, ideal: &IdealPresentation) -> Result<Word> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(format!("linear inclusion needs n >= 3, got {n}")));
    }
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::BadIndices { i, j, size: n });
    }
    let ring = &ideal.ring;
    let mut out = Word::new(ring, n);
    for (x, y) in square_terms(p, ideal)? {
        if i == 1 || j == 1 {
            out.push(Letter::e_cert(i, j, x.scale(&y.value)));
        } else {
            let a = Word::from_letters(ring, n, vec![Letter::e_cert(i, 1, x)]);
            let b = Word::from_letters(ring, n, vec![Letter::e_cert(1, j, y)]);
            out.extend(&Word::commutator(&a, &b));
        }
    }
    let expected = crate::word::linear_generator(ring, n, i, j, &p.value)?;
    check_target(&out, &expected, "linear inclusion")?;
    Ok(out)
}

/// `se_ij(p)` for `p` in the square of `ideal`, as a word in first-row/column generators.
pub fn include_i2_symplectic(
    size: usize,
    i: usize,
    j: usize,
    p: &CertifiedElement,
    ideal: &IdealPresentation,
) -> Result<Word> {
    let ring = &ideal.ring;
    let h = half(ring)?;
    if size % 2 == 1 {
        return Err(Error::OddDimension(size));
    }
    if size < 4 {
        return Err(Error::DimensionTooSmall(format!("symplectic inclusion needs n >= 2, got 2n = {size}")));
    }
    if i == j || i == 0 || j == 0 || i > size || j > size {
        return Err(Error::BadIndices { i, j, size });
    }
    let sign = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
    let mut out = Word::new(ring, size);
    for (x, y) in square_terms(p, ideal)? {
        let one = |l: Letter| Word::from_letters(ring, size, vec![l]);
        if i == 1 || j == 1 {
            out.push(Letter::se_cert(i, j, x.scale(&y.value)));
        } else if j == sigma(i) {
            let a = one(Letter::se_cert(i, 1, x));
            let b = one(Letter::se_cert(1, j, y.scale(&h)));
            out.extend(&Word::commutator(&a, &b));
        } else if sigma(i) == 1 || sigma(j) == 1 {
            // se_ij(z) = se_{σ(j)σ(i)}(-(-1)^{i+j} z), which has index 1 here.
            out.push(Letter::se_cert(sigma(j), sigma(i), x.scale(&y.value).scale_int(-sign(i + j))));
        } else {
            let a = one(Letter::se_cert(i, 1, x));
            let b = one(Letter::se_cert(1, j, y));
            out.extend(&Word::commutator(&a, &b));
        }
    }
    let expected = crate::word::symplectic_generator(ring, size / 2, i, j, &p.value)?;
    check_target(&out, &expected, "symplectic inclusion")?;
    Ok(out)
}

/// Fault injection and repair policy for the single-letter formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteConfig {
    /// Fall back to the relation-derived rewrite when a stated case formula fails its check.
    pub repair: bool,
    /// Flip the sign of the first parameter of the first formula tried for this case.
    pub corrupt_case: Option<u8>,
}

impl Default for RewriteConfig {
    fn default() -> Self {
        RewriteConfig { repair: true, corrupt_case: None }
    }
}

#[derive(Clone, Debug)]
pub struct RewriteResult {
    pub kind: Kind,
    pub ring: Ring,
    pub ideal: IdealPresentation,
    pub lhs: Word,
    pub output: Word,
    /// `b_t` with output parameter `Y b_t`, certified over `ideal`.
    pub cofactors: Vec<CertifiedElement>,
    pub exponent: u64,
    pub verified: bool,
    pub case_trace: Vec<String>,
}

impl RewriteResult {
    pub fn to_json(&self) -> Json {
        json!({
            "mode": self.kind.name(),
            "ring": self.ring.to_json(),
            "ideal": self.ideal.to_json(),
            "exponent": self.exponent,
            "lhs": self.lhs.to_json(),
            "output": self.output.to_json(),
            "cofactors": self.cofactors.iter().map(CertifiedElement::to_json).collect::<Vec<_>>(),
            "verified": self.verified,
            "case_trace": self.case_trace,
        })
    }

    /// Every output letter has index 1 on one side and a parameter `Y b_t` with `b_t` certified.
    pub fn shape_ok(&self) -> bool {
        let y = match RingElement::var(&self.ring, "Y") {
            Ok(y) => y,
            Err(_) => return false,
        };
        self.output.letters.len() == self.cofactors.len()
            && self.output.letters.iter().zip(&self.cofactors).all(|(l, b)| {
                let idx_ok = l.gen.indices().is_some_and(|(i, j)| i == 1 || j == 1);
                let p = l.gen.param().unwrap();
                idx_ok && b.is_valid() && b.ideal == self.ideal && y.mul(&b.value) == *p && !l.inv
            })
    }
}

/// Output parameter `Y^yexp * core`.
#[derive(Clone, Debug)]
struct RLetter {
    i: usize,
    j: usize,
    yexp: u32,
    core: CertifiedElement,
}

impl RLetter {
    fn neg(&self) -> Self {
        RLetter { core: self.core.neg(), ..self.clone() }
    }
}

/// A formula entry `coef * c^cpow * Y^ypow * A^apow` at `(i, j)`, where the conjugated
/// letter is `X_1j(Y^4 A)` and the conjugating letter carries `c`.
#[derive(Clone, Copy, Debug)]
struct Term {
    i: usize,
    j: usize,
    coef: i64,
    half: bool,
    cpow: u32,
    ypow: u32,
    apow: u32,
}

fn t(i: usize, j: usize, coef: i64, cpow: u32, ypow: u32, apow: u32) -> Term {
    Term { i, j, coef, half: false, cpow, ypow, apow }
}

fn comm(x: &[Term], y: &[Term]) -> Vec<Term> {
    let inv = |w: &[Term]| -> Vec<Term> { w.iter().rev().map(|t| Term { coef: -t.coef, ..*t }).collect() };
    [x.to_vec(), y.to_vec(), inv(x), inv(y)].concat()
}

struct Ctx<'a> {
    kind: Kind,
    ring: &'a Ring,
    size: usize,
    y: RingElement,
    h: Option<RingElement>,
}

impl Ctx<'_> {
    fn letter(&self, l: &RLetter) -> Letter {
        self.kind.letter(l.i, l.j, l.core.scale(&self.y.pow(l.yexp)))
    }

    fn word(&self, ls: &[RLetter]) -> Word {
        Word::from_letters(self.ring, self.size, ls.iter().map(|l| self.letter(l)).collect())
    }

    fn eval(&self, ls: &[RLetter]) -> Result<ExactMatrix> {
        self.word(ls).evaluate()
    }

    /// Realize a term list for conjugating letter parameter `c` and target `Y^e core`.
    fn realize(&self, terms: &[Term], c: &CertifiedElement, core: &CertifiedElement, e: u32) -> Result<Vec<RLetter>> {
        let mut out = vec![];
        for tm in terms {
            let mut s = RingElement::int(self.ring, tm.coef);
            if tm.half {
                s = s.mul(self.h.as_ref().ok_or(Error::TwoNotInvertible)?);
            }
            s = s.mul(&c.value.pow(tm.cpow.saturating_sub(u32::from(tm.apow == 0))));
            let cert = if tm.apow >= 1 {
                core.scale(&s.mul(&core.value.pow(tm.apow - 1)))
            } else {
                c.scale(&s)
            };
            let yexp = tm.ypow + tm.apow * (e - 4);
            if cert.value.is_zero() {
                continue;
            }
            out.push(RLetter { i: tm.i, j: tm.j, yexp, core: cert });
        }
        Ok(out)
    }
}

/// Roots as integer vectors; symplectic weights are `+e_m` for `2m-1` and `-e_m` for `2m`.
fn root(kind: Kind, size: usize, a: usize, b: usize) -> Vec<i32> {
    match kind {
        Kind::Linear => {
            let mut r = vec![0; size];
            r[a - 1] += 1;
            r[b - 1] -= 1;
            r
        }
        Kind::Symplectic => {
            let mut r = vec![0; size / 2];
            let wt = |i: usize| if i % 2 == 1 { 1 } else { -1 };
            r[(a - 1) / 2] += wt(a);
            r[(b - 1) / 2] -= wt(b);
            r
        }
    }
}

/// A generator for `γ`, preferring one with index 1.
fn gen_for_root(kind: Kind, size: usize, g: &[i32]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for a in 1..=size {
        for b in 1..=size {
            if a != b && root(kind, size, a, b) == g {
                let one = a == 1 || b == 1;
                match best {
                    Some((x, y)) if x == 1 || y == 1 || !one => {}
                    _ => best = Some((a, b)),
                }
            }
        }
    }
    best
}

#[derive(Clone, Debug)]
struct Plan {
    /// `(generator, κ, i, j)` for the term `κ c^i t^j`, in product order.
    terms: Vec<((usize, usize), i64, u32, u32)>,
}

const KAPPAS: [i64; 4] = [1, -1, 2, -2];

pub struct Rewriter {
    kind: Kind,
    cfg: RewriteConfig,
    plans: HashMap<(usize, usize, usize), Plan>,
    trace: Vec<String>,
}

impl Rewriter {
    fn new(kind: Kind, cfg: RewriteConfig) -> Self {
        Rewriter { kind, cfg, plans: HashMap::new(), trace: vec![] }
    }

    /// Transcribed formula for a case, if one exists, as terms.
    fn stated(&self, case: u8, j: usize, p: usize, size: usize) -> Option<Vec<Term>> {
        let tgt = t(1, j, 1, 0, 4, 1);
        let sgn = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
        match (self.kind, case) {
            (Kind::Linear, 1 | 2) => Some(vec![tgt]),
            (Kind::Linear, 3) => {
                let k = (2..=size).find(|&k| k != j)?;
                Some(
                    [
                        comm(&[t(j, 1, 1, 0, 1, 1)], &[t(1, k, 1, 1, 1, 0)]),
                        vec![t(1, k, 1, 0, 2, 1), t(k, 1, -1, 1, 2, 0), t(1, k, -1, 0, 2, 1), tgt],
                        comm(
                            &[t(k, 1, -1, 0, 3, 1), t(j, 1, -1, 0, 1, 1)],
                            &[t(1, j, -1, 1, 3, 0), t(1, k, 1, 1, 1, 0)],
                        ),
                        vec![t(k, 1, 1, 1, 2, 0)],
                    ]
                    .concat(),
                )
            }
            (Kind::Linear, 4) => Some([comm(&[t(p, 1, 1, 0, 2, 1)], &[t(1, j, 1, 1, 2, 0)]), vec![tgt]].concat()),
            (Kind::Symplectic, 1 | 2 | 5 | 6 | 7) => Some(vec![tgt]),
            (Kind::Symplectic, 4) => {
                let k = p;
                let s = sgn(k);
                let inner = [
                    vec![t(1, sigma(k), s, 1, 4, 1)],
                    comm(&[t(k, 1, s, 2, 2, 0)], &[t(1, sigma(k), 1, 0, 2, 1)]),
                ]
                .concat();
                let inv: Vec<Term> = inner.iter().rev().map(|x| Term { coef: -x.coef, ..*x }).collect();
                Some([inv, vec![tgt]].concat())
            }
            (Kind::Symplectic, 8) => Some(vec![t(1, 2, sgn(j), 0, 4, 1), tgt]),
            (Kind::Symplectic, 9) => Some(
                [
                    vec![t(sigma(j), 1, -sgn(j), 1, 4, 1)],
                    comm(&[Term { half: true, ..t(sigma(j), 1, 1, 1, 0, 0) }], &[t(1, j, 1, 0, 4, 2)]),
                    vec![tgt],
                ]
                .concat(),
            ),
            (Kind::Symplectic, 10 | 12) => {
                Some([comm(&[t(p, 1, 1, 1, 2, 0)], &[t(1, j, 1, 0, 2, 1)]), vec![tgt]].concat())
            }
            (Kind::Symplectic, 11) => {
                let k = aux_index(j, size)?;
                Some(
                    [
                        comm(&[t(j, 1, 1, 1, 1, 0)], &[t(1, k, 1, 0, 1, 1)]),
                        vec![t(1, k, 1, 0, 2, 1), t(k, 1, -1, 1, 2, 0), t(1, k, -1, 0, 2, 1), tgt],
                        comm(
                            &[t(k, 1, 1, 1, 3, 0), t(j, 1, 1, 1, 1, 0)],
                            &[t(1, j, 1, 0, 3, 1), t(1, k, 1, 0, 1, 1)],
                        ),
                        vec![t(k, 1, 1, 1, 2, 0)],
                    ]
                    .concat(),
                )
            }
            _ => None,
        }
    }

    /// Formulas for opposite-root pairs, derived from the commutator relations.
    fn derived_opposite(&self, case: u8, j: usize, size: usize) -> Result<Option<Vec<Term>>> {
        let tgt = t(1, j, 1, 0, 4, 1);
        match (self.kind, case) {
            (Kind::Linear, 3) | (Kind::Symplectic, 11) => {
                let k = match self.kind {
                    Kind::Linear => (2..=size).find(|&k| k != j),
                    Kind::Symplectic => aux_index(j, size),
                }
                .ok_or_else(|| Error::DimensionTooSmall("no auxiliary index".into()))?;
                Ok(Some(
                    [
                        comm(&[t(j, 1, 1, 1, 1, 0)], &[t(1, k, 1, 0, 1, 1)]),
                        vec![t(1, k, 1, 0, 2, 1), t(k, 1, -1, 1, 2, 0), tgt, t(1, k, -1, 0, 2, 1)],
                        comm(
                            &[t(k, 1, -1, 1, 3, 0), t(j, 1, -1, 1, 1, 0)],
                            &[t(1, j, -1, 0, 3, 1), t(1, k, 1, 0, 1, 1)],
                        ),
                        vec![t(k, 1, 1, 1, 2, 0)],
                    ]
                    .concat(),
                ))
            }
            (Kind::Symplectic, 3) => {
                // Exact when the cube of the ideal vanishes.
                let k = 3;
                let x = Term { half: true, ..t(1, k, 1, 1, 2, 0) };
                let y = t(k, 1, -1, 0, 2, 1);
                let x2 = Term { j: sigma(k), ..x };
                let y2 = Term { i: sigma(k), ..y };
                Ok(Some([vec![tgt], comm(&[x], &[y]), comm(&[x2], &[y2])].concat()))
            }
            _ => Ok(None),
        }
    }

    fn case_number(&self, p: usize, q: usize, j: usize) -> u8 {
        match self.kind {
            Kind::Linear => match (p, q) {
                (1, q) if q == j => 1,
                (1, _) => 2,
                (p, 1) if p == j => 3,
                _ => 4,
            },
            Kind::Symplectic if j == 2 => match (p, q) {
                (1, 2) => 1,
                (1, _) => 2,
                (2, 1) => 3,
                _ => 4,
            },
            Kind::Symplectic => match (p, q) {
                (1, 2) => 5,
                (1, q) if q == j => 7,
                (1, q) if q == sigma(j) => 8,
                (1, _) => 6,
                (2, 1) => 9,
                (p, 1) if p == j => 11,
                (p, 1) if p == sigma(j) => 12,
                _ => 10,
            },
        }
    }

    /// Rewrite `ε X_1j(Y^e core) ε^-1` with `ε = X_pq(c)`.
    fn conj_first_row(
        &mut self,
        ctx: &Ctx,
        p: usize,
        q: usize,
        c: &CertifiedElement,
        j: usize,
        e: u32,
        core: &CertifiedElement,
    ) -> Result<(Vec<RLetter>, String)> {
        let target = RLetter { i: 1, j, yexp: e, core: core.clone() };
        let eps = RLetter { i: p, j: q, yexp: 0, core: c.clone() };
        let lhs = ctx.eval(&[eps.clone(), target.clone(), eps.neg()])?;
        let case = self.case_number(p, q, j);
        let mut first = true;
        let mut corrupt = |terms: &mut Vec<Term>| {
            if first && self.cfg.corrupt_case == Some(case) {
                if let Some(t0) = terms.first_mut() {
                    t0.coef = -t0.coef;
                }
            }
            first = false;
        };
        let mut failed_stated = false;
        if let Some(mut terms) = self.stated(case, j, p, ctx.size) {
            corrupt(&mut terms);
            let out = ctx.realize(&terms, c, core, e)?;
            let got = ctx.eval(&out)?;
            // Every output parameter must stay divisible by Y.
            let y_free = out.iter().any(|l| l.yexp == 0);
            if !y_free && got == lhs {
                return Ok((out, format!("case {case}")));
            }
            if !self.cfg.repair {
                let what = format!("{} case {case}: stated formula disagrees", ctx.kind.name());
                return Err(if got == lhs {
                    Error::VerificationFailed(format!("{what}: a letter parameter is not divisible by Y"))
                } else {
                    mismatch(&what, &lhs, &got)
                });
            }
            failed_stated = true;
        }
        let tag = if failed_stated { format!("case {case} (repaired)") } else { format!("case {case} (derived)") };
        if let Some(mut terms) = self.derived_opposite(case, j, ctx.size)? {
            corrupt(&mut terms);
            let out = ctx.realize(&terms, c, core, e)?;
            let got = ctx.eval(&out)?;
            if got == lhs {
                return Ok((out, tag));
            }
            return Err(mismatch(&format!("{} case {case}: derived formula disagrees", ctx.kind.name()), &lhs, &got));
        }
        let out = self.chevalley(ctx, p, q, c, j, e, core, &lhs)?;
        Ok((out, tag))
    }

    /// Non-opposite roots: `ε X ε^-1 = [ε, X] X` with the commutator expanded over root sums,
    /// then every term without index 1 split as a commutator through index 1.
    #[allow(clippy::too_many_arguments)]
    fn chevalley(
        &mut self,
        ctx: &Ctx,
        p: usize,
        q: usize,
        c: &CertifiedElement,
        j: usize,
        e: u32,
        core: &CertifiedElement,
        lhs: &ExactMatrix,
    ) -> Result<Vec<RLetter>> {
        let key = (p, q, j);
        if let Some(plan) = self.plans.get(&key).cloned() {
            let out = self.realize_plan(ctx, &plan, c, j, e, core)?;
            if ctx.eval(&out)? == *lhs {
                return Ok(out);
            }
        }
        let size = ctx.size;
        let alpha = root(self.kind, size, p, q);
        let beta = root(self.kind, size, 1, j);
        let mut cands = vec![];
        for (a, b) in [(1u32, 1u32), (2, 1), (1, 2)] {
            let g: Vec<i32> = alpha.iter().zip(&beta).map(|(x, y)| a as i32 * x + b as i32 * y).collect();
            if let Some(gen) = gen_for_root(self.kind, size, &g) {
                cands.push((gen, a, b));
            }
        }
        let m = cands.len();
        let orders: Vec<Vec<usize>> = if m == 2 { vec![vec![0, 1], vec![1, 0]] } else { vec![(0..m).collect()] };
        for order in &orders {
            for code in 0..KAPPAS.len().pow(m as u32) {
                let mut terms = vec![];
                let mut rest = code;
                for &k in order {
                    let (gen, a, b) = cands[k];
                    terms.push((gen, KAPPAS[rest % KAPPAS.len()], a, b));
                    rest /= KAPPAS.len();
                }
                let plan = Plan { terms };
                let out = self.realize_plan(ctx, &plan, c, j, e, core)?;
                if ctx.eval(&out)? == *lhs {
                    self.plans.insert(key, plan);
                    return Ok(out);
                }
            }
        }
        Err(Error::VerificationFailed(format!(
            "{}: no commutator expansion for ({p},{q}) against (1,{j})",
            self.kind.name()
        )))
    }

    fn realize_plan(
        &self,
        ctx: &Ctx,
        plan: &Plan,
        c: &CertifiedElement,
        j: usize,
        e: u32,
        core: &CertifiedElement,
    ) -> Result<Vec<RLetter>> {
        let mut terms = vec![];
        for &((a, b), kappa, ci, tj) in &plan.terms {
            // κ c^ci (Y^4 A)^tj
            let base = t(a, b, kappa, ci, 4 * tj, tj);
            if a == 1 || b == 1 {
                terms.push(base);
                continue;
            }
            // Split through index 1: u = Y c, v carries the rest over Y.
            let short = self.kind == Kind::Symplectic && b == sigma(a);
            let u = t(a, 1, 1, 1, 1, 0);
            let v = Term { i: 1, j: b, half: short, cpow: ci - 1, ypow: 4 * tj - 1, ..base };
            terms.extend(comm(&[u], &[v]));
        }
        terms.push(t(1, j, 1, 0, 4, 1));
        ctx.realize(&terms, c, core, e)
    }

    /// Rewrite `ε L ε^-1` for one conjugating letter and one index-1 letter.
    fn conj_letter(&mut self, ctx: &Ctx, eps: &RLetter, l: &RLetter) -> Result<Vec<RLetter>> {
        let (out, tag) = if l.i == 1 {
            self.conj_first_row(ctx, eps.i, eps.j, &eps.core, l.j, l.yexp, &l.core)?
        } else {
            // Mirror by inverse transpose: X_ab(z) -> X_ba(-z).
            let (o, tag) = self.conj_first_row(ctx, eps.j, eps.i, &eps.core.neg(), l.i, l.yexp, &l.core.neg())?;
            let o = o.iter().map(|x| RLetter { i: x.j, j: x.i, yexp: x.yexp, core: x.core.neg() }).collect();
            (o, format!("{tag} (mirrored)"))
        };
        self.trace.push(tag);
        let lhs = ctx.eval(&[eps.clone(), l.clone(), eps.neg()])?;
        let got = ctx.eval(&out)?;
        if got != lhs {
            return Err(mismatch("single-letter rewrite", &lhs, &got));
        }
        Ok(out)
    }
}

fn aux_index(j: usize, size: usize) -> Option<usize> {
    (3..=size).find(|&k| k != j && k != sigma(j))
}

/// The ring `R[X.., Y]` containing `a_poly`, and the lifted ideal.
fn setup_ring(base: &Ring, a_poly: &CertifiedElement) -> Result<Ring> {
    match &*a_poly.value.ring {
        RingDescriptor::Poly { base: b, vars } if crate::ring::same_ring(b, base) => {
            if vars.iter().any(|v| v == "Y") {
                Ok(a_poly.value.ring.clone())
            } else {
                let mut names: Vec<&str> = vars.iter().map(String::as_str).collect();
                names.push("Y");
                poly(base, &names)
            }
        }
        _ if crate::ring::same_ring(&a_poly.value.ring, base) => poly(base, &["X", "Y"]),
        _ => Err(Error::DescriptorMismatch),
    }
}

fn base_ring(a_poly: &CertifiedElement) -> Ring {
    match &*a_poly.value.ring {
        RingDescriptor::Poly { base, .. } => base.clone(),
        _ => a_poly.value.ring.clone(),
    }
}

fn rewrite(
    kind: Kind,
    eps: &Word,
    i: usize,
    j: usize,
    a_poly: &CertifiedElement,
    cfg: &RewriteConfig,
) -> Result<RewriteResult> {
    let base = if eps.is_empty() { base_ring(a_poly) } else { eps.ring.clone() };
    let size = eps.size;
    let h = match kind {
        Kind::Symplectic => Some(half(&base)?),
        Kind::Linear => None,
    };
    match kind {
        Kind::Linear if size < 3 => {
            return Err(Error::DimensionTooSmall(format!("linear rewriting needs n >= 3, got {size}")))
        }
        Kind::Symplectic if size % 2 == 1 => return Err(Error::OddDimension(size)),
        Kind::Symplectic if size < 4 => {
            return Err(Error::DimensionTooSmall(format!("symplectic rewriting needs n >= 2, got 2n = {size}")))
        }
        _ => {}
    }
    if i == j || i == 0 || j == 0 || i > size || j > size || (i != 1 && j != 1) {
        return Err(Error::BadIndices { i, j, size });
    }
    let ring = setup_ring(&base, a_poly)?;
    let base_ideal = match eps.letters.first().and_then(|l| l.cert.first()) {
        Some(c) => c.ideal.clone(),
        None => {
            let g = a_poly.ideal.generators.iter().map(|g| constant_of(g, &base)).collect::<Result<Vec<_>>>()?;
            IdealPresentation::new(&base, g)?
        }
    };
    let in_first = match kind {
        Kind::Linear => word_in_e1(eps, &base_ideal),
        Kind::Symplectic => word_in_esp1(eps, &base_ideal),
    };
    if !in_first {
        return Err(Error::NotCertified(format!(
            "conjugator must be a word of certified first-row/column {} generators",
            kind.name()
        )));
    }
    let ideal = base_ideal.extend(&ring)?;
    let a = a_poly.lift(&ring)?;
    if a.ideal != ideal {
        return Err(Error::IdealMismatch);
    }
    let y = RingElement::var(&ring, "Y")?;
    let ctx = Ctx { kind, ring: &ring, size, y: y.clone(), h: h.map(|x| x.embed(&ring)).transpose()? };
    let eps_letters: Vec<RLetter> = eps
        .letters
        .iter()
        .map(|l| {
            let l = l.normalized();
            let (p, q) = l.gen.indices().unwrap();
            Ok(RLetter { i: p, j: q, yexp: 0, core: l.cert[0].lift(&ring)? })
        })
        .collect::<Result<_>>()?;
    let mut rw = Rewriter::new(kind, *cfg);
    let mut w = vec![RLetter { i, j, yexp: 1, core: a.clone() }];
    if a.value.is_zero() {
        w.clear();
    }
    for eps_k in eps_letters.iter().rev() {
        let mut next = vec![];
        for l in &w {
            let l = RLetter { i: l.i, j: l.j, yexp: l.yexp * 4, core: l.core.inflate("Y", 4)? };
            next.extend(rw.conj_letter(&ctx, eps_k, &l)?);
        }
        w = next;
    }
    let r = eps.len() as u32;
    let exponent = 4u64.pow(r);
    let mut lhs = Word::new(&ring, size);
    for l in &eps_letters {
        lhs.push(ctx.letter(l));
    }
    let ypow = y.pow(exponent as u32);
    lhs.push(kind.letter(i, j, a.scale(&ypow)));
    for l in eps_letters.iter().rev() {
        lhs.push(ctx.letter(&l.neg()));
    }
    let output = ctx.word(&w);
    let cofactors: Vec<CertifiedElement> = w.iter().map(|l| l.core.scale(&y.pow(l.yexp - 1))).collect();
    let (got, want) = (output.evaluate()?, lhs.evaluate()?);
    let verified = got == want;
    let res = RewriteResult {
        kind,
        ring: ring.clone(),
        ideal,
        lhs,
        output,
        cofactors,
        exponent,
        verified,
        case_trace: rw.trace,
    };
    if !verified {
        return Err(mismatch("rewritten word differs from the conjugate", &want, &got));
    }
    Ok(res)
}

fn constant_of(g: &RingElement, base: &Ring) -> Result<RingElement> {
    if crate::ring::same_ring(&g.ring, base) {
        return Ok(g.clone());
    }
    // A constant polynomial: read off the coefficient of the empty monomial.
    match (&*g.ring, &g.v) {
        (RingDescriptor::Poly { base: b, .. }, crate::ring::Value::Poly(map)) if crate::ring::same_ring(b, base) => {
            if map.keys().any(|k| k.iter().any(|e| *e > 0)) {
                return Err(Error::Malformed("ideal generators must be constants".into()));
            }
            Ok(map.values().next().map_or(RingElement::zero(base), |v| RingElement { ring: base.clone(), v: v.clone() }))
        }
        _ => Err(Error::DescriptorMismatch),
    }
}

/// Rewrite `ε E_ij(Y^{4^r} a) ε^-1` as first-row/column generators with `Y`-divisible parameters.
pub fn rewrite_conjugation_linear(eps: &Word, i: usize, j: usize, a_poly: &CertifiedElement) -> Result<RewriteResult> {
    rewrite(Kind::Linear, eps, i, j, a_poly, &RewriteConfig::default())
}

pub fn rewrite_conjugation_symplectic(eps: &Word, i: usize, j: usize, a_poly: &CertifiedElement) -> Result<RewriteResult> {
    rewrite(Kind::Symplectic, eps, i, j, a_poly, &RewriteConfig::default())
}

pub fn rewrite_conjugation_with(
    kind: Kind,
    eps: &Word,
    i: usize,
    j: usize,
    a_poly: &CertifiedElement,
    cfg: &RewriteConfig,
) -> Result<RewriteResult> {
    rewrite(kind, eps, i, j, a_poly, cfg)
}

/// Substitute `X := x0`, `Y := y0` everywhere and compare both sides; returns the common matrix.
pub fn specialize_and_check(res: &RewriteResult, x0: &RingElement, y0: &RingElement) -> Result<ExactMatrix> {
    let vars = res.ring.variables();
    let mut binds: Vec<(&str, RingElement)> = vec![("Y", y0.clone())];
    if vars.iter().any(|v| v == "X") {
        binds.push(("X", x0.clone()));
    }
    let at_y0 = |w: &Word| -> Result<ExactMatrix> {
        let mut m = w.evaluate()?;
        for e in m.entries.iter_mut() {
            *e = e.substitute(&binds)?;
        }
        Ok(m)
    };
    let sub_word = |w: &Word| -> Result<Word> {
        let mut out = w.clone();
        for l in out.letters.iter_mut() {
            let p = l.gen.param().unwrap().substitute(&binds)?;
            l.gen = match &l.gen {
                crate::word::Generator::E { i, j, .. } => crate::word::Generator::E { i: *i, j: *j, param: p },
                crate::word::Generator::Se { i, j, .. } => crate::word::Generator::Se { i: *i, j: *j, param: p },
                g => g.clone(),
            };
            l.cert.clear();
        }
        Ok(out)
    };
    let out = sub_word(&res.output)?.evaluate()?;
    let lhs = sub_word(&res.lhs)?.evaluate()?;
    debug_assert_eq!(at_y0(&res.lhs)?, lhs);
    if out != lhs {
        return Err(mismatch("specialized sides differ", &lhs, &out));
    }
    Ok(out)
}
