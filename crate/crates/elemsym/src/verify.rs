//! Seeded randomized verification suites.
//!
//! Sampling: relations and Pfaffians draw rings from {ℤ/25, ℤ/27, ℤ/121} (relations also
//! `(ℤ/27)[X]` with degree ≤ 1 parameters); the ideal-based suites work over ℤ/27 with
//! `I = (3u)` for a random unit `u`, certificates with coefficients of degree ≤ 2 in `X` where a polynomial ring is
//! involved. Each trial draws one 64-bit seed from a ChaCha stream keyed by the suite
//! seed, so a failing trial can be replayed from its own seed.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::bridge::{
    e1_to_etrans, esp1_to_etranssp, etrans_word_to_e1, etranssp_word_to_esp1, evaluate_transvections,
    standardize_alternating, AlternatingForm, Transvection, TransvectionKind,
};
use crate::decompose::{
    decompose_conjugate, kernel_basis_vector, long_root_pair, long_root_reduce, long_root_unimodular,
    short_root_pair, short_root_split, sum_to_product, sum_to_product_sides,
};
use crate::error::{Error, Result};
use crate::ideal::{certify, CertifiedElement, IdealPresentation};
use crate::matrix::{is_symplectic, pfaffian, standard_symplectic_form, tilde_vec, ExactMatrix};
use crate::rewrite::{
    include_i2_linear, include_i2_symplectic, rewrite_conjugation_with, specialize_and_check, Kind, RewriteConfig,
};
use crate::ring::{poly, zmod, Ring, RingElement};
use crate::word::{
    check_relation, expand_mu, expand_rho, linear_generator, mu_matrix, rho_matrix, sigma, symplectic_generator,
    Generator, Letter, Relation, Word,
};

pub const SUITES: &[&str] = &[
    "relations",
    "short-root",
    "long-root",
    "reduce",
    "split",
    "sum-to-product",
    "unimodular",
    "decompose",
    "rewrite-linear",
    "rewrite-symplectic",
    "dictionaries",
    "standardize",
    "pfaffian",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    pub inputs: String,
    pub expected: String,
    pub achieved: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Elapsed time is left out so that reports are reproducible byte for byte.
    pub fn to_json(&self) -> Json {
        json!({
            "suite": self.suite,
            "trials": self.trials,
            "failures": self.failures.iter().map(|f| json!({
                "seed": f.seed, "inputs": f.inputs, "expected": f.expected, "achieved": f.achieved
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn digest(s: &str) -> String {
    let mut h = DefaultHasher::new();
    s.hash(&mut h);
    format!("{:016x}", h.finish())
}

/// Inputs, expected, achieved (each as text to be digested).
type Mismatch = (String, String, String);
type Trial = Result<std::result::Result<(), Mismatch>>;

fn mismatch(inputs: impl Into<String>, expected: impl ToString, achieved: impl ToString) -> Trial {
    Ok(Err((inputs.into(), expected.to_string(), achieved.to_string())))
}

fn compare(inputs: impl FnOnce() -> String, expected: &ExactMatrix, achieved: &ExactMatrix) -> Trial {
    if expected == achieved {
        Ok(Ok(()))
    } else {
        mismatch(inputs(), expected.to_json(), achieved.to_json())
    }
}

/// The rewrite suite with exactly `r` conjugating letters per instance.
pub fn run_rewrite(kind: Kind, r: usize, trials: usize, seed: u64) -> SuiteReport {
    let name = format!("rewrite-{}-r{r}", kind_name(kind));
    run_trials(&name, trials, seed, |rng| rewrite_trial(rng, kind, Some(r)))
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Linear => "linear",
        Kind::Symplectic => "symplectic",
    }
}

/// Runs `trial` once per drawn seed; an `Err` from the trial itself counts as a failure.
pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<SuiteReport> {
    let trial: fn(&mut ChaCha8Rng) -> Trial = match name {
        "relations" => relations_trial,
        "short-root" => short_root_trial,
        "long-root" => long_root_trial,
        "reduce" => reduce_trial,
        "split" => split_trial,
        "sum-to-product" => sum_to_product_trial,
        "unimodular" => unimodular_trial,
        "decompose" => decompose_trial,
        "rewrite-linear" => |r| rewrite_trial(r, Kind::Linear, None),
        "rewrite-symplectic" => |r| rewrite_trial(r, Kind::Symplectic, None),
        "dictionaries" => dictionaries_trial,
        "standardize" => standardize_trial,
        "pfaffian" => pfaffian_trial,
        _ => return Err(Error::UnknownSuite(name.into())),
    };
    Ok(run_trials(name, trials, seed, trial))
}

fn run_trials(name: &str, trials: usize, seed: u64, trial: impl Fn(&mut ChaCha8Rng) -> Trial) -> SuiteReport {
    let start = Instant::now();
    let mut stream = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = vec![];
    for _ in 0..trials {
        let s = stream.next_u64();
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let outcome = match trial(&mut rng) {
            Ok(Ok(())) => None,
            Ok(Err(m)) => Some(m),
            Err(e) => Some(("(raised)".into(), "success".into(), e.to_string())),
        };
        if let Some((i, e, a)) = outcome {
            failures.push(Failure { seed: s, inputs: digest(&i), expected: digest(&e), achieved: a.chars().take(200).collect() });
        }
    }
    failures.sort_by_key(|f| f.seed);
    SuiteReport { suite: name.into(), trials, failures, elapsed: start.elapsed() }
}

// ---- sampling ----

fn z27() -> Ring {
    zmod(27).unwrap()
}

/// `(3u)` for a random unit `u` of ℤ/27, which is the ideal `(3)` under another generator.
fn three(rng: &mut ChaCha8Rng, r: &Ring) -> IdealPresentation {
    let u = [1, 2, 4, 5, 7, 8][rng.gen_range(0..6)];
    IdealPresentation::principal(&RingElement::int(r, 3 * u))
}

fn elem(rng: &mut ChaCha8Rng, r: &Ring) -> RingElement {
    RingElement::int(r, rng.gen_range(0..1000))
}

fn poly_elem(rng: &mut ChaCha8Rng, r: &Ring, deg: u32) -> RingElement {
    let vars = r.variables().to_vec();
    if vars.is_empty() {
        return elem(rng, r);
    }
    let x = RingElement::var(r, &vars[0]).unwrap();
    (0..=deg).fold(RingElement::zero(r), |acc, d| acc.add(&x.pow(d).mul(&elem(rng, r))))
}

fn cert(rng: &mut ChaCha8Rng, ideal: &IdealPresentation) -> CertifiedElement {
    let cs = (0..ideal.len()).map(|_| poly_elem(rng, &ideal.ring, 2)).collect();
    certify(ideal, cs).unwrap()
}

fn vector(rng: &mut ChaCha8Rng, r: &Ring, n: usize) -> Vec<RingElement> {
    (0..n).map(|_| elem(rng, r)).collect()
}

fn text(v: &[RingElement]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Odd 1-based pair start in a `size`-space.
fn pair(rng: &mut ChaCha8Rng, size: usize) -> usize {
    2 * rng.gen_range(0..size / 2) + 1
}

fn zero_pair(v: &mut [RingElement], p: usize) {
    let z = RingElement::zero(&v[0].ring);
    v[p - 1] = z.clone();
    v[p] = z;
}

/// `I + s (v w~ + w v~)` or `I + s v v~`, assembled entrywise.
fn closed_form(v: &[RingElement], w: Option<&[RingElement]>, s: &RingElement) -> ExactMatrix {
    let ring = &s.ring;
    let n = v.len();
    let vt = tilde_vec(v);
    let mut m = ExactMatrix::identity(ring, n);
    for r in 0..n {
        for c in 0..n {
            let t = match w {
                None => v[r].mul(&vt[c]),
                Some(w) => v[r].mul(&tilde_vec(w)[c]).add(&w[r].mul(&vt[c])),
            };
            let e = m.get(r, c).add(&s.mul(&t));
            m.set(r, c, e);
        }
    }
    m
}

/// Random `x` in the `(w~)`-kernel, supported off the pair `avoid` when given.
fn kernel_vector(rng: &mut ChaCha8Rng, w: &[RingElement], avoid: Option<usize>) -> Vec<RingElement> {
    let n = w.len();
    let ring = &w[0].ring;
    let ok = |k: usize| avoid.is_none_or(|p| sigma(k) != p && sigma(k) != p + 1);
    let mut out = vec![RingElement::zero(ring); n];
    for i in 1..=n {
        for j in i + 1..=n {
            if ok(i) && ok(j) {
                let c = elem(rng, ring);
                for (o, k) in out.iter_mut().zip(kernel_basis_vector(w, i, j)) {
                    *o = o.add(&k.mul(&c));
                }
            }
        }
    }
    out
}

fn relation_ring(rng: &mut ChaCha8Rng) -> Ring {
    match rng.gen_range(0..4) {
        0 => zmod(25).unwrap(),
        1 => z27(),
        2 => zmod(121).unwrap(),
        _ => poly(&z27(), &["X"]).unwrap(),
    }
}

fn distinct(rng: &mut ChaCha8Rng, size: usize, ok: impl Fn(&[usize]) -> bool, k: usize) -> Vec<usize> {
    for _ in 0..10_000 {
        let xs: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=size)).collect();
        if ok(&xs) {
            return xs;
        }
    }
    panic!("no admissible indices in dimension {size}");
}

// ---- trials ----

fn relations_trial(rng: &mut ChaCha8Rng) -> Trial {
    let ring = relation_ring(rng);
    let n = rng.gen_range(2..=3);
    let size = 2 * n;
    let a = poly_elem(rng, &ring, 1);
    let b = poly_elem(rng, &ring, 1);
    let mut rels = [
        {
            let x = distinct(rng, size, |x| x[0] != x[1] && x[1] != x[2] && x[0] != x[2], 3);
            Relation::Linear { i: x[0], j: x[1], k: x[2] }
        },
        {
            // The long-root relation needs a third pair, so it is always drawn at n = 3.
            let x = distinct(
                rng,
                6,
                |x| x[0] != x[1] && x[1] != sigma(x[0]) && ![x[0], x[1], sigma(x[0]), sigma(x[1])].contains(&x[2]),
                3,
            );
            Relation::Long { i: x[0], j: x[1], k: x[2] }
        },
        {
            let x = distinct(rng, size, |x| x[1] != x[0] && x[1] != sigma(x[0]), 2);
            Relation::Short { i: x[0], k: x[1] }
        },
        {
            let x = distinct(rng, size, |x| x[1] != x[0] && x[1] != sigma(x[0]), 2);
            Relation::Mixed { i: x[0], j: x[1] }
        },
        {
            let x = distinct(
                rng,
                size,
                |x| {
                    x[0] != x[1]
                        && x[2] != x[3]
                        && x[0] != x[3]
                        && x[0] != sigma(x[2])
                        && x[1] != x[2]
                        && x[1] != sigma(x[3])
                },
                4,
            );
            Relation::Disjoint { i: x[0], j: x[1], k: x[2], l: x[3] }
        },
    ];
    for rel in rels.iter_mut() {
        let size = if matches!(rel, Relation::Long { .. }) { 6 } else { size };
        let rel = *rel;
        if !check_relation(rel, size, &a, &b)? {
            return mismatch(format!("{rel:?} size {size} a={a} b={b}"), "equal sides", "unequal");
        }
    }
    Ok(Ok(()))
}

fn short_root_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let size = 2 * rng.gen_range(2..=3);
    let p = pair(rng, size);
    let mut v = vector(rng, &r, size);
    zero_pair(&mut v, p);
    let (a, b) = (cert(rng, &ideal), cert(rng, &ideal));
    let w = short_root_pair(&v, &a, &b, p)?;
    if !w.all_certified_in(&ideal) {
        return mismatch(text(&v), "certified", "uncertified letter");
    }
    compare(|| text(&v), &closed_form(&v, None, &a.value.mul(&b.value)), &w.evaluate()?)
}

fn long_root_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let size = 2 * rng.gen_range(2..=3);
    let p = pair(rng, size);
    let mut w = vector(rng, &r, size);
    zero_pair(&mut w, p);
    let v = kernel_vector(rng, &w, Some(p));
    let (a, b) = (cert(rng, &ideal), cert(rng, &ideal));
    let out = long_root_pair(&v, &w, &a, &b, p)?;
    if !out.all_certified_in(&ideal) {
        return mismatch(text(&v), "certified", "uncertified letter");
    }
    compare(|| text(&v) + ";" + &text(&w), &closed_form(&v, Some(&w), &a.value.mul(&b.value)), &out.evaluate()?)
}

fn reduce_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let size = 2 * rng.gen_range(2..=3);
    let p = pair(rng, size);
    let mut v = vector(rng, &r, size);
    zero_pair(&mut v, p);
    let w = kernel_vector(rng, &v, None);
    let (a, b) = (cert(rng, &ideal), cert(rng, &ideal));
    let out = long_root_reduce(&v, &w, &a, &b, p)?;
    if !out.all_certified_in(&ideal) {
        return mismatch(text(&v), "certified", "uncertified letter");
    }
    compare(|| text(&v) + ";" + &text(&w), &closed_form(&v, Some(&w), &a.value.mul(&b.value)), &out.evaluate()?)
}

fn split_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let size = 2 * rng.gen_range(2..=3);
    let v = vector(rng, &r, size);
    let (a, b) = (cert(rng, &ideal), cert(rng, &ideal));
    let out = short_root_split(&v, &a, &b)?;
    if !out.all_certified_in(&ideal) {
        return mismatch(text(&v), "certified", "uncertified letter");
    }
    compare(|| text(&v), &closed_form(&v, None, &a.value.mul(&b.value)), &out.evaluate()?)
}

fn sum_to_product_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let size = 2 * rng.gen_range(2..=3);
    let w = vector(rng, &r, size);
    let k = rng.gen_range(1..=4);
    let us: Vec<Vec<CertifiedElement>> = (0..k)
        .map(|_| {
            let c = cert(rng, &ideal);
            kernel_vector(rng, &w, None).iter().map(|x| c.scale(x)).collect()
        })
        .collect();
    let x = sum_to_product(&us, &w)?;
    let vals: Vec<Vec<RingElement>> = us.iter().map(|u| u.iter().map(|c| c.value.clone()).collect()).collect();
    // Independent product: the sum side directly, the product side factor by factor.
    let one = RingElement::one(&r);
    let mut sum = ExactMatrix::identity(&r, size);
    let mut prod = ExactMatrix::identity(&r, size);
    for u in &vals {
        let f = closed_form(u, Some(&w), &one);
        sum = sum.add(&f).sub(&ExactMatrix::identity(&r, size));
        prod = prod.mul(&f);
    }
    prod = prod.mul(&closed_form(&w, None, &x.value));
    let (lhs, rhs) = sum_to_product_sides(&vals, &w, &x.value);
    if lhs != sum || rhs != prod || !x.is_valid() {
        return mismatch(text(&w), "sides agree with the direct expansion", "disagree");
    }
    compare(|| text(&w), &sum, &prod)
}

/// A random elementary symplectic word over all of `R` (not just the ideal).
fn random_sp_word(rng: &mut ChaCha8Rng, r: &Ring, size: usize, len: usize) -> Word {
    let mut g = Word::new(r, size);
    for _ in 0..len {
        let x = distinct(rng, size, |x| x[0] != x[1], 2);
        g.push(Letter::se(x[0], x[1], elem(rng, r)));
    }
    g
}

fn unimodular_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let size = 6;
    let g = random_sp_word(rng, &r, size, 4);
    let gm = g.evaluate()?;
    let ginv = gm.inverse()?;
    let k = rng.gen_range(0..size);
    let w = gm.col_vec(k);
    let u = ginv.row_vec(k);
    let v = kernel_vector(rng, &w, None);
    let (a, b) = (cert(rng, &ideal), cert(rng, &ideal));
    let out = long_root_unimodular(&v, &w, &a, &b, &u)?;
    if !out.all_certified_in(&ideal) {
        return mismatch(text(&v), "certified", "uncertified letter");
    }
    compare(|| text(&v) + ";" + &text(&w), &closed_form(&v, Some(&w), &a.value.mul(&b.value)), &out.evaluate()?)
}

fn decompose_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let size = 6;
    let len = rng.gen_range(0..=6);
    let g = random_sp_word(rng, &r, size, len);
    let x = distinct(rng, size, |x| x[0] != x[1], 2);
    let (a, b) = (cert(rng, &ideal), cert(rng, &ideal));
    let res = decompose_conjugate(&g, x[0], x[1], &a, &b)?;
    let gm = g.evaluate()?;
    let target = gm.mul(&symplectic_generator(&r, 3, x[0], x[1], &a.value.mul(&b.value))?).mul(&gm.inverse()?);
    let inputs = || g.to_json().to_string();
    if !res.verified || !res.output.all_certified_in(&ideal) || !is_symplectic(&res.achieved)? {
        return mismatch(inputs(), "verified, certified, symplectic", "violated");
    }
    compare(inputs, &target, &res.output.evaluate()?)
}

fn first_row_letter(rng: &mut ChaCha8Rng, kind: Kind, size: usize, ideal: &IdealPresentation) -> Letter {
    let k = rng.gen_range(2..=size);
    let (p, q) = if rng.gen_bool(0.5) { (1, k) } else { (k, 1) };
    let c = cert(rng, ideal);
    match kind {
        Kind::Linear => Letter::e_cert(p, q, c),
        Kind::Symplectic => Letter::se_cert(p, q, c),
    }
}

fn rewrite_trial(rng: &mut ChaCha8Rng, kind: Kind, letters: Option<usize>) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let size = match kind {
        Kind::Linear => 3,
        Kind::Symplectic => 6,
    };
    let rx = poly(&r, &["X"])?;
    let ix = ideal.extend(&rx)?;
    let len = letters.unwrap_or_else(|| rng.gen_range(1..=3));
    let mut eps = Word::new(&r, size);
    for _ in 0..len {
        eps.push(first_row_letter(rng, kind, size, &ideal));
    }
    let j = rng.gen_range(2..=size);
    let (ti, tj) = if rng.gen_bool(0.5) { (1, j) } else { (j, 1) };
    let a = certify(&ix, vec![poly_elem(rng, &rx, 2)])?;
    let res = rewrite_conjugation_with(kind, &eps, ti, tj, &a, &RewriteConfig::default())?;
    let inputs = || format!("{} ({ti},{tj}) {}", eps.to_json(), a.value);
    if !res.verified || !res.shape_ok() || res.exponent != 4u64.pow(len as u32) {
        return mismatch(inputs(), "verified, index-1, Y-divisible", "violated");
    }
    if res.output.evaluate()? != res.lhs.evaluate()? {
        return mismatch(inputs(), res.lhs.evaluate()?.to_json(), res.output.evaluate()?.to_json());
    }
    let zero = RingElement::zero(&r);
    let at_zero = specialize_and_check(&res, &elem(rng, &r), &zero)?;
    if !at_zero.is_identity() {
        return mismatch(inputs(), "identity at Y = 0", at_zero.to_json());
    }
    specialize_and_check(&res, &elem(rng, &r), &elem(rng, &r))?;

    // The square-of-ideal inclusion on a random target.
    let sq = ideal.square();
    let pcert = cert(rng, &sq);
    let x = distinct(rng, size, |x| x[0] != x[1], 2);
    let (w, expected) = match kind {
        Kind::Linear => (include_i2_linear(size, x[0], x[1], &pcert, &ideal)?, linear_generator(&r, size, x[0], x[1], &pcert.value)?),
        Kind::Symplectic => (
            include_i2_symplectic(size, x[0], x[1], &pcert, &ideal)?,
            symplectic_generator(&r, size / 2, x[0], x[1], &pcert.value)?,
        ),
    };
    let ok = w.letters.iter().all(|l| {
        let (i, j) = l.gen.indices().unwrap();
        (i == 1 || j == 1) && l.is_certified_in(&ideal)
    });
    if !ok {
        return mismatch(format!("{x:?} {}", pcert.value), "index-1 certified letters", "violated");
    }
    compare(|| format!("{x:?} {}", pcert.value), &expected, &w.evaluate()?)
}

fn dictionaries_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let n = rng.gen_range(2..=3);

    let word: Vec<Transvection> = (0..rng.gen_range(0..5))
        .map(|_| Transvection {
            kind: if rng.gen_bool(0.5) { TransvectionKind::E } else { TransvectionKind::EStar },
            coords: (0..n).map(|_| cert(rng, &ideal)).collect(),
        })
        .collect();
    let e1 = etrans_word_to_e1(&ideal, n, &word)?;
    let direct = evaluate_transvections(&r, n, &word)?;
    let back = e1_to_etrans(&ideal, &e1)?;
    let inputs = || word.iter().map(|t| t.to_json().to_string()).collect::<String>();
    if e1.evaluate()? != direct || evaluate_transvections(&r, n, &back)? != direct {
        return mismatch(inputs(), direct.to_json(), "linear dictionary changed the evaluation");
    }

    let psi = standard_symplectic_form(&r, n);
    let mut sp = Word::new(&r, 2 * n + 2);
    for _ in 0..rng.gen_range(0..4) {
        let q: Vec<CertifiedElement> = (0..2 * n).map(|_| cert(rng, &ideal)).collect();
        let s = cert(rng, &ideal);
        let qv: Vec<RingElement> = q.iter().map(|c| c.value.clone()).collect();
        let gen = if rng.gen_bool(0.5) {
            Generator::Rho { q: qv, alpha: s.value.clone(), form: psi.clone() }
        } else {
            Generator::Mu { q: qv, beta: s.value.clone(), form: psi.clone() }
        };
        let mut c = q;
        c.push(s);
        sp.push(Letter { gen, inv: rng.gen_bool(0.3), cert: c });
    }
    let esp = etranssp_word_to_esp1(&ideal, n, &sp)?;
    let back = esp1_to_etranssp(&ideal, &esp)?;
    let m = sp.evaluate()?;
    if esp.evaluate()? != m || back.evaluate()? != m || !back.letters.iter().all(|l| l.is_certified_in(&ideal)) {
        return mismatch(sp.to_json().to_string(), m.to_json(), "symplectic dictionary changed the evaluation");
    }

    // Expansions against the block matrices.
    let q = vector(rng, &r, 2 * n);
    let s = elem(rng, &r);
    let er = expand_rho(&q, &s)?.evaluate()?;
    let em = expand_mu(&q, &s)?.evaluate()?;
    if let Err(m) = compare(|| text(&q), &rho_matrix(&q, &s, &psi)?, &er)? {
        return Ok(Err(m));
    }
    compare(|| text(&q), &mu_matrix(&q, &s, &psi)?, &em)
}

fn standardize_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = z27();
    let ideal = three(rng, &r);
    let psi = standard_symplectic_form(&r, 2);
    let mut eps0 = Word::new(&r, 3);
    for _ in 0..rng.gen_range(0..=6) {
        let x = distinct(rng, 3, |x| x[0] != x[1], 2);
        eps0.push(Letter::e_cert(x[0], x[1], cert(rng, &ideal)));
    }
    let p = ExactMatrix::identity(&r, 1).direct_sum(&eps0.evaluate()?);
    let phi = AlternatingForm::new(p.transpose().mul(&psi).mul(&p))?;
    if !pfaffian(&phi.matrix)?.is_one() {
        return mismatch(eps0.to_json().to_string(), "pfaffian 1", phi.pfaffian_cache.to_string());
    }
    let res = standardize_alternating(&phi, &ideal)?;
    let q = ExactMatrix::identity(&r, 1).direct_sum(&res.eps_word.evaluate()?);
    if !res.verified || !res.relative {
        return mismatch(eps0.to_json().to_string(), "verified relative", res.to_json());
    }
    compare(|| eps0.to_json().to_string(), &phi.matrix, &q.transpose().mul(&psi).mul(&q))
}

fn random_alternating(rng: &mut ChaCha8Rng, r: &Ring, size: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(r, size, size);
    for i in 0..size {
        for j in i + 1..size {
            let x = elem(rng, r);
            m.set(j, i, x.neg());
            m.set(i, j, x);
        }
    }
    m
}

fn pfaffian_trial(rng: &mut ChaCha8Rng) -> Trial {
    let r = match rng.gen_range(0..3) {
        0 => zmod(25)?,
        1 => z27(),
        _ => zmod(121)?,
    };
    for n in 1..=4 {
        if !pfaffian(&standard_symplectic_form(&r, n))?.is_one() {
            return mismatch(format!("psi_{n}"), "1", pfaffian(&standard_symplectic_form(&r, n))?);
        }
    }
    for size in [4, 6] {
        let phi = random_alternating(rng, &r, size);
        let pf = pfaffian(&phi)?;
        if pf.mul(&pf) != phi.det()? {
            return mismatch(phi.to_json().to_string(), phi.det()?, pf.mul(&pf));
        }
        let mut a = Word::new(&r, size);
        for _ in 0..rng.gen_range(0..6) {
            let x = distinct(rng, size, |x| x[0] != x[1], 2);
            a.push(Letter::e(x[0], x[1], elem(rng, &r)));
        }
        let am = a.evaluate()?;
        let lhs = pfaffian(&am.transpose().mul(&phi).mul(&am))?;
        let rhs = am.det()?.mul(&pf);
        if lhs != rhs {
            return mismatch(phi.to_json().to_string(), rhs, lhs);
        }
    }
    Ok(Ok(()))
}
