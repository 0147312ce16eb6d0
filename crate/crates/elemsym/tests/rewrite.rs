use elemsym::ideal::{certify, CertifiedElement, IdealPresentation};
use elemsym::rewrite::{rewrite_conjugation_with, specialize_and_check, Kind, RewriteConfig};
use elemsym::ring::{poly, zmod, Ring, RingElement};
use elemsym::{Error, Letter, Word};

fn setup() -> (Ring, Ring, IdealPresentation, CertifiedElement) {
    let r = zmod(27).unwrap();
    let rx = poly(&r, &["X"]).unwrap();
    let ideal = IdealPresentation::principal(&RingElement::int(&r, 3));
    let ix = ideal.extend(&rx).unwrap();
    let x = RingElement::var(&rx, "X").unwrap();
    let a = certify(&ix, vec![x.add(&RingElement::int(&rx, 2))]).unwrap();
    (r, rx, ideal, a)
}

fn single(kind: Kind, size: usize, p: usize, q: usize, c: i64, ideal: &IdealPresentation, r: &Ring) -> Word {
    let ce = certify(ideal, vec![RingElement::int(r, c)]).unwrap();
    let l = match kind {
        Kind::Linear => Letter::e_cert(p, q, ce),
        Kind::Symplectic => Letter::se_cert(p, q, ce),
    };
    Word::from_letters(r, size, vec![l])
}

fn sweep(kind: Kind, size: usize) {
    let (r, _rx, ideal, a) = setup();
    for p in 1..=size {
        for q in 1..=size {
            if p == q || (p != 1 && q != 1) {
                continue;
            }
            for j in 2..=size {
                for (ti, tj) in [(1, j), (j, 1)] {
                    let eps = single(kind, size, p, q, 2, &ideal, &r);
                    let res = rewrite_conjugation_with(kind, &eps, ti, tj, &a, &RewriteConfig::default())
                        .unwrap_or_else(|e| panic!("{kind:?} eps=({p},{q}) target=({ti},{tj}): {e}"));
                    assert!(res.verified && res.shape_ok(), "{kind:?} ({p},{q}) ({ti},{tj})");
                    let two = RingElement::int(&r, 2);
                    let four = RingElement::int(&r, 4);
                    specialize_and_check(&res, &two, &four).unwrap();
                }
            }
        }
    }
}

#[test]
fn sweep_linear() {
    sweep(Kind::Linear, 3);
    sweep(Kind::Linear, 4);
}

#[test]
fn sweep_symplectic() {
    sweep(Kind::Symplectic, 6);
}

#[test]
fn multi_letter_words() {
    use rand::{Rng, SeedableRng};
    let (r, _rx, ideal, a) = setup();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut tags = std::collections::BTreeSet::new();
    for (kind, size) in [(Kind::Linear, 3), (Kind::Linear, 4), (Kind::Symplectic, 6), (Kind::Symplectic, 8)] {
        for _ in 0..12 {
            let mut eps = Word::new(&r, size);
            for _ in 0..rng.gen_range(1..=3) {
                let k = rng.gen_range(2..=size);
                let (p, q) = if rng.gen_bool(0.5) { (1, k) } else { (k, 1) };
                eps.extend(&single(kind, size, p, q, rng.gen_range(1..9), &ideal, &r));
            }
            let j = rng.gen_range(2..=size);
            let (ti, tj) = if rng.gen_bool(0.5) { (1, j) } else { (j, 1) };
            let res = rewrite_conjugation_with(kind, &eps, ti, tj, &a, &RewriteConfig::default()).unwrap();
            assert!(res.verified && res.shape_ok());
            tags.extend(res.case_trace.iter().map(|t| format!("{kind:?} {t}")));
        }
    }
    assert!(tags.iter().any(|t| t.contains("(repaired)")));
    assert!(tags.iter().any(|t| t.contains("(mirrored)")));
}

#[test]
fn corruption_detected() {
    let (r, _rx, ideal, a) = setup();
    for (kind, size, p, q, j, case) in [(Kind::Linear, 3, 3, 1, 3, 3u8), (Kind::Symplectic, 6, 4, 1, 3, 12)] {
        let eps = single(kind, size, p, q, 2, &ideal, &r);
        let strict = RewriteConfig { repair: false, corrupt_case: Some(case) };
        assert!(rewrite_conjugation_with(kind, &eps, 1, j, &a, &strict).is_err());
        let lenient = RewriteConfig { repair: true, corrupt_case: Some(case) };
        let res = rewrite_conjugation_with(kind, &eps, 1, j, &a, &lenient).unwrap();
        assert!(res.verified);
        assert!(res.case_trace.iter().any(|t| t.contains("(repaired)")), "{:?}", res.case_trace);
    }
}

/// Over `(ℤ/27)[T]` with `I = (T)` no power of the ideal vanishes. Every single-letter case must
/// verify, except the opposite long-root pair, which is exact only when `I^3 = 0` and must be
/// rejected rather than returned unverified.
#[test]
fn non_nilpotent_ideal() {
    let r0 = zmod(27).unwrap();
    let rt = poly(&r0, &["T"]).unwrap();
    let t = RingElement::var(&rt, "T").unwrap();
    let it = IdealPresentation::principal(&t);
    let rtx = poly(&rt, &["X"]).unwrap();
    let ax = certify(&it.extend(&rtx).unwrap(), vec![RingElement::var(&rtx, "X").unwrap()]).unwrap();
    for (kind, size) in [(Kind::Linear, 4), (Kind::Symplectic, 6)] {
        for p in 1..=size {
            for q in 1..=size {
                if p == q || (p != 1 && q != 1) {
                    continue;
                }
                for j in 2..=size {
                    for (ti, tj) in [(1, j), (j, 1)] {
                        let eps = single(kind, size, p, q, 1, &it, &rt);
                        let res = rewrite_conjugation_with(kind, &eps, ti, tj, &ax, &RewriteConfig::default());
                        let long_opposite = kind == Kind::Symplectic && (p, q) == (tj, ti) && j == 2;
                        match res {
                            Ok(res) => {
                                assert!(!long_opposite, "({p},{q}) ({ti},{tj}) unexpectedly exact");
                                assert!(res.verified && res.shape_ok());
                            }
                            Err(Error::VerificationFailed(_)) if long_opposite => {}
                            Err(e) => panic!("{kind:?} ({p},{q}) ({ti},{tj}): {e}"),
                        }
                    }
                }
            }
        }
    }
}
