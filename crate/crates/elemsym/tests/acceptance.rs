//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use elemsym::decompose::decompose_conjugate;
use elemsym::ideal::{certify, IdealPresentation};
use elemsym::rewrite::{include_i2_linear, rewrite_conjugation_with, Kind, RewriteConfig};
use elemsym::ring::{poly, zmod, RingElement};
use elemsym::verify::{run_rewrite, run_suite, SuiteReport};
use elemsym::{Error, Letter, Word};

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(runs: Vec<SuiteReport>, budget: Duration, elapsed: Duration) -> Outcome {
    let bad: Vec<String> = runs
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} ({} of {} failed, first seed {})", r.suite, r.failures.len(), r.trials, r.failures[0].seed))
        .collect();
    let total: usize = runs.iter().map(|r| r.trials).sum();
    let in_time = elapsed < budget;
    Outcome {
        ok: bad.is_empty() && in_time,
        detail: if bad.is_empty() {
            format!("{total} trials, 0 failures, {:.2}s (budget {}s)", elapsed.as_secs_f64(), budget.as_secs())
        } else {
            format!("failures: {}", bad.join("; "))
        } + if in_time { "" } else { " over time budget" },
    }
}

fn timed(budget: u64, f: impl FnOnce() -> Vec<SuiteReport>) -> Outcome {
    let t = Instant::now();
    let runs = f();
    suites(runs, Duration::from_secs(budget), t.elapsed())
}

fn suite(name: &str, trials: usize, seed: u64) -> SuiteReport {
    run_suite(name, trials, seed).expect("known suite")
}

fn negative_controls() -> Outcome {
    let mut notes = vec![];
    let mut ok = true;
    let mut expect = |label: &str, r: Result<(), Error>, want: fn(&Error) -> bool| match r {
        Err(e) if want(&e) => notes.push(format!("{label}: {e}")),
        other => {
            ok = false;
            notes.push(format!("{label}: unexpected {other:?}"));
        }
    };

    // 2 is not a unit in ℤ/8.
    let z8 = zmod(8).unwrap();
    let i8 = IdealPresentation::principal(&RingElement::int(&z8, 2));
    let a8 = certify(&i8, vec![RingElement::int(&z8, 1)]).unwrap();
    let g8 = Word::new(&z8, 6);
    expect("ℤ/8 decomposition", decompose_conjugate(&g8, 1, 3, &a8, &a8).map(|_| ()), |e| {
        matches!(e, Error::TwoNotInvertible)
    });

    let r = zmod(27).unwrap();
    let ideal = IdealPresentation::principal(&RingElement::int(&r, 3));
    let a = certify(&ideal, vec![RingElement::int(&r, 1)]).unwrap();
    let small = |e: &Error| matches!(e, Error::DimensionTooSmall(_));
    expect("n = 2 decomposition", decompose_conjugate(&Word::new(&r, 4), 1, 3, &a, &a).map(|_| ()), small);
    let p = certify(&ideal.square(), vec![RingElement::int(&r, 1)]).unwrap();
    expect("n = 2 linear inclusion", include_i2_linear(2, 1, 2, &p, &ideal).map(|_| ()), small);
    let rx = poly(&r, &["X"]).unwrap();
    let ax = certify(&ideal.extend(&rx).unwrap(), vec![RingElement::var(&rx, "X").unwrap()]).unwrap();
    let eps2 = Word::from_letters(&r, 2, vec![Letter::e_cert(2, 1, a.clone())]);
    expect(
        "n = 2 linear rewriting",
        rewrite_conjugation_with(Kind::Linear, &eps2, 1, 2, &ax, &RewriteConfig::default()).map(|_| ()),
        small,
    );

    // Every stated single-letter formula that is used as-is must be caught when corrupted.
    let cases: &[(Kind, usize, usize, usize, usize, u8)] = &[
        (Kind::Linear, 3, 1, 2, 2, 1),
        (Kind::Linear, 3, 1, 3, 2, 2),
        (Kind::Linear, 3, 2, 1, 2, 3),
        (Kind::Linear, 3, 3, 1, 2, 4),
        (Kind::Symplectic, 6, 1, 2, 2, 1),
        (Kind::Symplectic, 6, 1, 3, 2, 2),
        (Kind::Symplectic, 6, 3, 1, 2, 4),
        (Kind::Symplectic, 6, 1, 2, 3, 5),
        (Kind::Symplectic, 6, 1, 5, 3, 6),
        (Kind::Symplectic, 6, 1, 3, 3, 7),
        (Kind::Symplectic, 6, 5, 1, 3, 10),
        (Kind::Symplectic, 6, 4, 1, 3, 12),
    ];
    for &(kind, size, p, q, j, case) in cases {
        let c = certify(&ideal, vec![RingElement::int(&r, 1)]).unwrap();
        let l = match kind {
            Kind::Linear => Letter::e_cert(p, q, c),
            Kind::Symplectic => Letter::se_cert(p, q, c),
        };
        let eps = Word::from_letters(&r, size, vec![l]);
        let cfg = RewriteConfig { repair: false, corrupt_case: Some(case) };
        expect(
            &format!("corrupted {kind:?} case {case}"),
            rewrite_conjugation_with(kind, &eps, 1, j, &ax, &cfg).map(|_| ()),
            |e| matches!(e, Error::VerificationFailed(_)),
        );
    }
    Outcome { ok, detail: format!("{} controls: {}", notes.len(), notes.join(" | ")) }
}

fn main() {
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "relation families", timed(10, || vec![suite("relations", 300, 42)])),
        (
            2,
            "lemma identities",
            timed(30, || {
                ["short-root", "long-root", "reduce", "split", "sum-to-product", "unimodular"]
                    .iter()
                    .map(|s| suite(s, 100, 7))
                    .collect()
            }),
        ),
        (3, "conjugate decomposition end to end", timed(60, || vec![suite("decompose", 100, 11)])),
        (
            4,
            "conjugation rewriters",
            timed(120, || {
                let mut v = vec![];
                for r in 1..=3 {
                    v.push(run_rewrite(Kind::Linear, r, 50, 100 + r as u64));
                    v.push(run_rewrite(Kind::Symplectic, r, 50, 200 + r as u64));
                }
                v
            }),
        ),
        (5, "transvection dictionaries and expansions", timed(60, || vec![suite("dictionaries", 200, 13)])),
        (6, "alternating form standardization", timed(60, || vec![suite("standardize", 50, 17)])),
        (7, "pfaffian identities", timed(60, || vec![suite("pfaffian", 100, 19)])),
        (8, "negative controls", negative_controls()),
    ];
    let mut all = true;
    for (n, name, o) in &results {
        all &= o.ok;
        println!("criterion {n} [{}] {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
