use elemsym::verify::{run_suite, SUITES};

#[test]
fn every_suite_passes_small() {
    for s in SUITES {
        let t = std::time::Instant::now();
        let rep = run_suite(s, 20, 1).unwrap();
        eprintln!("{s}: {} failures in {:?}", rep.failures.len(), t.elapsed());
        assert!(rep.passed(), "{s}: {:?}", rep.failures.first());
    }
}

#[test]
fn unknown_suite_rejected() {
    assert!(run_suite("nope", 1, 0).is_err());
    assert_eq!(run_suite("relations", 0, 0).unwrap().trials, 0);
}
