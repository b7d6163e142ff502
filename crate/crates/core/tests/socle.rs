use edepth::socle::*;

#[test]
fn harness_finds_no_counterexample() {
    for kind in PairKind::ALL {
        for n in 2..=3 {
            let s = run_harness(kind, n, 25, 40 + n as u64).unwrap();
            println!("{kind:?} n={n}: {}", serde_json::to_string(&s).unwrap());
            assert!(s.counterexamples.is_empty(), "{:?}", s.counterexamples);
            assert_eq!(s.qualified, s.socle_inequality_failed);
            assert!(s.qualified > 0, "{kind:?} n={n}: no qualifying pair among {}", s.drawn);
        }
    }
}

#[test]
fn harness_is_reproducible() {
    let a = run_harness(PairKind::FilterRegular, 3, 6, 5).unwrap();
    let b = run_harness(PairKind::FilterRegular, 3, 6, 5).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
