use std::time::Instant;

use swf_core::selfcheck::run_all;

#[test]
fn all_suites_pass_at_full_size() {
    let start = Instant::now();
    let reports = run_all(500, 2024);
    for r in &reports {
        assert!(r.passed(), "{}: {:?}", r.name, r.failures);
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn different_seeds_still_pass() {
    for seed in [0, 1, u64::MAX] {
        for r in run_all(80, seed) {
            assert!(r.passed(), "seed {seed}: {}: {:?}", r.name, r.failures);
        }
    }
}
