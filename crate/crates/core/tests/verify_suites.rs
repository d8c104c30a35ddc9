use kiselman::verify::{self, Suite, VerifyConfig};

#[test]
fn rank_three_passes_everything() {
    let cfg = VerifyConfig::default();
    let report = verify::run(&Suite::ALL, &cfg).unwrap();
    let failures: Vec<_> = report.failures().collect();
    assert!(failures.is_empty(), "{failures:#?}");
    for suite in Suite::ALL {
        assert!(
            report.checks.iter().any(|c| c.suite == suite),
            "{suite} ran no checks"
        );
    }
}

#[test]
fn report_is_deterministic_without_timing() {
    let cfg = VerifyConfig {
        max_rank: 4,
        exhaustive_budget: 1_000,
        samples: 200,
        ..VerifyConfig::default()
    };
    let run = || {
        let mut r = verify::run(&[Suite::Kiselman, Suite::Morphisms], &cfg).unwrap();
        r.clear_timing();
        serde_json::to_string(&r).unwrap()
    };
    let first = run();
    assert_eq!(first, run());
    assert!(!first.contains("wall_time"));
    assert!(first.contains("sampled 200"));
}

#[test]
fn units_suite_reports_identity_only() {
    let checks = verify::run_suite(Suite::Units, &VerifyConfig::default()).unwrap();
    assert!(checks.iter().all(|c| c.passed));
    assert_eq!(
        checks
            .iter()
            .filter(|c| c.id == "units.identity_only")
            .count(),
        3
    );
    assert_eq!(
        checks
            .iter()
            .filter(|c| c.id == "units.exhaustive_pair_search")
            .count(),
        3
    );
}
