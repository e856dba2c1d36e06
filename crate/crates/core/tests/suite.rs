use raag_core::{run_suite, SuiteConfig};

#[test]
fn default_suite_passes() {
    let report = run_suite(&SuiteConfig::default());
    assert!(
        report.ok(),
        "{}",
        serde_json::to_string_pretty(&report).unwrap()
    );
    for name in [
        "chordality_soundness",
        "contractibility_and_cut_rank",
        "cover_truncation",
        "euler_bookkeeping",
        "main_equality",
        "multiplicativity",
        "negative_control",
        "seminorm",
    ] {
        assert!(report.checks[name].passed > 0, "{name} never ran");
    }
}

#[test]
fn tiny_sizes_cover_singletons_and_edges() {
    let report = run_suite(&SuiteConfig {
        samples: 30,
        max_n: 2,
        seed: 11,
        inject_non_chordal: false,
    });
    assert!(report.ok());
    assert!(report.checks["main_equality"].passed > 0);
    assert!(report.checks["main_equality"].passed < 30);
}

#[test]
fn injected_cycle_is_a_domain_error() {
    let report = run_suite(&SuiteConfig {
        samples: 3,
        max_n: 5,
        seed: 0,
        inject_non_chordal: true,
    });
    assert!(report.ok());
    assert_eq!(report.checks["domain_errors"].passed, 3);
}

#[test]
fn config_parses_without_injection_flag() {
    let cfg: SuiteConfig = serde_json::from_str(r#"{"samples":5,"max_n":4,"seed":9}"#).unwrap();
    assert!(!cfg.inject_non_chordal);
    assert_eq!(run_suite(&cfg), run_suite(&cfg));
}
