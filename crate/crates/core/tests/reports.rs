//! Report determinism, the stored N = 3 lattice report, and run_suite gates.

use qdsr::report::{emit_report, exit_code, parse_report, run_suite, Format, Status, Suite, SuiteConfig, ANCHORS, CHECKS};

fn lattice_n3() -> SuiteConfig {
    SuiteConfig { suite: Suite::Lattice, n: 3, points: 5, seed: 42, ..SuiteConfig::default() }
}

#[test]
fn same_config_gives_same_bytes() {
    let config = SuiteConfig { suite: Suite::All, n: 5, points: 2, seed: 7, ..SuiteConfig::default() };
    let a = emit_report(&config, &run_suite(&config).unwrap(), Format::Json);
    let b = emit_report(&config, &run_suite(&config).unwrap(), Format::Json);
    assert_eq!(a, b);
    let md_a = emit_report(&config, &run_suite(&config).unwrap(), Format::Markdown);
    let md_b = emit_report(&config, &run_suite(&config).unwrap(), Format::Markdown);
    assert_eq!(md_a, md_b);
}

#[test]
fn lattice_n3_matches_golden() {
    let golden = include_str!("golden/lattice_n3.json");
    let results = run_suite(&lattice_n3()).unwrap();
    assert_eq!(emit_report(&lattice_n3(), &results, Format::Json), golden);
    assert_eq!(exit_code(&results), 0);
}

#[test]
fn golden_parses_back() {
    let doc: serde_json::Value = serde_json::from_str(include_str!("golden/lattice_n3.json")).unwrap();
    let (config, checks) = parse_report(&doc).unwrap();
    assert_eq!(config, lattice_n3());
    assert!(checks.iter().all(|c| c.status != Status::Fail));
}

#[test]
fn even_n_skips_odd_only_checks() {
    let config = SuiteConfig { suite: Suite::Lattice, n: 4, points: 1, ..SuiteConfig::default() };
    let results = run_suite(&config).unwrap();
    for id in ["lattice.ftv", "lattice.reduction", "lattice.miura", "lattice.nu", "lattice.root_unity"] {
        let r = results.iter().find(|r| r.id == id).unwrap();
        assert_eq!((r.status, r.details.as_str()), (Status::Skipped, "odd N required"), "{id}");
    }
    assert_eq!(exit_code(&results), 0);
}

#[test]
fn controls_are_marked() {
    let results = run_suite(&lattice_n3()).unwrap();
    let controls: Vec<&str> = results.iter().filter(|r| r.negative_control).map(|r| r.id.as_str()).collect();
    assert_eq!(controls, ["lattice.action.control", "lattice.cybe.control", "lattice.jacobi.control"]);
    assert!(results.iter().filter(|r| r.negative_control).all(|r| r.status == Status::Pass && r.residual != "0"));
}

#[test]
fn invalid_configs_are_rejected() {
    for bad in [
        SuiteConfig { points: 0, ..SuiteConfig::default() },
        SuiteConfig { suite: Suite::Lattice, n: 2, ..SuiteConfig::default() },
        SuiteConfig { mode_range: -1, ..SuiteConfig::default() },
    ] {
        assert!(run_suite(&bad).is_err(), "{bad:?}");
    }
    // the loop suite does not touch N
    let ok = SuiteConfig { suite: Suite::Loop, n: 1, points: 1, ..SuiteConfig::default() };
    assert!(run_suite(&ok).is_ok());
}

#[test]
fn every_anchor_is_in_the_guide() {
    let guide = include_str!("../../../book/src/anchors.md");
    for (tag, _, _) in ANCHORS {
        assert!(guide.contains(&format!("`{tag}`")), "{tag} missing from anchors.md");
    }
    for c in CHECKS {
        assert!(guide.contains(&format!("`{}`", c.id)), "{} missing from anchors.md", c.id);
    }
}
