use bordcalc_core::{verify, Engine};

fn passes(suite: &str, degree: i64) {
    let report = verify(suite, degree, &Engine::default()).unwrap();
    let failures: Vec<_> = report.failures().collect();
    assert!(failures.is_empty(), "{suite} up to {degree}: {failures:#?}");
}

#[test]
fn all_suites_through_degree_six() {
    passes("all", 6);
}

#[test]
fn gamma_through_degree_six() {
    passes("gamma", 6);
}

#[test]
fn basis_through_degree_five() {
    let report = verify("basis", 5, &Engine::default()).unwrap();
    let d5 = report
        .checks
        .iter()
        .find(|c| c.name == "basis images independent" && c.degree == Some(5))
        .unwrap();
    assert!(d5.passed, "{}", d5.detail);
    passes("basis", 5);
}

#[test]
fn degree_zero_sweep_is_trivial() {
    let report = verify("all", 0, &Engine::default()).unwrap();
    assert!(report.passed());
    assert!(report.checks.iter().any(|c| c.name == "rank N_0 = 1"));
}
