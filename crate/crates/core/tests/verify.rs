use pcclone::verify::{run_suite, scale_thresholds, Suite};

#[test]
fn every_suite_passes() {
    let checks = run_suite(Suite::All).unwrap();
    assert!(checks.len() > 40);
    for c in &checks {
        assert!(c.passed(), "{}: {} > {}", c.name, c.defect, c.threshold);
    }
}

#[test]
fn suites_partition_all() {
    let all = run_suite(Suite::All).unwrap().len();
    let parts: usize = [Suite::Angular, Suite::Symmetry, Suite::Cloner, Suite::Opa]
        .into_iter()
        .map(|s| run_suite(s).unwrap().len())
        .sum();
    assert_eq!(all, parts);
}

#[test]
fn angular_rows_are_exact() {
    let checks = run_suite(Suite::Angular).unwrap();
    assert!(checks.iter().all(|c| c.threshold == 0.0 && c.defect == 0.0));
}

#[test]
fn tightened_thresholds_fail() {
    let mut checks = run_suite(Suite::Opa).unwrap();
    scale_thresholds(&mut checks, 0.0);
    // float rows carry roundoff, so a zero tolerance fails at least one
    assert!(checks.iter().any(|c| !c.passed()));
    assert!("bogus".parse::<Suite>().is_err());
}
