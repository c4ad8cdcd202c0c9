//! Acceptance suite: one test per release criterion, each printing its
//! measured figure. Run with `cargo test -p bec2 --test acceptance`
//! (add `-- --nocapture` to see the lines for passing criteria too).

use bec2::verify::{self, VerifyOptions};

fn check(result: bec2::verify::CriterionResult) {
    println!("{}", result.line());
    assert!(result.passed, "{}", result.line());
}

#[test]
fn ac01_conjugation_identity() {
    check(verify::ac01_conjugation_identity(&VerifyOptions::default()));
}

#[test]
fn ac02_manifold_spectrum() {
    check(verify::ac02_manifold_spectrum());
}

#[test]
fn ac03_analytic_vs_numeric_dynamics() {
    check(verify::ac03_analytic_vs_numeric_dynamics());
}

#[test]
fn ac04_revival_periods() {
    check(verify::ac04_revival_periods());
}

#[test]
fn ac05_collapse_time() {
    check(verify::ac05_collapse_time());
}

#[test]
fn ac06_distribution_morphology() {
    check(verify::ac06_distribution_morphology());
}

#[test]
fn ac07_self_trapping_dichotomy() {
    check(verify::ac07_self_trapping_dichotomy());
}

#[test]
fn ac08_entropy_maximum_angle() {
    check(verify::ac08_entropy_maximum_angle());
}

#[test]
fn ac09_entropy_local_minimum() {
    check(verify::ac09_entropy_local_minimum());
}

#[test]
fn ac10_entropy_growth() {
    check(verify::ac10_entropy_growth());
}

#[test]
fn ac11_row_stability() {
    check(verify::ac11_row_stability());
}

#[test]
fn ac12_mapping_roundtrip() {
    check(verify::ac12_mapping_roundtrip());
}

#[test]
fn ac13_convention_report() {
    let (crit, report) = verify::ac13_convention_report();
    println!("{}", crit.line());
    println!(
        "convention: {} ({}); residual {:.3e} adopted vs {:.3e} halved",
        report.adopted, report.dictionary, report.residual_derived, report.residual_halved
    );
    assert!(crit.passed, "{}", crit.line());
}

#[test]
fn full_report_is_green() {
    let report = verify::run_acceptance(&VerifyOptions::default());
    for c in &report.criteria {
        println!("{}", c.line());
    }
    assert!(report.all_passed());
}
