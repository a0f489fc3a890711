//! Acceptance suite: one test per criterion, each printing its pass line.
//!
//! The criteria live in `annular_kh::selftest` so that `akh selftest`
//! runs exactly the same checks as this suite.

use annular_kh::selftest;

fn assert_criterion(outcome: selftest::CriterionOutcome) {
    let tag = if outcome.passed { "PASS" } else { "FAIL" };
    println!(
        "{tag} criterion {:>2}: {} — {}",
        outcome.id, outcome.name, outcome.detail
    );
    assert!(outcome.passed, "criterion {} failed: {}", outcome.id, outcome.detail);
}

#[test]
fn criterion_01_crossingless_dimension_formula() {
    assert_criterion(selftest::crossingless_dimensions());
}

#[test]
fn criterion_02_differentials_square_to_zero() {
    assert_criterion(selftest::differentials_square_to_zero(false, &[]));
}

#[test]
fn criterion_03_diagram_invariance() {
    assert_criterion(selftest::diagram_invariance());
}

#[test]
fn criterion_04_braid_detection() {
    assert_criterion(selftest::braid_detection());
}

#[test]
fn criterion_05_in_ball_reduction() {
    assert_criterion(selftest::in_ball_reduction());
}

#[test]
fn criterion_06_winding_spectral_sequence() {
    assert_criterion(selftest::winding_spectral_sequence());
}

#[test]
fn criterion_07_cube_engine() {
    assert_criterion(selftest::cube_engine());
}

#[test]
fn criterion_08_certificates() {
    assert_criterion(selftest::certificates());
}

#[test]
fn criterion_09_oracle_equivalence() {
    assert_criterion(selftest::oracle_equivalence());
}

#[test]
fn criterion_10_performance_floor() {
    assert_criterion(selftest::performance_floor());
}
