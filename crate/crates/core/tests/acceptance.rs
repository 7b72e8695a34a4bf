//! The acceptance suite, one test per criterion. Each prints a single
//! `[PASS]` or `[FAIL]` line (visible with `--nocapture`) and fails when the
//! criterion is not met at its stated tolerance.

use dynamo_lab::validation::{run_criterion, CriterionReport};

fn check(id: u32) {
    let report: CriterionReport = run_criterion(id).expect("known criterion");
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn c01_robin_roots_are_bessel_zeros() {
    check(1);
    assert!(run_criterion(1).unwrap().elapsed.as_secs_f64() < 5.0);
}

#[test]
fn c02_closed_form_spectra_and_interlacing() {
    check(2);
}

#[test]
fn c03_basis_confluence_rate() {
    check(3);
}

#[test]
fn c04_feshbach_and_block_agree() {
    check(4);
}

#[test]
fn c05_high_conductivity_limit() {
    check(5);
}

#[test]
fn c06_boundary_shift() {
    check(6);
}

#[test]
fn c07_radial_oscillator_anchor() {
    check(7);
}

#[test]
fn c08_kappa_scaling() {
    check(8);
}

#[test]
fn c09_perturbative_correction_oracle() {
    check(9);
}

#[test]
fn c10_osculating_pairs() {
    check(10);
}

#[test]
fn c11_cross_solver_agreement() {
    check(11);
}
