//! The acceptance gate: one test per criterion, each printing its
//! pass/fail line (visible with `cargo test --test acceptance --
//! --nocapture`). The same criteria run from `obstructa selftest`.

use obstructa::complexes::SolverOptions;
use obstructa::selftest;
use std::sync::Mutex;

// criteria carry wall-time budgets, so they must not compete for cores
static GATE: Mutex<()> = Mutex::new(());

fn options() -> SolverOptions {
    SolverOptions { threads: 1 }
}

fn assert_criterion(run: impl FnOnce() -> selftest::CriterionOutcome) {
    let _serial = GATE.lock().unwrap_or_else(|poisoned| poisoned.into_inner());
    let outcome = run();
    println!("{}", outcome.line());
    assert!(outcome.pass, "{}", outcome.line());
}

#[test]
fn criterion_1_bundled_ks_instances_uncolorable() {
    assert_criterion(|| selftest::criterion_1_ks_instances(&options()));
}

#[test]
fn criterion_2_boolean_colimits_collapse() {
    assert_criterion(selftest::criterion_2_lindenbaum_colimits);
}

#[test]
fn criterion_3_spectrum_pipelines_trivialize() {
    assert_criterion(|| selftest::criterion_3_spectra_nogo(&options()));
}

#[test]
fn criterion_4_tri_equivalence_oracle() {
    assert_criterion(|| selftest::criterion_4_tri_equivalence(&options()));
}

#[test]
fn criterion_5_duality_round_trips() {
    assert_criterion(selftest::criterion_5_duality_round_trips);
}

#[test]
fn criterion_6_boolean_closure() {
    assert_criterion(|| selftest::criterion_6_boolean_closure(&options()));
}

#[test]
fn criterion_7_regularity_collapse() {
    assert_criterion(selftest::criterion_7_regularity_collapse);
}

#[test]
fn criterion_8_category_kernel() {
    assert_criterion(|| selftest::criterion_8_kernel(&options()));
}

#[test]
fn criterion_9_deterministic_output() {
    assert_criterion(selftest::criterion_9_determinism);
}
