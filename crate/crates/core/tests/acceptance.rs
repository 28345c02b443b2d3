//! Acceptance battery: every criterion runs at its stated tolerance and
//! prints one PASS/FAIL line per check.

use gallai_core::search::SearchLimits;
use gallai_core::suites::{run_suite, ACCEPTANCE_SUITES};

fn run(id: &str) {
    let limits = SearchLimits {
        threads: 2,
        ..SearchLimits::default()
    };
    let report = run_suite(id, &limits, 0xACCE97).unwrap();
    print!("{}", report.render_text());
    assert!(report.passed(), "suite {id} failed:\n{}", report.render_text());
}

#[test]
fn criterion_01_p4_structure_completeness_n4() {
    run("p4-structure-n4");
}

#[test]
fn criterion_02_p5_structure_completeness_n5() {
    run("p5-structure-n5");
}

#[test]
fn criterion_03_rainbow_p4_mono_p3_threshold() {
    run("gallai-p4-p3");
}

#[test]
fn criterion_04_small_path_ramsey_numbers() {
    run("path-ramsey-small");
}

#[test]
fn criterion_05_construction_battery() {
    run("constructions");
}

#[test]
fn criterion_06_connected_pentagon_vs_edge() {
    run("csuper-pentagon-edge");
}

#[test]
fn criterion_07_engine_matches_naive_oracle() {
    run("engine-vs-naive");
}

#[test]
fn criterion_08_partition_balance() {
    run("partition-balance");
}

#[test]
fn criterion_09_sampled_pentagon_property_k11() {
    run("sampled-pentagons-k11");
}

#[test]
fn criterion_10_mono_clique_in_sporadic_cases() {
    run("mono-clique-structure");
}

#[test]
fn acceptance_suite_list_is_complete() {
    assert_eq!(ACCEPTANCE_SUITES.len(), 10);
}
