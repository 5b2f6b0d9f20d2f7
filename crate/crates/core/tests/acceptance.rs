//! Acceptance criteria 1 to 10, one line each.

use normalis_core::verify::suite::{criterion, CRITERIA};

fn run(id: u8) {
    let item = criterion(id);
    println!("{item}");
    assert!(item.passed, "{item}");
}

#[test]
fn criterion_01_planar_even_extremal() {
    run(1);
}

#[test]
fn criterion_02_planar_odd_extremal() {
    run(2);
}

#[test]
fn criterion_03_planar_bound_sweep() {
    run(3);
}

#[test]
fn criterion_04_sphere_strict_bound() {
    run(4);
}

#[test]
fn criterion_05_sphere_weak_bound_and_equality() {
    run(5);
}

#[test]
fn criterion_06_gabriel_bound() {
    run(6);
}

#[test]
fn criterion_07_layered_construction() {
    run(7);
}

#[test]
fn criterion_08_padding() {
    run(8);
}

#[test]
fn criterion_09_structural_invariants() {
    run(9);
}

#[test]
fn criterion_10_search_sanity() {
    run(10);
}

#[test]
fn every_criterion_is_covered() {
    let ids: Vec<u8> = CRITERIA.iter().map(|c| c.0).collect();
    assert_eq!(ids, (1..=10).collect::<Vec<u8>>());
}
