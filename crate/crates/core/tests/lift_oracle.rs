//! Polygon enumeration against the lift brute force on every torus fixture.

#[path = "support/lift.rs"]
mod lift;

use flatfuk_core::fixtures;
use flatfuk_core::Q;
use lift::{check, oracle};
use num_traits::One;
use std::collections::BTreeMap;

#[test]
fn pushoff_equal_matches_lifts() {
    assert!(check("torus-pushoff-equal") > 0);
}

#[test]
fn pushoff_unequal_matches_lifts() {
    assert!(check("torus-pushoff-unequal") > 0);
}

#[test]
fn pushoff_built_matches_lifts() {
    assert!(check("torus-pushoff-built") > 0);
}

#[test]
fn theta_matches_lifts() {
    assert_eq!(check("torus-theta"), 9);
}

#[test]
fn four_slope_matches_lifts() {
    assert!(check("torus-four-slope") > 0);
}

#[test]
fn twist_matches_lifts() {
    check("torus-twist");
}

#[test]
fn cone_matches_lifts() {
    check("torus-cone");
}

#[test]
fn theta_exponents_by_lifts() {
    let scene = fixtures::generate("torus-theta").unwrap();
    let arr = scene.arrangement();
    let seq: Vec<usize> = ["L0", "Linf", "L1"].iter().map(|n| scene.curve_index(n).unwrap()).collect();
    let mut by_area: BTreeMap<Q, i64> = BTreeMap::new();
    for (a, s, _, _) in oracle(&scene, &arr, &seq, &Q::one()) {
        *by_area.entry(a).or_default() += i64::from(s);
    }
    let frozen: Vec<Q> = [(1, 32), (9, 32), (25, 32)].iter().map(|&(n, d)| Q::new(n.into(), d.into())).collect();
    assert_eq!(by_area.keys().cloned().collect::<Vec<_>>(), frozen);
    assert!(by_area.values().all(|c| c.abs() == 1));
}
