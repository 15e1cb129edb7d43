use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use orbicoh_core::genus0::{
    betti_genus0, enumerate_stable_trees, enumerate_stable_trees_by_blocks, h, p0, point_count_enumerated,
    point_count_poly, StableTree,
};
use orbicoh_core::poly::Poly;
use orbicoh_core::rational::int;

/// Stable trees with `n` legs, i.e. total partitions of `n - 1` labels.
const TREE_COUNTS: [(usize, usize); 7] = [(3, 1), (4, 4), (5, 26), (6, 236), (7, 2752), (8, 39208), (9, 660032)];

fn split_sets(trees: &[StableTree]) -> BTreeSet<Vec<u64>> {
    trees
        .iter()
        .map(|t| {
            let mut s = t.splits().to_vec();
            s.sort_unstable();
            s
        })
        .collect()
}

#[test]
fn tree_counts() {
    for (n, count) in TREE_COUNTS.into_iter().take(6) {
        let trees = enumerate_stable_trees(n).unwrap();
        assert_eq!(trees.len(), count, "n = {n}");
        assert!(trees.iter().all(StableTree::is_valid));
        assert!(trees.iter().all(|t| t.valences().iter().all(|&v| v >= 3)));
    }
}

#[test]
fn both_enumerations_agree() {
    for n in 3..=7 {
        let a = enumerate_stable_trees(n).unwrap();
        let b = enumerate_stable_trees_by_blocks(n).unwrap();
        assert_eq!(split_sets(&a), split_sets(&b), "n = {n}");
        assert_eq!(a.len(), b.len());
    }
}

#[test]
fn point_counts_agree_through_nine() {
    for n in 3..=9 {
        assert_eq!(point_count_enumerated(n).unwrap(), point_count_poly(n).unwrap(), "n = {n}");
    }
}

#[test]
fn small_point_counts() {
    assert_eq!(point_count_poly(3).unwrap(), Poly::one());
    assert_eq!(point_count_poly(4).unwrap(), Poly::from_ints(&[1, 1]));
    assert_eq!(point_count_poly(5).unwrap(), Poly::from_ints(&[1, 5, 1]));
}

#[test]
fn betti_rows() {
    let totals = [(3, 1u64), (4, 2), (5, 7), (6, 34), (7, 213), (8, 1630)];
    for (n, total) in totals {
        let row = betti_genus0(n).unwrap();
        assert_eq!(row.total(), total, "n = {n}");
        assert!(row.is_palindromic());
        assert_eq!(row.betti.len(), n - 2);
        assert_eq!(row.betti[0], 1);
        assert_eq!(h(n - 1).unwrap(), BigUint::from(total));
    }
    assert_eq!(betti_genus0(6).unwrap().betti, vec![1, 16, 16, 1]);
    assert!(betti_genus0(2).is_err());
    assert_eq!(h(0).unwrap(), BigUint::from(0u32));
    assert_eq!(h(1).unwrap(), BigUint::from(1u32));
}

#[test]
fn p0_leading_terms() {
    let series = p0(6, false).unwrap();
    assert_eq!(series.coeff(0).coeff(0), int(0));
    assert_eq!(series.coeff(1).coeff(0), int(1));
    // h(k) / k!
    assert_eq!(series.coeff(4).coeff(0), orbicoh_core::rational::rat(7, 24));
    let bivariate = p0(6, true).unwrap();
    assert_eq!(bivariate.at_t_one(), series);
}

#[test]
fn genus0_runtime_budget() {
    let start = Instant::now();
    for n in 3..=9 {
        point_count_enumerated(n).unwrap();
    }
    assert!(start.elapsed().as_secs_f64() < 10.0, "{:?}", start.elapsed());
}
