use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use orbicoh_core::generating::{
    confirmed_terms, cr_dimension_twisted, cr_formula_twisted, cr_poincare_buckets, series_check_poincare1,
    series_check_samuel, BucketDiff, OrderCheck, TermCheck,
};
use orbicoh_core::partition::{partitions, stirling2};
use orbicoh_core::rational::{int, rat, Rational};
use orbicoh_core::sector::{
    age, enumerate_sectors, sector_containing, sector_poincare, tabulated_age, twisted_sectors,
};
use orbicoh_core::{Automorphism, BaseType, Partition, Sector};
use proptest::prelude::*;

/// Number of automorphisms labelling a sector, per base type.
fn aut_count(base: BaseType) -> usize {
    use BaseType::*;
    match base {
        A1 | A2 | A3 | A4 => 1,
        C4k1 | C4k2 | C6k2 | C6k3 => 2,
        C6k1 => 4,
    }
}

fn arity(base: BaseType) -> usize {
    use BaseType::*;
    match base {
        A1 | C4k1 | C6k1 => 1,
        A2 | C4k2 | C6k2 => 2,
        A3 | C6k3 => 3,
        A4 => 4,
    }
}

#[test]
fn inventory_counts() {
    assert_eq!(enumerate_sectors(1, true).unwrap().len(), 8);
    assert_eq!(twisted_sectors(1).unwrap().len(), 7);
    assert_eq!(twisted_sectors(2).unwrap().len(), 12);
    assert_eq!(twisted_sectors(4).unwrap().len(), 61);
    for n in 1..=9 {
        let expected: BigUint = BaseType::ALL
            .iter()
            .filter(|b| arity(**b) <= n)
            .map(|&b| stirling2(n, arity(b)) * BigUint::from(aut_count(b)))
            .sum();
        assert_eq!(BigUint::from(twisted_sectors(n).unwrap().len()), expected, "n = {n}");
    }
}

#[test]
fn open_part() {
    for n in 1..=4 {
        assert!(enumerate_sectors(n, false).unwrap().len() > 1);
    }
    for n in 5..=8 {
        assert_eq!(enumerate_sectors(n, false).unwrap(), vec![Sector::untwisted(n)]);
    }
    assert_eq!(enumerate_sectors(4, false).unwrap().len(), 2);
}

#[test]
fn enumeration_is_sorted_and_distinct() {
    for n in 1..=5 {
        let all = enumerate_sectors(n, true).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], Sector::untwisted(n));
    }
}

#[test]
fn involution_is_an_involution() {
    for n in 1..=6 {
        for s in twisted_sectors(n).unwrap() {
            let t = s.involution();
            assert_eq!(t.involution(), s);
            assert_eq!(t.support(), s.support());
            if s.base().unwrap().is_a_type() {
                assert_eq!(t, s);
            }
        }
    }
}

#[test]
fn ages_match_table() {
    for n in 2..=6 {
        for s in twisted_sectors(n).unwrap() {
            assert_eq!(Some(age(&s)), tabulated_age(&s), "{s}");
        }
    }
}

#[test]
fn ages_at_one_point() {
    let one = |base, aut| Sector::new(base, Partition::whole(1), aut).unwrap();
    assert_eq!(age(&one(BaseType::A1, Automorphism::MINUS_ONE)), int(0));
    assert_eq!(age(&one(BaseType::C4k1, Automorphism::I)), rat(1, 2));
    assert_eq!(age(&one(BaseType::C6k1, Automorphism::EPS)), rat(2, 3));
    assert_eq!(age(&one(BaseType::C6k1, Automorphism::EPS5)), rat(1, 3));
}

#[test]
fn ages_pair_with_codimension() {
    let start = Instant::now();
    for n in 1..=10 {
        for s in twisted_sectors(n).unwrap() {
            let total = age(&s) + age(&s.involution());
            assert_eq!(total, Rational::from_integer((s.codim() as i64).into()), "{s}");
            assert_eq!(age(&s).is_zero(), s.codim() == 0, "{s}");
        }
    }
    assert!(start.elapsed().as_secs_f64() < 5.0, "{:?}", start.elapsed());
}

#[test]
fn dimensions() {
    for (n, d) in [(1usize, 8u32), (2, 14), (3, 38)] {
        assert_eq!(cr_dimension_twisted(n).unwrap(), BigUint::from(d));
    }
    for n in 1..=8 {
        assert_eq!(cr_dimension_twisted(n).unwrap(), cr_formula_twisted(n).unwrap(), "n = {n}");
    }
}

#[test]
fn sector_poincare_is_palindromic() {
    for n in 1..=6 {
        for s in twisted_sectors(n).unwrap() {
            let p = sector_poincare(&s).unwrap();
            assert!(p.is_palindromic(), "{s}: {p}");
            assert_eq!(p.degree(), Some(n - s.codim()), "{s}");
        }
    }
}

#[test]
fn buckets_cover_everything() {
    for n in 1..=6 {
        let total: Rational = cr_poincare_buckets(n).unwrap().values().map(|p| p.sum_of_coeffs()).sum();
        assert_eq!(total, Rational::from_integer(cr_dimension_twisted(n).unwrap().into()));
    }
}

#[test]
fn samuel_series() {
    let report = series_check_samuel(8).unwrap();
    assert_eq!(report.len(), 9);
    assert!(report.iter().all(OrderCheck::passed), "{report:?}");
}

#[test]
fn poincare1_diff_and_confirmed_terms() {
    let diff = series_check_poincare1(6).unwrap();
    assert!(!diff.is_empty());
    assert!(diff.iter().filter(|d| d.n == 0).all(BucketDiff::matches));
    assert!(confirmed_terms(6).unwrap().iter().all(TermCheck::passed));
}

#[test]
fn containing_sector() {
    let p = Partition::new(3, vec![vec![1, 3], vec![2]]).unwrap();
    let support = orbicoh_core::Support::new(BaseType::C4k2, p.clone()).unwrap();
    let s = sector_containing(&support, Automorphism::MINUS_ONE).unwrap();
    assert_eq!(s, Sector::new(BaseType::A2, p, Automorphism::MINUS_ONE).unwrap());
    let c6 = orbicoh_core::Support::new(BaseType::C6k1, Partition::whole(3)).unwrap();
    assert_eq!(sector_containing(&c6, Automorphism::EPS2).unwrap().aut(), Automorphism::EPS2);
    assert_eq!(sector_containing(&c6, Automorphism::MINUS_ONE).unwrap().base(), Some(BaseType::A1));
    assert!(Sector::new(BaseType::C6k2, Partition::singletons(2), Automorphism::EPS).is_err());
    assert!(Sector::new(BaseType::A2, Partition::whole(2), Automorphism::MINUS_ONE).is_err());
}

#[test]
fn integral_bucket_at_one_point() {
    let b = cr_poincare_buckets(1).unwrap();
    assert_eq!(b[&int(0)].sum_of_coeffs(), int(2));
}

fn relabel(s: &Sector, perm: &[usize]) -> Sector {
    match s.partition() {
        None => s.clone(),
        Some(p) => Sector::new(s.base().unwrap(), p.permuted(perm).unwrap(), s.aut()).unwrap(),
    }
}

proptest! {
    #[test]
    fn age_is_relabelling_invariant(n in 2usize..7, pick in any::<usize>(), rot in any::<usize>()) {
        let all = twisted_sectors(n).unwrap();
        let s = &all[pick % all.len()];
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.rotate_left(rot % n);
        perm.swap(0, n - 1);
        let t = relabel(s, &perm);
        prop_assert_eq!(age(&t), age(s));
        prop_assert_eq!(t.codim(), s.codim());
        prop_assert_eq!(sector_poincare(&t).unwrap(), sector_poincare(s).unwrap());
        prop_assert!(all.contains(&t));
    }

    #[test]
    fn partitions_cover_block_counts(n in 1usize..8) {
        let count: usize = (1..=n).map(|k| partitions(n, k).unwrap().len()).sum();
        prop_assert_eq!(BigUint::from(count), orbicoh_core::partition::bell(n));
    }
}
