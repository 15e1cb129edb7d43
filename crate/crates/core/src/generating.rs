//! Graded dimensions of the twisted part of the Chen–Ruan cohomology and
//! the generating-series identities they satisfy.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{inconsistent, Result};
use crate::genus0::{p0, Genus0Rows};
use crate::partition::{compositions, factorial, multinomial};
use crate::poly::Poly;
use crate::rational::{floor, fract, int, rat, Rational};
use crate::sector::{age, sector_poincare_with, twisted_sectors, BaseType, Sector};
use crate::series::TruncatedSeries;

fn to_biguint(r: &Rational) -> Result<BigUint> {
    if !r.is_integer() {
        return Err(inconsistent!("expected an integer dimension, got {r}"));
    }
    r.to_integer().to_biguint().ok_or_else(|| inconsistent!("negative dimension {r}"))
}

/// Total dimension of the twisted sectors of `M̄_{1,n}`, by enumeration.
pub fn cr_dimension_twisted(n: usize) -> Result<BigUint> {
    let rows = Genus0Rows::up_to(n + 1)?;
    let mut total = Rational::zero();
    for s in twisted_sectors(n)? {
        total += sector_poincare_with(&s, &rows)?.sum_of_coeffs();
    }
    to_biguint(&total)
}

/// The same dimension from the closed formula in `h`:
/// `8h(n) + 3Σ(n;i,j)h h + (2/3)Σ(n;i,j,k)h h h + (1/12)Σ(n;i,j,k,l)h h h h`,
/// summed over ordered tuples of positive parts.
pub fn cr_formula_twisted(n: usize) -> Result<BigUint> {
    let rows = Genus0Rows::up_to(n + 1)?;
    let h: Vec<BigInt> = (0..=n).map(|i| BigInt::from(rows.h(i))).collect();
    let weights = [int(8), int(3), rat(2, 3), rat(1, 12)];
    let mut total = Rational::zero();
    for (k, weight) in weights.iter().enumerate() {
        let mut sum = BigInt::zero();
        for parts in compositions(n, k + 1) {
            let product = parts.iter().fold(BigInt::from(multinomial(n, &parts)), |acc, &p| acc * &h[p]);
            sum += product;
        }
        total += weight * Rational::from_integer(sum);
    }
    to_biguint(&total)
}

/// Fractional parts of ages that occur.
pub fn age_fractions() -> [Rational; 6] {
    [int(0), rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3), rat(3, 4)]
}

/// Graded pieces keyed by the fractional part of the age: each twisted
/// sector adds `t^floor(age) · P(sector)`.
pub fn cr_poincare_buckets(n: usize) -> Result<BTreeMap<Rational, Poly>> {
    buckets_where(n, |_| true)
}

/// As [`cr_poincare_buckets`], restricted to sectors with `k` blocks.
pub fn cr_poincare_buckets_by_arity(n: usize, k: usize) -> Result<BTreeMap<Rational, Poly>> {
    buckets_where(n, |s| s.base().map(BaseType::arity) == Some(k))
}

fn buckets_where(n: usize, keep: impl Fn(&Sector) -> bool) -> Result<BTreeMap<Rational, Poly>> {
    let rows = Genus0Rows::up_to(n + 1)?;
    let mut buckets: BTreeMap<Rational, Poly> =
        age_fractions().into_iter().map(|a| (a, Poly::zero())).collect();
    for s in twisted_sectors(n)?.iter().filter(|s| keep(s)) {
        let a = age(s);
        let shift = floor(&a).to_usize().expect("nonnegative age");
        let slot = buckets
            .get_mut(&fract(&a))
            .ok_or_else(|| inconsistent!("unexpected age {a} for {s}"))?;
        *slot = &*slot + &sector_poincare_with(s, &rows)?.shift(shift);
    }
    Ok(buckets)
}

/// Exponential generating series `Σ_{n=1..order} f(n) s^n / n!`.
fn egf(order: usize, mut f: impl FnMut(usize) -> Result<Poly>) -> Result<TruncatedSeries> {
    let mut coeffs = vec![Poly::zero(); order + 1];
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let inv = Rational::new(1.into(), BigInt::from(factorial(n)));
        *slot = f(n)?.scale(&inv);
    }
    Ok(TruncatedSeries::from_coeffs(order, coeffs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCheck {
    pub order: usize,
    /// Coefficient of `s^order` from the enumerated sectors.
    pub enumerated: Rational,
    /// Coefficient of `s^order` from the closed series.
    pub expected: Rational,
}

impl OrderCheck {
    pub fn passed(&self) -> bool {
        self.enumerated == self.expected
    }
}

/// Compares, order by order up to `s^order`, the twisted dimensions against
/// `8P0 + 3P0² + (2/3)P0³ + (1/12)P0⁴` (univariate `P0`).
pub fn series_check_samuel(order: usize) -> Result<Vec<OrderCheck>> {
    let enumerated = egf(order, |n| {
        Ok(Poly::constant(Rational::from_integer(cr_dimension_twisted(n)?.into())))
    })?;
    let p = p0(order, false)?;
    let expected = p
        .scale(&int(8))
        .add(&p.pow(2).scale(&int(3)))?
        .add(&p.pow(3).scale(&rat(2, 3)))?
        .add(&p.pow(4).scale(&rat(1, 12)))?;
    Ok((0..=order)
        .map(|k| OrderCheck {
            order: k,
            enumerated: enumerated.coeff(k).coeff(0),
            expected: expected.coeff(k).coeff(0),
        })
        .collect())
}

/// One coefficient of one graded series: `n!·[s^n t^m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketDiff {
    pub fraction: Rational,
    pub n: usize,
    pub m: usize,
    pub enumerated: Rational,
    pub stated: Rational,
}

impl BucketDiff {
    pub fn matches(&self) -> bool {
        self.enumerated == self.stated
    }
}

/// The closed expressions for the six graded twisted series, without the
/// untwisted series in the integral-age bucket. They are evaluated to order
/// `order + 3` so that derivatives can be truncated back.
pub fn stated_bucket_series(order: usize) -> Result<BTreeMap<Rational, TruncatedSeries>> {
    let wide = order + 3;
    let p = p0(wide, true)?;
    let p2 = p.pow(2);
    let p3 = p.pow(3);
    let p4 = p.pow(4);
    let t = |coeffs: &[i64]| Poly::from_ints(coeffs);
    // s^k ∂^k/∂s^k (s^k P0), all at order `wide`
    let lift = |k: usize| -> TruncatedSeries {
        let mut x = p.shift(k);
        for _ in 0..k {
            x = x.d_ds();
        }
        let x = TruncatedSeries::from_coeffs(wide, x.coeffs().to_vec());
        x.shift(k)
    };
    let d1 = lift(1);
    let d2 = lift(2);
    let d3 = lift(3);
    let s = |x: &TruncatedSeries| x.shift(1);

    let sum = |terms: Vec<TruncatedSeries>| -> Result<TruncatedSeries> {
        let mut acc = TruncatedSeries::zero(wide);
        for x in terms {
            acc = acc.add(&x)?;
        }
        acc.truncate(order)
    };

    let mut out = BTreeMap::new();
    // integral ages
    out.insert(
        int(0),
        sum(vec![
            p.scale_poly(&t(&[0, 1, 1])),
            s(&p2.scale_poly(&t(&[0, 0, 3, 3]))),
            s(&p3.scale_poly(&t(&[0, 0, 0, 1, 1]).scale(&rat(1, 24)))),
            d1.scale_poly(&t(&[0, 2, 2])),
            d3.scale_poly(&t(&[0, 0, 1, 1]).scale(&rat(1, 6))),
        ])?,
    );
    out.insert(rat(1, 4), sum(vec![p.scale_poly(&t(&[0, 1])), p2.scale_poly(&Poly::monomial(2, rat(1, 2)))])?);
    out.insert(
        rat(1, 3),
        sum(vec![
            p2.scale_poly(&Poly::monomial(2, rat(1, 2))),
            p3.scale_poly(&Poly::monomial(2, rat(1, 6))),
            d1.scale_poly(&t(&[0, 1])),
            d2.scale_poly(&Poly::monomial(2, rat(1, 2))),
        ])?,
    );
    out.insert(
        rat(1, 2),
        sum(vec![
            p.scale_poly(&t(&[2, 2])),
            p2.scale_poly(&t(&[0, 1, 1]).scale(&rat(1, 2))),
            p3.scale_poly(&t(&[0, 0, 1, 1]).scale(&rat(1, 6))),
            p4.scale_poly(&t(&[0, 0, 0, 1, 1]).scale(&rat(1, 24))),
            d2.scale_poly(&t(&[0, 1, 1]).scale(&rat(1, 2))),
        ])?,
    );
    out.insert(
        rat(2, 3),
        sum(vec![
            p2.scale_poly(&Poly::monomial(1, rat(1, 2))),
            p3.scale_poly(&Poly::monomial(3, rat(1, 6))),
            d1.scale_poly(&t(&[0, 1])),
            d2.scale_poly(&Poly::monomial(1, rat(1, 2))),
        ])?,
    );
    out.insert(rat(3, 4), sum(vec![p.clone(), p2.scale_poly(&Poly::monomial(1, rat(1, 2)))])?);
    Ok(out)
}

/// The enumerated graded series, one per fractional age.
pub fn enumerated_bucket_series(order: usize) -> Result<BTreeMap<Rational, TruncatedSeries>> {
    let per_n: Vec<BTreeMap<Rational, Poly>> =
        (1..=order).map(cr_poincare_buckets).collect::<Result<_>>()?;
    age_fractions()
        .into_iter()
        .map(|a| {
            let series = egf(order, |n| Ok(per_n[n - 1][&a].clone()))?;
            Ok((a, series))
        })
        .collect()
}

/// Coefficient-by-coefficient comparison of the enumerated graded series
/// against the closed expressions. Only coefficients where at least one side
/// is nonzero are listed.
pub fn series_check_poincare1(order: usize) -> Result<Vec<BucketDiff>> {
    let stated = stated_bucket_series(order)?;
    let enumerated = enumerated_bucket_series(order)?;
    let mut out = Vec::new();
    for a in age_fractions() {
        let (x, y) = (&enumerated[&a], &stated[&a]);
        for n in 0..=order {
            let nf = Rational::from_integer(BigInt::from(factorial(n)));
            let degree = x.coeff(n).coeffs().len().max(y.coeff(n).coeffs().len());
            for m in 0..degree {
                let e = x.coeff(n).coeff(m) * &nf;
                let s = y.coeff(n).coeff(m) * &nf;
                if !(e.is_zero() && s.is_zero()) {
                    out.push(BucketDiff { fraction: a.clone(), n, m, enumerated: e, stated: s });
                }
            }
        }
    }
    Ok(out)
}

/// Single-block contribution to one graded series against a multiple of
/// `P0`, for orders `2..=order` (the single-block sectors at `n = 1` carry
/// different ages).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermCheck {
    pub fraction: Rational,
    pub multiplier: Poly,
    pub mismatches: Vec<(usize, Poly, Poly)>,
}

impl TermCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn single_block_term(order: usize, fraction: Rational, multiplier: Poly) -> Result<TermCheck> {
    let rows = Genus0Rows::up_to(order + 1)?;
    let mut mismatches = Vec::new();
    for n in 2..=order {
        let got = cr_poincare_buckets_by_arity(n, 1)?.remove(&fraction).unwrap_or_default();
        let want = rows.block_factor(n) * &multiplier;
        if got != want {
            mismatches.push((n, got, want));
        }
    }
    Ok(TermCheck { fraction, multiplier, mismatches })
}

/// The single-block terms that the closed expressions share with the
/// enumeration: `2(1+t)P0` at fraction 1/2 and `tP0` at fraction 1/4.
pub fn confirmed_terms(order: usize) -> Result<Vec<TermCheck>> {
    Ok(vec![
        single_block_term(order, rat(1, 2), Poly::from_ints(&[2, 2]))?,
        single_block_term(order, rat(1, 4), Poly::from_ints(&[0, 1]))?,
    ])
}
