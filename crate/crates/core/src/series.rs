//! Power series in `s` with polynomial coefficients in `t`, truncated at a
//! fixed order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Result};
use crate::poly::Poly;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { order, coeffs: vec![Poly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Poly::one();
        s
    }

    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn from_coeffs(order: usize, coeffs: Vec<Poly>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// `c * s^k` (zero if `k > order`).
    pub fn monomial(order: usize, k: usize, c: Poly) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(domain!("truncation orders differ: {} vs {}", self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { order: self.order, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { order: self.order, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        series_mul(self, other)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..k {
            acc = series_mul(&acc, self).expect("same order");
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every coefficient by a polynomial in `t`.
    pub fn scale_poly(&self, p: &Poly) -> Self {
        self.map(|c| c * p)
    }

    /// Multiplies by `s^k`, truncating.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        for i in k..=self.order {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    pub fn d_ds(&self) -> Self {
        series_d_ds(self)
    }

    /// Keeps orders `0..=order`; fails if that would extend the series.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order {
            return Err(domain!("cannot extend a series of order {} to {order}", self.order));
        }
        Ok(TruncatedSeries { order, coeffs: self.coeffs[..=order].to_vec() })
    }

    /// Sets `t = 1`.
    pub fn at_t_one(&self) -> Self {
        self.map(|p| Poly::constant(p.sum_of_coeffs()))
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.check_order(b)?;
    let mut out = TruncatedSeries::zero(a.order);
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs[..=a.order - i].iter().enumerate() {
            if !y.is_zero() {
                out.coeffs[i + j] = &out.coeffs[i + j] + &(x * y);
            }
        }
    }
    Ok(out)
}

/// Formal derivative in `s`; the order drops by one (stays 0 for order 0).
pub fn series_d_ds(a: &TruncatedSeries) -> TruncatedSeries {
    if a.order == 0 {
        return TruncatedSeries::zero(0);
    }
    let coeffs = (1..=a.order)
        .map(|k| a.coeffs[k].scale(&int(k as i64)))
        .collect();
    TruncatedSeries { order: a.order - 1, coeffs }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*s^{k}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(s^{})", self.order + 1)
    }
}

impl Default for TruncatedSeries {
    fn default() -> Self {
        TruncatedSeries::zero(0)
    }
}
