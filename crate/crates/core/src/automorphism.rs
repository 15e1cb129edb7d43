//! Roots of unity labelling sector automorphisms.
//!
//! Every element is stored in reduced form `(order, exp)`, meaning
//! `exp(2πi · exp / order)` with `gcd(exp, order) = 1`. With `i` and `ε`
//! primitive fourth and sixth roots, this makes `-1 = (2,1)`, `i = (4,1)`,
//! `ε = (6,1)`, `ε² = (3,1)`, `ε⁴ = (3,2)`. Products are taken inside `μ4` or
//! `μ6`; a product mixing `±i` with `ε^k` (`k ≠ 0, 3`) is rejected.

use core::fmt;

use num_integer::Integer;

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    order: u8,
    exp: u8,
}

impl Automorphism {
    pub const IDENTITY: Automorphism = Automorphism { order: 1, exp: 0 };
    pub const MINUS_ONE: Automorphism = Automorphism { order: 2, exp: 1 };
    pub const I: Automorphism = Automorphism { order: 4, exp: 1 };
    pub const MINUS_I: Automorphism = Automorphism { order: 4, exp: 3 };
    pub const EPS: Automorphism = Automorphism { order: 6, exp: 1 };
    pub const EPS2: Automorphism = Automorphism { order: 3, exp: 1 };
    pub const EPS4: Automorphism = Automorphism { order: 3, exp: 2 };
    pub const EPS5: Automorphism = Automorphism { order: 6, exp: 5 };

    /// `exp(2πi · a / n)` for `n ∈ {1, 2, 3, 4, 6}`.
    pub fn new(n: u8, a: u8) -> Result<Self> {
        if ![1, 2, 3, 4, 6].contains(&n) {
            return Err(domain!("no roots of unity of order {n} occur here"));
        }
        let a = a % n;
        let g = a.gcd(&n);
        Ok(Automorphism { order: n / g, exp: a / g })
    }

    /// `ε^k` for a primitive sixth root of unity `ε`.
    pub fn eps(k: u8) -> Self {
        Automorphism::new(6, k).expect("order 6")
    }

    /// `i^k`.
    pub fn i_pow(k: u8) -> Self {
        Automorphism::new(4, k).expect("order 4")
    }

    pub fn order(self) -> u8 {
        self.order
    }

    pub fn exp(self) -> u8 {
        self.exp
    }

    pub fn is_identity(self) -> bool {
        self.order == 1
    }

    /// Exponent of this element as a power of `exp(2πi / n)`, if it lies in
    /// `μ_n`.
    pub fn exp_in(self, n: u8) -> Option<u8> {
        if n % self.order == 0 {
            Some(self.exp * (n / self.order))
        } else {
            None
        }
    }

    pub fn inverse(self) -> Self {
        Automorphism { order: self.order, exp: (self.order - self.exp) % self.order }
    }

    pub fn pow(self, k: u32) -> Self {
        let e = (self.exp as u32 * k) % self.order as u32;
        Automorphism::new(self.order, e as u8).expect("same group")
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        let n = self.order.lcm(&other.order);
        if ![1, 2, 3, 4, 6].contains(&n) {
            return Err(domain!("{self} and {other} do not lie in a common μ4 or μ6"));
        }
        let a = self.exp_in(n).expect("divides") + other.exp_in(n).expect("divides");
        Automorphism::new(n, a % n)
    }

    /// The cyclic group generated by a set of elements, as its order.
    pub fn generated_order(elements: &[Automorphism]) -> Result<u8> {
        let n = elements.iter().fold(1u8, |acc, g| acc.lcm(&g.order));
        if ![1, 2, 3, 4, 6].contains(&n) {
            return Err(domain!("elements do not lie in a common μ4 or μ6"));
        }
        Ok(n)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exp) {
            (1, _) => f.write_str("1"),
            (2, _) => f.write_str("-1"),
            (4, 1) => f.write_str("i"),
            (4, _) => f.write_str("-i"),
            (6, 1) => f.write_str("ε"),
            (6, _) => f.write_str("ε^5"),
            (3, 1) => f.write_str("ε^2"),
            _ => f.write_str("ε^4"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_forms() {
        assert_eq!(Automorphism::eps(3), Automorphism::MINUS_ONE);
        assert_eq!(Automorphism::i_pow(2), Automorphism::MINUS_ONE);
        assert_eq!(Automorphism::eps(0), Automorphism::IDENTITY);
        assert_eq!(
            [1, 2, 4, 5].map(Automorphism::eps),
            [Automorphism::EPS, Automorphism::EPS2, Automorphism::EPS4, Automorphism::EPS5]
        );
        assert_eq!(Automorphism::eps(4).exp_in(6), Some(4));
        assert_eq!(Automorphism::I.exp_in(6), None);
        assert!(Automorphism::new(5, 1).is_err());
    }

    #[test]
    fn products() {
        let e = Automorphism::eps;
        assert_eq!(Automorphism::MINUS_ONE.mul(e(1)).unwrap(), e(4));
        assert_eq!(Automorphism::I.mul(Automorphism::I).unwrap(), Automorphism::MINUS_ONE);
        assert_eq!(e(2).mul(e(5)).unwrap(), e(1));
        assert!(Automorphism::I.mul(e(1)).is_err());
        assert_eq!(Automorphism::I.mul(Automorphism::MINUS_ONE).unwrap(), Automorphism::MINUS_I);
        assert_eq!(e(1).inverse(), e(5));
        assert_eq!(Automorphism::MINUS_ONE.inverse(), Automorphism::MINUS_ONE);
        assert_eq!(e(5).pow(3), Automorphism::MINUS_ONE);
    }

    #[test]
    fn display() {
        let shown: alloc::vec::Vec<_> = (0..6).map(|k| alloc::format!("{}", Automorphism::eps(k))).collect();
        assert_eq!(shown, ["1", "ε", "ε^2", "-1", "ε^4", "ε^5"]);
    }
}
