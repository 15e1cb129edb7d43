//! Relations of the orbifold ring in low genus-one cases, checked through
//! the product engine.
//!
//! For `n = 1` every sector support is either `M̄_{1,1}` itself (the
//! untwisted sector and `A1`) or a point. Classes are `c0 + c1 D` on the
//! first kind, with `D = D_irr` and `D² = 0`, and constants on points.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::automorphism::Automorphism;
use crate::crring::{cr_product_fund, one_block, sector_label, ClassKind, Product};
use crate::divisor::{base_class_in_divisors, Divisor};
use crate::error::{domain, unsupported, Result};
use crate::partition::Partition;
use crate::rational::{int, Rational};
use crate::sector::{BaseType, Sector};

/// An element of the orbifold cohomology of `M̄_{1,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct N1Class {
    parts: BTreeMap<Sector, (Rational, Rational)>,
}

fn carries_divisor(s: &Sector) -> bool {
    s.support().dim() == 1
}

impl N1Class {
    pub fn zero() -> Self {
        N1Class::default()
    }

    pub fn fund(s: Sector) -> Result<Self> {
        N1Class::term(s, int(1), int(0))
    }

    /// `D_irr` on a sector whose support is all of `M̄_{1,1}`.
    pub fn divisor_on(s: Sector) -> Result<Self> {
        N1Class::term(s, int(0), int(1))
    }

    fn term(s: Sector, c0: Rational, c1: Rational) -> Result<Self> {
        if s.n() != 1 {
            return Err(domain!("{s} is not a sector of M̄_1,1"));
        }
        let mut out = N1Class::zero();
        out.add_term(s, c0, c1);
        Ok(out)
    }

    fn add_term(&mut self, s: Sector, c0: Rational, c1: Rational) {
        let c1 = if carries_divisor(&s) { c1 } else { Rational::zero() };
        let slot = self.parts.entry(s.clone()).or_insert_with(|| (Rational::zero(), Rational::zero()));
        slot.0 += c0;
        slot.1 += c1;
        if slot.0.is_zero() && slot.1.is_zero() {
            self.parts.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, other: &N1Class) -> N1Class {
        let mut out = self.clone();
        for (s, (c0, c1)) in &other.parts {
            out.add_term(s.clone(), c0.clone(), c1.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> N1Class {
        let mut out = N1Class::zero();
        for (s, (c0, c1)) in &self.parts {
            out.add_term(s.clone(), c0 * c, c1 * c);
        }
        out
    }

    /// Product through the engine: `(a0 + a1 D)[S1] * (b0 + b1 D)[S2]` is
    /// `(a0 + a1 D)(b0 + b1 D)` times `[S1] * [S2]`, with `D` restricting to
    /// zero on points.
    pub fn mul(&self, other: &N1Class) -> Result<N1Class> {
        let mut out = N1Class::zero();
        for (s1, (a0, a1)) in &self.parts {
            for (s2, (b0, b1)) in &other.parts {
                let Product::Class(c) = cr_product_fund(s1, s2)? else { continue };
                let (p0, p1) = (a0 * b0, a0 * b1 + a1 * b0);
                match &c.kind {
                    ClassKind::Zero => {}
                    ClassKind::Fund => out.add_term(c.target.clone(), p0, p1),
                    ClassKind::PushedFund(y) => {
                        let base = y.base().ok_or_else(|| domain!("pushed locus must be a point"))?;
                        let class = base_class_in_divisors(base);
                        let coefficient = class
                            .terms()
                            .find(|(m, _)| *m == [Divisor::Irr])
                            .map(|(_, c)| c.clone())
                            .ok_or_else(|| domain!("[{}] is not a multiple of D_irr", y.label()))?;
                        out.add_term(c.target.clone(), Rational::zero(), coefficient * p0);
                    }
                    _ => return Err(unsupported!("{} does not occur for n = 1", c)),
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<N1Class> {
        let mut out = N1Class::fund(Sector::untwisted(1))?;
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

impl fmt::Display for N1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (s, (c0, c1))) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let label = sector_label(s, false);
            match (c0.is_zero(), c1.is_zero()) {
                (false, true) => write!(f, "{c0}·1{label}")?,
                (true, false) => write!(f, "{c1}·D{label}")?,
                _ => write!(f, "({c0} + {c1}·D){label}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

fn relation(name: &str, lhs: &N1Class, rhs: &N1Class) -> RelationCheck {
    RelationCheck {
        name: String::from(name),
        lhs: alloc::format!("{lhs}"),
        rhs: alloc::format!("{rhs}"),
        holds: lhs == rhs,
    }
}

/// Generators `x0 = [(A1,-1)]`, `y0 = [(C4,-i)]`, `z0 = [(C6,ε^5)]`.
pub fn n1_generators() -> Result<(N1Class, N1Class, N1Class)> {
    Ok((
        N1Class::fund(one_block(BaseType::A1, 1, Automorphism::MINUS_ONE)?)?,
        N1Class::fund(one_block(BaseType::C4k1, 1, Automorphism::MINUS_I)?)?,
        N1Class::fund(one_block(BaseType::C6k1, 1, Automorphism::eps(5))?)?,
    ))
}

/// `x0² = 1`, `y0 z0 = 0`, `2 y0² = 3 z0³ = D` on `(A1,-1)`, and the image
/// `2 x0 y0²` of `D` from the untwisted ring, whose square vanishes.
pub fn presentation_check_n1() -> Result<Vec<RelationCheck>> {
    let (x0, y0, z0) = n1_generators()?;
    let one = N1Class::fund(Sector::untwisted(1))?;
    let a1 = one_block(BaseType::A1, 1, Automorphism::MINUS_ONE)?;
    let d_on_a1 = N1Class::divisor_on(a1)?;
    let d = N1Class::divisor_on(Sector::untwisted(1))?;
    let two = int(2);
    let lift = x0.mul(&y0.pow(2)?)?.scale(&two);
    Ok(alloc::vec![
        relation("x0^2 = 1", &x0.pow(2)?, &one),
        relation("y0 z0 = 0", &y0.mul(&z0)?, &N1Class::zero()),
        relation("2 y0^2 = 3 z0^3", &y0.pow(2)?.scale(&two), &z0.pow(3)?.scale(&int(3))),
        relation("2 y0^2 = D on (A1,-1)", &y0.pow(2)?.scale(&two), &d_on_a1),
        relation("t -> 2 x0 y0^2 = D", &lift, &d),
        relation("(2 x0 y0^2)^2 = 0", &lift.mul(&lift)?, &N1Class::zero()),
    ])
}

/// Generators of the `n = 2` presentation, in order `x0, y0, z0, x1, y1, w`.
pub fn n2_generators() -> Result<[(&'static str, Sector); 6]> {
    use BaseType::*;
    let pair = Partition::singletons(2);
    Ok([
        ("x0", one_block(A1, 2, Automorphism::MINUS_ONE)?),
        ("y0", one_block(C4k1, 2, Automorphism::MINUS_I)?),
        ("z0", one_block(C6k1, 2, Automorphism::eps(5))?),
        ("x1", Sector::new(A2, pair.clone(), Automorphism::MINUS_ONE)?),
        ("y1", Sector::new(C4k2, pair.clone(), Automorphism::MINUS_I)?),
        ("w", Sector::new(C6k2, pair, Automorphism::eps(4))?),
    ])
}

/// The quadratic monomials of the `n = 2` ideal that vanish because the
/// supports do not meet.
pub fn presentation_check_n2_disjoint() -> Result<Vec<RelationCheck>> {
    const PAIRS: [(&str, &str); 11] = [
        ("x0", "x1"),
        ("x0", "y1"),
        ("x1", "y0"),
        ("y0", "y1"),
        ("z0", "x1"),
        ("z0", "y1"),
        ("w", "x0"),
        ("w", "y0"),
        ("w", "z0"),
        ("w", "x1"),
        ("w", "y1"),
    ];
    let generators = n2_generators()?;
    let find = |name: &str| generators.iter().find(|(g, _)| *g == name).map(|(_, s)| s.clone()).expect("known");
    PAIRS
        .iter()
        .map(|(a, b)| {
            let p = cr_product_fund(&find(a), &find(b))?;
            Ok(RelationCheck {
                name: alloc::format!("{a} {b} = 0"),
                lhs: crate::crring::render_product(&p, false),
                rhs: String::from("∅"),
                holds: p == Product::Disjoint,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_relations_hold() {
        for r in presentation_check_n1().unwrap() {
            assert!(r.holds, "{}: {} vs {}", r.name, r.lhs, r.rhs);
        }
    }

    #[test]
    fn n1_values() {
        let (_, _, z0) = n1_generators().unwrap();
        assert_eq!(alloc::format!("{}", z0.pow(2).unwrap()), "1·1(C6^{[1]},ε^4)");
        assert_eq!(alloc::format!("{}", z0.pow(3).unwrap()), "1/3·D(A1^{[1]},-1)");
        assert!(z0.pow(6).unwrap().is_zero());
    }

    #[test]
    fn n2_disjoint_monomials() {
        for r in presentation_check_n2_disjoint().unwrap() {
            assert!(r.holds, "{}: {}", r.name, r.lhs);
        }
    }
}
