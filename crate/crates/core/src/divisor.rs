//! Formal polynomials in boundary divisors of `M̄_{1,n}` and the pullback of
//! divisors to twisted sectors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{domain, unsupported, Result};
use crate::partition::{elements_of, mask_of, partitions};
use crate::rational::{int, rat, Rational};
use crate::sector::{BaseType, Sector, Support};

/// `D_irr`, or `D_M`: the closure of curves with a rational tail carrying
/// exactly the points in `M` (bit `i - 1` for point `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Divisor {
    Irr,
    Boundary(u64),
}

impl Divisor {
    pub fn boundary(points: &[usize]) -> Self {
        Divisor::Boundary(mask_of(points))
    }

    fn permuted(self, perm: &[usize]) -> Self {
        match self {
            Divisor::Irr => Divisor::Irr,
            Divisor::Boundary(m) => {
                Divisor::boundary(&elements_of(m).iter().map(|&x| perm[x - 1]).collect::<Vec<_>>())
            }
        }
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divisor::Irr => f.write_str("D_irr"),
            Divisor::Boundary(m) => {
                f.write_str("D_{")?;
                for (i, x) in elements_of(*m).iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// A formal linear combination of products of divisors. Products are
/// commutative and kept as sorted lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorPoly {
    terms: BTreeMap<Vec<Divisor>, Rational>,
}

impl DivisorPoly {
    pub fn zero() -> Self {
        DivisorPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = DivisorPoly::zero();
        p.add_term(c, Vec::new());
        p
    }

    pub fn add_term(&mut self, c: Rational, mut monomial: Vec<Divisor>) {
        monomial.sort_unstable();
        let slot = self.terms.entry(monomial.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Divisor], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = DivisorPoly::zero();
        for (m, x) in &self.terms {
            out.add_term(x * c, m.clone());
        }
        out
    }

    /// Formal product; no relations among divisors are applied.
    pub fn mul(&self, other: &DivisorPoly) -> Self {
        let mut out = DivisorPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(c1 * c2, m);
            }
        }
        out
    }

    /// Relabels point `i` as `perm[i - 1]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = DivisorPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(c.clone(), m.iter().map(|d| d.permuted(perm)).collect());
        }
        out
    }
}

impl fmt::Display for DivisorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_empty() {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{c} ")?;
            }
            for (j, d) in m.iter().enumerate() {
                if j > 0 {
                    f.write_str("·")?;
                }
                write!(f, "{d}")?;
            }
        }
        Ok(())
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(elements_of)
        .collect()
}

/// Class of a base sector's support at its native number of points, as a
/// combination of products of boundary divisors.
pub fn base_class_in_divisors(base: BaseType) -> DivisorPoly {
    use BaseType::*;
    use Divisor::Irr;
    let b = Divisor::boundary;
    let mut p = DivisorPoly::zero();
    match base {
        A1 => p.add_term(int(1), Vec::new()),
        C4k1 => p.add_term(rat(1, 2), alloc::vec![Irr]),
        C6k1 => p.add_term(rat(1, 3), alloc::vec![Irr]),
        A2 => {
            p.add_term(rat(1, 4), alloc::vec![Irr]);
            p.add_term(int(3), alloc::vec![b(&[1, 2])]);
        }
        C4k2 => p.add_term(rat(1, 2), alloc::vec![Irr, b(&[1, 2])]),
        C6k2 => p.add_term(rat(2, 3), alloc::vec![Irr, b(&[1, 2])]),
        A3 => {
            for pair in subsets_of_size(3, 2) {
                p.add_term(rat(1, 4), alloc::vec![Irr, b(&pair)]);
                p.add_term(int(2), alloc::vec![b(&[1, 2, 3]), b(&pair)]);
            }
            p.add_term(rat(1, 4), alloc::vec![Irr, b(&[1, 2, 3])]);
        }
        C6k3 => {
            for pair in subsets_of_size(3, 2) {
                p.add_term(rat(2, 9), alloc::vec![Irr, b(&[1, 2, 3]), b(&pair)]);
            }
        }
        A4 => {
            // pairings {ij}{kl} of [4], each once
            for pairing in partitions(4, 2).expect("4 points").iter().filter(|q| q.block_sizes() == [2, 2]) {
                p.add_term(int(2), alloc::vec![b(&[1, 2, 3, 4]), b(pairing.block(0)), b(pairing.block(1))]);
            }
            for triple in subsets_of_size(4, 3) {
                for pair in subsets_of_size(4, 2) {
                    if pair.iter().all(|x| triple.contains(x)) {
                        p.add_term(rat(1, 12), alloc::vec![Irr, b(&triple), b(&pair)]);
                    }
                }
            }
            for pair in subsets_of_size(4, 2) {
                p.add_term(rat(1, 12), alloc::vec![Irr, b(&[1, 2, 3, 4]), b(&pair)]);
            }
        }
    }
    p
}

/// Pullback of a divisor class along the map from a twisted sector's
/// support to `M̄_{1,n}`, expressed on the product decomposition
/// `base × Π M̄_{0,|I|+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pullback {
    Zero,
    /// `c · [pt]` on the one-dimensional base, times the fundamental class
    /// of the genus-zero factors.
    PointOnBase(Rational),
    /// The boundary divisor `δ_M` on the genus-zero factor of block `block`.
    Boundary { block: usize, subset: Vec<usize> },
    /// `-ψ` at the gluing point of the genus-zero factor of block `block`.
    MinusPsi { block: usize },
}

pub fn pullback_divisor(s: &Sector, divisor: &Divisor) -> Result<Pullback> {
    let (base, partition) = match s.support() {
        Support::Whole(_) => return Err(domain!("pullback to the untwisted sector is the identity")),
        Support::Base { base, partition } => (*base, partition),
    };
    let n = partition.n();
    match *divisor {
        Divisor::Irr => Ok(match base {
            BaseType::A1 => Pullback::PointOnBase(rat(1, 2)),
            BaseType::A2 => Pullback::PointOnBase(rat(3, 2)),
            BaseType::A3 | BaseType::A4 => Pullback::PointOnBase(int(3)),
            _ => Pullback::Zero,
        }),
        Divisor::Boundary(mask) => {
            let size = mask.count_ones() as usize;
            if size < 2 || mask >> n != 0 {
                return Err(domain!("{divisor} is not a boundary divisor of M̄_1,{n}"));
            }
            let block = (0..partition.len()).find(|&i| partition.block_mask(i) & mask == mask);
            Ok(match block {
                None => Pullback::Zero,
                Some(i) if partition.block_mask(i) == mask => {
                    // ψ vanishes on M̄_{0,3}
                    if size <= 2 {
                        Pullback::Zero
                    } else {
                        Pullback::MinusPsi { block: i }
                    }
                }
                Some(i) => Pullback::Boundary { block: i, subset: elements_of(mask) },
            })
        }
    }
}

pub fn render_pullback(p: &Pullback) -> String {
    match p {
        Pullback::Zero => String::from("0"),
        Pullback::PointOnBase(c) => alloc::format!("{c}[pt]"),
        Pullback::Boundary { block, subset } => alloc::format!("δ_{subset:?} on factor {}", block + 1),
        Pullback::MinusPsi { block } => alloc::format!("-ψ on factor {}", block + 1),
    }
}

/// Rejects base types at a number of points other than their own.
pub fn native_base_class(support: &Support) -> Result<DivisorPoly> {
    match support {
        Support::Base { base, .. } if support.is_native_base() => Ok(base_class_in_divisors(*base)),
        _ => Err(unsupported!("{} is not a base sector at its native number of points", support.label())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::Automorphism;
    use crate::partition::Partition;

    #[test]
    fn transcribed_classes() {
        assert_eq!(alloc::format!("{}", base_class_in_divisors(BaseType::C4k1)), "1/2 D_irr");
        assert_eq!(alloc::format!("{}", base_class_in_divisors(BaseType::A2)), "1/4 D_irr + 3 D_{1,2}");
        assert_eq!(alloc::format!("{}", base_class_in_divisors(BaseType::C6k2)), "2/3 D_irr·D_{1,2}");
        assert_eq!(base_class_in_divisors(BaseType::A4).terms().count(), 3 + 12 + 6);
    }

    #[test]
    fn pullbacks() {
        let p = Partition::new(3, alloc::vec![alloc::vec![1], alloc::vec![2, 3]]).unwrap();
        let a2 = Sector::new(BaseType::A2, p.clone(), Automorphism::MINUS_ONE).unwrap();
        assert_eq!(pullback_divisor(&a2, &Divisor::Irr).unwrap(), Pullback::PointOnBase(rat(3, 2)));
        assert_eq!(pullback_divisor(&a2, &Divisor::boundary(&[1, 2])).unwrap(), Pullback::Zero);
        assert_eq!(pullback_divisor(&a2, &Divisor::boundary(&[2, 3])).unwrap(), Pullback::Zero);
        let c4 = Sector::new(BaseType::C4k1, Partition::whole(4), Automorphism::I).unwrap();
        assert_eq!(pullback_divisor(&c4, &Divisor::Irr).unwrap(), Pullback::Zero);
        assert_eq!(
            pullback_divisor(&c4, &Divisor::boundary(&[1, 2, 3, 4])).unwrap(),
            Pullback::MinusPsi { block: 0 }
        );
        assert_eq!(
            pullback_divisor(&c4, &Divisor::boundary(&[1, 2])).unwrap(),
            Pullback::Boundary { block: 0, subset: alloc::vec![1, 2] }
        );
        assert!(pullback_divisor(&c4, &Divisor::boundary(&[1])).is_err());
        assert!(pullback_divisor(&c4, &Divisor::boundary(&[1, 5])).is_err());
    }
}
