//! Twisted sectors of the inertia stack of `M̄_{1,n}`.
//!
//! A twisted sector is determined by a base type (one of the nine twisted
//! sectors of `M̄_{1,k}` with `k <= 4`), a partition of the marked points into
//! `k` blocks, each block replaced by a genus-zero tail, and the
//! automorphism.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::Zero;

use crate::automorphism::Automorphism;
use crate::error::{domain, inconsistent, unsupported, Result};
use crate::genus0::Genus0Rows;
use crate::partition::{partitions, Partition};
use crate::poly::Poly;
use crate::rational::{int, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseType {
    A1,
    A2,
    A3,
    A4,
    C4k1,
    C4k2,
    C6k1,
    C6k2,
    C6k3,
}

impl BaseType {
    pub const ALL: [BaseType; 9] = [
        BaseType::A1,
        BaseType::A2,
        BaseType::A3,
        BaseType::A4,
        BaseType::C4k1,
        BaseType::C4k2,
        BaseType::C6k1,
        BaseType::C6k2,
        BaseType::C6k3,
    ];

    /// Number of partition blocks, which is also the native number of marked
    /// points.
    pub fn arity(self) -> usize {
        use BaseType::*;
        match self {
            A1 | C4k1 | C6k1 => 1,
            A2 | C4k2 | C6k2 => 2,
            A3 | C6k3 => 3,
            A4 => 4,
        }
    }

    pub fn is_a_type(self) -> bool {
        matches!(self, BaseType::A1 | BaseType::A2 | BaseType::A3 | BaseType::A4)
    }

    /// Order of the generic stabilizer.
    pub fn stabilizer_order(self) -> u8 {
        use BaseType::*;
        match self {
            A1 | A2 | A3 | A4 => 2,
            C4k1 | C4k2 => 4,
            C6k1 => 6,
            C6k2 | C6k3 => 3,
        }
    }

    /// Generator `g` of the stabilizer: `-1`, `i`, `ε` or `ε²`.
    pub fn generator(self) -> Automorphism {
        match self.stabilizer_order() {
            2 => Automorphism::MINUS_ONE,
            4 => Automorphism::I,
            6 => Automorphism::eps(1),
            _ => Automorphism::eps(2),
        }
    }

    /// Modulus of normal-line exponents: a line of exponent `e` is one on
    /// which the generator acts by `i^e` (C4 types) or `ε^e` (C6 types).
    pub fn line_modulus(self) -> u8 {
        use BaseType::*;
        match self {
            A1 | A2 | A3 | A4 => 2,
            C4k1 | C4k2 => 4,
            C6k1 | C6k2 | C6k3 => 6,
        }
    }

    pub fn coarse_dim(self) -> usize {
        usize::from(self.is_a_type())
    }

    pub fn coarse_poincare(self) -> Poly {
        if self.is_a_type() {
            Poly::from_ints(&[1, 1])
        } else {
            Poly::one()
        }
    }

    pub fn allowed_auts(self) -> Vec<Automorphism> {
        use BaseType::*;
        match self {
            A1 | A2 | A3 | A4 => vec![Automorphism::MINUS_ONE],
            C4k1 | C4k2 => vec![Automorphism::I, Automorphism::MINUS_I],
            C6k1 => [1, 2, 4, 5].iter().map(|&k| Automorphism::eps(k)).collect(),
            C6k2 | C6k3 => vec![Automorphism::eps(2), Automorphism::eps(4)],
        }
    }

    pub fn name(self) -> &'static str {
        use BaseType::*;
        match self {
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            A4 => "A4",
            C4k1 => "C4k1",
            C4k2 => "C4k2",
            C6k1 => "C6k1",
            C6k2 => "C6k2",
            C6k3 => "C6k3",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        BaseType::ALL.into_iter().find(|b| b.name() == name)
    }

    /// Family symbol used in table notation (`A1`..`A4`, `C4`, `C6`).
    pub fn symbol(self) -> &'static str {
        use BaseType::*;
        match self {
            C4k1 | C4k2 => "C4",
            C6k1 | C6k2 | C6k3 => "C6",
            other => other.name(),
        }
    }
}

impl fmt::Display for BaseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The locus underlying a sector: all of `M̄_{1,n}`, or the closure of a
/// base type spread over a partition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Support {
    Whole(usize),
    Base { base: BaseType, partition: Partition },
}

impl Support {
    pub fn new(base: BaseType, partition: Partition) -> Result<Self> {
        if partition.len() != base.arity() {
            return Err(domain!(
                "{base} needs {} blocks, partition {partition} has {}",
                base.arity(),
                partition.len()
            ));
        }
        Ok(Support::Base { base, partition })
    }

    pub fn n(&self) -> usize {
        match self {
            Support::Whole(n) => *n,
            Support::Base { partition, .. } => partition.n(),
        }
    }

    pub fn base(&self) -> Option<BaseType> {
        match self {
            Support::Whole(_) => None,
            Support::Base { base, .. } => Some(*base),
        }
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            Support::Whole(_) => None,
            Support::Base { partition, .. } => Some(partition),
        }
    }

    pub fn is_whole(&self) -> bool {
        matches!(self, Support::Whole(_))
    }

    /// `2k - dim(base) - #singleton blocks`.
    pub fn codim(&self) -> usize {
        match self {
            Support::Whole(_) => 0,
            Support::Base { base, partition } => {
                2 * base.arity() - base.coarse_dim() - partition.singleton_count()
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n() - self.codim()
    }

    pub fn stabilizer_order(&self) -> u8 {
        self.base().map_or(1, BaseType::stabilizer_order)
    }

    pub fn generator(&self) -> Automorphism {
        self.base().map_or(Automorphism::IDENTITY, BaseType::generator)
    }

    /// The support of a base sector at its native number of points.
    pub fn is_native_base(&self) -> bool {
        match self {
            Support::Whole(_) => false,
            Support::Base { base, partition } => partition.n() == base.arity(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Support::Whole(_) => String::from("X"),
            Support::Base { base, partition } => {
                if partition.len() == 1 {
                    alloc::format!("{}^{{[{}]}}", base.symbol(), partition.n())
                } else {
                    alloc::format!("{}^{}", base.symbol(), partition)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sector {
    support: Support,
    aut: Automorphism,
}

impl Sector {
    pub fn untwisted(n: usize) -> Self {
        Sector { support: Support::Whole(n), aut: Automorphism::IDENTITY }
    }

    pub fn new(base: BaseType, partition: Partition, aut: Automorphism) -> Result<Self> {
        Sector::on(Support::new(base, partition)?, aut)
    }

    pub fn on(support: Support, aut: Automorphism) -> Result<Self> {
        match &support {
            Support::Whole(_) if aut.is_identity() => {}
            Support::Whole(_) => return Err(domain!("the untwisted sector has trivial automorphism")),
            Support::Base { base, .. } => {
                if !base.allowed_auts().contains(&aut) {
                    return Err(domain!("{aut} is not a sector automorphism of {base}"));
                }
            }
        }
        Ok(Sector { support, aut })
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn aut(&self) -> Automorphism {
        self.aut
    }

    pub fn n(&self) -> usize {
        self.support.n()
    }

    pub fn base(&self) -> Option<BaseType> {
        self.support.base()
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.support.partition()
    }

    pub fn is_twisted(&self) -> bool {
        !self.support.is_whole()
    }

    pub fn codim(&self) -> usize {
        self.support.codim()
    }

    pub fn involution(&self) -> Sector {
        Sector { support: self.support.clone(), aut: self.aut.inverse() }
    }

    /// Power `j` with `aut = g^j` for the stabilizer generator `g`.
    pub fn generator_power(&self) -> u8 {
        let d = self.support.stabilizer_order();
        self.aut.exp_in(d).expect("sector automorphism lies in the stabilizer")
    }

    pub fn label(&self) -> String {
        match &self.support {
            Support::Whole(_) => String::from("X"),
            s => alloc::format!("({},{})", s.label(), self.aut),
        }
    }
}

impl Ord for Sector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.support
            .cmp(&other.support)
            .then_with(|| self.aut.exp_in(12).cmp(&other.aut.exp_in(12)))
    }
}

impl PartialOrd for Sector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The untwisted sector followed by every twisted sector, in a fixed order.
///
/// With `compact = false`, only the sectors meeting the open part `M_{1,n}`
/// are listed: base types at their native number of points.
pub fn enumerate_sectors(n: usize, compact: bool) -> Result<Vec<Sector>> {
    if n < 1 {
        return Err(domain!("sectors need n >= 1"));
    }
    let mut out = vec![Sector::untwisted(n)];
    for base in BaseType::ALL {
        let k = base.arity();
        if k > n || (!compact && k != n) {
            continue;
        }
        for partition in partitions(n, k)? {
            for aut in base.allowed_auts() {
                out.push(Sector { support: Support::Base { base, partition: partition.clone() }, aut });
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn twisted_sectors(n: usize) -> Result<Vec<Sector>> {
    let mut all = enumerate_sectors(n, true)?;
    all.remove(0);
    Ok(all)
}

/// Line bundle carried by one summand of a normal bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineBundle {
    Trivial,
    /// Dual cotangent line at the gluing point of the tail on block `i`
    /// (0-based).
    PsiDual(usize),
}

/// A normal line on which the stabilizer generator acts by `γ^exponent`,
/// with `γ = i` or `ε` according to the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharLine {
    pub exponent: u8,
    pub bundle: LineBundle,
}

impl CharLine {
    /// The same character as an exponent `c` mod `d` of the stabilizer
    /// `μ_d`: the generator acts by `exp(2πi c / d)`.
    pub fn stabilizer_character(&self, base: BaseType) -> u8 {
        let d = base.stabilizer_order();
        let modulus = base.line_modulus();
        self.exponent * d / modulus
    }
}

/// Normal lines of a zero-dimensional base spread over `partition`.
pub fn normal_lines(base: BaseType, partition: &Partition) -> Result<Vec<CharLine>> {
    use BaseType::*;
    let (trivial, tail): (&[u8], u8) = match base {
        A1 | A2 | A3 | A4 => {
            return Err(unsupported!("{base} has a one-dimensional base; its age is half the codimension"))
        }
        C4k1 => (&[2], 3),
        C4k2 => (&[2, 3], 3),
        C6k1 => (&[4], 5),
        C6k2 => (&[2, 4], 4),
        C6k3 => (&[2, 4, 4], 4),
    };
    let mut lines: Vec<CharLine> =
        trivial.iter().map(|&e| CharLine { exponent: e, bundle: LineBundle::Trivial }).collect();
    for (i, block) in partition.blocks().iter().enumerate() {
        if block.len() > 1 {
            lines.push(CharLine { exponent: tail, bundle: LineBundle::PsiDual(i) });
        }
    }
    Ok(lines)
}

pub fn normal_bundle(s: &Sector) -> Result<Vec<CharLine>> {
    match &s.support {
        Support::Whole(_) => Err(domain!("the untwisted sector has no normal bundle")),
        Support::Base { base, partition } => normal_lines(*base, partition),
    }
}

/// Age of a sector: half the codimension for the involution sectors, and the
/// sum of `(j c mod d) / d` over normal lines of character `c` for
/// `aut = g^j` otherwise. The untwisted sector has age 0.
pub fn age(s: &Sector) -> Rational {
    match &s.support {
        Support::Whole(_) => Rational::zero(),
        Support::Base { base, .. } if base.is_a_type() => rat(s.support.codim() as i64, 2),
        Support::Base { base, partition } => {
            let d = base.stabilizer_order() as u32;
            let j = s.generator_power() as u32;
            normal_lines(*base, partition)
                .expect("zero-dimensional base")
                .iter()
                .map(|line| rat(((j * line.stabilizer_character(*base) as u32) % d) as i64, d as i64))
                .sum()
        }
    }
}

/// Closed-form age table for sectors with `n >= 2`, in terms of the number of
/// singleton blocks. `None` for the untwisted sector and for `n = 1`.
pub fn tabulated_age(s: &Sector) -> Option<Rational> {
    use BaseType::*;
    let (base, partition) = match &s.support {
        Support::Whole(_) => return None,
        Support::Base { base, partition } => (*base, partition),
    };
    if partition.n() < 2 {
        return None;
    }
    let delta = partition.singleton_count() as i64;
    let ambient = s.aut.exp_in(12).expect("divides 12");
    let value = match (base, ambient) {
        (A1, _) => rat(1, 2),
        (A2, _) => rat(3 - delta, 2),
        (A3, _) => rat(5 - delta, 2),
        (A4, _) => rat(7 - delta, 2),
        (C4k1, 3) => rat(5, 4),
        (C4k1, _) => rat(3, 4),
        (C4k2, 3) => rat(11, 4) - rat(3 * delta, 4),
        (C4k2, _) => rat(5, 4) - rat(delta, 4),
        (C6k2, 4) => rat(7, 3) - rat(2 * delta, 3),
        (C6k2, _) => rat(5, 3) - rat(delta, 3),
        (C6k3, 4) => rat(11, 3) - rat(2 * delta, 3),
        (C6k3, _) => rat(7, 3) - rat(delta, 3),
        (C6k1, 2) => rat(3, 2),
        (C6k1, 4) | (C6k1, 8) => int(1),
        (C6k1, _) => rat(1, 2),
    };
    Some(value)
}

/// The sector with automorphism `aut` whose support contains `support`.
///
/// Fails when no such sector exists, which happens for automorphisms that do
/// not fix the support.
pub fn sector_containing(support: &Support, aut: Automorphism) -> Result<Sector> {
    use BaseType::*;
    if aut.is_identity() {
        return Ok(Sector::untwisted(support.n()));
    }
    let (base, partition) = match support {
        Support::Whole(_) => return Err(inconsistent!("{aut} does not fix all of M̄_1,n")),
        Support::Base { base, partition } => (*base, partition),
    };
    if base.allowed_auts().contains(&aut) {
        return Ok(Sector { support: support.clone(), aut });
    }
    if aut == Automorphism::MINUS_ONE {
        match base {
            C4k1 | C6k1 => return Sector::new(A1, partition.clone(), aut),
            C4k2 => return Sector::new(A2, partition.clone(), aut),
            _ => {}
        }
    }
    Err(inconsistent!("no sector with automorphism {aut} contains {}", support.label()))
}

/// `(1 + t or 1) × Π_blocks P(M̄_{0,|I|+1})`.
pub fn sector_poincare_with(s: &Sector, rows: &Genus0Rows) -> Result<Poly> {
    let (base, partition) = match &s.support {
        Support::Whole(_) => return Err(domain!("the untwisted sector is not described by this formula")),
        Support::Base { base, partition } => (*base, partition),
    };
    if partition.n() + 1 > rows.max_m() {
        return Err(domain!("genus-zero rows stop at m = {}", rows.max_m()));
    }
    Ok(partition
        .blocks()
        .iter()
        .fold(base.coarse_poincare(), |acc, b| &acc * rows.block_factor(b.len())))
}

pub fn sector_poincare(s: &Sector) -> Result<Poly> {
    sector_poincare_with(s, &Genus0Rows::up_to(s.n() + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_sectors(1, true).unwrap().len(), 8);
        assert_eq!(twisted_sectors(2).unwrap().len(), 12);
        assert_eq!(twisted_sectors(4).unwrap().len(), 61);
        assert_eq!(enumerate_sectors(5, false).unwrap().len(), 1);
        assert!(enumerate_sectors(0, true).is_err());
    }

    #[test]
    fn codims() {
        let a3 = Sector::new(BaseType::A3, part(5, &[&[1], &[2, 3], &[4, 5]]), Automorphism::MINUS_ONE).unwrap();
        assert_eq!(a3.codim(), 4);
        let c6 = Sector::new(BaseType::C6k1, Partition::whole(1), Automorphism::eps(1)).unwrap();
        assert_eq!(c6.codim(), 1);
        let c4 = Sector::new(BaseType::C4k2, Partition::singletons(2), Automorphism::I).unwrap();
        assert_eq!(c4.codim(), 2);
    }

    #[test]
    fn normal_lines_examples() {
        use LineBundle::*;
        let c4 = Sector::new(BaseType::C4k1, Partition::whole(3), Automorphism::I).unwrap();
        assert_eq!(
            normal_bundle(&c4).unwrap(),
            vec![CharLine { exponent: 2, bundle: Trivial }, CharLine { exponent: 3, bundle: PsiDual(0) }]
        );
        let c4_1 = Sector::new(BaseType::C4k1, Partition::whole(1), Automorphism::I).unwrap();
        assert_eq!(normal_bundle(&c4_1).unwrap(), vec![CharLine { exponent: 2, bundle: Trivial }]);
        let c6 = Sector::new(BaseType::C6k3, part(6, &[&[1, 2], &[3, 4], &[5, 6]]), Automorphism::eps(4)).unwrap();
        let exps: Vec<u8> = normal_bundle(&c6).unwrap().iter().map(|l| l.exponent).collect();
        assert_eq!(exps, vec![2, 4, 4, 4, 4, 4]);
        let a = Sector::new(BaseType::A1, Partition::whole(2), Automorphism::MINUS_ONE).unwrap();
        assert!(matches!(normal_bundle(&a), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn ages() {
        let c4 = Sector::new(BaseType::C4k1, Partition::whole(2), Automorphism::I).unwrap();
        assert_eq!(age(&c4), rat(5, 4));
        let c6 = Sector::new(BaseType::C6k3, part(6, &[&[1, 2], &[3, 4], &[5, 6]]), Automorphism::eps(4)).unwrap();
        assert_eq!(age(&c6), rat(7, 3));
        let c6_1 = Sector::new(BaseType::C6k1, Partition::whole(1), Automorphism::eps(1)).unwrap();
        assert_eq!(age(&c6_1), rat(2, 3));
        let a4 = Sector::new(BaseType::A4, Partition::singletons(4), Automorphism::MINUS_ONE).unwrap();
        assert_eq!(age(&a4), rat(3, 2));
        assert_eq!(age(&Sector::untwisted(3)), Rational::zero());
    }

    #[test]
    fn involution_fixes_a_types() {
        let a = Sector::new(BaseType::A1, Partition::whole(3), Automorphism::MINUS_ONE).unwrap();
        assert_eq!(a.involution(), a);
        let c = Sector::new(BaseType::C6k1, Partition::whole(3), Automorphism::eps(1)).unwrap();
        assert_eq!(c.involution().aut(), Automorphism::eps(5));
    }

    #[test]
    fn poincare() {
        let a = Sector::new(BaseType::A1, Partition::whole(4), Automorphism::MINUS_ONE).unwrap();
        assert_eq!(sector_poincare(&a).unwrap(), Poly::from_ints(&[1, 6, 6, 1]));
        let c = Sector::new(BaseType::C6k1, Partition::whole(1), Automorphism::eps(1)).unwrap();
        assert_eq!(sector_poincare(&c).unwrap(), Poly::one());
        let a2 = Sector::new(BaseType::A2, Partition::singletons(2), Automorphism::MINUS_ONE).unwrap();
        assert_eq!(sector_poincare(&a2).unwrap(), Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn containing_sectors() {
        let c4 = Support::new(BaseType::C4k2, part(3, &[&[1], &[2, 3]])).unwrap();
        let a2 = sector_containing(&c4, Automorphism::MINUS_ONE).unwrap();
        assert_eq!(a2.base(), Some(BaseType::A2));
        assert_eq!(a2.partition(), c4.partition());
        assert!(sector_containing(&c4, Automorphism::eps(1)).is_err());
        assert!(!sector_containing(&c4, Automorphism::IDENTITY).unwrap().is_twisted());
    }
}
