//! The orbifold product of fundamental classes of sectors.
//!
//! For two sectors `(X1, g)` and `(X2, h)` the product is supported on the
//! double sector `(X1 ∩ X2, g, h)` and pushed to the sector of `gh`. The
//! intersection of supports follows a fixed rule table; the excess bundle
//! decides between a fundamental class, zero and a `θ` class, where `θ` is
//! `-ψ` at the gluing point of a genus-zero factor.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::automorphism::Automorphism;
use crate::divisor::{native_base_class, Divisor, DivisorPoly};
use crate::error::{domain, inconsistent, unsupported, Result};
use crate::inertia2::{top_chern, ChernDescriptor, DoubleSector};
use crate::rational::{int, rat, Rational};
use crate::sector::{age, sector_containing, twisted_sectors, BaseType, Sector, Support};

/// Common locus of two sectors, when their product can be nonzero.
///
/// Equal supports meet in themselves and the untwisted sector meets
/// everything. Otherwise only `A1` meets the one-block `C4` and `C6`
/// supports, and `A2` meets the two-block `C4` support on the same partition.
pub fn supports_intersect(s1: &Sector, s2: &Sector) -> Option<Support> {
    use BaseType::*;
    let (y1, y2) = (s1.support(), s2.support());
    if y1.n() != y2.n() {
        return None;
    }
    if y1 == y2 || y2.is_whole() {
        return Some(y1.clone());
    }
    if y1.is_whole() {
        return Some(y2.clone());
    }
    let (b1, b2) = (y1.base()?, y2.base()?);
    let same_partition = y1.partition() == y2.partition();
    match (b1, b2) {
        (A1, C4k1 | C6k1) | (A2, C4k2) if same_partition => Some(y2.clone()),
        (C4k1 | C6k1, A1) | (C4k2, A2) if same_partition => Some(y1.clone()),
        _ => None,
    }
}

/// What a product class looks like inside the cohomology of its target
/// sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassKind {
    Zero,
    Fund,
    /// `θ` on the factor of block `block` of the support of the double
    /// sector; `within` is that support when it is smaller than the target's.
    Theta { block: usize, within: Option<Support> },
    /// The fundamental class of a smaller locus.
    PushedFund(Support),
    /// A class on the untwisted sector written in boundary divisors.
    AmbientDivisor(DivisorPoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorClass {
    pub target: Sector,
    pub kind: ClassKind,
}

impl SectorClass {
    pub fn fund(target: Sector) -> Self {
        SectorClass { target, kind: ClassKind::Fund }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, ClassKind::Zero)
    }

    /// A `θ` class, or zero when the block carries at most two points
    /// (`ψ` vanishes on `M̄_{0,3}`).
    pub fn theta(target: Sector, on: &Support, block: usize) -> Result<Self> {
        let size = on
            .partition()
            .ok_or_else(|| domain!("θ needs a partitioned support"))?
            .blocks()
            .get(block)
            .ok_or_else(|| domain!("no block {block} on {}", on.label()))?
            .len();
        if size <= 2 {
            return Ok(SectorClass { target, kind: ClassKind::Zero });
        }
        let within = (on != target.support()).then(|| on.clone());
        Ok(SectorClass { target, kind: ClassKind::Theta { block, within } })
    }

    /// Rewrites a pushed fundamental class on the untwisted sector as a
    /// polynomial in boundary divisors when the pushed locus is a base
    /// sector at its native number of points.
    pub fn with_divisor_form(&self) -> Result<SectorClass> {
        match &self.kind {
            ClassKind::PushedFund(y) if !self.target.is_twisted() => Ok(SectorClass {
                target: self.target.clone(),
                kind: ClassKind::AmbientDivisor(native_base_class(y)?),
            }),
            _ => Err(unsupported!("{} has no divisor form", render(self, false))),
        }
    }
}

/// Result of multiplying two fundamental classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Product {
    /// The supports do not meet.
    Disjoint,
    Class(SectorClass),
}

impl Product {
    pub fn class(&self) -> Option<&SectorClass> {
        match self {
            Product::Disjoint => None,
            Product::Class(c) => Some(c),
        }
    }

    /// Nonzero class, if any.
    pub fn nonzero(&self) -> Option<&SectorClass> {
        self.class().filter(|c| !c.is_zero())
    }
}

/// `[(X1, g)] * [(X2, h)]` for sectors of the same `M̄_{1,n}`; either may be
/// the untwisted sector.
pub fn cr_product_fund(s1: &Sector, s2: &Sector) -> Result<Product> {
    if s1.n() != s2.n() {
        return Err(domain!("sectors of M̄_1,{} and M̄_1,{}", s1.n(), s2.n()));
    }
    if !s1.is_twisted() {
        return Ok(Product::Class(SectorClass::fund(s2.clone())));
    }
    if !s2.is_twisted() {
        return Ok(Product::Class(SectorClass::fund(s1.clone())));
    }
    let Some(y) = supports_intersect(s1, s2) else {
        return Ok(Product::Disjoint);
    };
    let (g, h) = (s1.aut(), s2.aut());
    let gh = g.mul(h)?;
    let z = DoubleSector::new(y.clone(), g, h)?;
    let target = sector_containing(&y, gh)
        .map_err(|e| inconsistent!("product of {s1} and {s2} has no target sector: {e}"))?;
    let class = match top_chern(&z)? {
        ChernDescriptor::Zero => SectorClass { target, kind: ClassKind::Zero },
        ChernDescriptor::One => {
            if y.codim() == target.support().codim() {
                SectorClass::fund(target)
            } else {
                SectorClass { target, kind: ClassKind::PushedFund(y) }
            }
        }
        ChernDescriptor::MinusPsi(block) => SectorClass::theta(target, &y, block)?,
    };
    Ok(Product::Class(class))
}

/// `2 age(target) + 2 θ-power + 2 (codim of the locus inside the target)`.
pub fn orbifold_degree(c: &SectorClass) -> Result<Rational> {
    let shift = age(&c.target) * int(2);
    let target_codim = c.target.support().codim() as i64;
    let inside = |y: &Support| int(2 * (y.codim() as i64 - target_codim));
    match &c.kind {
        ClassKind::Zero => Err(domain!("the zero class has no degree")),
        ClassKind::Fund => Ok(shift),
        ClassKind::PushedFund(y) => Ok(shift + inside(y)),
        ClassKind::Theta { within, .. } => {
            Ok(shift + int(2) + within.as_ref().map_or_else(|| int(0), inside))
        }
        ClassKind::AmbientDivisor(poly) => {
            let mut degrees = poly.terms().map(|(m, _)| m.len());
            let d = degrees.next().ok_or_else(|| domain!("the zero class has no degree"))?;
            if degrees.any(|e| e != d) {
                return Err(domain!("{poly} is not homogeneous"));
            }
            Ok(shift + int(2 * d as i64))
        }
    }
}

/// Degree of an input sector's fundamental class.
pub fn fund_degree(s: &Sector) -> Rational {
    age(s) * int(2)
}

fn compact_support(y: &Support) -> String {
    match y {
        Support::Whole(_) => String::from("X"),
        Support::Base { base, partition } if partition.len() == 1 => {
            alloc::format!("{}^{{[{}]}}", base.symbol(), partition.n())
        }
        Support::Base { base, partition } => {
            let mut sizes = partition.block_sizes();
            sizes.sort_unstable();
            let sizes: Vec<String> = sizes.iter().map(|s| alloc::format!("{s}")).collect();
            alloc::format!("{}^{{{}}}", base.symbol(), sizes.join(","))
        }
    }
}

/// Sector label; `compact` replaces the partition by its block sizes, which
/// is how families of sectors are named in tables.
pub fn sector_label(s: &Sector, compact: bool) -> String {
    if !s.is_twisted() {
        return String::from("X");
    }
    if compact {
        alloc::format!("({},{})", compact_support(s.support()), s.aut())
    } else {
        s.label()
    }
}

fn support_label(y: &Support, compact: bool) -> String {
    if compact {
        compact_support(y)
    } else {
        y.label()
    }
}

/// Table notation: `0`, `(S)` for a fundamental class, `A<B` for the class
/// of `A` inside the support `B` of the target, `θ<S` for a `θ` class on the
/// target sector `S` and `θ<B` for one pushed into the support `B`.
pub fn render(c: &SectorClass, compact: bool) -> String {
    let target_support = || support_label(c.target.support(), compact);
    match &c.kind {
        ClassKind::Zero => String::from("0"),
        ClassKind::Fund => sector_label(&c.target, compact),
        ClassKind::PushedFund(y) => alloc::format!("{}<{}", support_label(y, compact), target_support()),
        ClassKind::Theta { within: None, .. } => alloc::format!("θ<{}", sector_label(&c.target, compact)),
        ClassKind::Theta { within: Some(_), .. } => alloc::format!("θ<{}", target_support()),
        ClassKind::AmbientDivisor(poly) => alloc::format!("{poly}"),
    }
}

pub fn render_product(p: &Product, compact: bool) -> String {
    match p {
        Product::Disjoint => String::from("∅"),
        Product::Class(c) => render(c, compact),
    }
}

impl fmt::Display for SectorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, false))
    }
}

/// Products of all pairs of twisted sectors of `M̄_{1,n}`.
#[derive(Debug, Clone)]
pub struct ProductTable {
    pub sectors: Vec<Sector>,
    entries: Vec<Vec<Product>>,
}

impl ProductTable {
    pub fn n(&self) -> usize {
        self.sectors.first().map_or(0, Sector::n)
    }

    pub fn get(&self, i: usize, j: usize) -> &Product {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Product>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.sectors.len();
        (0..k).all(|i| (i + 1..k).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Index pairs whose nonzero product has degree different from the sum
    /// of the input degrees.
    pub fn degree_violations(&self) -> Result<Vec<(usize, usize)>> {
        let degrees: Vec<Rational> = self.sectors.iter().map(fund_degree).collect();
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if let Some(c) = p.nonzero() {
                    if orbifold_degree(c)? != &degrees[i] + &degrees[j] {
                        out.push((i, j));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().flatten().filter(|p| p.nonzero().is_some()).count()
    }
}

pub fn product_table(n: usize) -> Result<ProductTable> {
    let sectors = twisted_sectors(n)?;
    let entries = sectors
        .iter()
        .map(|a| sectors.iter().map(|b| cr_product_fund(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductTable { sectors, entries })
}

/// The untwisted class is a two-sided unit and `[(X, g)] * [(X, g⁻¹)]` is
/// the class of `X` on the untwisted sector. Returns the offending sectors.
pub fn unit_and_involution_violations(n: usize) -> Result<Vec<Sector>> {
    let one = Sector::untwisted(n);
    let mut out = Vec::new();
    for s in twisted_sectors(n)? {
        let fund = Product::Class(SectorClass::fund(s.clone()));
        let unit_ok = cr_product_fund(&one, &s)? == fund && cr_product_fund(&s, &one)? == fund;
        let inverse = cr_product_fund(&s, &s.involution())?;
        let expected = if s.codim() == 0 {
            SectorClass::fund(one.clone())
        } else {
            SectorClass { target: one.clone(), kind: ClassKind::PushedFund(s.support().clone()) }
        };
        if !unit_ok || inverse != Product::Class(expected) {
            out.push(s);
        }
    }
    Ok(out)
}

/// A class on `M̄_{1,n}` used to represent pushforwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbientClass {
    /// `[M̄_{1,n}]`.
    Whole,
    /// `[C_a*]`, the preimage of the point `C_a` of `M̄_{1,1}` under the map
    /// forgetting all points but the first.
    CStar(u8),
}

impl AmbientClass {
    /// `[C_a*] = (2/a) D_irr`.
    pub fn in_divisors(&self) -> DivisorPoly {
        match self {
            AmbientClass::Whole => DivisorPoly::constant(int(1)),
            AmbientClass::CStar(a) => {
                let mut p = DivisorPoly::zero();
                p.add_term(rat(2, *a as i64), alloc::vec![Divisor::Irr]);
                p
            }
        }
    }
}

impl fmt::Display for AmbientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientClass::Whole => f.write_str("[X]"),
            AmbientClass::CStar(a) => write!(f, "[C{a}*]"),
        }
    }
}

/// The class `β` on `M̄_{1,n}` whose pullback to the target support is the
/// pushforward of the top Chern class of the excess bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Beta {
    Zero,
    Class(AmbientClass),
    /// `D_I · W` for the block `I` carrying the `ψ` class.
    BoundaryTimes { boundary: Divisor, factor: AmbientClass },
}

impl Beta {
    pub fn in_divisors(&self) -> DivisorPoly {
        match self {
            Beta::Zero => DivisorPoly::zero(),
            Beta::Class(w) => w.in_divisors(),
            Beta::BoundaryTimes { boundary, factor } => {
                let mut d = DivisorPoly::zero();
                d.add_term(int(1), alloc::vec![*boundary]);
                d.mul(&factor.in_divisors())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushforwardChoice {
    /// `W` with `g_*[Z] = f*[W]`.
    pub w: AmbientClass,
    pub beta: Beta,
}

/// Canonical `W` and `β` for a double sector, landing on the sector of `gh`.
pub fn pushforward_choice(z: &DoubleSector) -> Result<PushforwardChoice> {
    use BaseType::*;
    let gh = z.g().mul(z.h())?;
    let target = sector_containing(z.support(), gh)?;
    let y = target.support();
    let w = if y == z.support() || y.is_whole() {
        AmbientClass::Whole
    } else {
        match (z.support().base(), y.base()) {
            (Some(C4k1), Some(A1)) | (Some(C4k2), Some(A2)) => AmbientClass::CStar(4),
            (Some(C6k1), Some(A1)) => AmbientClass::CStar(6),
            _ => {
                return Err(unsupported!(
                    "no canonical class for {} inside {}",
                    z.support().label(),
                    y.label()
                ))
            }
        }
    };
    let beta = match top_chern(z)? {
        ChernDescriptor::Zero => Beta::Zero,
        ChernDescriptor::One => Beta::Class(w.clone()),
        ChernDescriptor::MinusPsi(block) => {
            let partition = z.support().partition().expect("ψ lives on a partitioned support");
            Beta::BoundaryTimes { boundary: Divisor::boundary(partition.block(block)), factor: w.clone() }
        }
    };
    Ok(PushforwardChoice { w, beta })
}

/// Pushforward choice for the product of two twisted sectors, when their
/// supports meet.
pub fn pushforward_choice_for(s1: &Sector, s2: &Sector) -> Result<Option<PushforwardChoice>> {
    match supports_intersect(s1, s2) {
        Some(y) if s1.is_twisted() && s2.is_twisted() => {
            pushforward_choice(&DoubleSector::new(y, s1.aut(), s2.aut())?).map(Some)
        }
        _ => Ok(None),
    }
}

/// Convenience for tests and reports: the sector `(base^{[n]}, aut)`.
pub fn one_block(base: BaseType, n: usize, aut: Automorphism) -> Result<Sector> {
    Sector::new(base, crate::partition::Partition::whole(n), aut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use BaseType::*;

    fn e(k: u8) -> Automorphism {
        Automorphism::eps(k)
    }

    fn cell(a: &Sector, b: &Sector) -> String {
        render_product(&cr_product_fund(a, b).unwrap(), true)
    }

    #[test]
    fn anchors() {
        let c6 = |k| one_block(C6k1, 3, e(k)).unwrap();
        assert_eq!(cell(&c6(2), &c6(2)), "θ<(C6^{[3]},ε^4)");
        let c4 = |a| one_block(C4k1, 2, a).unwrap();
        assert_eq!(cell(&c4(Automorphism::I), &c4(Automorphism::I)), "0");
        let c4 = one_block(C4k1, 1, Automorphism::MINUS_I).unwrap();
        assert_eq!(cell(&c4, &c4), "C4^{[1]}<A1^{[1]}");
        let p = Partition::new(4, alloc::vec![alloc::vec![1], alloc::vec![2, 3, 4]]).unwrap();
        let a2 = Sector::new(A2, p.clone(), Automorphism::MINUS_ONE).unwrap();
        let c4 = Sector::new(C4k2, p, Automorphism::MINUS_I).unwrap();
        assert_eq!(cell(&a2, &c4), "(C4^{1,3},i)");
        let c6 = one_block(C6k1, 4, e(1)).unwrap();
        let c4 = one_block(C4k1, 4, Automorphism::I).unwrap();
        assert_eq!(cell(&c6, &c4), "∅");
    }

    #[test]
    fn degrees() {
        let c4 = one_block(C4k1, 3, Automorphism::I).unwrap();
        assert_eq!(orbifold_degree(&SectorClass::fund(c4)).unwrap(), rat(5, 2));
        let c6 = one_block(C6k1, 3, e(2)).unwrap();
        let Product::Class(c) = cr_product_fund(&c6, &c6).unwrap() else { panic!() };
        assert_eq!(orbifold_degree(&c).unwrap(), int(4));
        assert!(orbifold_degree(&SectorClass { target: c6, kind: ClassKind::Zero }).is_err());
    }

    #[test]
    fn unit_and_involution() {
        for n in 1..=4 {
            assert!(unit_and_involution_violations(n).unwrap().is_empty(), "n = {n}");
        }
    }

    #[test]
    fn divisor_form_on_native_bases() {
        let c4 = one_block(C4k1, 1, Automorphism::I).unwrap();
        let Product::Class(c) = cr_product_fund(&c4, &c4.involution()).unwrap() else { panic!() };
        assert_eq!(alloc::format!("{}", c.with_divisor_form().unwrap()), "1/2 D_irr");
    }

    #[test]
    fn choices() {
        let y = Support::new(C6k1, Partition::whole(3)).unwrap();
        let z = DoubleSector::new(y.clone(), e(1), e(2)).unwrap();
        let choice = pushforward_choice(&z).unwrap();
        assert_eq!(choice.w, AmbientClass::CStar(6));
        assert_eq!(alloc::format!("{}", choice.w.in_divisors()), "1/3 D_irr");
        let z = DoubleSector::new(y.clone(), e(2), e(2)).unwrap();
        let choice = pushforward_choice(&z).unwrap();
        assert_eq!(choice.w, AmbientClass::Whole);
        assert_eq!(choice.beta, Beta::BoundaryTimes { boundary: Divisor::boundary(&[1, 2, 3]), factor: AmbientClass::Whole });
        let z = DoubleSector::new(y, e(1), e(1)).unwrap();
        assert_eq!(pushforward_choice(&z).unwrap().beta, Beta::Zero);
    }
}
