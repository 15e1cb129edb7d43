//! Double sectors and their excess intersection bundles.
//!
//! A double sector is a support together with a pair `(g, h)` of
//! automorphisms fixing it, written as the triple `(g, h, (gh)⁻¹)`. Its
//! excess bundle is the invariant part of `H¹(C, O_C) ⊗ N`, where `C` is
//! the Galois cover attached to the triple and `N` the normal bundle of the
//! support. The rank is computed twice: from the invariant characters, and
//! from the ages of the three sectors the labels live on.

use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use crate::automorphism::Automorphism;
use crate::error::{domain, inconsistent, unsupported, Result};
use crate::partition::partitions;
use crate::rational::Rational;
use crate::sector::{
    age, enumerate_sectors, normal_lines, sector_containing, BaseType, CharLine, LineBundle, Sector, Support,
};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubleSector {
    support: Support,
    g: Automorphism,
    h: Automorphism,
}

impl DoubleSector {
    pub fn new(support: Support, g: Automorphism, h: Automorphism) -> Result<Self> {
        let d = support.stabilizer_order();
        for a in [g, h] {
            if a.exp_in(d).is_none() {
                return Err(domain!("{a} does not fix {}", support.label()));
            }
        }
        Ok(DoubleSector { support, g, h })
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn g(&self) -> Automorphism {
        self.g
    }

    pub fn h(&self) -> Automorphism {
        self.h
    }

    /// `(g, h, (gh)⁻¹)`; the three entries multiply to the identity.
    pub fn triple(&self) -> [Automorphism; 3] {
        let gh = self.g.mul(self.h).expect("both in the stabilizer");
        [self.g, self.h, gh.inverse()]
    }

    pub fn has_identity(&self) -> bool {
        self.triple().iter().any(|a| a.is_identity())
    }

    /// Order of the group generated by `g` and `h`.
    pub fn group_order(&self) -> u8 {
        Automorphism::generated_order(&[self.g, self.h]).expect("both in the stabilizer")
    }

    /// Whether the support is exactly the locus fixed by `⟨g, h⟩`, i.e. the
    /// pair is a component of the double inertia stack rather than a piece
    /// of a larger one.
    pub fn is_component(&self) -> bool {
        let d = self.group_order();
        match self.support.base() {
            None => d == 1,
            Some(BaseType::C6k1) => d == 6 || d == 3,
            Some(base) => d == base.stabilizer_order(),
        }
    }

    /// Sectors carrying the three labels (the untwisted sector for an
    /// identity label).
    pub fn label_sectors(&self) -> Result<[Sector; 3]> {
        let [a, b, c] = self.triple();
        Ok([
            sector_containing(&self.support, a)?,
            sector_containing(&self.support, b)?,
            sector_containing(&self.support, c)?,
        ])
    }

    pub fn permuted(&self, order: [usize; 3]) -> DoubleSector {
        let t = self.triple();
        DoubleSector { support: self.support.clone(), g: t[order[0]], h: t[order[1]] }
    }

    pub fn inverse(&self) -> DoubleSector {
        DoubleSector { support: self.support.clone(), g: self.g.inverse(), h: self.h.inverse() }
    }
}

/// Every pair `(g, h)` of elements of the stabilizer of `support`.
pub fn stabilizer_pairs(support: &Support) -> Vec<DoubleSector> {
    let d = support.stabilizer_order();
    let elements: Vec<Automorphism> =
        (0..d).map(|k| Automorphism::new(d.max(1), k).expect("valid order")).collect();
    let mut out = Vec::with_capacity(elements.len() * elements.len());
    for &g in &elements {
        for &h in &elements {
            out.push(DoubleSector { support: support.clone(), g, h });
        }
    }
    out
}

/// All supports of twisted sectors of `M̄_{1,n}`, plus the whole space.
pub fn supports(n: usize) -> Result<Vec<Support>> {
    let mut out = alloc::vec![Support::Whole(n)];
    for base in BaseType::ALL {
        if base.arity() <= n {
            for p in partitions(n, base.arity())? {
                out.push(Support::Base { base, partition: p });
            }
        }
    }
    Ok(out)
}

/// For every support, every ordered pair from its stabilizer.
pub fn enumerate_double_sectors(n: usize) -> Result<Vec<DoubleSector>> {
    Ok(supports(n)?.iter().flat_map(stabilizer_pairs).collect())
}

/// At least one of `g`, `h`, `(gh)⁻¹` labels a twisted sector on exactly
/// this support, for every component of the double inertia stack.
pub fn doublesingle_check(n: usize) -> Result<bool> {
    let sectors = enumerate_sectors(n, true)?;
    for z in enumerate_double_sectors(n)?.iter().filter(|z| z.is_component()) {
        let triple = z.triple();
        if triple.iter().all(|a| a.is_identity()) {
            continue;
        }
        let found = triple.iter().any(|&a| {
            !a.is_identity() && sectors.iter().any(|s| s.support() == &z.support && s.aut() == a)
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Characters of `H¹(C, O_C)` for the cover attached to an identity-free
/// triple, as exponents `k` with the generator of `⟨g, h⟩` acting by `γ^k`
/// (`γ = i` for `μ4`, `γ = ε` for `μ3` and `μ6`).
pub fn h1_characters(triple: &[Automorphism; 3]) -> Result<Vec<u8>> {
    if triple.iter().any(|a| a.is_identity()) {
        return Err(domain!("triples with an identity entry have no excess bundle"));
    }
    let ambient = if triple.iter().any(|a| a.order() == 4) { 4 } else { 6 };
    let key = |t: &[Automorphism; 3]| {
        let mut e: Vec<u8> = t.iter().map(|a| a.exp_in(ambient).expect("same group")).collect();
        e.sort_unstable();
        e
    };
    let table: [(&[u8], &[u8], u8); 5] = [
        (&[2, 2, 2], &[2], 6),
        (&[4, 4, 4], &[4], 6),
        (&[1, 1, 2], &[1], 4),
        (&[1, 1, 4], &[1, 2], 6),
        (&[1, 2, 3], &[1], 6),
    ];
    let direct = key(triple);
    let inverse = key(&[triple[0].inverse(), triple[1].inverse(), triple[2].inverse()]);
    for (entry, chars, modulus) in table {
        if modulus != ambient {
            continue;
        }
        if direct == entry {
            return Ok(chars.to_vec());
        }
        if inverse == entry {
            return Ok(chars.iter().map(|&c| (modulus - c) % modulus).collect());
        }
    }
    Err(unsupported!("no cover data for the triple {:?}", direct))
}

/// One invariant line of `H¹ ⊗ N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcessLine {
    /// The `H¹` character, as returned by [`h1_characters`].
    pub h1: u8,
    pub normal: CharLine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcessBundle {
    pub lines: Vec<ExcessLine>,
}

impl ExcessBundle {
    pub fn rank(&self) -> usize {
        self.lines.len()
    }
}

/// Rank from ages: `a(X1,g) + a(X2,h) + a(X3,(gh)⁻¹) - codim(Y)`.
pub fn excess_rank_age(z: &DoubleSector) -> Result<usize> {
    let total: Rational = z.label_sectors()?.iter().map(age).sum::<Rational>()
        - Rational::from_integer(z.support.codim().into());
    if !total.is_integer() || total < Rational::zero() {
        return Err(inconsistent!(
            "age formula gives {total} for {} with {:?}",
            z.support.label(),
            z.triple()
        ));
    }
    Ok(total.to_integer().to_usize().expect("small"))
}

/// Excess bundle from characters: pairs of an `H¹` character and a normal
/// line whose product is invariant under `⟨g, h⟩`. Checked against the rank
/// from ages.
pub fn excess_bundle(z: &DoubleSector) -> Result<ExcessBundle> {
    let bundle = excess_bundle_from_characters(z)?;
    let by_age = excess_rank_age(z)?;
    if bundle.rank() != by_age {
        return Err(inconsistent!(
            "{} with {:?}: {} invariant lines but the age formula gives rank {by_age}",
            z.support.label(),
            z.triple(),
            bundle.rank()
        ));
    }
    Ok(bundle)
}

pub fn excess_bundle_from_characters(z: &DoubleSector) -> Result<ExcessBundle> {
    let (base, partition) = match &z.support {
        Support::Base { base, partition } if !base.is_a_type() => (*base, partition),
        _ => return Err(domain!("excess bundles are only nonzero over zero-dimensional bases")),
    };
    let triple = z.triple();
    let h1 = h1_characters(&triple)?;
    let d = z.group_order();
    let ambient = if d == 4 { 4 } else { 6 };
    let lines = normal_lines(base, partition)?;
    let mut out = Vec::new();
    for &k in &h1 {
        // character of the H¹ line as an exponent mod d
        let c1 = k * d / ambient;
        for line in &lines {
            let c2 = line.stabilizer_character(base) % d;
            if (c1 + c2) % d == 0 {
                out.push(ExcessLine { h1: k, normal: *line });
            }
        }
    }
    Ok(ExcessBundle { lines: out })
}

/// Top Chern class of an excess bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChernDescriptor {
    One,
    Zero,
    /// `-ψ` at the gluing point of the genus-zero factor on block `i`.
    MinusPsi(usize),
}

pub fn top_chern(z: &DoubleSector) -> Result<ChernDescriptor> {
    if z.has_identity() {
        return Ok(ChernDescriptor::One);
    }
    let bundle = excess_bundle(z)?;
    if bundle.rank() == 0 {
        return Ok(ChernDescriptor::One);
    }
    if bundle.lines.iter().any(|l| l.normal.bundle == LineBundle::Trivial) {
        return Ok(ChernDescriptor::Zero);
    }
    let partition = z.support.partition().expect("zero-dimensional base");
    match bundle.lines.as_slice() {
        [line] => {
            let LineBundle::PsiDual(i) = line.normal.bundle else { unreachable!() };
            if partition.block(i).len() <= 2 {
                Ok(ChernDescriptor::Zero)
            } else {
                Ok(ChernDescriptor::MinusPsi(i))
            }
        }
        _ => Err(unsupported!(
            "excess bundle of rank {} made only of cotangent duals",
            bundle.rank()
        )),
    }
}

/// Excess ranks on partitions without singleton blocks:
/// `((g, h), base, rank of (g, h), rank of (g⁻¹, h⁻¹))`.
pub const SINGLETON_FREE_RANKS: [((Automorphism, Automorphism), BaseType, usize, usize); 7] = [
    ((Automorphism::EPS2, Automorphism::EPS2), BaseType::C6k1, 1, 1),
    ((Automorphism::EPS2, Automorphism::EPS2), BaseType::C6k2, 3, 1),
    ((Automorphism::EPS2, Automorphism::EPS2), BaseType::C6k3, 5, 1),
    ((Automorphism::I, Automorphism::I), BaseType::C4k1, 1, 0),
    ((Automorphism::I, Automorphism::I), BaseType::C4k2, 3, 0),
    ((Automorphism::EPS, Automorphism::EPS), BaseType::C6k1, 2, 0),
    ((Automorphism::EPS, Automorphism::EPS2), BaseType::C6k1, 1, 0),
];

/// Double sectors of `M̄_{1,n}` where [`SINGLETON_FREE_RANKS`] and
/// [`excess_bundle`] disagree.
pub fn singleton_free_rank_mismatches(n: usize) -> Result<Vec<DoubleSector>> {
    let mut out = Vec::new();
    for ((g, h), base, rank, inverse_rank) in SINGLETON_FREE_RANKS {
        if base.arity() > n {
            continue;
        }
        for p in partitions(n, base.arity())?.into_iter().filter(|p| p.singleton_count() == 0) {
            let z = DoubleSector::new(Support::new(base, p)?, g, h)?;
            if excess_bundle(&z)?.rank() != rank || excess_bundle(&z.inverse())?.rank() != inverse_rank {
                out.push(z);
            }
        }
    }
    Ok(out)
}

/// Identity-free components whose top Chern class is a `ψ` class.
pub fn minus_psi_components(n: usize) -> Result<Vec<DoubleSector>> {
    let mut out = Vec::new();
    for z in enumerate_double_sectors(n)? {
        if z.is_component() && !z.has_identity() && matches!(top_chern(&z)?, ChernDescriptor::MinusPsi(_)) {
            out.push(z);
        }
    }
    Ok(out)
}

/// `rk(g,h) + rk(g⁻¹,h⁻¹) = codim X1 + codim X2 + codim X3 - 2 codim Y` for
/// every identity-free component.
pub fn rank_duality_check(n: usize) -> Result<bool> {
    for z in enumerate_double_sectors(n)?.iter().filter(|z| z.is_component() && !z.has_identity()) {
        let lhs = excess_rank_age(z)? + excess_rank_age(&z.inverse())?;
        let codims: usize = z.label_sectors()?.iter().map(Sector::codim).sum();
        if lhs + 2 * z.support.codim() != codims {
            return Ok(false);
        }
    }
    Ok(true)
}
