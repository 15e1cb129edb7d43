//! Stated products of fundamental classes, compared with the engine.
//!
//! Each statement gives two sectors, a kind of class, the sector where it
//! lives and the ordinary cohomological degree inside that sector. The
//! degree is compared with the one forced by additivity,
//! `2 a(S1) + 2 a(S2) - 2 a(target)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::automorphism::Automorphism;
use crate::crring::{cr_product_fund, fund_degree, sector_label, ClassKind, Product};
use crate::error::{domain, Result};
use crate::partition::{partitions, Partition};
use crate::rational::{int, Rational};
use crate::sector::{twisted_sectors, BaseType, Sector};

/// A family of sectors sharing base type and automorphism; the pair and
/// multi-block kinds range over partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    A1,
    C4,
    C6,
    A2,
    C4Pair,
    /// `C6` over two or three blocks.
    C6Multi,
}

impl Family {
    fn base(self, blocks: usize) -> BaseType {
        match self {
            Family::A1 => BaseType::A1,
            Family::C4 => BaseType::C4k1,
            Family::C6 => BaseType::C6k1,
            Family::A2 => BaseType::A2,
            Family::C4Pair => BaseType::C4k2,
            Family::C6Multi if blocks == 2 => BaseType::C6k2,
            Family::C6Multi => BaseType::C6k3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::A1 => "A1^{[n]}",
            Family::C4 => "C4^{[n]}",
            Family::C6 => "C6^{[n]}",
            Family::A2 => "A2^{I1,I2}",
            Family::C4Pair => "C4^{I1,I2}",
            Family::C6Multi => "C6^{I1,I2,I3}",
        }
    }

    fn is_one_block(self) -> bool {
        matches!(self, Family::A1 | Family::C4 | Family::C6)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stated {
    Zero,
    Fund,
    /// Fundamental class of the smaller support inside the target.
    Pushed,
    /// `-ψ` on the target sector.
    Psi,
    /// `-ψ` on the smaller support, inside the target.
    PsiPushed,
}

#[derive(Debug, Clone, Copy)]
pub struct Statement {
    pub corollary: u8,
    pub item: u8,
    pub left: (Family, Automorphism),
    pub right: (Family, Automorphism),
    pub result: Stated,
    pub target: (Family, Automorphism),
    /// `k` in `H^k(target)`.
    pub degree: u8,
}

impl Statement {
    pub fn id(&self) -> String {
        alloc::format!("{}.{}", self.corollary, self.item)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |(fam, aut): (Family, Automorphism)| alloc::format!("({},{aut})", fam.name());
        let class = match self.result {
            Stated::Zero => "0",
            Stated::Fund | Stated::Pushed => "[support]",
            Stated::Psi => "-ψ",
            Stated::PsiPushed => "-ψ ∩ [support]",
        };
        write!(
            f,
            "{} * {} = {class} in H^{}({})",
            side(self.left),
            side(self.right),
            self.degree,
            side(self.target)
        )
    }
}

const fn st(
    corollary: u8,
    item: u8,
    left: (Family, Automorphism),
    right: (Family, Automorphism),
    result: Stated,
    target: (Family, Automorphism),
    degree: u8,
) -> Statement {
    Statement { corollary, item, left, right, result, target, degree }
}

const M1: Automorphism = Automorphism::MINUS_ONE;
const I: Automorphism = Automorphism::I;
const MI: Automorphism = Automorphism::MINUS_I;
const E1: Automorphism = Automorphism::EPS;
const E2: Automorphism = Automorphism::EPS2;
const E4: Automorphism = Automorphism::EPS4;
const E5: Automorphism = Automorphism::EPS5;

/// Products with the involution sectors (first list) and products within one
/// support (second list). The second list also states
/// `[(X,α)] * [(X,α⁻¹)] = [X]`, checked separately.
pub const STATEMENTS: [Statement; 22] = {
    use Family::*;
    use Stated::*;
    [
        st(1, 1, (C4, I), (A1, M1), Psi, (C4, MI), 2),
        st(1, 2, (C4, MI), (A1, M1), Fund, (C4, I), 0),
        st(1, 3, (C6, E1), (A1, M1), Psi, (C6, E4), 2),
        st(1, 4, (C6, E2), (A1, M1), Psi, (C6, E5), 2),
        st(1, 5, (C6, E4), (A1, M1), Fund, (C6, E1), 0),
        st(1, 6, (C6, E5), (A1, M1), Fund, (C6, E2), 0),
        st(1, 7, (A2, M1), (C4Pair, I), Zero, (C4Pair, MI), 2),
        st(1, 8, (A2, M1), (C4Pair, MI), Fund, (C4Pair, I), 2),
        st(2, 2, (C4, I), (C4, I), PsiPushed, (A1, M1), 4),
        st(2, 3, (C4, MI), (C4, MI), Pushed, (A1, M1), 2),
        st(2, 4, (C4Pair, I), (C4Pair, I), Zero, (A2, M1), 4),
        st(2, 5, (C4Pair, MI), (C4Pair, MI), Pushed, (A2, M1), 2),
        st(2, 6, (C6, E1), (C6, E1), Zero, (C6, E2), 4),
        st(2, 7, (C6, E1), (C6, E2), PsiPushed, (A1, M1), 4),
        st(2, 8, (C6, E1), (C6, E4), Zero, (C6, E5), 4),
        st(2, 9, (C6, E2), (C6, E2), Psi, (C6, E4), 2),
        st(2, 10, (C6, E2), (C6, E5), Psi, (C6, E1), 2),
        st(2, 11, (C6, E4), (C6, E4), Zero, (C6, E2), 2),
        st(2, 12, (C6, E4), (C6, E5), Pushed, (A1, M1), 2),
        st(2, 13, (C6, E5), (C6, E5), Fund, (C6, E4), 0),
        st(2, 14, (C6Multi, E2), (C6Multi, E2), Zero, (C6Multi, E4), 4),
        st(2, 15, (C6Multi, E4), (C6Multi, E4), Zero, (C6Multi, E2), 2),
    ]
};

/// Statements whose class disagrees with the engine, the reference tables
/// and degree additivity.
pub const KNOWN_DISAGREEMENTS: [&str; 1] = ["2.10"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ItemStatus {
    Agree,
    /// A stated `ψ` class lives on blocks of at most two points, where the
    /// engine correctly finds zero or a fundamental class.
    Degenerate,
    /// The class agrees but the stated degree does not.
    DegreeLabel,
    Disagree,
}

impl ItemStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ItemStatus::Agree => "agree",
            ItemStatus::Degenerate => "degenerate",
            ItemStatus::DegreeLabel => "degree-label",
            ItemStatus::Disagree => "disagree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryEntry {
    pub id: String,
    pub statement: String,
    pub status: ItemStatus,
    pub instances: usize,
    pub details: Vec<String>,
}

fn partitions_for(st: &Statement, n: usize) -> Result<Vec<Partition>> {
    let families = [st.left.0, st.right.0, st.target.0];
    if families.iter().all(|f| f.is_one_block()) {
        return Ok(alloc::vec![Partition::whole(n)]);
    }
    let mut out = Vec::new();
    if n >= 2 {
        out.extend(partitions(n, 2)?);
    }
    if families.contains(&Family::C6Multi) && n >= 3 {
        out.extend(partitions(n, 3)?);
    }
    Ok(out)
}

fn build(side: (Family, Automorphism), p: &Partition) -> Result<Sector> {
    let (family, aut) = side;
    let p = if family.is_one_block() { Partition::whole(p.n()) } else { p.clone() };
    Sector::new(family.base(p.len()), p, aut)
}

fn compare(st: &Statement, p: &Partition) -> Result<(ItemStatus, String)> {
    let (s1, s2, target) = (build(st.left, p)?, build(st.right, p)?, build(st.target, p)?);
    let product = cr_product_fund(&s1, &s2)?;
    let shown = crate::crring::render_product(&product, false);
    let Product::Class(class) = &product else {
        return Ok((ItemStatus::Disagree, alloc::format!("{s1} * {s2}: supports do not meet")));
    };
    let class_matches = match (st.result, &class.kind) {
        (Stated::Zero, ClassKind::Zero) => true,
        (Stated::Fund, ClassKind::Fund) | (Stated::Pushed, ClassKind::PushedFund(_)) => class.target == target,
        (Stated::Psi, ClassKind::Theta { within: None, .. }) => class.target == target,
        (Stated::PsiPushed, ClassKind::Theta { within: Some(_), .. }) => class.target == target,
        _ => false,
    };
    let psi_blocks_small = p.blocks().iter().all(|b| b.len() <= 2) || (st.left.0.is_one_block() && p.n() <= 2);
    if !class_matches {
        let status = if matches!(st.result, Stated::Psi | Stated::PsiPushed) && psi_blocks_small {
            ItemStatus::Degenerate
        } else {
            ItemStatus::Disagree
        };
        return Ok((status, alloc::format!("{s1} * {s2} = {shown}")));
    }
    let additive: Rational = fund_degree(&s1) + fund_degree(&s2) - fund_degree(&target);
    if additive != int(st.degree as i64) {
        return Ok((
            ItemStatus::DegreeLabel,
            alloc::format!("{s1} * {s2} = {shown}, degree {additive} in {}", sector_label(&target, false)),
        ));
    }
    Ok((ItemStatus::Agree, alloc::format!("{s1} * {s2} = {shown}")))
}

/// Every statement instantiated on every matching partition of `[n]`.
///
/// An entry takes the worst status over its instances, with details of the
/// instances at that status. The identity `[(X,α)] * [(X,α⁻¹)] = [X]` is
/// reported as entry `2.1` over all twisted sectors.
pub fn corollary_diff_report(n: usize) -> Result<Vec<CorollaryEntry>> {
    if n < 1 {
        return Err(domain!("n must be at least 1"));
    }
    let mut out = Vec::new();
    let sectors = twisted_sectors(n)?;
    let mut inverse_failures = Vec::new();
    for s in &sectors {
        let Product::Class(c) = cr_product_fund(s, &s.involution())? else {
            inverse_failures.push(alloc::format!("{s}: supports do not meet"));
            continue;
        };
        let ok = !c.target.is_twisted()
            && match &c.kind {
                ClassKind::PushedFund(y) => y == s.support(),
                ClassKind::Fund => s.codim() == 0,
                _ => false,
            };
        if !ok {
            inverse_failures.push(alloc::format!("{s} * {} = {c}", s.involution()));
        }
    }
    out.push(CorollaryEntry {
        id: String::from("2.1"),
        statement: String::from("(X,α) * (X,α^-1) = [X] in H*(M̄_1,n)"),
        status: if inverse_failures.is_empty() { ItemStatus::Agree } else { ItemStatus::Disagree },
        instances: sectors.len(),
        details: inverse_failures,
    });
    for st in &STATEMENTS {
        let mut worst = None::<ItemStatus>;
        let mut details = Vec::new();
        let parts = partitions_for(st, n)?;
        for p in &parts {
            let (status, detail) = compare(st, p)?;
            match worst {
                Some(w) if w > status => {}
                Some(w) if w == status => details.push(detail),
                _ => {
                    worst = Some(status);
                    details = alloc::vec![detail];
                }
            }
        }
        if let Some(status) = worst {
            out.push(CorollaryEntry {
                id: st.id(),
                statement: alloc::format!("{st}"),
                status,
                instances: parts.len(),
                details,
            });
        }
    }
    Ok(out)
}

/// Disagreements other than the documented ones.
pub fn unexpected_disagreements(report: &[CorollaryEntry]) -> Vec<&CorollaryEntry> {
    report
        .iter()
        .filter(|e| e.status == ItemStatus::Disagree && !KNOWN_DISAGREEMENTS.contains(&e.id.as_str()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn status(report: &[CorollaryEntry], id: &str) -> ItemStatus {
        report.iter().find(|e| e.id == id).unwrap().status
    }

    #[test]
    fn report_at_three_and_four_points() {
        for n in 3..=4 {
            let r = corollary_diff_report(n).unwrap();
            assert!(unexpected_disagreements(&r).is_empty(), "n = {n}: {r:#?}");
            assert_eq!(status(&r, "1.2"), ItemStatus::Agree);
            assert_eq!(status(&r, "2.12"), ItemStatus::Agree);
            assert_eq!(status(&r, "2.10"), ItemStatus::Disagree);
            assert_eq!(status(&r, "1.8"), ItemStatus::DegreeLabel);
        }
    }

    #[test]
    fn small_blocks_are_degenerate() {
        let r = corollary_diff_report(2).unwrap();
        assert_eq!(status(&r, "1.1"), ItemStatus::Degenerate);
        assert!(unexpected_disagreements(&r).is_empty());
        let r = corollary_diff_report(1).unwrap();
        assert!(unexpected_disagreements(&r).is_empty(), "{r:#?}");
    }
}
