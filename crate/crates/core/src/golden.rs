//! Reference product tables for `n = 1..=4`, in family notation.
//!
//! A family is a base type, an automorphism and a multiset of block sizes,
//! written `(C6^{1,2},ε^4)`; a one-block support is written `^{[n]}`. Each
//! table lists its families and then, for row `i`, the cells from column `i`
//! onward, so only the upper triangle is stored. Two sectors of families
//! with two or more blocks each are compared only when their partitions
//! coincide; otherwise they must not meet. Pairs of families absent from
//! every table must not meet either. The `n = 1` table writes `0` for
//! supports that do not meet.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::crring::{cr_product_fund, render_product, sector_label, Product};
use crate::error::{domain, Result};
use crate::sector::twisted_sectors;

const N1: &str = "
cols: (A1^{[1]},-1) | (C4^{[1]},i) | (C4^{[1]},-i) | (C6^{[1]},ε) | (C6^{[1]},ε^2) | (C6^{[1]},ε^4) | (C6^{[1]},ε^5)
X | (C4^{[1]},-i) | (C4^{[1]},i) | (C6^{[1]},ε^4) | (C6^{[1]},ε^5) | (C6^{[1]},ε) | (C6^{[1]},ε^2)
C4^{[1]}<A1^{[1]} | C4^{[1]}<X | 0 | 0 | 0 | 0
C4^{[1]}<A1^{[1]} | 0 | 0 | 0 | 0
0 | C6^{[1]}<A1^{[1]} | 0 | C6^{[1]}<X
(C6^{[1]},ε^4) | C6^{[1]}<X | (C6^{[1]},ε)
0 | C6^{[1]}<A1^{[1]}
(C6^{[1]},ε^4)
";

const N2: &str = "
cols: (A1^{[2]},-1) | (A2^{1,1},-1) | (C4^{[2]},i) | (C4^{[2]},-i) | (C4^{1,1},i) | (C4^{1,1},-i) | (C6^{[2]},ε) | (C6^{[2]},ε^2) | (C6^{[2]},ε^4) | (C6^{[2]},ε^5) | (C6^{1,1},ε^2) | (C6^{1,1},ε^4)
A1^{[2]}<X | ∅ | 0 | (C4^{[2]},i) | ∅ | ∅ | 0 | 0 | (C6^{[2]},ε) | (C6^{[2]},ε^2) | ∅ | ∅
A2^{1,1}<X | ∅ | ∅ | 0 | (C4^{1,1},i) | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
0 | C4^{[2]}<X | ∅ | ∅ | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
C4^{[2]}<A1^{[2]} | ∅ | ∅ | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
0 | C4^{1,1}<X | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
C4^{1,1}<A2^{1,1} | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
0 | 0 | 0 | C6^{[2]}<X | ∅ | ∅
0 | C6^{[2]}<X | (C6^{[2]},ε) | ∅ | ∅
0 | C6^{[2]}<A1^{[2]} | ∅ | ∅
(C6^{[2]},ε^4) | ∅ | ∅
0 | C6^{1,1}<X
(C6^{1,1},ε^2)
";

// The cell for (A1, (C6,ε)) reads only "θ"; it is completed with the sector
// of the product, which is the one of the analogous cell for n = 4.
const N3: &str = "
cols: (A1^{[3]},-1) | (A2^{1,2},-1) | (C4^{[3]},i) | (C4^{[3]},-i) | (C4^{1,2},i) | (C4^{1,2},-i) | (C6^{[3]},ε) | (C6^{[3]},ε^2) | (C6^{[3]},ε^4) | (C6^{[3]},ε^5)
A1^{[3]}<X | ∅ | θ<(C4^{[3]},-i) | (C4^{[3]},i) | ∅ | ∅ | θ<(C6^{[3]},ε^4) | θ<A1^{[3]} | (C6^{[3]},ε) | (C6^{[3]},ε^2)
A2^{1,2}<X | ∅ | ∅ | 0 | (C4^{1,2},i) | ∅ | ∅ | ∅ | ∅
θ<A1^{[3]} | C4^{[3]}<X | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
C4^{[3]}<A1^{[3]} | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
0 | C4^{1,2}<X | ∅ | ∅ | ∅ | ∅
C4^{1,2}<A2^{1,2} | ∅ | ∅ | ∅ | ∅
0 | θ<A1^{[3]} | 0 | C6^{[3]}<X
θ<(C6^{[3]},ε^4) | C6^{[3]}<X | (C6^{[3]},ε)
0 | C6^{[3]}<A1^{[3]}
(C6^{[3]},ε^4)

cols: (A3^{1,1,1},-1) | (C6^{1,2},ε^2) | (C6^{1,2},ε^4) | (C6^{1,1,1},ε^2) | (C6^{1,1,1},ε^4)
A3^{1,1,1}<X | ∅ | ∅ | ∅ | ∅
0 | C6^{1,2}<X | ∅ | ∅
(C6^{1,2},ε^2) | ∅ | ∅
0 | C6^{1,1,1}<X
(C6^{1,1,1},ε^2)
";

// In the row of A2^{2,2} the printed cells "0" and "∅" under (C4^{1,3},-i)
// and (C4^{2,2},i) are swapped with respect to the block-size rule stated
// with the tables; they are stored in rule order.
const N4: &str = "
cols: (A1^{[4]},-1) | (A2^{1,3},-1) | (A2^{2,2},-1) | (C4^{[4]},i) | (C4^{[4]},-i) | (C4^{1,3},i) | (C4^{1,3},-i) | (C4^{2,2},i) | (C4^{2,2},-i)
A1^{[4]}<X | ∅ | ∅ | θ<(C4^{[4]},-i) | (C4^{[4]},i) | ∅ | ∅ | ∅ | ∅
A2^{1,3}<X | ∅ | ∅ | ∅ | 0 | (C4^{1,3},i) | ∅ | ∅
A2^{2,2}<X | ∅ | ∅ | ∅ | ∅ | 0 | (C4^{2,2},i)
θ<A1^{[4]} | C4^{[4]}<X | ∅ | ∅ | ∅ | ∅
C4^{[4]}<A1^{[4]} | ∅ | ∅ | ∅ | ∅
0 | C4^{1,3}<X | ∅ | ∅
C4^{1,3}<A2^{1,3} | ∅ | ∅
0 | C4^{2,2}<X
C4^{2,2}<A2^{2,2}

cols: (A1^{[4]},-1) | (C6^{[4]},ε) | (C6^{[4]},ε^2) | (C6^{[4]},ε^4) | (C6^{[4]},ε^5)
A1^{[4]}<X | θ<(C6^{[4]},ε^4) | θ<(C6^{[4]},ε^5) | (C6^{[4]},ε) | (C6^{[4]},ε^2)

cols: (A3^{1,1,2},-1) | (A4^{1,1,1,1},-1)
A3^{1,1,2}<X | ∅
A4^{1,1,1,1}<X

cols: (C6^{[4]},ε) | (C6^{[4]},ε^2) | (C6^{[4]},ε^4) | (C6^{[4]},ε^5) | (C6^{1,3},ε^2) | (C6^{1,3},ε^4) | (C6^{2,2},ε^2) | (C6^{2,2},ε^4) | (C6^{1,1,2},ε^2) | (C6^{1,1,2},ε^4)
0 | θ<A1^{[4]} | 0 | C6^{[4]}<X | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
θ<(C6^{[4]},ε^4) | C6^{[4]}<X | (C6^{[4]},ε) | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
0 | C6^{[4]}<A1^{[4]} | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
(C6^{[4]},ε^4) | ∅ | ∅ | ∅ | ∅ | ∅ | ∅
0 | C6^{1,3}<X | ∅ | ∅ | ∅ | ∅
0 | ∅ | ∅ | ∅ | ∅
0 | C6^{2,2}<X | ∅ | ∅
0 | ∅ | ∅
0 | C6^{1,1,2}<X
0
";

pub fn source(n: usize) -> Option<&'static str> {
    match n {
        1 => Some(N1),
        2 => Some(N2),
        3 => Some(N3),
        4 => Some(N4),
        _ => None,
    }
}

/// Cells keyed by an ordered pair of family labels; both orders are stored.
pub type FamilyTable = BTreeMap<(String, String), String>;

pub fn parse(text: &str) -> Result<FamilyTable> {
    let mut out = FamilyTable::new();
    let mut cols: Vec<String> = Vec::new();
    let mut row = 0;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix("cols:") {
            cols = rest.split('|').map(|c| c.trim().to_string()).collect();
            row = 0;
            continue;
        }
        let cells: Vec<&str> = line.split('|').map(str::trim).collect();
        if row >= cols.len() || cells.len() != cols.len() - row {
            return Err(domain!("malformed golden row {row}: {line}"));
        }
        for (k, cell) in cells.iter().enumerate() {
            let (a, b) = (cols[row].clone(), cols[row + k].clone());
            for key in [(a.clone(), b.clone()), (b, a)] {
                if let Some(old) = out.insert(key, cell.to_string()) {
                    if old != *cell {
                        return Err(domain!("golden cell given twice: {old} and {cell}"));
                    }
                }
            }
        }
        row += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenMismatch {
    pub row: String,
    pub col: String,
    pub expected: String,
    pub engine: String,
}

/// Compares every pair of twisted sectors of `M̄_{1,n}` with the reference
/// table. Mismatches are reported once per unordered pair of sectors.
pub fn golden_diff(n: usize) -> Result<Vec<GoldenMismatch>> {
    let table = parse(source(n).ok_or_else(|| domain!("no reference table for n = {n}"))?)?;
    let sectors = twisted_sectors(n)?;
    let mut out = Vec::new();
    for (i, a) in sectors.iter().enumerate() {
        for b in &sectors[i..] {
            let (fa, fb) = (sector_label(a, true), sector_label(b, true));
            let comparable = match (a.partition(), b.partition()) {
                (Some(p), Some(q)) => p == q || p.len() == 1 || q.len() == 1,
                _ => true,
            };
            let expected = match table.get(&(fa.clone(), fb.clone())) {
                Some(cell) if comparable => cell.clone(),
                _ if n == 1 => String::from("0"),
                _ => String::from("∅"),
            };
            let product = cr_product_fund(a, b)?;
            let engine = match product {
                Product::Disjoint if n == 1 => String::from("0"),
                _ => render_product(&product, true),
            };
            if engine != expected {
                out.push(GoldenMismatch { row: a.label(), col: b.label(), expected, engine });
            }
        }
    }
    Ok(out)
}

/// Mismatches grouped by family pair, with the number of sector pairs each.
pub fn golden_diff_by_family(n: usize) -> Result<Vec<(GoldenMismatch, usize)>> {
    let sectors = twisted_sectors(n)?;
    let family = |label: &str| -> String {
        sectors
            .iter()
            .find(|s| s.label() == label)
            .map(|s| sector_label(s, true))
            .unwrap_or_else(|| label.to_string())
    };
    let mut grouped: BTreeMap<(String, String, String, String), usize> = BTreeMap::new();
    for m in golden_diff(n)? {
        *grouped.entry((family(&m.row), family(&m.col), m.expected, m.engine)).or_default() += 1;
    }
    Ok(grouped
        .into_iter()
        .map(|((row, col, expected, engine), count)| (GoldenMismatch { row, col, expected, engine }, count))
        .collect())
}

/// Family cells where the reference table entry is wrong, as
/// `(n, row, column, table entry, engine entry)`. Each is contradicted by
/// degree additivity or by the same product at another `n`.
pub const KNOWN_ERRATA: [(usize, &str, &str, &str, &str); 4] = [
    (2, "(C6^{1,1},ε^4)", "(C6^{1,1},ε^4)", "(C6^{1,1},ε^2)", "0"),
    (3, "(A1^{[3]},-1)", "(C6^{[3]},ε^2)", "θ<A1^{[3]}", "θ<(C6^{[3]},ε^5)"),
    (3, "(C6^{1,2},ε^4)", "(C6^{1,2},ε^4)", "(C6^{1,2},ε^2)", "0"),
    (3, "(C6^{1,1,1},ε^4)", "(C6^{1,1,1},ε^4)", "(C6^{1,1,1},ε^2)", "0"),
];

/// Family-level mismatches not listed in [`KNOWN_ERRATA`].
pub fn unexplained_mismatches(n: usize) -> Result<Vec<(GoldenMismatch, usize)>> {
    Ok(golden_diff_by_family(n)?
        .into_iter()
        .filter(|(m, _)| {
            !KNOWN_ERRATA.iter().any(|&(k, row, col, expected, engine)| {
                k == n && m.row == row && m.col == col && m.expected == expected && m.engine == engine
            })
        })
        .collect())
}
