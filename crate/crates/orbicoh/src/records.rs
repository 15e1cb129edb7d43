//! Serializable views of engine values. Rationals are strings `p/q`.

use orbicoh_core::crring::{render_product, sector_label, Product};
use orbicoh_core::genus0::BettiRow;
use orbicoh_core::inertia2::{excess_bundle, top_chern, ChernDescriptor, DoubleSector};
use orbicoh_core::rational::{self, Rational};
use orbicoh_core::sector::{age, sector_poincare, tabulated_age};
use orbicoh_core::{Automorphism, Sector};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutRecord {
    pub order: u8,
    pub exp: u8,
}

impl From<Automorphism> for AutRecord {
    fn from(a: Automorphism) -> Self {
        AutRecord { order: a.order(), exp: a.exp() }
    }
}

/// One sector. The untwisted sector has `base = "X"` and the one-block
/// partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorRecord {
    pub base: String,
    pub aut: AutRecord,
    pub partition: Vec<Vec<usize>>,
    pub codim: usize,
    pub age: String,
    pub poincare: Vec<String>,
}

fn text(r: &Rational) -> String {
    rational::to_string(r)
}

impl SectorRecord {
    pub fn new(s: &Sector) -> anyhow::Result<Self> {
        let (base, partition, poincare) = match (s.base(), s.partition()) {
            (Some(b), Some(p)) => {
                let poly = sector_poincare(s)?;
                (b.name().to_string(), p.blocks().to_vec(), poly.coeffs().iter().map(text).collect())
            }
            _ => (String::from("X"), vec![(1..=s.n()).collect()], Vec::new()),
        };
        Ok(SectorRecord { base, aut: s.aut().into(), partition, codim: s.codim(), age: text(&age(s)), poincare })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgeRecord {
    pub sector: String,
    pub codim: usize,
    pub age: String,
    pub inverse_age: String,
    /// Closed-form value, absent for `n = 1`.
    pub tabulated: Option<String>,
}

impl AgeRecord {
    pub fn new(s: &Sector) -> Self {
        AgeRecord {
            sector: s.label(),
            codim: s.codim(),
            age: text(&age(s)),
            inverse_age: text(&age(&s.involution())),
            tabulated: tabulated_age(s).as_ref().map(text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsRecord {
    pub n: usize,
    pub twisted_enumerated: String,
    pub twisted_formula: String,
    pub untwisted: Option<String>,
    pub total: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcessRecord {
    pub support: String,
    pub triple: [String; 3],
    pub rank: usize,
    pub chern: String,
}

impl ExcessRecord {
    pub fn new(z: &DoubleSector) -> anyhow::Result<Self> {
        let chern = match top_chern(z)? {
            ChernDescriptor::One => String::from("1"),
            ChernDescriptor::Zero => String::from("0"),
            ChernDescriptor::MinusPsi(i) => format!("-psi(block {})", i + 1),
        };
        let [a, b, c] = z.triple();
        Ok(ExcessRecord {
            support: z.support().label(),
            triple: [a.to_string(), b.to_string(), c.to_string()],
            rank: excess_bundle(z)?.rank(),
            chern,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRecord {
    pub left: String,
    pub right: String,
    pub product: String,
    pub family: String,
}

impl ProductRecord {
    pub fn new(a: &Sector, b: &Sector, p: &Product) -> Self {
        ProductRecord {
            left: sector_label(a, false),
            right: sector_label(b, false),
            product: render_product(p, false),
            family: render_product(p, true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRecord {
    pub n: usize,
    pub betti: Vec<u64>,
    pub total: u64,
}

impl From<&BettiRow> for BettiRecord {
    fn from(row: &BettiRow) -> Self {
        BettiRecord { n: row.n, betti: row.betti.clone(), total: row.total() }
    }
}
