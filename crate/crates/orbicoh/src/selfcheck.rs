//! The invariant suite behind `orbicoh selfcheck`.

use std::collections::BTreeSet;
use std::fmt;

use anyhow::{ensure, Result};
use num_bigint::BigUint;
use orbicoh_core::corollary::{corollary_diff_report, unexpected_disagreements};
use orbicoh_core::crring::{pushforward_choice_for, product_table, unit_and_involution_violations};
use orbicoh_core::generating::{
    confirmed_terms, cr_dimension_twisted, cr_formula_twisted, series_check_poincare1, series_check_samuel,
};
use orbicoh_core::genus0::{
    betti_genus0, enumerate_stable_trees, enumerate_stable_trees_by_blocks, point_count_enumerated,
    point_count_poly, StableTree,
};
use orbicoh_core::golden::{golden_diff, unexplained_mismatches, KNOWN_ERRATA};
use orbicoh_core::inertia2::{
    doublesingle_check, enumerate_double_sectors, excess_bundle, minus_psi_components, rank_duality_check,
    singleton_free_rank_mismatches,
};
use orbicoh_core::partition::{bell, partitions, stirling2};
use orbicoh_core::presentation::{presentation_check_n1, presentation_check_n2_disjoint};
use orbicoh_core::sector::{age, enumerate_sectors, tabulated_age, twisted_sectors};
use orbicoh_core::BaseType;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Differences that are reported but not failures.
    Diff,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Diff => "diff",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub scope: String,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    fn run(&mut self, name: &str, scope: String, check: impl FnOnce() -> Result<String>) {
        let (status, details) = match check() {
            Ok(details) => (Status::Pass, details),
            Err(e) => (Status::Fail, format!("{e:#}")),
        };
        self.entries.push(CheckEntry { name: name.to_string(), scope, status, details });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{:<4} {:<26} {:<10} {}", e.status, e.name, e.scope, e.details)?;
        }
        let fails = self.entries.iter().filter(|e| e.status == Status::Fail).count();
        write!(f, "{} checks, {} failed", self.entries.len(), fails)
    }
}

fn range(lo: usize, hi: usize) -> String {
    format!("n={lo}..{hi}")
}

fn sorted_splits(trees: &[StableTree]) -> BTreeSet<Vec<u64>> {
    trees
        .iter()
        .map(|t| {
            let mut s = t.splits().to_vec();
            s.sort_unstable();
            s
        })
        .collect()
}

/// Runs every check with sector counts up to `n_max` points.
pub fn selfcheck(n_max: usize) -> CheckReport {
    let n_max = n_max.max(1);
    let mut report = CheckReport::default();

    report.run("partition.counts", range(1, n_max + 2), || {
        for n in 1..=n_max + 2 {
            let mut total = BigUint::from(0u32);
            for k in 1..=n {
                let listed = BigUint::from(partitions(n, k)?.len());
                ensure!(listed == stirling2(n, k), "S({n},{k})");
                total += listed;
            }
            ensure!(total == bell(n), "B({n})");
        }
        Ok(String::new())
    });

    let tree_max = (n_max + 2).clamp(3, 8);
    report.run("genus0.trees", range(3, tree_max), || {
        for n in 3..=tree_max {
            let a = enumerate_stable_trees(n)?;
            let b = enumerate_stable_trees_by_blocks(n)?;
            ensure!(sorted_splits(&a) == sorted_splits(&b), "enumerations differ at n = {n}");
            ensure!(point_count_enumerated(n)? == point_count_poly(n)?, "point counts differ at n = {n}");
        }
        Ok(String::new())
    });

    report.run("genus0.betti", range(3, 8), || {
        let totals = [1u64, 2, 7, 34, 213, 1630];
        for (n, total) in (3..=8).zip(totals) {
            let row = betti_genus0(n)?;
            ensure!(row.total() == total, "n = {n}: total {} instead of {total}", row.total());
            ensure!(row.is_palindromic(), "n = {n}: {:?} is not palindromic", row.betti);
        }
        Ok(String::from("1 2 7 34 213 1630"))
    });

    report.run("sectors.inventory", range(1, n_max), || {
        ensure!(twisted_sectors(1)?.len() == 7, "n = 1");
        ensure!(twisted_sectors(2)?.len() == 12, "n = 2");
        ensure!(twisted_sectors(4)?.len() == 61, "n = 4");
        for n in 1..=n_max {
            let expected: BigUint = BaseType::ALL
                .iter()
                .filter(|b| b.arity() <= n)
                .map(|&b| stirling2(n, b.arity()) * BigUint::from(b.allowed_auts().len()))
                .sum();
            ensure!(BigUint::from(twisted_sectors(n)?.len()) == expected, "count at n = {n}");
            if n >= 5 {
                ensure!(enumerate_sectors(n, false)?.len() == 1, "open part twisted at n = {n}");
            }
        }
        Ok(String::new())
    });

    report.run("sectors.ages", range(2, n_max), || {
        for n in 2..=n_max {
            for s in twisted_sectors(n)? {
                ensure!(tabulated_age(&s) == Some(age(&s)), "{s}: age {}", age(&s));
            }
        }
        Ok(String::new())
    });

    let pair_max = n_max.max(10);
    report.run("sectors.age-pairing", range(1, pair_max), || {
        for n in 1..=pair_max {
            for s in twisted_sectors(n)? {
                let total = age(&s) + age(&s.involution());
                ensure!(total == orbicoh_core::rational::int(s.codim() as i64), "{s}");
            }
        }
        Ok(String::new())
    });

    report.run("generating.dims", range(1, n_max + 2), || {
        let mut shown = Vec::new();
        for n in 1..=n_max + 2 {
            let d = cr_dimension_twisted(n)?;
            ensure!(d == cr_formula_twisted(n)?, "n = {n}");
            shown.push(d.to_string());
        }
        ensure!(shown[..3] == ["8", "14", "38"], "anchors {:?}", &shown[..3]);
        Ok(shown.join(" "))
    });

    let order = n_max.max(8);
    report.run("generating.samuel", format!("s^0..s^{order}"), || {
        let bad: Vec<usize> =
            series_check_samuel(order)?.iter().filter(|c| !c.passed()).map(|c| c.order).collect();
        ensure!(bad.is_empty(), "orders {bad:?}");
        Ok(String::new())
    });

    report.run("generating.confirmed-terms", format!("s^2..s^{n_max}"), || {
        for term in confirmed_terms(n_max)? {
            ensure!(term.passed(), "fraction {}: {} mismatches", term.fraction, term.mismatches.len());
        }
        Ok(String::from("2(1+t)P0 at 1/2, tP0 at 1/4"))
    });

    match series_check_poincare1(n_max) {
        Ok(diff) => {
            let mismatched = diff.iter().filter(|d| !d.matches()).count();
            report.entries.push(CheckEntry {
                name: String::from("generating.poincare1"),
                scope: format!("s^0..s^{n_max}"),
                status: if mismatched == 0 { Status::Pass } else { Status::Diff },
                details: format!("{mismatched} of {} coefficients differ", diff.len()),
            });
        }
        Err(e) => report.entries.push(CheckEntry {
            name: String::from("generating.poincare1"),
            scope: format!("s^0..s^{n_max}"),
            status: Status::Fail,
            details: e.to_string(),
        }),
    }

    let double_max = n_max + 2;
    report.run("inertia2.ranks", range(1, double_max), || {
        let mut count = 0;
        for n in 1..=double_max {
            for z in enumerate_double_sectors(n)?.iter().filter(|z| z.is_component() && !z.has_identity()) {
                excess_bundle(z)?;
                count += 1;
            }
        }
        Ok(format!("{count} identity-free components"))
    });

    report.run("inertia2.rank-table", range(2, double_max), || {
        for n in 2..=double_max {
            let bad = singleton_free_rank_mismatches(n)?;
            ensure!(bad.is_empty(), "n = {n}: {} mismatches", bad.len());
        }
        Ok(String::new())
    });

    report.run("inertia2.duality", range(1, double_max), || {
        for n in 1..=double_max {
            ensure!(rank_duality_check(n)?, "n = {n}");
        }
        Ok(String::new())
    });

    report.run("inertia2.doublesingle", range(1, n_max), || {
        for n in 1..=n_max {
            ensure!(doublesingle_check(n)?, "n = {n}");
        }
        Ok(String::new())
    });

    report.run("inertia2.psi-families", range(1, n_max), || {
        for n in 1..=n_max {
            let families: BTreeSet<(BaseType, Vec<u8>)> = minus_psi_components(n)?
                .iter()
                .map(|z| {
                    let mut t: Vec<u8> = z.triple().iter().map(|a| a.exp_in(12).expect("in μ12")).collect();
                    t.sort_unstable();
                    (z.support().base().expect("twisted"), t)
                })
                .collect();
            let expected = if n >= 3 { 3 } else { 0 };
            ensure!(families.len() == expected, "n = {n}: {families:?}");
        }
        Ok(String::new())
    });

    report.run("crring.table", range(1, n_max), || {
        for n in 1..=n_max {
            let table = product_table(n)?;
            ensure!(table.is_symmetric(), "n = {n}: not symmetric");
            let bad = table.degree_violations()?;
            ensure!(bad.is_empty(), "n = {n}: {} degree violations", bad.len());
        }
        Ok(String::new())
    });

    report.run("crring.unit-involution", range(1, n_max), || {
        for n in 1..=n_max {
            let bad = unit_and_involution_violations(n)?;
            ensure!(bad.is_empty(), "n = {n}: {}", bad.len());
        }
        Ok(String::new())
    });

    let choice_max = n_max.min(5);
    report.run("crring.pushforward", range(1, choice_max), || {
        for n in 1..=choice_max {
            let sectors = twisted_sectors(n)?;
            for a in &sectors {
                for b in &sectors {
                    pushforward_choice_for(a, b)?;
                }
            }
        }
        Ok(String::new())
    });

    report.run("crring.reference-tables", range(1, 4), || {
        let mut raw = 0;
        for n in 1..=4 {
            let bad = unexplained_mismatches(n)?;
            ensure!(bad.is_empty(), "n = {n}: {} unexplained cells", bad.len());
            raw += golden_diff(n)?.len();
        }
        Ok(format!("{raw} sector pairs in {} known table errata", KNOWN_ERRATA.len()))
    });

    report.run("crring.corollaries", range(1, n_max), || {
        let mut notes = BTreeSet::new();
        for n in 1..=n_max {
            let entries = corollary_diff_report(n)?;
            let bad = unexpected_disagreements(&entries);
            ensure!(bad.is_empty(), "n = {n}: {:?}", bad.iter().map(|e| &e.id).collect::<Vec<_>>());
            notes.extend(entries.iter().filter(|e| e.status.as_str() == "disagree").map(|e| e.id.clone()));
        }
        Ok(format!("known disagreements: {}", notes.into_iter().collect::<Vec<_>>().join(", ")))
    });

    report.run("crring.presentation", String::from("n=1,2"), || {
        for r in presentation_check_n1()? {
            ensure!(r.holds, "{}: {} vs {}", r.name, r.lhs, r.rhs);
        }
        for r in presentation_check_n2_disjoint()? {
            ensure!(r.holds, "{}", r.name);
        }
        Ok(String::new())
    });

    report
}
