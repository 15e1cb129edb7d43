//! One line per acceptance criterion. All comparisons are exact; only the
//! runtime budgets below are tolerances.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use orbicoh_core::crring::{cr_product_fund, one_block, orbifold_degree, product_table, render_product, Product};
use orbicoh_core::generating::{
    confirmed_terms, cr_dimension_twisted, cr_formula_twisted, series_check_poincare1, series_check_samuel,
};
use orbicoh_core::genus0::{
    betti_genus0, enumerate_stable_trees, enumerate_stable_trees_by_blocks, point_count_enumerated,
    point_count_poly,
};
use orbicoh_core::golden::golden_diff_by_family;
use orbicoh_core::inertia2::{
    enumerate_double_sectors, excess_bundle_from_characters, excess_rank_age, minus_psi_components,
    rank_duality_check, singleton_free_rank_mismatches,
};
use orbicoh_core::partition::stirling2;
use orbicoh_core::presentation::presentation_check_n1;
use orbicoh_core::rational::int;
use orbicoh_core::sector::{age, enumerate_sectors, tabulated_age, twisted_sectors};
use orbicoh_core::{Automorphism, BaseType};

const GENUS0_BUDGET: Duration = Duration::from_secs(10);
const AGES_BUDGET: Duration = Duration::from_secs(5);
const SELFCHECK_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn require(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn genus0_oracle() -> Outcome {
    let start = Instant::now();
    let mut totals = Vec::new();
    for n in 3..=9 {
        let row = betti_genus0(n).map_err(|e| e.to_string())?;
        require(row.is_palindromic(), || format!("row {n} not palindromic"))?;
        let counted = point_count_enumerated(n).map_err(|e| e.to_string())?;
        require(counted == point_count_poly(n).map_err(|e| e.to_string())?, || format!("point counts differ at {n}"))?;
        if n <= 8 {
            totals.push(row.total());
        }
    }
    for n in 3..=7 {
        let a = enumerate_stable_trees(n).map_err(|e| e.to_string())?.len();
        let b = enumerate_stable_trees_by_blocks(n).map_err(|e| e.to_string())?.len();
        require(a == b, || format!("tree counts {a} vs {b} at {n}"))?;
    }
    require(totals == [1, 2, 7, 34, 213, 1630], || format!("totals {totals:?}"))?;
    let elapsed = start.elapsed();
    require(elapsed < GENUS0_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("totals {totals:?}, {elapsed:.2?}"))
}

fn inventory() -> Outcome {
    let count = |n| twisted_sectors(n).map(|s| s.len()).map_err(|e| e.to_string());
    let counts = [count(1)?, count(2)?, count(4)?];
    require(counts == [7, 12, 61], || format!("counts {counts:?}"))?;
    let brute: BigUint = BaseType::ALL
        .iter()
        .filter(|b| b.arity() <= 4)
        .map(|&b| stirling2(4, b.arity()) * BigUint::from(b.allowed_auts().len()))
        .sum();
    require(brute == BigUint::from(61u32), || format!("brute-force count {brute}"))?;
    for n in 5..=10 {
        let open = enumerate_sectors(n, false).map_err(|e| e.to_string())?;
        require(open.len() == 1, || format!("open part has twisted sectors at n = {n}"))?;
    }
    Ok(String::from("7, 12, 61; open part untwisted for n = 5..10"))
}

fn ages() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=10 {
        for s in twisted_sectors(n).map_err(|e| e.to_string())? {
            if n <= 6 && n >= 2 {
                require(tabulated_age(&s) == Some(age(&s)), || format!("{s}: age {}", age(&s)))?;
            }
            let total = age(&s) + age(&s.involution());
            require(total == int(s.codim() as i64), || format!("{s}: pairing gives {total}"))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    require(elapsed < AGES_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} sectors, {elapsed:.2?}"))
}

fn dimensions() -> Outcome {
    let mut values = Vec::new();
    for n in 1..=8 {
        let d = cr_dimension_twisted(n).map_err(|e| e.to_string())?;
        let f = cr_formula_twisted(n).map_err(|e| e.to_string())?;
        require(d == f, || format!("n = {n}: {d} vs {f}"))?;
        values.push(d.to_string());
    }
    require(values[..3] == ["8", "14", "38"], || format!("anchors {:?}", &values[..3]))?;
    Ok(values.join(" "))
}

fn series() -> Outcome {
    let samuel = series_check_samuel(8).map_err(|e| e.to_string())?;
    let bad: Vec<usize> = samuel.iter().filter(|c| !c.passed()).map(|c| c.order).collect();
    require(bad.is_empty(), || format!("samuel fails at orders {bad:?}"))?;
    let terms = confirmed_terms(6).map_err(|e| e.to_string())?;
    require(terms.iter().all(|t| t.passed()), || String::from("confirmed terms differ"))?;
    let diff = series_check_poincare1(6).map_err(|e| e.to_string())?;
    let buckets: BTreeSet<_> = diff.iter().map(|d| d.fraction.clone()).collect();
    require(buckets.len() == 6, || format!("diff covers {} buckets", buckets.len()))?;
    let differing = diff.iter().filter(|d| !d.matches()).count();
    Ok(format!("samuel exact to s^8; poincare1 diff: {differing} of {} coefficients differ (reported)", diff.len()))
}

fn excess() -> Outcome {
    let mut components = 0;
    for n in 1..=8 {
        for z in enumerate_double_sectors(n).map_err(|e| e.to_string())? {
            if !z.is_component() || z.has_identity() {
                continue;
            }
            let chars = excess_bundle_from_characters(&z).map_err(|e| e.to_string())?.rank();
            let ages = excess_rank_age(&z).map_err(|e| e.to_string())?;
            require(chars == ages, || format!("{} {:?}: {chars} vs {ages}", z.support().label(), z.triple()))?;
            components += 1;
        }
        require(rank_duality_check(n).unwrap_or(false), || format!("duality fails at n = {n}"))?;
        let bad = singleton_free_rank_mismatches(n).map_err(|e| e.to_string())?;
        require(bad.is_empty(), || format!("rank table differs at n = {n}"))?;
        let families: BTreeSet<(BaseType, Vec<u8>)> = minus_psi_components(n)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|z| {
                let mut t: Vec<u8> = z.triple().iter().map(|a| a.exp_in(12).unwrap()).collect();
                t.sort_unstable();
                (z.support().base().unwrap(), t)
            })
            .collect();
        let expected: BTreeSet<(BaseType, Vec<u8>)> = if n >= 3 {
            [(BaseType::C6k1, vec![4, 4, 4]), (BaseType::C4k1, vec![3, 3, 6]), (BaseType::C6k1, vec![2, 4, 6])]
                .into_iter()
                .collect()
        } else {
            BTreeSet::new()
        };
        require(families == expected, || format!("ψ families at n = {n}: {families:?}"))?;
    }
    Ok(format!("{components} identity-free components"))
}

fn products() -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=4 {
        for (m, count) in golden_diff_by_family(n).map_err(|e| e.to_string())? {
            failures.push(format!("n={n} {}·{}: table {} engine {} ({count})", m.row, m.col, m.expected, m.engine));
        }
    }
    // the corollary item that the tables overrule
    let n = 3;
    let a = one_block(BaseType::C6k1, n, Automorphism::EPS2).unwrap();
    let b = one_block(BaseType::C6k1, n, Automorphism::EPS5).unwrap();
    let p = cr_product_fund(&a, &b).unwrap();
    if render_product(&p, true) != "(C6^{[3]},ε)" {
        failures.push(format!("ε^2·ε^5 gives {}", render_product(&p, true)));
    }
    if let Product::Class(c) = &p {
        let degree = orbifold_degree(c).unwrap();
        if degree != int(3) {
            failures.push(format!("ε^2·ε^5 has degree {degree}"));
        }
    }
    for n in 1..=6 {
        let table = product_table(n).map_err(|e| e.to_string())?;
        let bad = table.degree_violations().map_err(|e| e.to_string())?;
        if !bad.is_empty() {
            failures.push(format!("{} degree violations at n = {n}", bad.len()));
        }
    }
    if failures.is_empty() {
        Ok(String::from("tables n = 1..4 reproduced, degrees additive to n = 6"))
    } else {
        Err(failures.join("; "))
    }
}

fn presentation() -> Outcome {
    let checks = presentation_check_n1().map_err(|e| e.to_string())?;
    for r in &checks {
        require(r.holds, || format!("{}: {} vs {}", r.name, r.lhs, r.rhs))?;
    }
    Ok(checks.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(", "))
}

fn selfcheck_binary() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_orbicoh"))
        .args(["selfcheck", "--n-max", "6"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let summary = String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or_default().to_string();
    require(out.status.success(), || format!("exit {:?}: {summary}", out.status.code()))?;
    require(elapsed < SELFCHECK_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{summary}, {elapsed:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("genus-0 oracle", genus0_oracle),
        ("inventory", inventory),
        ("ages", ages),
        ("dimensions", dimensions),
        ("series", series),
        ("excess bundles", excess),
        ("product tables", products),
        ("n=1 presentation", presentation),
        ("selfcheck --n-max 6", selfcheck_binary),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
