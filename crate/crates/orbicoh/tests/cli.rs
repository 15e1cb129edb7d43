use orbicoh::records::{BettiRecord, ExcessRecord, SectorRecord};
use orbicoh::{run, selfcheck, CheckReport, Status};

fn ok(args: &[&str]) -> String {
    let outcome = run(std::iter::once("orbicoh").chain(args.iter().copied()));
    assert_eq!(outcome.code, 0, "{args:?}: {}", outcome.output);
    outcome.output
}

fn code(args: &[&str]) -> u8 {
    run(std::iter::once("orbicoh").chain(args.iter().copied())).code
}

#[test]
fn inventory_json_round_trips() {
    let text = ok(&["inventory", "--n", "1"]);
    let records: Vec<SectorRecord> = serde_json::from_str(&text).unwrap();
    assert_eq!(records.len(), 8);
    assert_eq!(records[0].base, "X");
    assert_eq!(serde_json::to_string_pretty(&records).unwrap(), text);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&value).unwrap(), text);
    let c6 = records.iter().find(|r| r.base == "C6k1" && r.aut.order == 6 && r.aut.exp == 1).unwrap();
    assert_eq!(c6.age, "2/3");
    assert_eq!(c6.partition, vec![vec![1]]);
}

#[test]
fn inventory_counts_and_open_part() {
    let count = |n: &str, open: bool| {
        let mut args = vec!["inventory", "--n", n];
        if open {
            args.push("--open");
        }
        serde_json::from_str::<Vec<SectorRecord>>(&ok(&args)).unwrap().len()
    };
    assert_eq!(count("2", false), 13);
    assert_eq!(count("4", false), 62);
    assert_eq!(count("5", true), 1);
    let csv = ok(&["inventory", "--n", "2", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 14);
    assert!(csv.starts_with("base,aut_order,aut_exp,partition,codim,age,poincare"));
}

#[test]
fn output_is_deterministic() {
    for args in [&["products", "--n", "3"][..], &["excess", "--n", "4"], &["ages", "--n", "4", "--format", "csv"]] {
        assert_eq!(ok(args), ok(args));
    }
}

#[test]
fn series_and_dims() {
    assert!(ok(&["series", "--which", "samuel", "--max-order", "8"]).contains("\"status\": \"pass\""));
    let p1 = ok(&["series", "--which", "poincare1", "--max-order", "5", "--format", "md"]);
    assert!(p1.contains("confirmed term 2t + 2·P0 at 1/2: pass") || p1.contains(": pass"));
    assert!(ok(&["dims", "--n", "3"]).contains("\"twisted_formula\": \"38\""));
}

#[test]
fn untwisted_dimensions_from_file() {
    let path = std::env::temp_dir().join(format!("orbicoh-untwisted-{}.csv", std::process::id()));
    std::fs::write(&path, "n,dim\n1,2\n2,4\n").unwrap();
    let text = ok(&["dims", "--n", "2", "--untwisted-dims", path.to_str().unwrap()]);
    assert!(text.contains("\"total\": \"18\""), "{text}");
    assert_eq!(code(&["dims", "--n", "3", "--untwisted-dims", path.to_str().unwrap()]), 2);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn excess_rows() {
    let rows: Vec<ExcessRecord> = serde_json::from_str(&ok(&["excess", "--n", "3"])).unwrap();
    assert!(rows.iter().any(|r| r.chern.starts_with("-psi")));
    assert!(rows.iter().all(|r| r.chern != "1" || r.rank == 0));
    assert!(ok(&["excess", "--n", "3", "--format", "md"]).starts_with("| support | triple | rank | chern |"));
}

#[test]
fn product_tables() {
    let md = ok(&["products", "--n", "1"]);
    assert_eq!(md.lines().count(), 2 + 7);
    assert!(md.contains("C4^{[1]}<A1^{[1]}"));
    let families = ok(&["products", "--n", "3", "--families"]);
    assert!(families.contains("θ<(C6^{[3]},ε^4)"));
    assert!(families.contains("∅"));
    let csv = ok(&["products", "--n", "2", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 1 + 12 * 12);
}

#[test]
fn genus0_rows() {
    let row: BettiRecord = serde_json::from_str(&ok(&["genus0", "--n", "6"])).unwrap();
    assert_eq!(row.betti, vec![1, 16, 16, 1]);
    assert_eq!(row.total, 34);
    assert!(ok(&["genus0", "--n", "5", "--format", "csv"]).contains("5,2,5"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["inventory"]), 2);
    assert_eq!(code(&["inventory", "--n", "x"]), 2);
    assert_eq!(code(&["products", "--n", "2", "--format", "xml"]), 2);
    assert_eq!(code(&["inventory", "--n", "0"]), 2);
    assert_eq!(code(&["genus0", "--n", "2"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn selfcheck_report() {
    let report: CheckReport = selfcheck(4);
    assert!(report.passed(), "{report}");
    assert!(report.entries.iter().all(|e| e.status != Status::Diff || e.name == "generating.poincare1"));
    let json = ok(&["selfcheck", "--n-max", "3", "--format", "json"]);
    let parsed: CheckReport = serde_json::from_str(&json).unwrap();
    assert!(parsed.passed());
}
