mod common;

use common::{compat_linf, fixture, path};
use compat_linf_cli::document::{Document, Kind};
use compat_linf_cli::model::{read_homotopy, write_homotopy, HomotopyDoc};
use serde_json::Value;

fn json(r: &common::Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

#[test]
fn round_trip_and_exit_codes() {
    let r = common::cli_round_trip();
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn check_reports_the_failing_tuple() {
    let r = compat_linf(["check", "--json", path(&fixture("non-lie-pair"))], &[]);
    assert_eq!(r.code, 1);
    let v = json(&r);
    assert_eq!(v["status"], "fail");
    let failing: Vec<&Value> = v["reports"].as_array().unwrap().iter().filter(|r| r["status"] == "fail").collect();
    assert_eq!(failing[0]["first_failure"]["n"], 3);
    assert!(failing[0]["first_failure"]["tuple"].is_array());
}

#[test]
fn cohomology_of_abelian_fixtures() {
    let r = compat_linf(["cohomology", "--json", "--n-max", "3", path(&fixture("abelian-2"))], &[]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["H"], serde_json::json!([1, 2, 2, 0]));
    let r = compat_linf(["cohomology", "--json", "--n-max", "1", path(&fixture("abelian-1"))], &[]);
    assert_eq!(json(&r)["H"], serde_json::json!([1, 1]));
    let r = compat_linf(["cohomology", path(&fixture("rb-zero"))], &[]);
    assert_eq!(r.code, 2);
}

#[test]
fn deformations() {
    let r = compat_linf(["deform", "--json", "--action", "obstruction", path(&fixture("a1-pair"))], &[]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["obstruction_zero"], true);
    // (1 + t)(l, l') as a first-order deformation
    let dir = tempfile::tempdir().unwrap();
    let h = read_homotopy(&Document::load(&fixture("a1-pair")).unwrap()).unwrap();
    let scaled = HomotopyDoc { pair: h.pair.clone(), terms: vec![h.pair.clone()] };
    let first = dir.path().join("first.json");
    write_homotopy(Kind::LinftyPair, "L", &scaled).unwrap().save(&first).unwrap();
    let r = compat_linf(["deform", "--json", path(&first)], &[]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(json(&r)["order"], 1);
    let out = dir.path().join("ext.json");
    let r = compat_linf(["deform", "--action", "extend", path(&first), "-o", path(&out)], &[]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let ext = read_homotopy(&Document::load(&out).unwrap()).unwrap();
    assert_eq!(ext.terms.len(), 1);
    assert_eq!(compat_linf(["deform", "--order", "2", path(&out)], &[]).code, 0);
    // terms beyond --order are an input error
    assert_eq!(compat_linf(["deform", "--order", "0", path(&first)], &[]).code, 2);
    let r = compat_linf(["deform", "--action", "trivialize", "--order", "1", path(&fixture("a1-pair"))], &[]);
    assert_eq!(r.code, 0);
    let r = compat_linf(["deform", path(&fixture("a1-lie"))], &[]);
    assert_eq!(r.code, 2);
}

#[test]
fn conversions_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let crossed = dir.path().join("crossed.json");
    let back = dir.path().join("strict.json");
    let r = compat_linf(["convert", path(&fixture("strict-a1")), "--from", "strict", "--to", "crossed", "-o", path(&crossed)], &[]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let r = compat_linf(["check", path(&crossed)], &[]);
    assert_eq!(r.code, 0);
    let r = compat_linf(["convert", path(&crossed), "--from", "crossed", "--to", "strict", "-o", path(&back)], &[]);
    assert_eq!(r.code, 0);
    assert_eq!(std::fs::read_to_string(&back).unwrap(), std::fs::read_to_string(fixture("strict-a1")).unwrap());
    let lie2 = dir.path().join("lie2.json");
    let r = compat_linf(["convert", path(&fixture("strict-a1")), "--from", "two-term", "--to", "lie2", "-o", path(&lie2)], &[]);
    assert_eq!(r.code, 0);
    let r = compat_linf(["convert", path(&lie2), "--from", "lie2", "--to", "two-term"], &[]);
    assert_eq!(r.code, 0);
    // a structure with l1 ≠ 0 is not skeletal
    let r = compat_linf(["convert", path(&fixture("strict-a1")), "--from", "skeletal", "--to", "triple"], &[]);
    assert_eq!(r.code, 1);
    let r = compat_linf(["convert", path(&fixture("strict-a1")), "--from", "strict", "--to", "nonsense"], &[]);
    assert_eq!(r.code, 2);
}

#[test]
fn rota_baxter_search() {
    let r = compat_linf(["rota", "--json", path(&fixture("a1-rota")), "--search"], &[]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert!(v.to_string().contains("81"), "{v}");
    let r = compat_linf(["rota", path(&fixture("a1-rota")), "--search", "--entries", "1/0"], &[]);
    assert_eq!(r.code, 2);
}

#[test]
fn thread_variable() {
    let f = fixture("a1-pair");
    assert_eq!(compat_linf(["check", path(&f)], &[("COMPAT_LINF_THREADS", "0")]).code, 2);
    assert_eq!(compat_linf(["check", path(&f)], &[("COMPAT_LINF_THREADS", "many")]).code, 2);
    let one = compat_linf(["rota", "--json", path(&fixture("a1-rota")), "--search"], &[("COMPAT_LINF_THREADS", "1")]);
    let four = compat_linf(["rota", "--json", path(&fixture("a1-rota")), "--search"], &[("COMPAT_LINF_THREADS", "4")]);
    assert_eq!((one.code, &one.stdout), (four.code, &four.stdout));
}

#[test]
fn input_errors_go_to_stderr() {
    let r = compat_linf(["check", path(&fixture("zero-denominator"))], &[]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("zero denominator"));
    let r = compat_linf(["check", "--json", path(&fixture("zero-denominator"))], &[]);
    assert_eq!(json(&r)["schema_errors"][0]["pointer"], "/maps/0/entries/0/out/0,0");
    assert_eq!(compat_linf(["--version"], &[]).code, 0);
}
