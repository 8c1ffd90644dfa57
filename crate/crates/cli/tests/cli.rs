use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acrghw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn hierarchy_text_rows() {
    let o = run(&["hierarchy", "--q", "2", "--sizes", "2,2", "--u1", "1", "--u2", "-1", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(rows, ["1 (1,0) 1 2 2 2", "2 (0,1) 2 3 1 3", "3 (0,0) 3 4 0 4"]);
}

#[test]
fn hierarchy_json_schema_and_round_trip() {
    let o = run(&["hierarchy", "--q", "3", "--sizes", "2,3", "--u1", "2", "--u2", "0", "--format", "json", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let doc: Value = serde_json::from_str(&text).unwrap();
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 4);
    let m: Vec<u64> = results.iter().map(|r| r["M_r"].as_u64().unwrap()).collect();
    assert_eq!(m, [2, 3, 4, 5]);
    for r in results {
        assert_eq!(r["oracle"], r["M_r"]);
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, ["M_r", "a_r", "max_zeros", "oracle", "r", "s"]);
    }
    assert_eq!(doc["query"]["u2"], 0);
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(again, text);
    assert!(!text.contains('.'), "no floats");
}

#[test]
fn hierarchy_csv_and_single_r() {
    let o = run(&["hierarchy", "--q", "2", "--sizes", "2,2", "--u1", "1", "--u2", "-1", "--r", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "r,a_r,s,M_r,max_zeros,oracle\n2,0 1,2,3,1,\n");
}

#[test]
fn invalid_inputs_exit_2() {
    let o = run(&["hierarchy", "--q", "2", "--sizes", "2,3", "--u1", "1", "--u2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("d_m = 3 > q = 2"));

    let o = run(&["hierarchy", "--q", "6", "--sizes", "2", "--u1", "1", "--u2", "0"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["hierarchy", "--q", "3", "--sizes", "2,3", "--u1", "1", "--u2", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["maximal", "--q", "3", "--sizes", "2,3", "--u1", "2", "--u2", "0", "--r", "5"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["hierarchy", "--q", "3", "--sizes", "2,3", "--subsets", "0,0;0,1,2", "--u1", "1", "--u2", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let o = run(&[
        "hierarchy", "--q", "4", "--sizes", "2,2,2", "--u1", "2", "--u2", "-1", "--oracle", "--max-states", "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unsorted_sizes_warn() {
    let o = run(&["hierarchy", "--q", "3", "--sizes", "3,2", "--u1", "2", "--u2", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("WARNING"));
    assert!(stderr(&o).contains("[2,1]"));
    let sorted = run(&["hierarchy", "--q", "3", "--sizes", "2,3", "--u1", "2", "--u2", "0"]);
    assert_eq!(stdout(&o), stdout(&sorted));
    assert!(stderr(&sorted).is_empty());
}

#[test]
fn maximal_family_report() {
    let o = run(&["maximal", "--q", "3", "--sizes", "2,3", "--u1", "2", "--u2", "0", "--r", "1"]);
    let out = stdout(&o);
    assert!(out.starts_with("f_1 = x1*x2 "));
    for line in ["zeros 4", "support 2", "formula 2"] {
        assert!(out.lines().any(|l| l == line), "{line}");
    }

    let o = run(&["maximal", "--q", "3", "--sizes", "2,3", "--u1", "2", "--u2", "0", "--r", "4"]);
    let out = stdout(&o);
    let leading: Vec<&str> = out.lines().filter(|l| l.starts_with("f_")).map(|l| l.rsplit("exponent ").next().unwrap()).collect();
    assert_eq!(leading.len(), 4);
    let mut distinct = leading.clone();
    distinct.sort();
    distinct.dedup();
    assert_eq!(distinct.len(), 4);
    assert!(out.lines().any(|l| l == "support 5"));
}

#[test]
fn verify_statuses_and_exit_codes() {
    let args = ["verify", "--fields", "2,3", "--shapes", "2;2,2;2,3", "--window"];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.contains("MISMATCH") && !out.contains("SKIPPED"));
    assert!(out.lines().last().unwrap().contains("mismatch 0 skipped 0"));

    let o = run(&["verify", "--fields", "4", "--shapes", "2,2,2", "--max-states", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIPPED"));

    let o = run(&["verify", "--fields", "2", "--shapes", "2,2", "--corrupt-formula"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
    assert!(stdout(&o).contains("witness"));
}

#[test]
fn generator_matrix_export() {
    let o = run(&["generator", "--q", "3", "--sizes", "2,3", "--d", "1"]);
    assert_eq!(stdout(&o), "0 0 0 1 1 1\n0 1 2 0 1 2\n1 1 1 1 1 1\n");
}

#[test]
fn footprint_property_is_seeded() {
    let a = run(&["footprint", "--seed", "7", "--families", "200"]);
    let b = run(&["footprint", "--seed", "7", "--families", "200"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("seed 7\n"));
    assert!(stdout(&a).contains("violations 0"));
}
