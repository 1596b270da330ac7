use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indsieve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn poly_cycle_power() {
    let out = run(&[
        "poly",
        "--family",
        "cycle-power",
        "--n",
        "12",
        "--r",
        "2",
        "--k",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let terms = json(&out)["terms"].as_array().unwrap().clone();
    let sum: i64 = terms.iter().map(|t| t[1].as_i64().unwrap()).sum();
    assert_eq!(sum, 40);
    assert_eq!(terms.first().unwrap(), &serde_json::json!([0, 1]));
    assert_eq!(terms.last().unwrap(), &serde_json::json!([15, 1]));
}

#[test]
fn poly_gear() {
    let out = run(&["poly", "--family", "gear", "--n", "3", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2 + q + q^2 + q^3\n");
    let out = run(&[
        "poly", "--family", "gear", "--n", "3", "--k", "3", "--format", "json",
    ]);
    assert_eq!(stdout(&out), "{\"terms\":[[0,2],[1,1],[2,1],[3,1]]}\n");
}

#[test]
fn poly_rejects_bad_params() {
    let out = run(&[
        "poly",
        "--family",
        "cycle-power",
        "--n",
        "4",
        "--r",
        "2",
        "--k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2r < n"), "{err}");
    let out = run(&[
        "poly",
        "--family",
        "cycle-power",
        "--n",
        "12",
        "--r",
        "2",
        "--k",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        run(&["poly", "--family", "wheel", "--n", "5", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["poly", "--family", "path-power", "--n", "5", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumerate_path_power() {
    let out = run(&[
        "enumerate",
        "--family",
        "path-power",
        "--n",
        "5",
        "--r",
        "2",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0,3\n0,4\n1,4\n");
    let out = run(&[
        "enumerate",
        "--family",
        "path-power",
        "--n",
        "5",
        "--r",
        "2",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&out), "[[0,3],[0,4],[1,4]]\n");
}

#[test]
fn enumerate_fixed_by() {
    let out = run(&[
        "enumerate",
        "--family",
        "gear",
        "--n",
        "3",
        "--k",
        "3",
        "--fixed-by",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0,2,4\n1,3,5\n");
    let out = run(&[
        "enumerate",
        "--family",
        "path-power",
        "--n",
        "5",
        "--r",
        "2",
        "--k",
        "2",
        "--fixed-by",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_empty_set() {
    let out = run(&["enumerate", "--family", "gear", "--n", "3", "--k", "0"]);
    assert_eq!(stdout(&out), "\n");
    let out = run(&[
        "enumerate",
        "--family",
        "gear",
        "--n",
        "3",
        "--k",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&out), "[[]]\n");
}

#[test]
fn verify_whisker_json() {
    let out = run(&[
        "verify",
        "--family",
        "whisker-cycle",
        "--n",
        "6",
        "--r",
        "1",
        "--k",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["group_order"], 6);
    let row = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["d"] == 3)
        .unwrap();
    assert_eq!(row["poly_value"], 4);
    assert_eq!(row["fixed_count"], 4);
}

#[test]
fn verify_book_and_helm() {
    let out = run(&[
        "verify", "--family", "book", "--n", "4", "--k", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let row = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["d"] == 2)
        .unwrap();
    assert_eq!(row["poly_value"], 4);

    let out = run(&[
        "verify", "--family", "helm", "--n", "6", "--k", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let row = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["d"] == 6)
        .unwrap();
    assert_eq!(row["poly_value"], 0);

    let out = run(&["verify", "--family", "helm", "--n", "6", "--k", "3"]);
    assert!(stdout(&out).starts_with("helm n=6 k=3: PASS"));
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "--family", "gear", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "verify",
        "--family",
        "path-power",
        "--n",
        "5",
        "--r",
        "1",
        "--k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "verify",
        "--family",
        "cycle-power",
        "--n",
        "8",
        "--r",
        "3",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["notes"].as_array().unwrap().len(), 1);
}

#[test]
fn table_cycle_power() {
    let out = run(&[
        "table",
        "--family",
        "cycle-power",
        "--n",
        "4..12",
        "--r",
        "0..2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    let row = rows
        .iter()
        .find(|r| r["n"] == 12 && r["r"] == 2 && r["k"] == 3)
        .unwrap();
    assert_eq!(row["closed_form"], 40);
    assert_eq!(row["enumerated"], 40);
    assert_eq!(row["pass"], true);
    for row in rows.iter().filter(|r| r["r"] == 0) {
        let (n, k) = (row["n"].as_u64().unwrap(), row["k"].as_u64().unwrap());
        let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        assert_eq!(row["enumerated"].as_u64().unwrap(), binom);
    }
    assert!(rows.iter().all(|r| r["pass"] == true));

    let text = stdout(&run(&[
        "table",
        "--family",
        "cycle-power",
        "--n",
        "12",
        "--r",
        "2",
        "--k",
        "3",
    ]));
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().ends_with("40  pass"));
}

#[test]
fn table_edge_cases() {
    let out = run(&[
        "table", "--family", "gear", "--n", "5..3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[]\n");
    assert_eq!(
        run(&["table", "--family", "gear", "--n", "3..x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["table", "--family", "gear", "--n", "-1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "table", "--family", "helm", "--n", "3..6", "--format", "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
