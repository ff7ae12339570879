use std::process::{Command, Output};

use serde_json::{json, Value};

fn pathforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathforge"))
        .args(args)
        .env("PATHFORGE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = pathforge(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn enumerate_count_only() {
    assert_eq!(
        run_json(&["enumerate", "--kind", "dyck", "--k", "3", "--count-only"]),
        json!({ "kind": "dyck", "k": 3, "count": 5 })
    );
    let out = pathforge(&["enumerate", "--kind", "altmotzkin", "--k", "4", "--count-only", "--format", "csv"]);
    assert_eq!(stdout(&out), "kind,k,count\naltmotzkin,4,14\n");
}

#[test]
fn enumerate_golden() {
    assert_eq!(
        run_json(&["enumerate", "--kind", "altmotzkin", "--k", "2"]),
        json!({
            "kind": "altmotzkin",
            "k": 2,
            "count": 2,
            "paths": [
                {
                    "kind": "altmotzkin", "k": 2, "path": "LLLL",
                    "R": [0, 0], "V": [5, 0, 0], "L": [2, 0], "r": 0,
                    "level_parity": [{ "altitude": 0, "total": 4, "even": 2 }, { "altitude": 1, "total": 0, "even": 0 }]
                },
                {
                    "kind": "altmotzkin", "k": 2, "path": "LUDL",
                    "R": [1, 0], "V": [4, 1, 0], "L": [1, 0], "r": 1,
                    "level_parity": [{ "altitude": 0, "total": 2, "even": 1 }, { "altitude": 1, "total": 0, "even": 0 }]
                }
            ]
        })
    );
    let out = pathforge(&["enumerate", "--kind", "dyck", "--k", "2", "--format", "csv"]);
    assert_eq!(stdout(&out), "kind,k,path,R,V,L,r\ndyck,2,UUDD,1;1,2;2;1,0;0,2\ndyck,2,UDUD,2;0,3;2;0,0;0,2\n");
}

#[test]
fn stats_golden() {
    assert_eq!(
        run_json(&["stats", "--path", "UUDDUD", "--kind", "dyck"]),
        json!({ "kind": "dyck", "k": 3, "path": "UUDDUD", "R": [2, 1, 0], "V": [3, 3, 1, 0], "L": [0, 0, 0], "r": 3 })
    );
}

#[test]
fn map_and_invert() {
    let input = r#"{"construction":"B","p1":"UD","p2":"UD","i":0,"mark1":0,"mark2":0}"#;
    let v = run_json(&["map", "--construction", "B", "--input", input]);
    assert_eq!(v, json!({ "construction": "B", "path": "UUDDUD", "middle_altitude": 1, "rises": 3 }));

    let v = run_json(&["invert", "--construction", "B", "--path", "UUDDUD"]);
    let back: Value = serde_json::from_str(input).unwrap();
    assert_eq!(v, back);

    let v = run_json(&["invert", "--construction", "A", "--path", "UUUDDUDD"]);
    assert_eq!(v, json!({ "construction": "A", "p1": "UDUD", "p2": "UUDD", "i": 0, "mark1": 1, "mark2": 4 }));
}

#[test]
fn verify_reports_and_exit_codes() {
    let v = run_json(&["verify", "--identity", "1", "--k-max", "3"]);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["partial"], json!(false));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(
        rows[2],
        json!({ "id": 1, "k": 3, "expected": true, "lhs": "107/25", "rhs": "107/25", "equal": true })
    );

    let v = run_json(&["verify", "--identity", "4", "--k-max", "3"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(
        rows[3],
        json!({
            "id": 4, "k": 3, "rhs_index": "k", "expected": false,
            "lhs": "16", "rhs": "63", "equal": false, "difference": "-47"
        })
    );

    let v = run_json(&["verify", "--identity", "5", "--k-max", "3"]);
    assert_eq!(v["rows"][2]["lhs"], json!(["0", "3", "3"]));

    let out = pathforge(&["verify", "--identity", "4", "--k-max", "3", "--rhs-index", "k"]);
    assert_eq!(out.status.code(), Some(1));

    for id in ["1", "2", "3", "4", "5"] {
        let out = pathforge(&["verify", "--identity", id, "--k-max", "6"]);
        assert_eq!(out.status.code(), Some(0), "identity {id}");
    }

    let out = pathforge(&["verify", "--identity", "2", "--k-max", "2", "--format", "csv"]);
    assert_eq!(
        stdout(&out),
        "id,k,rhs_index,expected,lhs,rhs,equal\n2,1,,true,5,5,true\n2,2,,true,21/2,21/2,true\n"
    );
}

#[test]
fn walk_both_directions() {
    let v = run_json(&["walk", "--to", "--path", "UUDD"]);
    assert_eq!(v["walk"], json!("0,1,2,1,0"));
    assert_eq!(v["statistics"]["time_at_node"], json!([2, 2, 1]));
    let v = run_json(&["walk", "--from", "--path", "0,0,1,0,0"]);
    assert_eq!(v["kind"], json!("altmotzkin"));
    assert_eq!(v["path"], json!("LUDL"));
    let v = run_json(&["walk", "--to", "--path", "UD", "--start", "2"]);
    assert_eq!(v["walk"], json!("2,3,2"));
}

#[test]
fn mc_output_schema() {
    let v = run_json(&["mc", "--ensemble", "wigner", "--k", "2", "--n", "10", "--trials", "3", "--seed", "1"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["ensemble", "estimate", "k", "n", "seed", "stderr", "target", "trials"]);
    let again = run_json(&["mc", "--ensemble", "wigner", "--k", "2", "--n", "10", "--trials", "3", "--seed", "1"]);
    assert_eq!(v, again);
    let out = pathforge(&["mc", "--ensemble", "wishart", "--k", "2", "--n", "10", "--trials", "3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_summary() {
    let v = run_json(&["report", "--k", "3"]);
    assert_eq!(v["square_average_advances"], json!("107/25"));
    assert_eq!(v["advances_closed_form"], json!("107/25"));
    assert_eq!(v["square_average_time"], json!("429/25"));
    assert_eq!(v["dyck_expectations"]["R"], json!(["9/5", "1", "1/5"]));
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let cases: &[&[&str]] = &[
        &["enumerate", "--kind", "triangle", "--k", "2"],
        &["enumerate", "--kind", "dyck"],
        &["enumerate", "--kind", "dyck", "--k", "2", "--bogus"],
        &["stats", "--path", "UUD", "--kind", "dyck"],
        &["verify", "--identity", "7", "--k-max", "2"],
        &["walk", "--path", "UD"],
        &["map", "--construction", "A", "--input", "{}"],
        &["invert", "--construction", "C", "--path", "LLLL"],
    ];
    for args in cases {
        let out = pathforge(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("--") || err.contains("image"), "{args:?}: {err}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_pathforge"))
        .args(["enumerate", "--kind", "dyck", "--k", "1"])
        .env("PATHFORGE_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
