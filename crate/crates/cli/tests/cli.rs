use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn qrpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrpp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const EQUIORIENTED_REP: &str = "11100:4,01100:3,00110:1,01110:1,00111:1,11111:2";

#[test]
fn to_rpp_prints_the_grid() {
    let out = qrpp(&[
        "to-rpp",
        "--quiver",
        "A5:1<2<3<4<5",
        "--m",
        "3",
        "--rep",
        EQUIORIENTED_REP,
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# qrpp to-rpp seed=0"));
    assert!(text.contains("grid 0 2 3/2 2 3/6 8 10"), "{text}");
}

#[test]
fn from_rpp_inverts_to_rpp() {
    let out = qrpp(&[
        "--json",
        "from-rpp",
        "--quiver",
        "A5:1<2<3<4<5",
        "--m",
        "3",
        "--grid",
        "0 2 3/2 2 3/6 8 10",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let got: BTreeSet<String> = v["rep"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect();
    let want: BTreeSet<String> = EQUIORIENTED_REP.split(',').map(str::to_string).collect();
    assert_eq!(got, want);
}

#[test]
fn zero_grid_gives_the_empty_rep() {
    let out = qrpp(&[
        "from-rpp",
        "--quiver",
        "A5:1<2<3<4<5",
        "--m",
        "3",
        "--grid",
        "0 0 0/0 0 0/0 0 0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "rep 0"));
}

#[test]
fn genfun_for_the_square() {
    let out = qrpp(&[
        "verify-genfun",
        "--poset",
        "A3,2",
        "--bound",
        "3",
        "--bijection",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in [
        "product 1,1,3,4",
        "enumeration 1,1,3,4",
        "bijection 1,1,3,4",
        "PASS",
    ] {
        assert!(
            text.lines().any(|l| l == line),
            "{line} missing from {text}"
        );
    }
}

#[test]
fn promotion_trajectory_on_a3() {
    let out = qrpp(&[
        "--json",
        "promotion",
        "--quiver",
        "A3:1>2<3",
        "--m",
        "2",
        "--bound",
        "8",
        "--rpp",
        "010:5,110:4,011:5,111:1",
        "--check-period",
        "--trials",
        "50",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = |k: usize| -> Vec<i64> {
        ["010", "110", "011", "111"]
            .iter()
            .map(|n| v["trajectory"][k]["values"][n].as_i64().unwrap())
            .collect()
    };
    assert_eq!(row(1), vec![8, 7, 6, 3]);
    assert_eq!(row(2), vec![7, 3, 4, 3]);
    assert_eq!(row(3), vec![5, 2, 1, 0]);
    assert_eq!(row(4), row(0));
    assert_eq!(v["period"], 4);
    assert_eq!(v["periodicity"]["passed"], true);
}

#[test]
fn jordan_agrees_with_the_bijection() {
    let out = qrpp(&[
        "jordan",
        "--quiver",
        "A3:1>2<3",
        "--m",
        "2",
        "--rep",
        "010:1,110:2,011:1,111:1",
        "--check-bijection",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("jordan ((3),(4,1),(2))"), "{text}");
    assert!(text.contains("bijection agrees"));
}

#[test]
fn hillman_grassl_and_pak() {
    let out = qrpp(&["hg", "--grid", "0 2 3/2 2 3/6 8 10"]);
    assert!(stdout(&out).contains("hooks 00110:1,00111:1,01100:3,01110:1,11100:4,11111:2"));
    let out = qrpp(&[
        "pak",
        "--rep",
        "11100:4,01100:3,00110:1,01110:1,11111:1,00111:2",
        "--shape",
        "3x3",
    ]);
    assert!(stdout(&out).contains("grid 1 1 3/1 3 4/5 8 8"));
}

#[test]
fn roots_and_ar_quiver() {
    let v: Value = serde_json::from_str(&stdout(&qrpp(&["--json", "roots", "E6"]))).unwrap();
    assert_eq!(v["coxeter_number"], 12);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 36);
    let v: Value =
        serde_json::from_str(&stdout(&qrpp(&["--json", "ar-quiver", "--quiver", "D4"]))).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
    let edges = stdout(&qrpp(&["ar-quiver", "--quiver", "D4", "--edges"]));
    assert_eq!(
        edges.lines().filter(|l| !l.starts_with('#')).count(),
        v["arrows"].as_array().unwrap().len()
    );
}

#[test]
fn exit_codes() {
    assert_eq!(qrpp(&["bogus"]).status.code(), Some(2));
    let out = qrpp(&["to-rpp", "--quiver", "A5", "--m", "0", "--rep", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--m"));
    let out = qrpp(&[
        "from-rpp", "--quiver", "A3:1>2<3", "--m", "2", "--rpp", "999:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = qrpp(&[
        "verify-genfun",
        "--poset",
        "A3,2",
        "--bound",
        "3",
        "--no-enumerate",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_all_runs_selected_criteria() {
    let out = qrpp(&["verify-all", "--only", "1,2,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
    assert!(text.contains("3/3 passed"));
}
