use std::process::{Command, Output};

use serde_json::Value;

fn cubicmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubicmon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn solve_fermat_gives_27_lines() {
    let out = cubicmon(&["solve", "--family", "fermat"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["lines"].as_array().unwrap().len(), 27);
    assert!(v["result"]["max_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn schlafli_check_reports_the_graph() {
    let out = cubicmon(&["schlafli-check", "--seed", "3"]);
    assert!(out.status.success());
    let r = &json(&out)["result"];
    assert_eq!(r["edges"], 135);
    assert_eq!(r["triangles"], 45);
    assert_eq!(r["strongly_regular_27_10_1_5"], true);
}

#[test]
fn constant_loop_is_identity() {
    let out = cubicmon(&["track", "--family", "s4", "--param", "1,0", "--loop", "constant"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["identity"], true);
}

#[test]
fn s4_campaign_passes() {
    let out = cubicmon(&["campaign", "--family", "s4", "--budget", "40"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = &json(&out)["result"];
    assert_eq!(r["degree"], 27);
    assert_eq!(r["group"]["order"], 4);
    assert_eq!(r["combined_group"]["order"], 96);
    assert!(r["tolerances"]["matching_gap"].as_f64().unwrap() >= 1e3);
}

#[test]
fn verify_all_selected_claims_and_reproducibility() {
    let dir = std::env::temp_dir().join(format!("cubicmon-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |seed: &str, name: &str| {
        let path = dir.join(name);
        let out = cubicmon(&[
            "verify-all",
            "--claims",
            "W(E6),S4-coarse,flexes-ASL2",
            "--seed",
            seed,
            "--out",
            path.to_str().unwrap(),
        ]);
        (out, std::fs::read_to_string(path).unwrap())
    };
    let (a, text_a) = run("7", "a.json");
    let (b, text_b) = run("7", "b.json");
    let (c, text_c) = run("11", "c.json");
    for out in [&a, &b, &c] {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(text_a, text_b);
    let va: Value = serde_json::from_str(&text_a).unwrap();
    let vc: Value = serde_json::from_str(&text_c).unwrap();
    let orders = |v: &Value| -> Vec<Value> { v["verdicts"].as_array().unwrap().iter().map(|x| x["observed_order"].clone()).collect() };
    assert_eq!(orders(&va), vec![Value::from(51840), Value::from(4), Value::from(216)]);
    assert_eq!(orders(&va), orders(&vc));
    assert!(!dir.join("a.json.tmp").exists());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn zero_budget_is_inconclusive() {
    let out = cubicmon(&["verify-all", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 10);
    assert!(verdicts.iter().all(|x| x["status"] == "inconclusive"));
}

#[test]
fn flexes_of_the_seed_cubic() {
    let out = cubicmon(&["flexes", "--seed", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["flexes"]["points"].as_array().unwrap().len(), 9);
    assert_eq!(v["collinear_triples"].as_array().unwrap().len(), 12);
}

#[test]
fn bad_parameters_are_rejected() {
    let out = cubicmon(&["solve", "--family", "s3", "--param", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cubicmon(&["solve", "--family", "s4", "--param", "1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}
