use std::process::{Command, Output};

fn patgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patgf"))
        .args(args)
        .env_remove("PATGF_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = patgf(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn status(args: &[&str]) -> i32 {
    patgf(args).status.code().unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--avoid", "123;213", "--n", "4", "--implicit-132"]), "5");
    assert_eq!(stdout(&["count", "--n", "4"]), "24");
    assert_eq!(stdout(&["count", "--avoid", "eps", "--n", "1"]), "0");
    assert_eq!(stdout(&["count", "--at-least", "12;21", "--n", "3"]), "4");
}

#[test]
fn gf_examples() {
    assert_eq!(stdout(&["gf", "catalog:ulk", "--k", "4", "--l", "2"]), "(1 - x - x^2)/(1 - 2*x - x^2)");
    assert_eq!(stdout(&["gf", "recurrence", "--avoid", "231"]), "(1 - x)/(1 - 2*x)");
    assert_eq!(stdout(&["gf", "catalog:ulk-once", "--k", "3", "--l", "1"]), "x^3/(1 - 4*x + 4*x^2)");
    assert_eq!(stdout(&["gf", "catalog:u2k-both", "--k", "3"]), "0");
    assert_eq!(stdout(&["gf", "catalog:u2k-both-full", "--k", "4"]), "2*x^7/(1 - 6*x + 9*x^2 + 4*x^3 - 9*x^4 - 6*x^5 - x^6)");
}

#[test]
fn table_examples() {
    assert_eq!(stdout(&["table", "--family", "ulk", "--l", "1", "--k", "3", "--order", "5"]), "k=3\tl=1\t1,1,2,4,8,16");
    assert_eq!(stdout(&["table", "--family", "ulk", "--l", "2", "--k", "3", "--order", "5"]), "k=3\tl=2\t1,1,2,3,5,8");
    assert_eq!(stdout(&["table", "--family", "u2k-both", "--k", "3", "--order", "6"]), "k=3\tl=2\t0,0,0,0,0,0,0");
    assert_eq!(stdout(&["table", "--family", "ulk", "--l", "2", "--k", "2..4", "--order", "3"]).lines().count(), 3);
}

#[test]
fn series_from_census_and_from_closed_forms_agree() {
    let census = stdout(&["series", "--avoid", "2341;3241", "--implicit-132", "--order", "8"]);
    let recurrence = stdout(&["series", "recurrence", "--avoid", "2341;3241", "--order", "8"]);
    assert_eq!(census, recurrence);
    assert_eq!(census, "1,1,2,5,12,29,70,169,408");
}

#[test]
fn json_round_trips() {
    for args in [
        &["gf", "catalog:ulk", "--k", "4", "--l", "2", "--json"][..],
        &["gf", "recurrence", "--avoid", "213", "--once", "123", "--json"],
        &["count", "--avoid", "123", "--n", "5", "--json"],
        &["series", "--order", "4", "--json"],
        &["table", "--family", "ulk-once", "--k", "3..4", "--l", "1..2", "--order", "4", "--json"],
        &["verify", "--suite", "algebra", "--json"],
    ] {
        let text = stdout(args);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value.to_string(), text, "{args:?}");
    }
}

#[test]
fn json_and_text_carry_the_same_gf() {
    let text = stdout(&["gf", "catalog:ulk", "--k", "5", "--l", "2"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&["gf", "catalog:ulk", "--k", "5", "--l", "2", "--json"])).unwrap();
    assert_eq!(json["text"], text);
    let f = patgf::RationalFunction::from_json(&json["gf"].to_string()).unwrap();
    assert_eq!(f.to_string(), text);
}

#[test]
fn exit_codes() {
    assert_eq!(status(&["count", "--n", "3", "--bogus"]), 2);
    assert_eq!(status(&["count", "--avoid", "1x2", "--n", "3"]), 2);
    assert_eq!(status(&["frobnicate"]), 2);
    assert_eq!(status(&["count", "--n", "11"]), 3);
    assert_eq!(status(&["verify", "--suite", "oracle", "--max-n", "11"]), 3);
    let out = patgf(&["gf", "recurrence", "--avoid", "1432"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Not132Avoiding"));
    let out = patgf(&["gf", "catalog:ulk-once", "--k", "3", "--l", "1", "--t", "213"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PreconditionViolated"));
}

#[test]
fn feasibility_bound_follows_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_patgf"))
        .args(["count", "--n", "6"])
        .env("PATGF_MAX_N", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_suites_pass_and_write_reports() {
    assert_eq!(status(&["verify", "--suite", "chebyshev", "--order", "12"]), 0);
    assert_eq!(status(&["verify", "--suite", "oracle", "--max-n", "8"]), 0);
    let dir = std::env::temp_dir().join(format!("patgf-report-{}", std::process::id()));
    let path = dir.with_extension("json");
    let text = stdout(&["verify", "--suite", "catalog", "--json", "--out", path.to_str().unwrap()]);
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written.trim_end(), text);
    let report: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn verify_all_exits_zero() {
    let out = patgf(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains(" 0 failed"));
}
