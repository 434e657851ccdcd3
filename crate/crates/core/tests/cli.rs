use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn penner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_penner"))
        .args(args)
        .env_remove("PENNER_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn degree_text_and_json() {
    let tri = data("triangle.json");
    let o = penner(&["degree", "--omega", &tri, "--gamma", "1,2,3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("charpoly      x^3 - 7x^2 + 5x - 1"), "{text}");
    assert!(text.contains("degree        3"));

    let o = penner(&["--json", "degree", "--omega", &tri, "--gamma", "1,2,3", "--digits", "20"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    assert_eq!(v["charpoly"]["coefficients"], serde_json::json!(["-1", "5", "-7", "1"]));
    assert!(v["lambda"].as_str().unwrap().starts_with("6.2222625231"));
}

#[test]
fn precision_flag_and_environment() {
    let tri = data("triangle.json");
    let lambda = |o: &Output| -> String {
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["lambda"].as_str().unwrap().to_string()
    };
    let default = penner(&["--json", "degree", "--omega", &tri, "--gamma", "1,2,3"]);
    let digits_of = |s: &str| s.chars().filter(char::is_ascii_digit).count();
    assert_eq!(digits_of(&lambda(&default)), 50);

    let env = Command::new(env!("CARGO_BIN_EXE_penner"))
        .args(["--json", "degree", "--omega", &tri, "--gamma", "1,2,3"])
        .env("PENNER_PRECISION", "12")
        .output()
        .unwrap();
    assert_eq!(digits_of(&lambda(&env)), 12);

    // An explicit flag wins over the environment.
    let both = Command::new(env!("CARGO_BIN_EXE_penner"))
        .args(["--json", "degree", "--omega", &tri, "--gamma", "1,2,3", "--digits", "30"])
        .env("PENNER_PRECISION", "12")
        .output()
        .unwrap();
    assert_eq!(digits_of(&lambda(&both)), 30);

    let bad = Command::new(env!("CARGO_BIN_EXE_penner"))
        .args(["degree", "--omega", &tri, "--gamma", "1,2,3"])
        .env("PENNER_PRECISION", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn rational_input_is_exact() {
    let o = penner(&["--json", "limit", "--omega", &data("rational.json"), "--gamma", "1,2,3", "--scales", "2"]);
    // 2Ω is integral, so the ray table can be computed.
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mode"], "convergent");
}

#[test]
fn validation_errors_exit_2() {
    let o = penner(&["degree", "--omega", &data("asymmetric.json"), "--gamma", "1,2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("(1,2)"));
    let o = penner(&["degree", "--omega", &data("triangle.json"), "--gamma", "1,x"]);
    assert_eq!(code(&o), 2);
    let o = penner(&["degree", "--omega", &data("triangle.json"), "--gamma", "1,2,3", "--powers", "1,0,1"]);
    assert_eq!(code(&o), 2);
    let o = penner(&["degree", "--omega", "/nonexistent.json", "--gamma", "1,2"]);
    assert_eq!(code(&o), 2);
    let o = penner(&["catalog", "show", "no-such-id"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn math_preconditions_exit_3() {
    let tri = data("triangle.json");
    let o = penner(&["degree", "--omega", &tri, "--gamma", "1,2"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("generator 3 unused"));
    let o = penner(&["recipe", "--omega", &tri, "--gamma", "1,2,3"]);
    assert_eq!(code(&o), 3, "a triangle loop is not contractible");
}

#[test]
fn exhausted_budget_exits_4() {
    let o = penner(&["recipe", "--omega", &data("triangle.json"), "--gamma", "1,2,3,2", "--k-max", "2"]);
    // rank 3 is reached at every k, but a window of 3 needs three scales.
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("inconclusive"));
}

#[test]
fn recipe_on_catalog_entry() {
    let o = penner(&["--json", "--digits", "30", "recipe", "--catalog", "Mr-5", "--gamma", "tree", "--cross-check"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 5);
    assert_eq!(v["stable_window"], 3);
}

#[test]
fn limit_reports_both_regimes() {
    let o = penner(&["--json", "limit", "--omega", &data("triangle.json"), "--gamma", "1,2,3", "--scales", "4,8,16,32"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["limit_charpoly"], serde_json::json!(["0", "1", "1"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);

    let o = penner(&["--json", "limit", "--omega", &data("four_curves.json"), "--gamma", "1,2,3,4", "--scales", "16,32,64,128"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mode"], "divergent");
    assert_eq!(v["missing_edge"], serde_json::json!([1, 2]));
}

#[test]
fn catalog_subcommands() {
    let o = penner(&["catalog", "degrees", "S", "2", "0"]);
    assert_eq!(stdout(&o), "D  {2,3,4,6}\nD+ {2,4}\n");
    let o = penner(&["catalog", "degrees", "N", "3", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "no pseudo-Anosov maps\n");
    let o = penner(&["catalog", "degrees", "S", "1", "3"]);
    assert!(stdout(&o).contains("undetermined"));

    let o = penner(&["catalog", "export"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"S43-max") && ids.contains(&"N22-rank4"));

    let o = penner(&["--json", "catalog", "show", "Mr-3"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["rank"], 3);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["--json", "limit", "--omega", &data("triangle.json"), "--gamma", "1,2,3", "--scales", "4,8"];
    assert_eq!(penner(&args).stdout, penner(&args).stdout);
    let args = ["recipe", "--catalog", "N31-rank4", "--gamma", "tree"];
    let (a, b) = (penner(&args), penner(&args));
    assert_eq!(code(&a), code(&b));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_passes() {
    let o = penner(&["selftest"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("FAIL"));
}
