use std::path::PathBuf;
use std::process::{Command, Output};

use colour_loop::gmodule::GradedModule;
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn colour(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colour")).args(args).output().expect("runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&colour(&["verify", &data("sl2c.json")])), 0);
    assert_eq!(code(&colour(&["verify", &data("E2.json")])), 0);
    let broken = colour(&["--json", "verify", &data("broken-sl2c.json")]);
    assert_eq!(code(&broken), 1);
    assert_eq!(json_of(&broken)["error"], "mismatch");
    assert_eq!(code(&colour(&["verify", "/nonexistent/file.json"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"basis\": 3}").unwrap();
    assert_eq!(code(&colour(&["verify", junk.to_str().unwrap()])), 2);
}

#[test]
fn verify_spot_checks_use_the_seed() {
    let o = colour(&["--json", "--seed", "7", "verify", &data("U3pm.json")]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["spot_failures"], 0);
    assert_eq!(v["kind"], "module");
}

#[test]
fn discolour_sl2c() {
    let o = colour(&["--json", "discolour", &data("sl2c.json"), "--sigma", "paper-sl2"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["round_trip"], true);
    assert_eq!(v["superalgebra"], true);
    let expected: Value =
        serde_json::from_str(&std::fs::read_to_string(data("sl2-discoloured.json")).unwrap()).unwrap();
    assert_eq!(v["algebra"], expected);
    let from_file = colour(&["--json", "discolour", &data("sl2c.json"), "--sigma", &data("sigma-sl2.json")]);
    assert_eq!(json_of(&from_file)["algebra"], expected);
    assert_eq!(code(&colour(&["discolour", &data("E2.json"), "--sigma", "sl2"])), 2);
}

#[test]
fn loop_and_irreducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("loop.json");
    let o = colour(&["--json", "loop", &data("E1.json"), "--refine-by", "", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["irreducible"], true);
    let written: GradedModule = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written.dim(), 4);
    assert_eq!(code(&colour(&["irreducible", out.to_str().unwrap()])), 0);

    let v2 = colour(&["--json", "loop", &data("V2.json"), "--refine-by", "11"]);
    assert_eq!(json_of(&v2)["irreducible"], false);
    assert_eq!(code(&colour(&["loop", &data("V2.json"), "--refine-by", "3"])), 2);
    assert_eq!(code(&colour(&["loop", &data("E2.json"), "--refine-by", "11"])), 2);
}

#[test]
fn irreducible_reports_a_witness() {
    let o = colour(&["--json", "irreducible", &data("Eplus2-plus-Ominus2.json")]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    assert_eq!(v["irreducible"], false);
    assert_eq!(v["witness"]["basis"].as_array().unwrap().len(), 3);
}

#[test]
fn isomorphic_modules() {
    let o = colour(&["--json", "isomorphic", &data("LoopE1.json"), &data("LoopO1.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["intertwiner"].as_array().unwrap().len(), 4);
    assert_eq!(code(&colour(&["isomorphic", &data("Eplus2.json"), &data("Ominus2.json")])), 1);
    assert_eq!(code(&colour(&["isomorphic", &data("E2.json"), &data("V2.json")])), 2);
}

#[test]
fn lift_report() {
    let o = colour(&["--json", "lift", &data("V2.json"), "--group", "2,2"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
    assert!(v["steps"].as_array().unwrap().iter().all(|s| s["outcome"] == "gradable"));
    assert_eq!(v["final"].as_array().unwrap().len(), 4);
    let odd = json_of(&colour(&["--json", "lift", &data("V3.json")]));
    assert_eq!(odd["steps"][1]["outcome"], "loop");
    assert_eq!(odd["steps"][1]["dim"], 8);
    assert_eq!(code(&colour(&["lift", &data("V2.json"), "--group", "4"])), 2);
}

#[test]
fn classify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let even = colour(&["classify-sl2", "--max-lambda", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&even), 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["lambdas"][0]["graded_classes"], 4);
    assert_eq!(r["pass"], true);

    // Odd weights give one graded class where two are expected.
    let odd = colour(&["--json", "classify-sl2", "--max-lambda", "1"]);
    assert_eq!(code(&odd), 1);
    let r = json_of(&odd);
    assert_eq!(r["lambdas"][1]["graded_classes"], 1);
    assert_eq!(r["lambdas"][1]["ungraded_classes"], 4);
}

#[test]
fn bd_model_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = colour(&["--json", "bd-model", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["sector_order"], serde_json::json!(["00", "01", "11", "10"]));
    assert!(v["assumption"].as_str().unwrap().contains("a1 b1 + a2 b2"));
    for f in ["algebra.json", "seed.json", "loop.json", "report.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let loop_file = dir.path().join("loop.json");
    assert_eq!(code(&colour(&["verify", loop_file.to_str().unwrap()])), 0);
}

#[test]
fn bad_arguments_are_invalid_input() {
    assert_eq!(code(&colour(&["classify-sl2"])), 2);
    assert_eq!(code(&colour(&["no-such-command"])), 2);
    assert_eq!(code(&colour(&["--help"])), 0);
}
