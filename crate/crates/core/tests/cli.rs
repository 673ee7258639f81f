use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use stratdom::cli::{run, CliOutput};
use tempfile::TempDir;

fn stratdom(args: &[&str]) -> CliOutput {
    run(std::iter::once("stratdom").chain(args.iter().copied()))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn fixture(dir: &TempDir, name: &str) -> PathBuf {
    let out = stratdom(&["generate", "--fixture", name]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    write(dir, &format!("{name}.json"), &out.stdout)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &CliOutput) -> Value {
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn analyze_then_verify() {
    let dir = TempDir::new().unwrap();
    for name in stratdom::instances::FIXTURES {
        let game = fixture(&dir, name);
        let out = stratdom(&["analyze", s(&game)]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out, stratdom(&["analyze", s(&game)]), "output must be deterministic");
        let report = write(&dir, "report.json", &out.stdout);
        let check = stratdom(&["verify", s(&report), s(&game)]);
        assert_eq!(check.code, 0, "{}", check.stdout);
        assert!(check.stdout.contains(", 0 failures"));
    }
}

#[test]
fn iesds_and_rationalize_agree_on_fig1() {
    let dir = TempDir::new().unwrap();
    let game = fixture(&dir, "fig1");
    let iesds = json(&stratdom(&["iesds", s(&game)]));
    assert_eq!(iesds["results"]["survivors"]["rows"], serde_json::json!(["U", "M"]));
    let rat = json(&stratdom(&["rationalize", s(&game)]));
    assert_eq!(rat["results"]["iterated"]["survivors"], iesds["results"]["survivors"]);
    let d = &rat["results"]["actions"][2];
    assert_eq!(d["action"], "D");
    assert_eq!(d["status"], "never_best_response");
    assert_eq!(d["dominance"]["margin"], "3/10");
}

#[test]
fn dominate_reports_certificate_or_exit_one() {
    let dir = TempDir::new().unwrap();
    let game = fixture(&dir, "fig1");
    let out = stratdom(&["dominate", s(&game), "--player", "1", "--action", "D"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_eq!(v["status"], "dominated");
    assert_eq!(v["results"]["certificate"]["margin"], "1/3");
    assert_eq!(v["results"]["reduced"]["support_size"], 2);

    let out = stratdom(&["dominate", s(&game), "--player", "1", "--action", "U"]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["status"], "not_dominated");

    let out = stratdom(&["dominate", s(&game), "--player", "2", "--action", "D"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("no action"));
}

#[test]
fn verify_rejects_tampering_and_wrong_games() {
    let dir = TempDir::new().unwrap();
    let game = fixture(&dir, "fig1");
    let mut report = json(&stratdom(&["iesds", s(&game)]));
    report["results"]["rounds"][0]["certificates"][0]["margin"] = Value::String("2/1".into());
    let tampered = write(&dir, "tampered.json", &report.to_string());
    let out = stratdom(&["verify", s(&tampered), s(&game)]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL $.results.rounds[0].certificates[0]"));

    let honest = write(&dir, "honest.json", &stratdom(&["iesds", s(&game)]).stdout);
    let other = fixture(&dir, "vec3x2");
    let out = stratdom(&["verify", s(&honest), s(&other)]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL $.input_digest"));
}

#[test]
fn plot_data_lines() {
    let dir = TempDir::new().unwrap();
    let game = fixture(&dir, "five-lines");
    let out = stratdom(&["plot-data", s(&game), "--player", "1"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "a1,6/5,2/5\na2,-13/10,13/10\na3,1/2,4/5\na4,-4/5,1/1\na5,0/1,4/5\n"
    );
    let three = write(&dir, "g.json", &stratdom(&["generate", "--tight", "2", "3"]).stdout);
    assert_eq!(stratdom(&["plot-data", s(&three)]).code, 2);
}

#[test]
fn subcover_of_the_triangle() {
    let dir = TempDir::new().unwrap();
    // Triangle x, y >= 0, x + y <= 1 covered by x + y > 3/4, x < 1/2, y < 1/2, and a redundant x < 1/3.
    let cover = write(
        &dir,
        "cover.json",
        r#"{"dim": 2,
            "polytope": [[-1, 0, 0], [0, -1, 0], [1, 1, 1]],
            "halfspaces": [[-1, -1, "-3/4"], [1, 0, "1/3"], [1, 0, 0.5], [0, 1, "1/2"]]}"#,
    );
    let out = stratdom(&["subcover", s(&cover)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["status"], "covered");
    assert_eq!(v["results"]["subcover"], serde_json::json!([0, 2, 3]));

    let gap = write(&dir, "gap.json", r#"{"dim": 2, "polytope": [[-1, 0, 0], [0, -1, 0], [1, 1, 1]], "halfspaces": [[1, 0, "1/2"]]}"#);
    let out = stratdom(&["subcover", s(&gap)]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["status"], "not_covered");
}

#[test]
fn generate_is_deterministic() {
    let a = stratdom(&["generate", "--random", "3", "2", "--seed", "7", "--range", "-9", "9"]);
    assert_eq!(a.code, 0);
    assert_eq!(a, stratdom(&["generate", "--random", "3", "2", "--seed", "7", "--range", "-9", "9"]));
    let g = stratdom::game::parse_game(a.stdout.as_bytes()).unwrap();
    assert_eq!(g.row_actions(), ["r1", "r2", "r3"]);
    assert_eq!(stratdom(&["generate", "--tight", "4", "2"]).code, 0);
    assert_eq!(stratdom(&["generate", "--fixture", "nope"]).code, 2);
    assert_eq!(stratdom(&["generate", "--tight", "2", "2", "--fixture", "fig1"]).code, 2);
    assert_eq!(stratdom(&["generate", "--tight", "2", "2", "--seed", "1"]).code, 2);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(stratdom(&["analyze", "/nonexistent/game.json"]).code, 2);
    let bad = write(&dir, "bad.json", r#"{"row_actions": ["a"], "col_actions": ["b"], "row_payoffs": [["x"]], "col_payoffs": [[0]]}"#);
    let out = stratdom(&["analyze", s(&bad)]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error:"));
    let ragged = write(&dir, "ragged.json", r#"{"row_actions": ["a"], "col_actions": ["b", "c"], "row_payoffs": [[1]], "col_payoffs": [[0, 0]]}"#);
    assert_eq!(stratdom(&["iesds", s(&ragged)]).code, 2);
    assert_eq!(stratdom(&["frobnicate"]).code, 2);
    assert_eq!(stratdom(&["--help"]).code, 0);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let game = fixture(&dir, "fig1");
    let bin = env!("CARGO_BIN_EXE_stratdom");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["dominate", s(&game), "--player", "1", "--action", "D"]), Some(0));
    assert_eq!(status(&["dominate", s(&game), "--player", "1", "--action", "M"]), Some(1));
    assert_eq!(status(&["dominate", s(&game), "--player", "3", "--action", "M"]), Some(2));
}
