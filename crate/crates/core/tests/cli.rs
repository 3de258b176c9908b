use std::path::{Path, PathBuf};
use std::process::Command;

use pursuit_barrier::cli::{run, OUT_DIR_ENV};
use pursuit_barrier::export::SectionDocument;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/cli").join(name)
}

fn run_in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pursuit-barrier").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_prints_summary_line() {
    let (code, out, _) = run_in_process(&["classify", path_str(&data("same_evader_win.json"))]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "EvaderWin B=7 segment=S2 active=Both");
}

#[test]
fn classify_json_output() {
    let (code, out, _) = run_in_process(&["classify", "--json", path_str(&data("fast_on_barrier.json"))]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "OnBarrier");
    assert_eq!(v["segment"], "S3");
    assert_eq!(v["active"], "Both");
}

#[test]
fn exit_codes_for_bad_inputs() {
    let good = data("same_evader_win.json");
    let cases = [
        (vec!["classify", "/nonexistent/scenario.json"], 5),
        (vec!["classify"], 2),
        (vec!["bogus"], 2),
        (vec!["section", path_str(&good), "--format", "png"], 2),
    ];
    for (args, want) in cases {
        let (code, _, _) = run_in_process(&args);
        assert_eq!(code, want, "{args:?}");
    }
    let unknown = data("unknown_field.json");
    let (code, _, err) = run_in_process(&["classify", path_str(&unknown)]);
    assert_eq!(code, 2);
    assert!(err.contains("v_3"), "{err}");
    let (code, _, _) = run_in_process(&["classify", path_str(&data("mixed_speeds.json"))]);
    assert_eq!(code, 3);
    let (code, _, err) = run_in_process(&["classify", path_str(&data("goal_reached.json"))]);
    assert_eq!(code, 4);
    assert_eq!(err.trim(), "AlreadyTerminal(GoalReached)");
}

#[test]
fn section_writes_every_format() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = data("fast_pursuer_win.json");
    for format in ["csv", "json", "svg"] {
        let out = dir.path().join(format!("s.{format}"));
        let (code, stdout, _) = run_in_process(&[
            "section",
            path_str(&scenario),
            "--samples",
            "30",
            "--format",
            format,
            "--out",
            path_str(&out),
        ]);
        assert_eq!(code, 0, "{format}");
        assert!(stdout.contains("S1 CircleArc"), "{stdout}");
        let bytes = std::fs::read(&out).unwrap();
        match format {
            "csv" => assert!(bytes.starts_with(b"segment_index,kind,x,y\n")),
            "json" => {
                let doc = SectionDocument::parse(&bytes).unwrap();
                assert_eq!(doc.samples.len(), 30 * doc.segments.len());
            }
            _ => assert!(bytes.starts_with(b"<svg")),
        }
    }
}

#[test]
fn verify_scenario_and_random_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let (code, out, _) =
        run_in_process(&["verify", path_str(&data("fast_on_barrier.json")), "--report", path_str(&report)]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("pass"));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);

    let (code, out, _) = run_in_process(&[
        "verify",
        "--random",
        "200",
        "--seed",
        "5",
        "--regime",
        "fast",
        "--speeds",
        "0.9,1,1.5",
        "--band-states",
        "5",
        "--report",
        path_str(&report),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("checked=200 agreements=200 disagreements=0"), "{out}");
    let (code, _, _) = run_in_process(&["verify", "--random", "10", "--regime", "same", "--speeds", "0.5,1,2"]);
    assert_eq!(code, 2);
}

#[test]
fn simulate_writes_trajectory_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let (code, stdout, _) =
        run_in_process(&["simulate", path_str(&data("fast_pursuer_win.json")), "--out", path_str(&out)]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("terminal=Captured"), "{stdout}");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("t,xE,yE,x1,y1,x2,y2\n"));

    let (code, stdout, _) = run_in_process(&["simulate", path_str(&data("slow_timeout.json")), "--out", path_str(&out)]);
    assert_eq!(code, 6, "{stdout}");
    let (code, _, _) = run_in_process(&["simulate", path_str(&data("same_evader_win.json")), "--dt", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_honours_out_dir_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_pursuit-barrier");
    let status = Command::new(bin)
        .args(["section", path_str(&data("same_evader_win.json")), "--format", "svg"])
        .env(OUT_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(dir.path().join("section.svg").exists());
    let status = Command::new(bin).args(["classify", path_str(&data("mixed_speeds.json"))]).output().unwrap();
    assert_eq!(status.status.code(), Some(3));
}
