mod common;

use std::process::{Command, Output};

use common::fixture_path;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_offsetal"))
        .args(args)
        .output()
        .unwrap()
}

fn fx(name: &str) -> String {
    fixture_path(name).display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn offset_eq_json_for_the_cardioid() {
    let out = run(&["offset-eq", "-d", "1", "-i", &fx("cardioid.txt"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["G"], "x^2 + y^2 + 4*y + 4");
    assert_eq!(v["tracing_index"], 1);
    assert_eq!(v["verdict_squarefree"], true);
    assert!(v["F"]
        .as_str()
        .unwrap()
        .ends_with("- 429*x^2 + 131*y^2 + 316*y + 252"));
    assert!(v["timings"]["resultant"].is_number());
    for key in [
        "H",
        "constants",
        "diagnostics",
        "factors",
        "normalized",
        "input",
        "exponent_pattern",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn json_is_stable_apart_from_timings() {
    let args = [
        "offset-eq",
        "-d",
        "1",
        "-i",
        &fx("cardioid_offset.txt"),
        "--json",
    ];
    let strip = |out: Output| {
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string_pretty(&v).unwrap()
    };
    let a = strip(run(&args));
    let b = strip(run(&args));
    assert_eq!(a, b);
    // keys come out sorted
    let v: Value = serde_json::from_str(&a).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn is_offset_finds_the_cardioid() {
    let out = run(&[
        "is-offset",
        "-d",
        "1",
        "-i",
        &fx("cardioid_offset.txt"),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["is_offset"], true);
    assert_eq!(
        v["special_equation"],
        "x^4 + 2*x^2*y^2 + y^4 + 8*x^2*y + 8*y^3 - 16*x^2"
    );
    let out = run(&["is-offset", "-d", "1", "-i", &fx("cardioid.txt")]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "is_offset: false\nspecial_equation: none\n"
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(
        code(&["offset-eq", "-d", "1", "-i", &fx("line.txt")]),
        Some(2)
    );
    assert_eq!(
        code(&["offset-eq", "-d", "1", "-i", &fx("circle.txt")]),
        Some(2)
    );
    assert_eq!(
        code(&["offset-eq", "-d", "1.5e0", "-i", &fx("cardioid.txt")]),
        Some(2)
    );
    assert_eq!(
        code(&["offset-eq", "-d", "-1", "-i", &fx("cardioid.txt")]),
        Some(2)
    );
    assert_eq!(
        code(&["offset-eq", "-d", "1", "-i", "/nonexistent/curve.txt"]),
        Some(2)
    );
    assert_eq!(code(&["offset-eq", "-d", "1"]), Some(2));
    assert_eq!(
        code(&[
            "offset-eq",
            "-d",
            "1",
            "-i",
            &fx("cardioid.txt"),
            "--extraneous-override",
            "x - 7"
        ]),
        Some(3)
    );
    assert_eq!(
        code(&["tracing-index", "-i", &fx("parabola_offset.txt")]),
        Some(0)
    );
}

#[test]
fn parse_errors_report_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "x = t\ny = t^\n").unwrap();
    let out = run(&["implicitize", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 7"));
}

#[test]
fn small_commands() {
    let out = run(&["tracing-index", "-i", &fx("parabola_offset.txt")]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2\n");
    let out = run(&["implicitize", "-i", &fx("parabola.txt")]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "x^2 - 4*y\n");
}

#[test]
fn sample_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("o.csv");
    let out = run(&[
        "sample",
        "-d",
        "1",
        "-i",
        &fx("cardioid.txt"),
        "--range",
        "-2:2",
        "--count",
        "50",
        "--csv",
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,branch,x,y"));
    assert_eq!(lines.next().unwrap().split(',').nth(1), Some("ext"));
    assert_eq!(text.lines().count(), 101);

    let svg = dir.path().join("o.svg");
    let out = run(&[
        "sample",
        "-d",
        "1",
        "-i",
        &fx("cardioid_offset.txt"),
        "--range",
        "-30:30",
        "--count",
        "400",
        "--svg",
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("stroke=\"red\""));
    assert!(text.contains("stroke-dasharray"));

    let out = run(&[
        "sample",
        "-d",
        "1",
        "-i",
        &fx("cardioid.txt"),
        "--range",
        "1:1",
        "--count",
        "5",
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_on_the_cardioid() {
    let out = run(&[
        "verify",
        "-d",
        "1",
        "-i",
        &fx("cardioid.txt"),
        "--y0",
        "3/7",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
