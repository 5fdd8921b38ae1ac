//! End-to-end runs of the binary: spec'd subcommands, formats, exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_canonical-complex"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_file(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

fn sylvester_ideal_json(n: u8) -> String {
    let mut arcs = Vec::new();
    for a in 1..n {
        for b in (a + 1)..=n {
            let mid: Vec<String> = ((a + 1)..b).map(|p| p.to_string()).collect();
            arcs.push(format!("\"{a}-{b}|{}|\"", mid.join(",")));
        }
    }
    format!("[{}]", arcs.join(","))
}

#[test]
fn table_verifies_and_prints_totals() {
    let out = run(&["table", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("total: 17"), "{text}");
    assert!(text.contains("verified"), "{text}");

    let out = run(&["table", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("total: 31711"));

    let out = run(&["table", "4", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(
        stdout(&out)
            .lines()
            .take_while(|l| !l.starts_with("verified"))
            .collect::<Vec<_>>()
            .join("\n")
            .as_str(),
    )
    .unwrap();
    assert_eq!(v["table"][1][1], 54);
}

#[test]
fn table_rejects_out_of_range() {
    let out = run(&["table", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["table", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counts_reports_formulas() {
    let out = run(&["counts", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("arcs: enumerated 11, expected 11 -> ok"), "{text}");
    assert!(text.contains("covers: enumerated 10, expected 10 -> ok"), "{text}");
    assert!(text.contains("intervals: enumerated 24, expected 24 -> ok"), "{text}");
    assert!(text.contains("gives 80 at n = 4"), "{text}");
}

#[test]
fn quotient_of_sylvester_ideal() {
    let dir = std::env::temp_dir();
    let ideal = write_file(&dir, "cc_cli_sylv3.json", &sylvester_ideal_json(3));
    let out = run(&["quotient", "--n", "3", "--ideal", &ideal]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("13 faces"), "{text}");
    assert!(text.contains("5 elements"), "{text}");
    assert!(text.contains("verified"), "{text}");
}

#[test]
fn quotient_accepts_builtin_ideal_names() {
    let out = run(&["quotient", "--n", "4", "--ideal", "sylvester"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    // The Tamari lattice on 4 letters has 14 elements and 68 intervals.
    assert!(text.contains("68 faces"), "{text}");
    assert!(text.contains("14 elements"), "{text}");
    assert!(text.contains("verified"), "{text}");
}

#[test]
fn quotient_rejects_non_ideal() {
    let dir = std::env::temp_dir();
    let bad = write_file(&dir, "cc_cli_bad_ideal.json", "[\"1-3|2|\"]");
    let out = run(&["quotient", "--n", "3", "--ideal", &bad]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kreweras_full_and_quotient() {
    let out = run(&["kreweras", "join", "∅", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1-2||\n2-3||\n");

    // Without an ideal: the meet diagram of 213 maps to its join diagram.
    let out = run(&["kreweras", "join", "1-3|2|", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1-2||\n");

    // Sylvester ideal: the class of the identity yields the empty diagram.
    let dir = std::env::temp_dir();
    let ideal = write_file(&dir, "cc_cli_sylv3b.json", &sylvester_ideal_json(3));
    let out = run(&[
        "kreweras", "join", "{1-2||,2-3||}", "--n", "3", "--ideal", &ideal,
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "∅\n");

    let out = run(&["kreweras", "join", "{1-2|| 2-3||}", "--n", "3", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_array().unwrap().is_empty());
}

#[test]
fn kreweras_rejects_crossing_input() {
    let out = run(&["kreweras", "join", "{1-2|| 1-3|2|}", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["kreweras", "join", "not-an-arc", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conjecture_reports_none_found() {
    let out = run(&["conjecture", "--n", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("none found"));
}

#[test]
fn render_is_deterministic() {
    let dir = std::env::temp_dir();
    let scab = write_file(
        &dir,
        "cc_cli_scab.json",
        "{\"join\": [], \"meet\": [\"1-3|2|\"]}",
    );
    let out1 = dir.join("cc_cli_out1.svg");
    let out2 = dir.join("cc_cli_out2.svg");
    let r1 = run(&["render", &scab, out1.to_str().unwrap()]);
    let r2 = run(&["render", &scab, out2.to_str().unwrap()]);
    assert!(r1.status.success() && r2.status.success());
    let (a, b) = (
        std::fs::read(&out1).unwrap(),
        std::fs::read(&out2).unwrap(),
    );
    assert_eq!(a, b, "two runs must be byte-identical");
    let svg = String::from_utf8(a).unwrap();
    assert_eq!(svg.matches("<path").count(), 1);
    // The single meet arc passes above point 2: a waypoint above the axis.
    assert!(svg.contains("70.0 30.0"), "{svg}");
}

#[test]
fn woip_scab_converters_round_trip() {
    let out = run(&["scab", "--interval", "2,1,3", "2,3,1"]);
    assert!(out.status.success());
    let scab_json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(scab_json["join"][0], "1-2||");
    assert_eq!(scab_json["meet"][0], "2-3||");

    let out = run(&["woip", "--interval", "2,1,3", "2,3,1"]);
    assert!(out.status.success());
    let woip_json = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&woip_json).unwrap();
    assert_eq!(v["dec"][0][0], 1);
    assert_eq!(v["dec"][0][1], 2);

    // Feed the WOIP back through the scab converter.
    let dir = std::env::temp_dir();
    let woip_file = write_file(&dir, "cc_cli_woip.json", &woip_json);
    let out = run(&["scab", "--woip", &woip_file]);
    assert!(out.status.success());
    let back: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(back, scab_json);

    // And the SCAB back through the woip converter.
    let scab_file = write_file(&dir, "cc_cli_scab_rt.json", &scab_json.to_string());
    let out = run(&["woip", "--scab", &scab_file, "--n", "3"]);
    assert!(out.status.success());
    let back: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(back, v);
}

#[test]
fn converters_reject_bad_intervals() {
    let out = run(&["scab", "--interval", "2,1,3", "1,3,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["woip", "--interval", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
}
