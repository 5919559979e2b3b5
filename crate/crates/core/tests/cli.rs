use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use chipfire::cli::run;
use chipfire::Multigraph;
use tempfile::TempDir;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("chipfire").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn family_file(dir: &TempDir, name: &str, params: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.txt"));
    let (code, _, err) = invoke(&["family", "--name", name, "--params", params, "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eff_finds_effective_representative() {
    let dir = TempDir::new().unwrap();
    let c3 = family_file(&dir, "cycle", "n=3");
    let (code, out, _) = invoke(&["eff", "--graph", s(&c3), "--chips", "-1 2 0"]);
    assert_eq!((code, out.as_str()), (0, "0 0 1\n"));
    let (code, out, _) = invoke(&["eff", "--graph", s(&c3), "--chips", "-1 0 0"]);
    assert_eq!((code, out.as_str()), (0, "NONE\n"));
    let (_, out, _) = invoke(&["eff", "--graph", s(&c3), "--chips", "-1 2 0", "--trace"]);
    assert!(out.lines().any(|l| l.starts_with("passes,")));
}

#[test]
fn gon_on_descending_banana() {
    let dir = TempDir::new().unwrap();
    let g = family_file(&dir, "descbanana", "a=4,b=5");
    for jobs in ["1", "3"] {
        let (code, out, _) = invoke(&["gon", "--graph", s(&g), "--r", "2", "--jobs", jobs]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("gon_2 = 6"));
        assert!(lines.next().unwrap().starts_with("witness = "));
    }
    let (_, a, _) = invoke(&["gon", "--graph", s(&g), "--r", "1"]);
    let (_, b, _) = invoke(&["gon", "--graph", s(&g), "--r", "1", "--jobs", "4"]);
    assert_eq!(a, b);
    let (_, c, _) = invoke(&["gon", "--graph", s(&g), "--r", "1", "--reduced-only"]);
    assert_eq!(a.lines().next(), c.lines().next());
}

#[test]
fn expected_prints_table_row() {
    let (code, out, _) = invoke(&["expected", "--genus", "5", "--gon1", "4", "--upto", "6"]);
    assert_eq!((code, out.as_str()), (0, "4 6 7 8 10 11\n"));
    let (code, _, err) = invoke(&["expected", "--genus", "3", "--gon1", "4", "--upto", "4"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = invoke(&["expected", "--genus", "6", "--gon1", "3", "--upto", "7"]);
    assert_eq!(code, 1);
    let (code, out, _) = invoke(&["expected", "--genus", "6", "--gon1", "3", "--gon2", "5", "--upto", "7"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("3 5 "));
}

#[test]
fn family_output_round_trips_through_every_reader() {
    let dir = TempDir::new().unwrap();
    let g = family_file(&dir, "chain", "mults=3:2:2");
    let text = fs::read_to_string(&g).unwrap();
    let parsed = Multigraph::parse(&text).unwrap();
    assert_eq!(parsed.to_text(), text);
    let (_, printed, _) = invoke(&["family", "--name", "chain", "--params", "mults=3:2:2"]);
    assert_eq!(printed, text);

    let chips = "1 0 0 1";
    let div = dir.path().join("d.txt");
    fs::write(&div, chips).unwrap();
    let (c1, r1, _) = invoke(&["rank", "--graph", s(&g), "--chips", chips]);
    let (c2, r2, _) = invoke(&["rank", "--graph", s(&g), "--divisor", s(&div)]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(r1, r2);
    let (code, out, _) = invoke(&["reduce", "--graph", s(&g), "--chips", "-2 1 3 0", "--q", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim().split(' ').count(), 4);
    let (code, out, _) = invoke(&["sequence", "--graph", s(&g), "--upto", "5"]);
    assert_eq!((code, out.as_str()), (0, "3 5 6 8 9\n".replace(' ', "\n").as_str()));
    let (code, out, err) = invoke(&["verify", "--graph", s(&g)]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("genus = 4"));
}

#[test]
fn reduce_trace_rows() {
    let dir = TempDir::new().unwrap();
    let g = family_file(&dir, "complete", "n=4");
    let (code, out, _) = invoke(&["reduce", "--graph", s(&g), "--chips", "-3 1 1 2", "--q", "0", "--trace"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[1].starts_with("passes,"));
    assert!(lines[2].starts_with("firings,"));
    assert!(lines[3..].iter().all(|l| l.starts_with("beta,")));
}

#[test]
fn usage_and_domain_errors() {
    let (code, _, err) = invoke(&["gon", "--bogus"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    let (code, _, _) = invoke(&["frobnicate"]);
    assert_eq!(code, 1);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("bench"));
    let dir = TempDir::new().unwrap();
    let c3 = family_file(&dir, "cycle", "n=3");
    let (code, _, err) = invoke(&["rank", "--graph", s(&c3), "--chips", "1 2"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = invoke(&["rank", "--graph", s(&dir.path().join("missing.txt")), "--chips", "1"]);
    assert_eq!(code, 1);
    let (code, _, _) = invoke(&["family", "--name", "cycle", "--params", "n=1"]);
    assert_eq!(code, 1);
}

#[test]
fn bench_writes_csv_files() {
    let dir = TempDir::new().unwrap();
    let rows = dir.path().join("rows.csv");
    let summary = dir.path().join("summary.csv");
    let (code, out, err) = invoke(&[
        "bench", "--n-min", "5", "--n-max", "6", "--graphs-per-n", "2", "--p", "0.5", "--seed", "3", "--r", "1",
        "--reps", "1", "--out", s(&rows), "--summary", s(&summary),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("rows = 12\n"));
    assert_eq!(fs::read_to_string(&rows).unwrap().lines().count(), 13);
    assert_eq!(fs::read_to_string(&summary).unwrap().lines().count(), 7);
    assert!(summary.with_extension("dat").exists());
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_chipfire");
    let out = Command::new(bin).args(["expected", "--genus", "2", "--gon1", "2", "--upto", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2 4 5\n");
    let out = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}
