use std::path::PathBuf;
use std::process::{Command, Output};

use pentaparity::gf2poly::{factor_count, pent_poly, PentShape};
use pentaparity::search::{enumerate, NFilter, SParity};
use pentaparity::zpoly::{discriminant_mod8, lift, power_sums, SumModulus};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentaparity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pentaparity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn data_rows(text: &str) -> Vec<(usize, usize, String)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                f[2].to_string(),
            )
        })
        .collect()
}

#[test]
fn predict_certified_shape() {
    let out = ok(&["predict", "--n", "11", "--s", "2"]);
    let first = out.lines().next().unwrap();
    assert!(first.starts_with("reducible ("), "{out}");
    assert!(first.contains("n \u{2261} 3 mod 8"), "{out}");
    assert!(out.contains("parity: even"));
}

#[test]
fn predict_uncertified_and_trinomial() {
    let out = ok(&["predict", "--n", "7", "--s", "2"]);
    assert!(out.contains("no reducibility certificate"));
    assert!(out.contains("inconclusive for irreducibility"));
    assert!(ok(&["predict", "--n", "8", "--k", "3"]).contains("even factor count"));
    let out = run(&["predict", "--n", "7", "--k", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("reciprocal"));
}

#[test]
fn disc_both_oracles_agree() {
    let out = ok(&["disc", "--n", "7", "--s", "2", "--oracle", "both"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(&lines[..3], &["closed form: 1", "resultant: 1", "agree"]);
    let out = ok(&["disc", "--n", "11", "--s", "2", "--oracle", "closed"]);
    assert!(out.starts_with("closed form: 5\n"));
    assert_eq!(
        run(&["disc", "--poly", "7", "--oracle", "closed"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn test_small_polynomials() {
    assert_eq!(ok(&["test", "--poly", "7"]).trim(), "irreducible, 1 factor");
    let out = ok(&["test", "--poly", "0x5"]);
    assert!(out.starts_with("reducible, 2 factors"), "{out}");
    assert!(out.contains("not squarefree"));
}

#[test]
fn subcommands_match_the_library() {
    let shape = PentShape::new(25, 6).unwrap();
    let f = pent_poly(shape);

    let v: serde_json::Value =
        serde_json::from_str(&ok(&["test", "--n", "25", "--s", "6", "--format", "json"])).unwrap();
    let count = factor_count(&f).unwrap();
    assert_eq!(v["factors"], count.total);
    assert_eq!(v["irreducible"], count.is_irreducible());
    assert_eq!(v["poly"], f.to_hex());

    let v: serde_json::Value =
        serde_json::from_str(&ok(&["disc", "--n", "25", "--s", "6", "--format", "json"])).unwrap();
    assert_eq!(
        v["resultant"],
        discriminant_mod8(&lift(&f).unwrap()).unwrap()
    );

    let v: serde_json::Value = serde_json::from_str(&ok(&[
        "powersums",
        "--n",
        "25",
        "--s",
        "6",
        "--mod",
        "2^5",
        "--format",
        "json",
    ]))
    .unwrap();
    let table = power_sums(&lift(&f).unwrap(), 50, SumModulus::Pow2(5)).unwrap();
    let want: Vec<String> = table.values().iter().map(|x| x.to_string()).collect();
    assert_eq!(v["values"], serde_json::json!(want));
}

#[test]
fn usage_errors_exit_1_with_one_line() {
    for args in [
        &["predict", "--n", "11", "--s", "2", "--bogus"][..],
        &["test", "--poly", "xyz"],
        &["test", "--n", "9", "--s", "3"],
        &["powersums", "--poly", "7", "--mod", "3^2"],
        &["search", "--n-min", "5", "--n-max", "20"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert_eq!(
            stderr(&out).trim_end().lines().count(),
            1,
            "{args:?}: {}",
            stderr(&out)
        );
        assert!(stdout(&out).is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["search", "--help"]).status.code(), Some(0));
}

#[test]
fn search_human_output() {
    let out = ok(&["search", "--n-min", "7", "--n-max", "32"]);
    let table: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(table, ["7: 2", "17: 2 4", "23: 6", "25: 6", "31: 2 6 8"]);
    assert!(out.contains("# irreducible: 8"));
    assert_eq!(out, ok(&["search", "--n-min", "7", "--n-max", "32"]));
}

#[test]
fn search_csv_and_stats() {
    let path = scratch("survey.csv");
    let p = path.to_str().unwrap();
    ok(&[
        "search", "--n-max", "120", "--out", p, "--jobs", "1", "--audit", "0.5",
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,s,outcome,elapsed_us\n"));
    let rows = data_rows(&text);
    assert_eq!(
        rows.len(),
        enumerate(7, 120, SParity::Even, NFilter::OddOnly)
            .unwrap()
            .count()
    );

    let again = scratch("survey2.csv");
    ok(&[
        "search",
        "--n-max",
        "120",
        "--out",
        again.to_str().unwrap(),
        "--jobs",
        "3",
    ]);
    assert_eq!(data_rows(&std::fs::read_to_string(&again).unwrap()), rows);

    let v: serde_json::Value =
        serde_json::from_str(&ok(&["stats", p, "--format", "json"])).unwrap();
    assert_eq!(v["total_checked"], rows.len());
    let irr = rows.iter().filter(|r| r.2 == "irr").count();
    assert_eq!(v["total_irreducible"], irr);
    for key in ["n_mod8", "s_mod8", "distinct_n_with_irr", "frequency"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(ok(&["stats", p]).contains(&format!("total_irreducible: {irr}")));
}

#[test]
fn search_resume_completes_a_truncated_run() {
    let fresh = scratch("fresh.csv");
    ok(&[
        "search",
        "--n-max",
        "90",
        "--s-parity",
        "odd",
        "--out",
        fresh.to_str().unwrap(),
    ]);
    let full = std::fs::read_to_string(&fresh).unwrap();

    // Simulate an interrupted run: keep the rows up to n < 60 plus a partial column.
    let partial = scratch("partial.csv");
    let lines: Vec<&str> = full.lines().collect();
    let cut = lines.iter().position(|l| l.starts_with("60,")).unwrap() + 3;
    std::fs::write(&partial, lines[..cut].join("\n") + "\n").unwrap();

    ok(&[
        "search",
        "--n-max",
        "90",
        "--s-parity",
        "odd",
        "--out",
        partial.to_str().unwrap(),
        "--resume",
    ]);
    assert_eq!(
        data_rows(&std::fs::read_to_string(&partial).unwrap()),
        data_rows(&full)
    );
}

#[test]
fn search_jsonl_to_stdout() {
    let out = ok(&["search", "--n-max", "20", "--format", "json"]);
    let first: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(first["n"], 7);
    assert_eq!(first["outcome"], "irr");
    assert_eq!(
        out.lines().count(),
        enumerate(7, 20, SParity::Even, NFilter::OddOnly)
            .unwrap()
            .count()
    );
}

#[test]
fn verify_small_bounds() {
    let out = ok(&["verify", "--upto", "40", "--samples", "20"]);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("PASS")).count(),
        7,
        "{out}"
    );
    assert!(!out.contains("FAIL"));
}
