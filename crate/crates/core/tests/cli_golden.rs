//! Golden reports and the exit-code contract. Run with `UPDATE_GOLDEN=1`
//! to rewrite the expected files after an intended output change.

use std::fs;
use std::path::PathBuf;

use contact_surgery::cli::{self, Outcome};

fn run(args: &[&str]) -> Outcome {
    cli::run(std::iter::once("contact-surgery").chain(args.iter().copied()))
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?} failed: {}", out.stderr);
    assert!(out.stderr.is_empty());
    let path = PathBuf::from("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &out.stdout).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(
        out.stdout,
        want,
        "report for {args:?} differs from {}",
        path.display()
    );
}

#[test]
fn figure1_invariants_text() {
    golden("figure1_invariants.txt", &["invariants", "figure1.json"]);
}

#[test]
fn figure1_invariants_json() {
    golden(
        "figure1_invariants.json",
        &[
            "--format",
            "json",
            "invariants",
            "figure1.json",
            "--dual",
            "L",
        ],
    );
}

#[test]
fn chain_invariants() {
    golden(
        "chain_invariants.json",
        &[
            "invariants",
            "--chain",
            "--tb",
            "-2",
            "--rot",
            "1",
            "--n",
            "3",
            "--format",
            "json",
        ],
    );
}

#[test]
fn figure1_classify() {
    golden(
        "figure1_classify.txt",
        &[
            "classify",
            "figure1.json",
            "--assume-plus-one-tight",
            "L",
            "--n",
            "2",
        ],
    );
    golden(
        "figure1_classify.json",
        &[
            "--format",
            "json",
            "classify",
            "figure1.json",
            "--assume-plus-one-tight",
            "L",
            "--n",
            "2",
        ],
    );
}

#[test]
fn unit_fraction_classify_and_invariants() {
    golden(
        "unit_fraction_classify.txt",
        &["classify", "tests/data/unit_fraction.json"],
    );
    golden(
        "unit_fraction_invariants.txt",
        &["invariants", "tests/data/unit_fraction.json"],
    );
}

#[test]
fn expansions() {
    golden(
        "five_halves_expand.json",
        &["--format", "json", "expand", "tests/data/five_halves.json"],
    );
    golden(
        "negative_expand.txt",
        &[
            "expand",
            "tests/data/negative.json",
            "--zigzag-policy",
            "explicit:+,-",
        ],
    );
}

#[test]
fn bennequin_reports() {
    golden(
        "bennequin_chain.txt",
        &[
            "bennequin",
            "--tb",
            "-2",
            "--rot",
            "2",
            "--chi",
            "-1",
            "--n",
            "3",
        ],
    );
    golden(
        "bennequin_figure1.json",
        &["--format", "json", "bennequin", "figure1.json"],
    );
}

#[test]
fn selftest_report() {
    golden("selftest.txt", &["selftest"]);
    let body = |o: Outcome| o.stdout.split_once('\n').unwrap().1.to_string();
    assert_eq!(
        body(run(&["selftest", "--sequential"])),
        body(run(&["selftest"]))
    );
}

#[test]
fn expanded_output_parses_back_as_a_diagram() {
    let out = run(&["--format", "json", "expand", "tests/data/negative.json"]);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let text = report["results"].to_string();
    let d = contact_surgery::SurgeryDiagram::from_json(&text).unwrap();
    assert!(d.components().iter().all(|c| c
        .contact_coefficient
        .as_ref()
        .is_none_or(|r| *r == 1 || *r == -1)));
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["invariants", "s1xs2.json", "--dual", "U"], 3),
        (&["bennequin", "s1xs2.json"], 3),
        (
            &[
                "invariants",
                "--chain",
                "--tb",
                "-1",
                "--rot",
                "0",
                "--n",
                "1",
            ],
            3,
        ),
        (&["invariants", "tests/data/asymmetric.json"], 2),
        (&["expand", "tests/data/float_coefficient.json"], 2),
        (&["invariants", "tests/data/missing.json"], 2),
        (&["invariants", "figure1.json", "--dual", "U"], 2),
        (&["invariants", "figure1.json", "--dual", "nope"], 2),
        (
            &[
                "classify",
                "figure1.json",
                "--assume-plus-one-tight",
                "L",
                "--p",
                "4",
                "--q",
                "2",
            ],
            2,
        ),
        (&["classify", "figure1.json", "--n", "2"], 2),
        (&["invariants", "--chain", "--tb", "-2"], 2),
        (&["frobnicate"], 2),
        (
            &[
                "expand",
                "tests/data/negative.json",
                "--zigzag-policy",
                "explicit:+",
            ],
            2,
        ),
        (
            &[
                "classify",
                "figure1.json",
                "--assume-plus-one-tight",
                "L",
                "--p",
                "5",
                "--q",
                "2",
            ],
            0,
        ),
        (&["invariants", "tests/data/negative.json"], 0),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(
            out.code, *code,
            "{args:?}: stdout {} stderr {}",
            out.stdout, out.stderr
        );
        if *code != 0 {
            assert!(out.stdout.is_empty(), "{args:?} wrote a report");
            assert!(!out.stderr.is_empty(), "{args:?} gave no diagnostic");
        }
    }
    assert!(run(&["invariants", "s1xs2.json", "--dual", "U"])
        .stderr
        .contains("not rationally nullhomologous"));
}

#[test]
fn batch_directory() {
    let out = run(&["--format", "json", "invariants", "tests/data/batch"]);
    assert_eq!(out.code, 3, "{}", out.stderr);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let items = report["results"].as_array().unwrap();
    let files: Vec<_> = items.iter().map(|i| i["file"].as_str().unwrap()).collect();
    assert_eq!(
        files,
        [
            "asymmetric.json",
            "negative.json",
            "s1xs2.json",
            "unit_fraction.json"
        ]
    );
    let codes: Vec<_> = items
        .iter()
        .map(|i| i["exit_code"].as_i64().unwrap())
        .collect();
    assert_eq!(codes, [2, 0, 3, 0]);
    assert_eq!(
        out,
        run(&["--format", "json", "invariants", "tests/data/batch"])
    );
}
