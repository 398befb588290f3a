//! End-to-end CLI checks: exit codes, config-file layering, output routing,
//! determinism, and parse-back of both emitters.

use std::io::Write;
use std::process::{Command, Output};

use ncdirac::report::{parse_levels_csv, parse_levels_json};

fn ncdirac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncdirac"))
        .args(args)
        .output()
        .expect("spawning the CLI")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn levels_succeeds_with_clean_streams() {
    let out = ncdirac(&["levels"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr_of(&out).is_empty(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.starts_with("# ncdirac level diagram"));
    let diagram = parse_levels_csv(&text).unwrap();
    assert_eq!(diagram.records.len(), 8);
}

#[test]
fn all_subcommands_emit_both_formats() {
    for sub in ["levels", "spacings", "matrices"] {
        for format in ["csv", "json"] {
            let out = ncdirac(&[sub, "--format", format, "--theta-m2", "1e-36"]);
            assert_eq!(out.status.code(), Some(0), "{sub} {format}");
            let text = stdout_of(&out);
            if format == "json" {
                assert!(text.trim_start().starts_with('{'), "{sub}: {text}");
            } else {
                assert!(text.starts_with("# ncdirac"), "{sub}: {text}");
            }
        }
    }
}

#[test]
fn config_errors_exit_2_with_stderr_only() {
    // Bad level label.
    let out = ncdirac(&["levels", "--level", "9Q1/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_of(&out).is_empty());
    let err = stderr_of(&out);
    assert!(err.starts_with("error:"), "stderr: {err}");
    assert!(err.contains("9Q1/2"));

    // Alpha out of range.
    let out = ncdirac(&["levels", "--alpha", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("alpha"));

    // Inconsistent (alpha, theta, thetabar) triple.
    let out = ncdirac(&[
        "levels",
        "--alpha",
        "0.9",
        "--theta-m2",
        "1e-36",
        "--thetabar",
        "1e-36",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("inconsistently"));
}

#[test]
fn domain_errors_exit_3() {
    // The θ-sector radial integral of an nP1/2 level outside the validated
    // set diverges at the origin; the failure names the level.
    let out = ncdirac(&["levels", "--level", "3P1/2", "--theta-m2", "1e-36"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout_of(&out).is_empty());
    assert!(stderr_of(&out).contains("3P1/2"));

    // No bound spectrum for Ze² ≥ 1.
    let out = ncdirac(&["levels", "--Z", "200"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_layers_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# sample run").unwrap();
    writeln!(f, "Z = 2").unwrap();
    writeln!(f, "levels = 2P3/2").unwrap();
    writeln!(f, "theta = 1e-36").unwrap();
    drop(f);

    let conf = path.to_str().unwrap();
    let from_file = ncdirac(&["levels", "--config", conf]);
    assert_eq!(from_file.status.code(), Some(0));
    let text = stdout_of(&from_file);
    assert!(text.contains("# Z = 2"));
    assert!(text.contains("2P3/2"));
    assert!(!text.contains("2S1/2"));

    // A flag overrides the file value.
    let overridden = ncdirac(&["levels", "--config", conf, "--Z", "3"]);
    assert_eq!(overridden.status.code(), Some(0));
    assert!(stdout_of(&overridden).contains("# Z = 3"));

    // Unknown keys are rejected with the line number.
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "Z = 1\nnonsense = 5\n").unwrap();
    let out = ncdirac(&["levels", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(
        err.contains("line 2") && err.contains("nonsense"),
        "stderr: {err}"
    );

    // A missing config file is an I/O config error, naming the path.
    let out = ncdirac(&["levels", "--config", "/nonexistent/run.conf"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("/nonexistent/run.conf"));
}

#[test]
fn out_flag_writes_the_exact_stdout_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let args = ["levels", "--theta-m2", "1e-36"];

    let to_stdout = ncdirac(&args);
    assert_eq!(to_stdout.status.code(), Some(0));

    let mut with_out: Vec<&str> = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let routed = ncdirac(&with_out);
    assert_eq!(routed.status.code(), Some(0));
    assert!(
        stdout_of(&routed).is_empty(),
        "routed run must not print the table"
    );

    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout_of(&to_stdout));

    // Unwritable output path: config-class failure naming the path.
    let out = ncdirac(&["levels", "--out", "/nonexistent/dir/t.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("/nonexistent/dir/t.csv"));
}

#[test]
fn reruns_are_byte_identical() {
    for format in ["csv", "json"] {
        let args = [
            "levels",
            "--theta-m2",
            "2.5e-37",
            "--thetabar",
            "1.1e-37",
            "--format",
            format,
        ];
        let first = ncdirac(&args);
        let second = ncdirac(&args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "{format} rerun differs");
    }
}

#[test]
fn both_emitters_parse_back_to_the_same_diagram() {
    let args = ["levels", "--theta-m2", "1e-36", "--thetabar", "1e-38"];
    let csv = stdout_of(&ncdirac(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json = stdout_of(&ncdirac(&json_args));

    let from_csv = parse_levels_csv(&csv).unwrap();
    let from_json = parse_levels_json(&json).unwrap();

    // JSON carries exact floats; CSV rounds to 12 significant digits.
    assert_eq!(from_csv.records.len(), from_json.records.len());
    for (a, b) in from_csv.records.iter().zip(&from_json.records) {
        assert_eq!(a.level, b.level);
        assert_eq!(a.sublevel, b.sublevel);
        assert!((a.total_ev - b.total_ev).abs() <= 1e-11 * b.total_ev.abs());
        assert!((a.e_theta_ev - b.e_theta_ev).abs() <= 1e-11 * b.e_theta_ev.abs().max(1e-300));
    }
    assert_eq!(from_csv.metadata.z, from_json.metadata.z);
    assert_eq!(from_csv.metadata.alpha_mode, from_json.metadata.alpha_mode);
}

#[test]
fn spacings_table_carries_coefficients() {
    let out = ncdirac(&["spacings", "--theta-m2", "1e-36"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("transition,A_eV_per_m2,B_eV_per_unit,value_eV"));
    assert_eq!(
        text.lines()
            .filter(|l| !l.starts_with('#') && !l.is_empty() && !l.starts_with("transition"))
            .count(),
        5
    );
}

#[test]
fn help_lists_the_subcommands() {
    let out = ncdirac(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    for sub in ["levels", "spacings", "matrices"] {
        assert!(text.contains(sub), "--help missing {sub}");
    }
}
