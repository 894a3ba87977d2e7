//! End-to-end tests of the `pda` binary: output shapes, exit codes,
//! determinism, and file round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pda"))
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

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write_temp(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("pda-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn construct_emits_canonical_text() {
    let out = pda(&["construct", "mn", "--k", "4", "--t", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "6 4\n* * 0 1\n* 0 * 2\n* 1 2 *\n0 * * 3\n1 * 3 *\n2 3 * *\n"
    );
}

#[test]
fn constructed_output_reverifies_cleanly() {
    for args in [
        vec!["construct", "mn", "--k", "5", "--t", "2"],
        vec!["construct", "grouped", "--k", "3", "--t", "1", "--m", "2"],
        vec![
            "construct",
            "variant",
            "--k",
            "5",
            "--t",
            "3",
            "--which",
            "e",
        ],
        vec!["construct", "p1", "--k", "4", "--t", "2"],
        vec!["construct", "p2", "--k", "5", "--t", "2"],
    ] {
        let out = pda(&args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        let path = write_temp("reverify.pda", &stdout(&out));
        let verify = pda(&["verify", &path]);
        assert!(verify.status.success(), "{args:?}: {}", stderr(&verify));
        assert!(stdout(&verify).starts_with("ok: "));
    }
}

#[test]
fn verify_reports_parameters() {
    let out = pda(&["verify", &fixture("pda_4_6_3_4.pda")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "ok: (K=4,F=6,Z=3,S=4) g=3\n");
}

#[test]
fn verify_rejects_broken_grid_with_exit_1() {
    let path = write_temp("broken.pda", "2 2\n0 0\n* *\n");
    let out = pda(&["verify", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("violation: symbol 0 repeats in row 0"));
}

#[test]
fn verify_rejects_unparseable_file_with_exit_1() {
    let path = write_temp("bad-token.pda", "1 2\n* x\n");
    let out = pda(&["verify", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bad token"));
}

#[test]
fn usage_errors_exit_2() {
    let out = pda(&["bounds", "six", "8", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = pda(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_report_shows_both_bounds() {
    let out = pda(&["bounds", "6", "8", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("72/19"));
    assert!(text.contains("ceiling 4"));
    assert!(text.contains("S >= 5"));
    assert!(text.contains("terms 3 + 1 + 1"));

    let csv = pda(&["bounds", "4", "6", "3", "--csv"]);
    let text = stdout(&csv);
    assert!(text.lines().nth(1).unwrap().starts_with("4,6,3,12,4,4,4,"));
    assert!(text.contains(",4 (base construction)") || text.ends_with(",4\n"));
}

#[test]
fn oracle_respects_guard_and_finds_minimum() {
    let out = pda(&["oracle", "4", "6", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("is 4"));

    // 48 cells exceed the default guard of 24.
    let out = pda(&["oracle", "6", "8", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("search space too large"));

    let out = pda(&["oracle", "6", "8", "5", "--limit", "48"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("is 5"));

    let out = pda(&["oracle", "4", "6", "3", "--smax", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no valid array with S <= 3"));
}

#[test]
fn simulate_single_demand_lists_slots() {
    let out = pda(&[
        "simulate",
        "--pda",
        &fixture("pda_4_6_3_4.pda"),
        "--files",
        "4",
        "--demand",
        "0,1,2,3",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("slot   0: W[0,3] ^ W[1,1] ^ W[2,0]"));
    assert!(text.contains("slot   3: W[1,5] ^ W[2,4] ^ W[3,3]"));
    assert!(text.contains("all 4 users decoded"));
}

#[test]
fn simulate_sweep_and_determinism() {
    let args = [
        "simulate",
        "--pda",
        &fixture("pda_6_8_5_5.pda"),
        "--files",
        "6",
        "--sweep",
        "sampled:40",
        "--seed",
        "11",
    ];
    let a = pda(&args);
    let b = pda(&args);
    assert!(a.status.success());
    assert_eq!(
        stdout(&a),
        stdout(&b),
        "same argv and seed must give identical output"
    );
    assert!(stdout(&a).contains("swept 40 demand vectors: 0 failures"));
}

#[test]
fn simulate_exhaustive_sweep() {
    let out = pda(&[
        "simulate",
        "--pda",
        &fixture("pda_4_6_3_4.pda"),
        "--files",
        "3",
        "--sweep",
        "exhaustive",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("swept 81 demand vectors: 0 failures"));
}

#[test]
fn simulate_invalid_array_exits_1() {
    let path = write_temp("invalid-sim.pda", "2 2\n0 0\n* *\n");
    let out = pda(&[
        "simulate", "--pda", &path, "--files", "2", "--demand", "0,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("violation"));
}

#[test]
fn compare_pairs() {
    let out = pda(&["compare", "p1-mn", "--k", "5", "--t", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("F ratio  1/12"));
    assert!(text.contains("R ratio  4/3"));

    let out = pda(&["compare", "p1-yan", "--k", "5", "--t", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no matching parameters"));

    let out = pda(&["compare", "p2-grouped", "--k", "4", "--t", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("F ratio  2/3"));
}

#[test]
fn compare_tables_render_in_all_formats() {
    for name in ["tk3", "p2t2", "yan", "shang"] {
        for format in ["text", "csv", "md"] {
            let out = pda(&["compare-table", name, "--format", format]);
            assert!(out.status.success(), "{name} {format}");
            assert!(!stdout(&out).is_empty());
        }
    }
    let text = stdout(&pda(&["compare-table", "yan"]));
    // 9 data rows plus header.
    assert_eq!(text.lines().filter(|l| !l.trim().is_empty()).count(), 10);
}
