use std::path::PathBuf;
use std::process::{Command, Output};

use selfsmall::verify::{Status, VerificationReport, Verdict};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_selfsmall"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_tower_matches_golden_json() {
    let o = run(&["verify", "--ideal", "2", "--depth", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(data("golden/z2_depth3.json")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn failing_tower_matches_golden_json() {
    let o = run(&["verify", "--ideal", "6", "--depth", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let golden = std::fs::read_to_string(data("golden/z6_depth3.json")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn json_report_round_trips() {
    let o = run(&["verify", "--ideal", "3", "--depth", "2", "--format", "json"]);
    let report: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
    assert_eq!(report.tower.depth, 2);
    assert_eq!(report.entries().len(), 15);
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, stdout(&o));
}

#[test]
fn text_report_lists_every_entry() {
    let o = run(&["verify", "--ideal", "6", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("condition_4: fail"), "{text}");
    assert!(text.contains("weak_epi: skipped"), "{text}");
    assert!(text.trim_end().ends_with("verdict: fail"), "{text}");
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tower.conf");
    std::fs::write(&path, "# F_2[x] tower\nring = poly\nchar = 2\nideal = x\ndepth = 2\nformat = json\n").unwrap();
    let o = run(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.tower.ideal, "x");
    let o = run(&["verify", "--config", path.to_str().unwrap(), "--ideal", "[1,1]", "--depth", "3"]);
    let report: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((report.tower.ideal.as_str(), report.tower.depth), ("x+1", 3));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["verify", "--depth", "0"][..],
        &["verify", "--ideal", "1"],
        &["verify", "--ideal", "0"],
        &["verify", "--ring", "poly"],
        &["verify", "--ring", "poly", "--char", "4"],
        &["verify", "--lemma", "nope"],
        &["verify", "--depth", "many"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "colour = red\n").unwrap();
    let o = run(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn lemma_filter_skips_the_rest() {
    let o = run(&["verify", "--ideal", "5", "--depth", "3", "--lemma", "homzz", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.entry("homzz").unwrap().status, Status::Pass);
    assert_eq!(report.entry("jjz").unwrap().status, Status::Skipped);
}

#[test]
fn mittag_leffler_subcommand() {
    let o = run(&["mittag-leffler", data("fixtures/free_doubling.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "{\"verdict\":\"not-stabilized-within-horizon\",\"level\":1}\n");
    let o = run(&["mittag-leffler", data("fixtures/z4_onto_z2.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holds-by-surjectivity"));
    let o = run(&["mittag-leffler", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn normalize_subcommand() {
    let o = run(&["normalize", data("fixtures/z12.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("invariant factors: [2, 6]\nfree rank: 0\n"));
}
