use std::path::PathBuf;
use std::process::Command as Process;

use gcliff_cli::{run, run_report, CliError, Command, Format, JobSpec, Mode, Report, Source};

fn fixture(name: &str) -> Source {
    Source::File(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name))
}

fn job(command: Command, input: Option<Source>) -> JobSpec {
    JobSpec { command, input, format: Format::Json, degree: None, mode: None }
}

fn report(command: Command, name: &str) -> Report {
    run_report(&job(command, Some(fixture(name)))).unwrap()
}

fn round_trips(r: &Report) {
    let text = serde_json::to_string(r).unwrap();
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, r);
}

#[test]
fn classify_matches_the_shipped_table() {
    let out = run(&job(Command::Classify, None));
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r: Report = serde_json::from_str(&out.stdout).unwrap();
    let Report::Classify { records, census } = &r else { panic!("wrong report") };
    assert_eq!(records.len(), 10);
    assert_eq!((census.all_one, census.all_two), (9, 9));
    round_trips(&r);
}

#[test]
fn hilbert_prefix_of_the_skew_ring() {
    let out = run(&JobSpec { format: Format::Table, ..job(Command::Hilbert, Some(fixture("skew.json"))) });
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("1 3 6 10 15 21 28"), "{}", out.stdout);
    let quotient = report(Command::Hilbert, "skew_pair_quotient.json");
    assert_eq!(quotient, Report::Hilbert { coeffs: vec![1, 3, 4, 4, 4, 4, 4] });
}

#[test]
fn center_of_the_conic_line_ambient() {
    let r = report(Command::Center, "sprime.json");
    let Report::Center { degree2, c, det, .. } = &r else { panic!("wrong report") };
    assert_eq!(degree2.len(), 3);
    // c · det = 9(y1³ − 4y1y2y3)
    assert_eq!(c.0, gcliff::scalar::frac(-9, 2));
    assert_eq!(det, "-2*y1^3 + 8*y1*y2*y3");
    round_trips(&r);
}

#[test]
fn every_command_emits_round_trippable_json() {
    let cases = [
        (Command::Dual, "skew_smooth_quotient.json"),
        (Command::Normalize, "nodal.json"),
        (Command::Hilbert, "elliptic.json"),
        (Command::Regular, "skew_pair_quotient.json"),
        (Command::Pointvariety, "elliptic.json"),
        (Command::Charvariety, "nodal.json"),
        (Command::Quotient, "nodal_quotient.json"),
        (Command::Kf, "skew_smooth_quotient.json"),
        (Command::Segre, "nodal_quotient.json"),
    ];
    for (cmd, file) in cases {
        let r = report(cmd, file);
        round_trips(&r);
        let table = run(&JobSpec { format: Format::Table, ..job(cmd, Some(fixture(file))) });
        assert_eq!(table.code, 0, "{cmd:?}: {}", table.stderr);
    }
}

#[test]
fn command_results() {
    let Report::Dual { relation_count, presentation } = report(Command::Dual, "skew_smooth_quotient.json") else { panic!() };
    assert_eq!(relation_count, 5);
    assert!(presentation.commutative);
    let Report::Regular(v) = report(Command::Regular, "skew_pair_quotient.json") else { panic!() };
    assert!(v.regular);
    let Report::Kf(k) = report(Command::Kf, "skew_smooth_quotient.json") else { panic!() };
    assert_eq!((k.total, k.count), (8, 4));
    let Report::Segre { symbol, dual_locus } = report(Command::Segre, "nodal_quotient.json") else { panic!() };
    assert_eq!((symbol.as_str(), dual_locus.as_str()), ("[3]", "2 points"));
    let Report::Quotient { geometry, fiber } = report(Command::Quotient, "nodal_quotient.json") else { panic!() };
    assert_eq!(geometry.swaps(), Some(1));
    assert!(fiber.unwrap().strictly_two_to_one);
    let Report::Charvariety { ideals } = report(Command::Charvariety, "nodal.json") else { panic!() };
    assert_eq!(ideals.len(), 3);
    assert_eq!(ideals[2].generators.len(), 1);
    let Report::Pointvariety { samples, .. } = report(Command::Pointvariety, "elliptic.json") else { panic!() };
    assert!(samples.iter().any(|s| !s.p.is_rational()));
    let rational = run_report(&JobSpec { mode: Some(Mode::Rational), ..job(Command::Pointvariety, Some(fixture("elliptic.json"))) });
    let Ok(Report::Pointvariety { samples, omitted, .. }) = rational else { panic!() };
    assert!(samples.iter().all(|s| s.p.is_rational()) && omitted > 0);
}

#[test]
fn exit_codes() {
    let bad_json = run(&job(Command::Hilbert, Some(Source::Inline("{\"F\": [".into()))));
    assert_eq!(bad_json.code, 2);
    assert!(bad_json.stderr.contains("line 1"));
    let unknown = run(&job(Command::Hilbert, Some(Source::Inline("{\"G\": 1}".into()))));
    assert_eq!(unknown.code, 2);
    let missing = run(&job(Command::Hilbert, None));
    assert_eq!(missing.code, 2);
    let asym = r#"{"F": [[["2","1","0"],["0","0","0"],["0","0","0"]]]}"#;
    let out = run(&job(Command::Hilbert, Some(Source::Inline(asym.into()))));
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("at F"), "{}", out.stderr);
    let dependent = r#"{"F": [[["2","0"],["0","0"]], [["4","0"],["0","0"]]]}"#;
    let out = run(&job(Command::Normalize, Some(Source::Inline(dependent.into()))));
    assert_eq!(out.code, 3, "{}", out.stderr);
    assert!(out.stderr.contains(&gcliff::Error::LinearlyDependent.to_string()));
    assert_eq!(CliError::Golden(vec!["row 1".into()]).exit_code(), 4);
}

#[test]
fn binary_dispatch() {
    let bin = env!("CARGO_BIN_EXE_gcliff");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/skew.json");
    let out = Process::new(bin).args(["hilbert", "--input"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("1 3 6 10 15 21 28"));
    let out = Process::new(bin).args(["classify", "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Process::new(bin).args(["hilbert", "--json", "[]"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let first = Process::new(bin).args(["kf", "--format", "json", "--input"]).arg(path.with_file_name("skew_smooth_quotient.json")).output().unwrap();
    let second = Process::new(bin).args(["kf", "--format", "json", "--input"]).arg(path.with_file_name("skew_smooth_quotient.json")).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
}
