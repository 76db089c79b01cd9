use std::path::PathBuf;
use std::process::{Command, Output};

use frobenius_core::io::complex_from_json;
use frobenius_core::{
    betti_vector, BettiVector, Element, FieldChoice, Monoid, MonoidDescriptor, VerificationEntry, VerificationReport,
};
use tempfile::TempDir;

const GM: &str =
    r#"{"type":"glued","left":{"type":"free","rank":1},"right":{"type":"free","rank":1},"rho1":[3],"rho2":[2]}"#;
const M23: &str = r#"{"type":"submonoid","ambient_rank":1,"generators":[[2],[3]]}"#;
const FREE1: &str = r#"{"type":"free","rank":1}"#;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        for (name, text) in [("gm.json", GM), ("m23.json", M23), ("free1.json", FREE1)] {
            std::fs::write(dir.path().join(name), text).unwrap();
        }
        Fixture { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_frobenius"))
            .args(args)
            .current_dir(self.dir.path())
            .output()
            .unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn betti_of_six_in_two_three() {
    let f = Fixture::new();
    let out = f.run(&["betti", "--monoid", "m23.json", "--element", "[6]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "element,i,beta_i\n6,2,1\n");
    let bare = f.run(&["betti", "--monoid", "m23.json", "--element", "6"]);
    assert_eq!(stdout(&bare), stdout(&out));
}

#[test]
fn poincare_of_the_naturals() {
    let f = Fixture::new();
    let out = f.run(&["poincare", "--monoid", "free1.json", "--bound", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "degree,element,i,beta_i\n0,0,0,1\n1,1,1,1\n");
}

#[test]
fn gluing_check_passes_on_gm() {
    let f = Fixture::new();
    let out = f.run(&["verify-gluing", "--monoid", "gm.json", "--bound", "40"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("total 40  matched 40  mismatched 0  errors 0"));
}

#[test]
fn glued_elements_accept_raw_pairs() {
    let f = Fixture::new();
    let canonical = f.run(&[
        "betti",
        "--monoid",
        "gm.json",
        "--element",
        r#"{"n":1,"hat1":[0],"hat2":[0]}"#,
    ]);
    let raw = f.run(&["betti", "--monoid", "gm.json", "--element", "[[3],[0]]"]);
    assert_eq!(canonical.status.code(), Some(0));
    assert_eq!(stdout(&canonical), stdout(&raw));
    assert!(stdout(&raw).ends_with(",2,1\n"));
}

#[test]
fn parse_errors_exit_two_and_name_the_path() {
    let f = Fixture::new();
    f.write(
        "bad.json",
        r#"{"type":"submonoid","ambient_rank":1,"generators":[[2],["x"]]}"#,
    );
    let out = f.run(&["show", "--monoid", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("$.generators[1][0]"), "{}", stderr(&out));
}

#[test]
fn missing_arguments_exit_two() {
    let f = Fixture::new();
    assert_eq!(f.run(&["betti", "--monoid", "m23.json"]).status.code(), Some(2));
    assert_eq!(f.run(&["poincare", "--monoid", "m23.json"]).status.code(), Some(2));
    assert_eq!(
        f.run(&["betti", "--monoid", "m23.json", "--element", "[1]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        f.run(&["betti", "--monoid", "nowhere.json", "--element", "[2]"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn resource_caps_exit_two() {
    let f = Fixture::new();
    let out = f.run(&[
        "export-complex",
        "--monoid",
        "m23.json",
        "--element",
        "[30]",
        "--simplex-cap",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mismatches_take_precedence_in_exit_codes() {
    let m = Monoid::numerical(&[2, 3]).unwrap();
    let ok = VerificationEntry::compare(Element::vector([2]), 2, BettiVector::delta(1), BettiVector::delta(1));
    let bad = VerificationEntry::compare(Element::vector([6]), 6, BettiVector::delta(2), BettiVector::delta(3));
    let err = VerificationEntry::failed(Element::vector([4]), 4, "too large".into());
    let report =
        |entries: Vec<VerificationEntry>| VerificationReport::new("test", &m, 6, FieldChoice::Rationals, entries);
    assert_eq!(report(vec![ok.clone()]).exit_code(), 0);
    assert_eq!(report(vec![ok.clone(), err.clone()]).exit_code(), 2);
    let mixed = report(vec![ok, err, bad]);
    assert_eq!(mixed.exit_code(), 1);
    let detail = mixed.first_mismatch.unwrap();
    assert_eq!(detail.interval.elements, vec!["2", "3", "4"]);
    assert_eq!(detail.interval.covers, vec![(0, 2)]);
}

#[test]
fn output_is_identical_across_worker_counts() {
    let f = Fixture::new();
    let mut outputs = Vec::new();
    for jobs in ["1", "2", "4"] {
        let out = f.run(&[
            "verify-gluing",
            "--monoid",
            "gm.json",
            "--bound",
            "24",
            "--format",
            "json",
            "--jobs",
            jobs,
        ]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(out.stdout);
        let table = f.run(&[
            "poincare", "--monoid", "m23.json", "--bound", "24", "--jobs", jobs, "--format", "json",
        ]);
        outputs.push(table.stdout);
    }
    assert_eq!(outputs[0], outputs[2]);
    assert_eq!(outputs[0], outputs[4]);
    assert_eq!(outputs[1], outputs[3]);
    assert_eq!(outputs[1], outputs[5]);
}

#[test]
fn output_files_match_stdout() {
    let f = Fixture::new();
    let to_file = f.run(&["poincare", "--monoid", "m23.json", "--bound", "12", "--output", "t.csv"]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    let direct = f.run(&["poincare", "--monoid", "m23.json", "--bound", "12"]);
    assert_eq!(std::fs::read(f.path("t.csv")).unwrap(), direct.stdout);
}

fn round_trip(f: &Fixture, monoid_file: &str, desc: &str, element: &str, lam: Element) {
    let out = f.run(&["export-complex", "--monoid", monoid_file, "--element", element]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let monoid = Monoid::new(frobenius_core::io::parse_descriptor(desc).unwrap()).unwrap();
    let complex = complex_from_json(&stdout(&out), 1 << 20).unwrap();
    for field in [FieldChoice::Rationals, FieldChoice::PrimeField(2)] {
        assert_eq!(
            complex.reduced_betti(field),
            betti_vector(&monoid, &lam, field).unwrap(),
            "{element}"
        );
    }
}

#[test]
fn exported_complexes_round_trip() {
    let f = Fixture::new();
    for k in [0, 2, 5, 6, 12, 17] {
        round_trip(&f, "m23.json", M23, &format!("[{k}]"), Element::vector([k]));
    }
    let gm = Monoid::new(MonoidDescriptor::glued(
        MonoidDescriptor::free(1),
        MonoidDescriptor::free(1),
        Element::vector([3]),
        Element::vector([2]),
    ))
    .unwrap();
    round_trip(
        &f,
        "gm.json",
        GM,
        "[[2],[1]]",
        gm.normalize_pair(Element::vector([2]), Element::vector([1])).unwrap(),
    );
}

#[test]
fn show_and_interval() {
    let f = Fixture::new();
    let show = f.run(&["show", "--monoid", "gm.json", "--bound", "6"]);
    assert_eq!(show.status.code(), Some(0));
    let text = stdout(&show);
    assert!(text.contains("generator {0|1|0} degree 2"), "{text}");
    assert!(text.contains("rho: {1|0|0} degree 6"), "{text}");
    let interval = f.run(&["interval", "--monoid", "m23.json", "--element", "[6]"]);
    assert_eq!(stdout(&interval), "0: 2\n1: 3\n2: 4\n2 < 4\n");
    let json = f.run(&[
        "interval",
        "--monoid",
        "m23.json",
        "--element",
        "[6]",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["covers"], serde_json::json!([[0, 2]]));
}

#[test]
fn composition_check_runs_from_the_command_line() {
    let f = Fixture::new();
    let out = f.run(&["verify-comp", "--monoid", "m23.json", "--bound", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("total 9  matched 9"), "{}", stdout(&out));
}
