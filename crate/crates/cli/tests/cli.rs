use std::path::Path;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn ptorsion(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptorsion"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("spawn ptorsion")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn manifest(dir: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join("manifest.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn minimal_reports_aut_and_component_group() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptorsion(dir.path(), &["minimal", "--c", "2", "--d", "1", "--p", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("aut_order 448"), "{s}");
    assert!(s.contains("pi0_order 7"), "{s}");
    assert!(dir.path().join("minimal_c2_d1_p2_n1.dmod").exists());
}

#[test]
fn saved_module_feeds_twists() {
    let dir = tempfile::tempdir().unwrap();
    assert!(
        ptorsion(dir.path(), &["minimal", "--c", "2", "--d", "1", "--p", "2"])
            .status
            .success()
    );
    let module = dir.path().join("minimal_c2_d1_p2_n1.dmod");
    let spec = format!("from-module:{}", module.display());
    let twist_dir = dir.path().join("tw");
    let o = ptorsion(&twist_dir, &["twists", "--group", &spec, "--degree", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // cyclic of order 7: every element has order dividing 7
    let rows = stdout(&o).lines().skip(1).count();
    assert_eq!(rows, 7);
}

#[test]
fn manifest_digests_match_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptorsion(dir.path(), &["twists", "--group", "sym:3", "--degree", "1"]);
    assert!(o.status.success());
    let m = manifest(dir.path());
    assert_eq!(m["tool"], "ptorsion-cli");
    let outputs = m["outputs"].as_array().unwrap();
    assert!(!outputs.is_empty());
    for entry in outputs {
        let bytes = std::fs::read(dir.path().join(entry["path"].as_str().unwrap())).unwrap();
        assert_eq!(
            entry["sha256"].as_str().unwrap(),
            hex::encode(Sha256::digest(&bytes))
        );
    }
}

#[test]
fn bound_example() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptorsion(
        dir.path(),
        &["bound", "--newton", "1:0:1,0:1:1", "--n", "1", "--p", "5"],
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("4"));
}

#[test]
fn usage_errors_exit_two_with_json() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["survey", "--p", "2", "--e-list", "1"][..],
        &["h11", "--p", "3", "--degree", "3"],
        &["minimal", "--c", "2", "--d", "1", "--p", "4"],
        &["twists", "--group", "dihedral:5", "--degree", "1"],
    ] {
        let o = ptorsion(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
        assert!(err["error"].is_string() && err["message"].is_string());
    }
}

#[test]
fn survey_gate_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptorsion(
        dir.path(),
        &["survey", "--p", "5", "--e-list", "1,2,3", "--gate"],
    );
    assert_eq!(o.status.code(), Some(3));
    for f in [
        "survey_q5_n1.csv",
        "survey_q125_n1.csv",
        "survey_summary_p5_n1.csv",
        "survey_plot_p5_n1.dat",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn sampled_survey_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "--seed",
        "11",
        "survey",
        "--p",
        "7",
        "--e-list",
        "2",
        "--n",
        "2",
        "--mode",
        "sampled",
        "--samples",
        "5000",
    ];
    assert!(ptorsion(a.path(), &args).status.success());
    let mut threaded = vec!["--threads", "3"];
    threaded.extend_from_slice(&args);
    assert!(ptorsion(b.path(), &threaded).status.success());
    let f = "survey_q49_n2.csv";
    assert_eq!(
        std::fs::read(a.path().join(f)).unwrap(),
        std::fs::read(b.path().join(f)).unwrap()
    );
}

#[test]
fn h11_census_header() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptorsion(dir.path(), &["h11", "--p", "3", "--degree", "2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).lines().next(),
        Some("p,field_degree,form_label,polarized")
    );
}
