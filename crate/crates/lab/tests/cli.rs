use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sunflower-lab"));
    c.env_remove("SUNFLOWER_LAB_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    lab().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn disjoint_pairs_form_a_sunflower_with_empty_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "pairs.txt", "1 2\n3 4\n5 6\n");
    let o = run(&["--json", "find-sunflower", &f, "--r", "3"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kernel"], serde_json::json!([]));
    assert_eq!(v["petals"].as_array().unwrap().len(), 3);

    // Expecting freeness flips the exit code.
    let o = run(&["find-sunflower", &f, "--r", "3", "--expect-free"]);
    assert_eq!(code(&o), 1);
    let o = run(&["find-sunflower", &f, "--r", "4"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn bounds_single_value() {
    let o = run(&["bounds", "--thm", "er", "--k", "2", "--r", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "6");
    let o = run(&["bounds", "--thm", "deza", "--k", "3"]);
    assert_eq!(stdout(&o).trim(), "7");
    let o = run(&["bounds", "--thm", "er", "--k", "1..3", "--r", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 3, "{}", stdout(&o));
    // Out-of-domain parameters are usage errors.
    assert_eq!(code(&run(&["bounds", "--thm", "er", "--k", "0", "--r", "3"])), 2);
    assert_eq!(code(&run(&["bounds", "--thm", "nope"])), 2);
}

#[test]
fn construct_round_trip_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.txt");
    let o = run(&["construct", "transversal", "--k", "2", "--r", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('n')).count(), 4);
    let f = out.to_str().unwrap();
    assert_eq!(code(&run(&["find-sunflower", f, "--r", "3", "--expect-free"])), 0);
    assert_eq!(code(&run(&["check", f, "--k", "2"])), 0);
    assert_eq!(code(&run(&["check", f, "--k", "3"])), 1);
    assert_eq!(code(&run(&["check", f, "--L", "1"])), 1);
    assert_eq!(code(&run(&["check", f, "--L", "0,1"])), 0);

    let fano = dir.path().join("fano.txt");
    assert_eq!(code(&run(&["construct", "fano", "-o", fano.to_str().unwrap()])), 0);
    let prod = dir.path().join("prod.txt");
    let o = run(&["construct", "product", f, f, "-o", prod.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let p = prod.to_str().unwrap();
    assert_eq!(code(&run(&["check", p, "--k", "4"])), 0);
    assert_eq!(code(&run(&["find-sunflower", p, "--r", "3", "--expect-free"])), 0);
}

#[test]
fn malformed_file_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "1 2\n3 x\n");
    let o = run(&["check", &f]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2, column 3"), "{err}");
    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&run(&["check", missing.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn budget_from_environment_and_flag() {
    let args = ["search", "--k", "2", "--r", "3", "--nmax", "7", "--deterministic"];
    let o = lab().args(args).env("SUNFLOWER_LAB_BUDGET", "5").output().unwrap();
    assert_eq!(code(&o), 3);
    let o = lab()
        .args(args)
        .args(["--budget", "10000000"])
        .env("SUNFLOWER_LAB_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("optimum 6"), "{}", stdout(&o));
    let o = lab().args(args).env("SUNFLOWER_LAB_BUDGET", "lots").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn decomposition_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let fano = dir.path().join("fano.txt");
    run(&["construct", "fano", "-o", fano.to_str().unwrap()]);
    // A 3-free family: two disjoint triangles.
    let f = write(dir.path(), "tri.txt", "1 2\n1 3\n2 3\n4 5\n4 6\n5 6\n");
    let cert = dir.path().join("cert.json");
    let c = cert.to_str().unwrap();
    assert_eq!(code(&run(&["decompose", &f, "-o", c])), 0);
    assert_eq!(code(&run(&["verify-cert", &f, c])), 0);

    let mut v: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    v["certified_bound"] = Value::String("1".into());
    fs::write(&cert, v.to_string()).unwrap();
    assert_eq!(code(&run(&["verify-cert", &f, c])), 1);

    // A single intersection size is a base case even with sunflowers present.
    assert_eq!(code(&run(&["decompose", fano.to_str().unwrap()])), 0);
    // Two sizes and a three-petal sunflower: the precondition fails.
    let bad = write(dir.path(), "bad.txt", "1 2\n3 4\n5 6\n1 3\n");
    assert_eq!(code(&run(&["decompose", &bad])), 1);
}

#[test]
fn sunflower_cover_and_search_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = write(dir.path(), "pairs.txt", "1 2\n3 4\n5 6\n");
    let sc = dir.path().join("sf.json");
    run(&["find-sunflower", &pairs, "--r", "3", "-o", sc.to_str().unwrap()]);
    assert_eq!(code(&run(&["verify-cert", &pairs, sc.to_str().unwrap()])), 0);
    // The same certificate does not fit a different family.
    let other = write(dir.path(), "other.txt", "1 2\n1 3\n2 3\n");
    assert_eq!(code(&run(&["verify-cert", &other, sc.to_str().unwrap()])), 1);

    let star = write(dir.path(), "star.txt", "1 2 3\n1 4 5\n1 6 7\n2 4 6\n");
    let cc = dir.path().join("cover.json");
    assert_eq!(code(&run(&["decompose", &star, "--ell", "1", "-o", cc.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["verify-cert", &star, cc.to_str().unwrap()])), 0);

    let wit = dir.path().join("w.txt");
    let o = run(&[
        "--json", "search", "--k", "2", "--r", "3", "--nmax", "7", "--witness-out",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let cert = write(dir.path(), "search.json", &stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["optimum"], 6);
    assert_eq!(code(&run(&["verify-cert", wit.to_str().unwrap(), &cert])), 0);
    assert_eq!(code(&run(&["verify-cert", &pairs, &cert])), 1);
}
