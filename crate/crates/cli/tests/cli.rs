//! Exit-code and output contract of the binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_choosability"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn write_k24(dir: &Path) -> String {
    let path = dir.join("k24.graph");
    fs::write(
        &path,
        "graph 6 8\ne 1 3\ne 1 4\ne 1 5\ne 1 6\ne 2 3\ne 2 4\ne 2 5\ne 2 6\n",
    )
    .unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn order_exit_codes_and_witness() {
    let t = run(&["order", "2,2", "1,1,1,3"]);
    assert_eq!(t.status.code(), Some(0));
    assert!(stdout(&t).starts_with("true\n"));
    assert!(stdout(&t).contains("lambda''"));

    let f = run(&["order", "1,1", "2"]);
    assert_eq!(f.status.code(), Some(1));
    assert_eq!(stdout(&f), "false\n");

    let reflexive = run(&["order", "3", "3"]);
    assert_eq!(reflexive.status.code(), Some(0));

    let bad = run(&["order", "wat", "3"]);
    assert_eq!(bad.status.code(), Some(2));

    // records mode is stable
    let r1 = run(&["order", "2,2", "1,1,1,3", "--format", "records"]);
    let r2 = run(&["order", "2,2", "1,1,1,3", "--format", "records"]);
    assert_eq!(stdout(&r1), stdout(&r2));
    assert!(stdout(&r1).starts_with("result=true\nwitness=4,2\n"));
}

#[test]
fn choosable_exit_codes_and_certificate_revalidation() {
    let dir = tempfile::tempdir().unwrap();
    let k24 = write_k24(dir.path());
    let cert = dir.path().join("cert.txt");

    // not choosable: exit 1 and a certificate on disk
    let neg = bin()
        .args(["choosable", "--graph", &k24, "--lambda", "2", "--certificate"])
        .arg(&cert)
        .output()
        .unwrap();
    assert_eq!(neg.status.code(), Some(1));
    assert!(cert.exists());

    // the certificate revalidates through `check`: it has no colouring
    let check = bin()
        .args(["check", "--graph", &k24, "--assignment"])
        .arg(&cert)
        .output()
        .unwrap();
    assert_eq!(check.status.code(), Some(1));
    assert!(stdout(&check).contains("not colourable"));

    // choosable: exit 0
    let pos = run(&["choosable", "--graph", &k24, "--lambda", "1,1"]);
    assert_eq!(pos.status.code(), Some(0));

    // budget: exit 3
    let budget = run(&[
        "choosable",
        "--graph",
        &k24,
        "--lambda",
        "2",
        "--budget-assignments",
        "1",
    ]);
    assert_eq!(budget.status.code(), Some(3));

    // parse failure: exit 2
    let missing = run(&["choosable", "--graph", "/nonexistent", "--lambda", "2"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn check_accepts_a_colourable_instance() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("c4.graph");
    fs::write(&graph, "graph 4 4\ne 1 2\ne 1 4\ne 2 3\ne 3 4\n").unwrap();
    let assignment = dir.path().join("a.txt");
    fs::write(
        &assignment,
        "lambda 2\ngroups 1\ncolour 1 1\ncolour 2 1\ncolour 3 1\nlist 1 1 2\nlist 2 1 3\nlist 3 2 3\nlist 4 1 2\n",
    )
    .unwrap();
    let cert = dir.path().join("col.txt");
    let out = bin()
        .args(["check", "--graph"])
        .arg(&graph)
        .arg("--assignment")
        .arg(&assignment)
        .arg("--certificate")
        .arg(&cert)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let colouring = fs::read_to_string(&cert).unwrap();
    assert!(colouring.lines().count() == 4 && colouring.starts_with("colour 1 "));

    // an invalid assignment (wrong list size) is a usage error
    fs::write(
        &assignment,
        "lambda 2\ngroups 1\ncolour 1 1\ncolour 2 1\nlist 1 1 2\nlist 2 1\nlist 3 1 2\nlist 4 1 2\n",
    )
    .unwrap();
    let out = bin()
        .args(["check", "--graph"])
        .arg(&graph)
        .arg("--assignment")
        .arg(&assignment)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gadget_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("gadget.graph");
    let made = bin()
        .args(["gadget", "make", "--part", "3", "--girth", "5", "--out"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(made.status.code(), Some(0));
    let verified = bin()
        .args(["gadget", "verify"])
        .arg(&file)
        .args(["--part", "3", "--girth", "5"])
        .output()
        .unwrap();
    assert_eq!(verified.status.code(), Some(0));
    // the same C5 fails a girth-6 target
    let failed = bin()
        .args(["gadget", "verify"])
        .arg(&file)
        .args(["--part", "3", "--girth", "6"])
        .output()
        .unwrap();
    assert_eq!(failed.status.code(), Some(1));
    // no built-in gadget for part 4
    let unsupported = run(&["gadget", "make", "--part", "4", "--girth", "5"]);
    assert_eq!(unsupported.status.code(), Some(2));
}

#[test]
fn construct_validates_parameters_and_verify_reads_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bundle");

    // comparable target is rejected with exit 2
    let rejected = bin()
        .args([
            "construct", "--lambda", "2", "--target", "1,1", "--g", "5", "--eps", "0.04",
            "--n", "6", "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(rejected.status.code(), Some(2));

    let built = bin()
        .args([
            "construct", "--lambda", "1,1", "--target", "2", "--g", "5", "--eps", "0.04",
            "--n", "6", "--seed", "7", "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(built.status.code(), Some(0));

    let verified = bin()
        .args(["verify", "--bundle"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(verified.status.code(), Some(0));
    assert!(stdout(&verified).contains("passed=true"));

    // tampered derived parameters are rejected on read
    let params_path = out.join("params.txt");
    let tampered = fs::read_to_string(&params_path).unwrap().replace("m=6", "m=7");
    fs::write(&params_path, tampered).unwrap();
    let broken = bin()
        .args(["verify", "--bundle"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(broken.status.code(), Some(2));
}

#[test]
fn construct_with_a_user_supplied_gadget() {
    // part size 4 has no built-in gadget; K4 works at girth target 3
    let dir = tempfile::tempdir().unwrap();
    let k4 = dir.path().join("k4.graph");
    fs::write(
        &k4,
        "# gadget k=4 g=3\ngraph 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n",
    )
    .unwrap();
    let checked = bin()
        .args(["gadget", "verify"])
        .arg(&k4)
        .args(["--part", "4", "--girth", "3"])
        .output()
        .unwrap();
    assert_eq!(checked.status.code(), Some(0));

    // without the gadget the pipeline refuses
    let out = dir.path().join("bundle");
    let refused = bin()
        .args([
            "construct", "--lambda", "4,1", "--target", "3,2", "--g", "3", "--eps", "0.08",
            "--n", "30", "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(refused.status.code(), Some(2));

    let gadget_arg = format!("4={}", k4.display());
    let built = bin()
        .args([
            "construct", "--lambda", "4,1", "--target", "3,2", "--g", "3", "--eps", "0.08",
            "--n", "30", "--seed", "5", "--gadget", &gadget_arg, "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(built.status.code(), Some(0), "{}", String::from_utf8_lossy(&built.stderr));
    // the bundle re-verifies, including the stored gadget files
    let verified = bin()
        .args(["verify", "--bundle"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(verified.status.code(), Some(0));
}

#[test]
fn mc_outputs_are_deterministic() {
    let args = [
        "mc", "cycles", "--k", "2", "--g", "4", "--eps", "0.05", "--n", "12", "--trials", "5",
        "--seed", "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    // bipartite graphs carry no triangles: every count is zero
    assert!(stdout(&a).contains("mean\t0"));

    let bad = run(&["mc", "cycles", "--k", "2", "--g", "4", "--eps", "0.9", "--n", "12",
        "--trials", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}
