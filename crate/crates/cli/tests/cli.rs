use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macaulay"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn ann_of_first_example() {
    let out = ok(&["ann", "--ring", "Q[x,y,z] dual [X,Y,Z]", "--poly", "Y^[3]-Z^[3]"]);
    assert_eq!(out, "x, y*z, y^3+z^3\n");
}

#[test]
fn local_hilbert_function() {
    assert_eq!(
        ok(&["hilbert", "--ideal", "xy, y^2-x^3", "--mode", "local"]),
        "1 2 1 1\n"
    );
    assert_eq!(
        ok(&["hilbert", "--ideal", "xy, y^2-x^3", "--mode", "local", "--bound", "5"]),
        "1 2 1 1 0 0\n"
    );
}

#[test]
fn contraction_and_pairing() {
    assert_eq!(ok(&["contract", "--h", "1", "--F", "X"]), "X\n");
    assert_eq!(ok(&["contract", "--h", "x", "--F", "X^[3]+Y"]), "X^[2]\n");
    assert_eq!(ok(&["pair", "--h", "x*y", "--F", "X*Y+Y^[2]"]), "1\n");
}

#[test]
fn span_and_perp_agree() {
    let span = ok(&["span", "--F", "X^[3]+Y^[2]", "--mode", "local"]);
    let perp = ok(&["perp", "--ideal", "xy, y^2-x^3", "--mode", "local"]);
    assert_eq!(span, perp);
    assert!(span.starts_with("dim 5\n"));
}

#[test]
fn broken_family_exits_four() {
    let o = run(&["check-admissible", "--family", fixture("broken.fam").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let out = stdout(&o);
    assert!(out.contains("L=(2)") && out.contains("(cond 1)"), "{out}");
}

#[test]
fn admissible_families_pass() {
    for name in ["ex41.fam", "fot.fam", "fot2.fam", "semigroup.fam"] {
        let out = ok(&["check-admissible", "--family", fixture(name).to_str().unwrap()]);
        assert_eq!(out, "admissible\n", "{name}");
    }
}

#[test]
fn finite_lift_of_elliptic_curve() {
    let out = ok(&["finite-lift", "--family", fixture("fot.fam").to_str().unwrap()]);
    assert_eq!(
        out,
        "x^2-x*z-y*t+z*t-x*w+t*w, x*y-z*t-t^2, y^2-x*z-t^2, y*z-t^2+y*w, z^2-x*t+z*t+z*w+t*w\n"
    );
}

#[test]
fn lift_contains_shifted_entry() {
    // the semigroup family without its last entry: X*H4 must be a lift
    let text = std::fs::read_to_string(fixture("semigroup.fam")).unwrap();
    let cut: String = text
        .lines()
        .filter(|l| !l.starts_with("H[5]"))
        .map(|l| format!("{l}\n"))
        .collect();
    let dir = std::env::temp_dir().join(format!("macaulay-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sg4.fam");
    std::fs::write(&path, cut).unwrap();
    let out = ok(&["lift", "--family", path.to_str().unwrap(), "--target", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["particular"], "X^[4]*Y^[3]+X*Y^[4]*Z+X^[4]*Z^[2]+X*Y*Z^[3]");
    assert_eq!(v["kernel"].as_array().unwrap().len(), 15);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn infeasible_lift_is_a_precondition_failure() {
    // x∘G = H4 has no solution of degree 1
    let o = run(&[
        "lift",
        "--family",
        fixture("ex41.fam").to_str().unwrap(),
        "--target",
        "5",
        "--bound",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gorenstein_report() {
    let ideal = "z^2-x*t+z*t+z*w+t*w, y*z-t^2+y*w, -y^2+x*z+t^2, -x*y+z*t+t^2, x^2-x*z-y*t+z*t-x*w+t*w";
    let out = ok(&[
        "gorenstein-check",
        "--ring",
        "Q[x,y,z,t,w]",
        "--ideal",
        ideal,
        "--z",
        "t, w",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["is_gorenstein"], true);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["multiplicity"], 5);
    assert_eq!(v["artinian_reduction_hf"], serde_json::json!([1, 3, 1]));

    let out = ok(&["gorenstein-check", "--ideal", "x^2, x*y", "--z", "y"]);
    assert!(out.contains("gorenstein: false"), "{out}");
}

#[test]
fn family_round_trip_through_files() {
    let fam = ok(&[
        "family-from-ideal",
        "--ring",
        "Q[x,y,z]",
        "--ideal",
        "y*z+x*z, y^3+z^3-x*y^2+x^2*y-x^3",
        "--z",
        "x",
        "--t0",
        "5",
    ]);
    assert!(fam.contains("H[1] = Y^[3]-Z^[3]"), "{fam}");
    let dir = std::env::temp_dir().join(format!("macaulay-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rt.fam");
    std::fs::write(&path, &fam).unwrap();
    assert_eq!(
        ok(&["check-admissible", "--family", path.to_str().unwrap()]),
        "admissible\n"
    );
    let lifted = ok(&["finite-lift", "--family", path.to_str().unwrap(), "--bound", "3"]);
    assert_eq!(lifted, "x*z+y*z, x^3-x^2*y+x*y^2-y^3-z^3\n");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn cone_output_reads_back() {
    let out = ok(&[
        "cone",
        "--ring",
        "Q[x,y,t]",
        "--h",
        "X^[2]+Y^[2]",
        "--z",
        "t",
        "--t0",
        "3",
    ]);
    assert!(out.contains("H[3] = X^[2]*T^[2]+Y^[2]*T^[2]"), "{out}");
}

#[test]
fn local_verify_semigroup() {
    let out = ok(&[
        "local-verify",
        "--family",
        fixture("semigroup.fam").to_str().unwrap(),
        "--ideal",
        "y*z-x^3, z^2-y^3",
        "--trunc",
        "7",
    ]);
    assert_eq!(out, "verified modulo m^7\n");
    let o = run(&[
        "local-verify",
        "--family",
        fixture("semigroup.fam").to_str().unwrap(),
        "--ideal",
        "y*z-x^3",
        "--trunc",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["ann", "--poly", "Y^[3"]).status.code(), Some(2));
    assert_eq!(run(&["ann", "--ring", "Q[x,y", "--poly", "Y"]).status.code(), Some(2));
    assert_eq!(
        run(&["check-admissible", "--family", "/nonexistent.fam"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn not_gorenstein_is_a_precondition_failure() {
    let o = run(&[
        "family-from-ideal",
        "--ring",
        "Q[x,y,z]",
        "--ideal",
        "x^2, x*y, y^2",
        "--z",
        "z",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "finite-lift",
        "--family",
        fixture("fot2.fam").to_str().unwrap().to_owned().leak(),
    ];
    assert_eq!(ok(&args), ok(&args));
}
