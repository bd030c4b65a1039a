use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_packinglab")).args(args).env_remove("PACKINGLAB_CATALOG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|_| panic!("stderr: {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn gram_d1n3() {
    let o = run(&["gram", "--config", "builtin:d1n3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().map(|l| l.trim_end()).collect();
    assert_eq!(rows[0], "-1\t0\t1/2\t0\t1");
    assert_eq!(rows[2], "1/2\t1/2\t-1\t0\t0");
    assert_eq!(rows.len(), 5);
}

#[test]
fn clusters_d3n11() {
    let o = run(&["clusters", "--config", "builtin:d3n11"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.trim() == "{23}"), "{}", s);
    assert!(s.lines().any(|l| l.trim() == "{26}"), "{}", s);
}

#[test]
fn prove_nonintegral_bi17() {
    let o = run(&["prove-nonintegral", "--config", "builtin:bi17-cluster48"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "nonintegral-proven");
    assert_eq!(v["witness"]["kind"], "nullspace");
    assert!(stdout(&o).contains("sqrt(2)"));
}

#[test]
fn integrality_bi1() {
    let o = run(&["check-integrality", "--config", "builtin:bi1", "--cluster", "3", "--basis", "builtin:bi1-orbit-basis"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "integral-proven");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let o = run(&["pack", "--config", "builtin:nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "not_found");
    let o = run(&["convert", "--roots", "/definitely/missing.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(error_json(&o)["message"].as_str().unwrap().contains("missing.json"));
}

#[test]
fn sampling_needs_seed() {
    assert_eq!(run(&["validate", "--config", "builtin:d3n3", "--samples", "50"]).status.code(), Some(2));
    let a = run(&["validate", "--config", "builtin:d3n3", "--samples", "50", "--seed", "9"]);
    let b = run(&["validate", "--config", "builtin:d3n3", "--samples", "50", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn contradicted_clusters_fail_validation() {
    let o = run(&["validate", "--config", "builtin:d3n6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("cluster_findings"));
    assert_eq!(run(&["validate", "--config", "builtin:d3n11"]).status.code(), Some(0));
}

#[test]
fn threads_do_not_change_output() {
    let args = ["pack", "--config", "builtin:d3n3", "--cluster", "6", "--max-generation", "5"];
    let one = run(&[&["--threads", "1"][..], &args].concat());
    let many = run(&[&["--threads", "6"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let r1 = run(&["--threads", "1", "render", "--config", "builtin:bi1", "--cluster", "3"]);
    let r6 = run(&["--threads", "6", "render", "--config", "builtin:bi1", "--cluster", "3"]);
    assert!(stdout(&r1).starts_with("<?xml"));
    assert_eq!(r1.stdout, r6.stdout);
}

#[test]
fn catalog_override() {
    let dir = std::env::temp_dir().join(format!("packinglab-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = run(&["catalog", "d1n3"]).stdout;
    std::fs::write(dir.join("d1n3.json"), &text).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_packinglab"))
        .args(["gram", "--config", "builtin:d1n3"])
        .env("PACKINGLAB_CATALOG", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_packinglab"))
        .args(["gram", "--config", "builtin:d3n6"])
        .env("PACKINGLAB_CATALOG", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn misc_commands() {
    let o = run(&["lob", "--theta", "0.5235987755982988", "--method", "quadrature"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.5074708).abs() < 1e-6);
    let o = run(&["double", "--config", "builtin:d1n3-base", "--node", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["glue", "--a", "square-pyramid", "--b", "tetrahedron", "--kind", "face", "--at-a", "1", "--at-b", "0"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let o = run(&["diagram", "--config", "builtin:d3n3"]);
    assert!(stdout(&o).starts_with("graph coxeter {"));
    let o = run(&["super", "--config", "builtin:bi1", "--cluster", "3", "--max-generation", "3", "--format", "stats"]);
    assert_eq!(o.status.code(), Some(0));
}
