use std::process::{Command, Output};

fn latclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latclass")).args(args).env_remove("LATCLASS_BOUND").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn discr_u2() {
    let o = latclass(&["discr", "U(2)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "generator\torder\tq_row\n0\t2\t0,1/2\n1\t2\t1/2,0\n");
}

#[test]
fn walls_n5_tsv() {
    let o = latclass(&["walls", "--n", "5", "--format", "tsv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows, ["-2\t1", "-8\t2", "-8\t4", "-8\t8", "-16\t2", "-40\t4", "-72\t8", "-136\t8", "-200\t8"]);
}

#[test]
fn classify_rank_one_n4() {
    let o = latclass(&["classify", "--n", "4", "--rank", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("<2>,rho_a") && text.contains("<2>,rho_b"));
    assert!(!text.contains("<6>"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn chambers_json() {
    let o = latclass(&["chambers", "--n", "5", "--family", "U(2),rho_2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "chambers");
    assert_eq!(v["rows"][0]["chambers"], 3);
    assert_eq!(v["rows"][0]["walls"], "(-8,2) (-16,2)");
    assert_eq!(v["flags"]["separation"], true);
    assert_eq!(v["flags"]["exhaustive"], true);
}

#[test]
fn twisted_examples() {
    let o = latclass(&["twisted", "--example", "degree-two", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["v_B_square"], "8");
    assert_eq!(v["rows"][0]["transcendental"], "2*U + 2*E8 + <-8>");
    let o = latclass(&["twisted", "--example", "polarized", "--n", "4"]);
    assert!(stdout(&o).contains("U + U(2) + 2*E8 + <-6>"));
}

#[test]
fn exit_codes() {
    assert_eq!(latclass(&["walls"]).status.code(), Some(2));
    assert_eq!(latclass(&["classify", "--n", "3", "--rank", "3"]).status.code(), Some(2));
    let o = latclass(&["discr", "<3>"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("even"));
    assert_eq!(latclass(&["discr", "U +"]).status.code(), Some(1));
    assert_eq!(latclass(&["chambers", "--n", "5", "--family", "nope"]).status.code(), Some(1));
}

#[test]
fn bound_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_latclass")).args(["discr", "U(2)"]).env("LATCLASS_BOUND", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound"));
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("latclass-walls-{}.tsv", std::process::id()));
    let o = latclass(&["walls", "--n", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "square\tdivisibility\n-2\t1\n-2\t2\n-10\t2\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn check_is_deterministic() {
    let a = latclass(&["check", "--criterion", "5", "--format", "json"]);
    let b = latclass(&["check", "--criterion", "5", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // family (1) at n = 10 is impossible, so this criterion is red
    assert_eq!(latclass(&["check", "--criterion", "3"]).status.code(), Some(1));
}
