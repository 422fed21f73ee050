//! Golden-file tests for the `nilbound` binary: byte-exact JSON with
//! canonical (sorted) keys, and the documented exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilbound"))
        .args(args)
        .output()
        .expect("spawn nilbound")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn collect_golden() {
    assert_eq!(
        stdout_of(&["collect", "--rank", "2", "--class", "2", "b a"]),
        "{\"class\":2,\"exponents\":[1,1,-1],\"labels\":[\"a\",\"b\",\"[a,b]\"],\"rank\":2}\n"
    );
}

#[test]
fn witt_golden() {
    assert_eq!(
        stdout_of(&["witt", "--rank", "2", "--class", "5"]),
        "[2,1,2,3,6]\n"
    );
}

#[test]
fn sympdec_trivial_and_split() {
    assert_eq!(
        stdout_of(&["sympdec", "[0,0]"]),
        "{\"terms\":[],\"v\":[0,0],\"verified\":true}\n"
    );
    let two = stdout_of(&["sympdec", "[4,7,0,5]"]);
    let v: serde_json::Value = serde_json::from_str(&two).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["verified"], serde_json::json!(true));
}

#[test]
fn christoffel_golden() {
    assert_eq!(
        stdout_of(&["christoffel", "2", "3"]),
        "{\"p\":2,\"q\":3,\"word\":\"a b a b^2\"}\n"
    );
    assert_eq!(
        stdout_of(&["christoffel", "--", "-2", "-3"]),
        "{\"p\":-2,\"q\":-3,\"word\":\"b^-2 a^-1 b^-1 a^-1\"}\n"
    );
}

#[test]
fn section_golden() {
    assert_eq!(
        stdout_of(&["section", "--genus", "1", "[4,6]"]),
        "{\"curves\":[{\"handle\":1,\"slope\":[3,1],\"word\":\"a^3 b\"},\
{\"handle\":1,\"slope\":[1,5],\"word\":\"a b^5\"}],\"h\":[4,6]}\n"
    );
}

#[test]
fn powershift_golden() {
    assert_eq!(
        stdout_of(&["powershift", "--rank", "2", "--k", "3", "a", "b"]),
        "{\"class\":2,\"holds\":true,\"k\":3,\"residual_class_m\":[0,0,0],\
\"residual_class_m_plus_1\":[0,0,0,3,0]}\n"
    );
}

#[test]
fn rewrite_certificate_verifies() {
    let out = stdout_of(&["rewrite", "--class", "2", "a b a^-1 b^-1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verified"], serde_json::json!(true));
    assert_eq!(v["bound"], serde_json::json!(8));
    assert!(v["s_length"].as_u64().unwrap() <= 8);
}

#[test]
fn diameter_json_deterministic_and_csv() {
    let args = [
        "diameter",
        "--class",
        "1",
        "--height",
        "3",
        "--box-radius",
        "2",
        "--max-radius",
        "4",
    ];
    let a = stdout_of(&args);
    let b = stdout_of(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v["covering_radius"].is_number());
    assert!(v.get("elapsed_ms").is_none());

    let mut csv_args = args.to_vec();
    csv_args.extend(["--output", "csv"]);
    let csv = stdout_of(&csv_args);
    assert!(csv.starts_with("radius,newly_covered,cumulative\n0,1,1\n"));
}

#[test]
fn big_integers_serialize_as_strings() {
    let out = stdout_of(&[
        "collect",
        "--rank",
        "2",
        "--class",
        "1",
        "a^36893488147419103232",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["exponents"],
        serde_json::json!(["36893488147419103232", 0])
    );
}

#[test]
fn exit_codes() {
    // domain error: JSON object on stderr, exit 1
    let out = run(&["sympdec", "[1,2,3]"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert!(err["error"].is_string());
    // usage error: exit 2
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["collect", "--rank", "2", "a"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("nilbound-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("witt.json");
    let out = run(&["witt", "--rank", "3", "--class", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "[3,3,8,18]\n");
}
