//! End-to-end tests of the binary: output contents, determinism, and the
//! exit-code contract (0 ok, 1 verification failure, 2 bad arguments,
//! 3 validation error, 4 size guard).

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oshyper"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "command {args:?} failed: {out:?}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn betti_table_for_half_integral_weights() {
    let out = stdout(&["betti", "--n", "4", "--weights", "-1/2,-1/2,-1/2,-1/2"]);
    assert_eq!(out.trim(), r#"{"2":3,"3":12,"4":9}"#);
}

#[test]
fn form_matches_the_chain_representative() {
    let args = [
        "form",
        "--n",
        "4",
        "--weights",
        "-1/2,-1/2,-1/2,-1/2",
        "--forest",
        "1->2;2->3;3->4*",
        "--format",
        "latex",
    ];
    let out = stdout(&args);
    assert_eq!(
        out.trim(),
        "\\frac{z_{2}}{(z_{1}-z_{2})(z_{2}-z_{3})(z_{3}-z_{4})} \\, dz_{1} \\wedge dz_{2} \\wedge dz_{3} \\wedge dz_{4}"
    );
    // byte-identical across runs
    assert_eq!(stdout(&args), out);
}

#[test]
fn tree_listing_and_counts() {
    let out = stdout(&["trees", "--r", "2", "--n", "3", "--rectified"]);
    assert_eq!(out.lines().count(), 8);
    let count = stdout(&["trees", "--r", "2", "--n", "3", "--count"]);
    assert_eq!(count.trim(), "36");
}

#[test]
fn rectify_expands_a_descending_tree() {
    let out = stdout(&["rectify", "--r", "1", "--n", "3", "--tree", "1;2->1;3->1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, vec!["1\t1->2;2->3;3", "-1\t1->3;2->3;3"]);
}

#[test]
fn verify_cases_pass() {
    assert!(run(&["verify", "two-point-catalog"]).status.success());
    assert!(run(&["verify", "divisor-sum-identity", "--r", "3", "--m", "2"])
        .status
        .success());
    assert!(run(&["verify", "wreath-induction", "--r", "2", "--n", "4", "--s", "1", "--k", "3", "--l", "1"])
        .status
        .success());
}

#[test]
fn exit_codes() {
    // 2: argument parse error (clap)
    assert_eq!(run(&["trees", "--r", "x", "--n", "3"]).status.code(), Some(2));
    // 3: validation error (r does not clear the denominators)
    assert_eq!(
        run(&["betti", "--weights", "1/2,1/3", "--r", "2"]).status.code(),
        Some(3)
    );
    // 3: unknown verify case
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(3));
    // 4: size guard on a huge listing
    assert_eq!(run(&["trees", "--r", "4", "--n", "6"]).status.code(), Some(4));
    // guard is overridable, count mode is always fine
    assert!(run(&["trees", "--r", "4", "--n", "6", "--count"]).status.success());
}

#[test]
fn character_json_is_exact() {
    let out = stdout(&[
        "character", "--k", "2", "--l", "0", "--weights", "1/2,1/2,1/2,1/2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], "3");
    assert_eq!(v["classes"][0]["class"], "[1,1,1,1]");
    assert_eq!(v["classes"][0]["value"], "3");
}

#[test]
fn resonance_witnesses() {
    let out = stdout(&["resonant", "--weights", "1/2,1/2,-1"]);
    assert!(out.contains("resonant: proper subset"));
    let out = stdout(&["resonant", "--weights", "1/3,1/3,1/3", "--pairs", "1,2=2/3"]);
    assert_eq!(out.trim(), "nonresonant");
    let out = stdout(&["resonant", "--weights", "1/3,1/3,1/3", "--pairs", "1,2=1/3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["resonant"], true);
}
