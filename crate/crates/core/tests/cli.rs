mod common;

use common::{cli, fixture};

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn msect_table() {
    let (code, out, _) = cli(&["msect", &path("fib.seq"), "2", "0"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "name: F[2n+0]\ninit: 0 1\nrec: 3 -1\ncertification: proved\n"
    );
}

#[test]
fn msect_json_key_order_and_determinism() {
    let args = ["--json", "msect", &path("fib.seq"), "3", "1"];
    let (code, first, _) = cli(&args);
    assert_eq!(code, 0);
    let (_, second, _) = cli(&args);
    assert_eq!(first, second);
    let keys: Vec<usize> = [
        "\"name\"",
        "\"order\"",
        "\"init\"",
        "\"rec\"",
        "\"certification\"",
    ]
    .iter()
    .map(|k| first.find(k).unwrap())
    .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "{first}");
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["init"], serde_json::json!(["1", "3"]));
    assert_eq!(v["certification"], "proved");
}

#[test]
fn meta_msect_table_lists_both_coefficients() {
    let (code, out, _) = cli(&["meta-msect", &path("fib.seq")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("status: proved\n"), "{out}");
    assert!(out.contains("c_1(m)  init: 1 3  rec: 1 1"), "{out}");
    assert!(out.contains("c_2(m)  init: 1  rec: -1"), "{out}");
}

#[test]
fn meta_msect_json_is_stable() {
    let args = ["--json", "meta-msect", &path("tribonacci.seq")];
    let (code, first, _) = cli(&args);
    assert_eq!(code, 0);
    assert_eq!(first, cli(&args).1);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["certification"], "proved");
    assert_eq!(
        v["coefficients"][1]["rec"],
        serde_json::json!(["-1", "-1", "1"])
    );
    assert_eq!(v["coefficients"][1]["bound"], 3);
}

#[test]
fn polysum_outputs() {
    let (code, out, _) = cli(&["polysum", &path("fib.seq"), "--m", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("sum_{0<=k<n} a(k) = a(n+1) - a(1)\n"), "{out}");

    let (code, out, _) = cli(&["polysum", "--charpoly", "x - 2"]);
    assert_eq!(code, 0);
    assert!(out.contains("= a(n) - a(0)\n"), "{out}");

    let (code, out, _) = cli(&[
        "--compat",
        "polysum",
        "--symbolic",
        "L,s",
        "--charpoly",
        "x^2 - L*x + s",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "-((a(n) - a(0))*(1 - L) + a(n + 1) - a(1)) / (1 - L + s)\n"
    );
}

#[test]
fn refusals_exit_one() {
    let (code, _, err) = cli(&["polysum", "--charpoly", "x^2 - 2*x + 1"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("refused: p(1) = 0"), "{err}");

    let (code, _, err) = cli(&["prodrec", &path("fib.seq"), "2", "1", "--coeff", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("observed order 3"), "{err}");

    let (code, out, _) = cli(&["verify", "--identity", "perrin-sum"]);
    assert_eq!(code, 1);
    assert!(out.contains("[ok] derived identity"), "{out}");

    let (code, _, _) = cli(&[
        "oeis-check",
        &path("perrin.seq"),
        "--coeff",
        "2",
        "--bfile",
        &path("A078712.txt"),
        "--offset",
        "1",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["msect", "/nonexistent/file.seq", "2", "0"]).0, 2);
    assert_eq!(cli(&["msect", &path("fib.seq"), "two", "0"]).0, 2);
    assert_eq!(cli(&["msect", &path("fib.seq"), "0", "0"]).0, 2);
    assert_eq!(cli(&["polysum", "--charpoly", "x^2 - y"]).0, 2);
    assert_eq!(cli(&["polysum"]).0, 2);
    assert_eq!(cli(&["verify", "--identity", "sections"]).0, 2);
    assert_eq!(
        cli(&["--json", "--compat", "meta-msect", &path("fib.seq")]).0,
        2
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.seq");
    std::fs::write(&bad, "name = F\nrec = 1 one\ninit = 0 1\n").unwrap();
    let (code, _, err) = cli(&["msect", bad.to_str().unwrap(), "2", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn oeis_check_offline_without_source_is_input_error() {
    let (code, _, err) = cli(&["oeis-check", &path("fib.seq"), "--id", "A000045"]);
    assert_eq!(code, 2);
    assert!(err.contains("network access is disabled"), "{err}");
}

#[test]
fn oeis_check_lucas() {
    let (code, out, _) = cli(&[
        "oeis-check",
        &path("fib.seq"),
        "--coeff",
        "1",
        "--bfile",
        &path("A000032.txt"),
        "--offset",
        "1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("matched: 40 of 40"), "{out}");
}

#[test]
fn verify_identities() {
    for id in ["square-fibonacci", "square-fibonacci-sum", "vanishing"] {
        let (code, out, _) = cli(&["verify", "--identity", id]);
        assert_eq!(code, 0, "{id}: {out}");
    }
    let (code, out, _) = cli(&["verify", &path("perrin_zero.seq"), "--identity", "sections"]);
    assert_eq!(code, 0);
    assert!(out.contains("first at m = 3"), "{out}");
    let (code, _, _) = cli(&[
        "verify",
        &path("fib.seq"),
        "--identity",
        "products",
        "--max-m",
        "4",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("meta-msect"));
}
