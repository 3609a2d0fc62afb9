#![allow(dead_code)]

use std::path::PathBuf;

use cfinite::CFiniteSeq;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("golden file")
}

pub fn fib() -> CFiniteSeq {
    CFiniteSeq::from_i64(&[1, 1], &[0, 1]).unwrap()
}

/// Runs the CLI in-process and returns (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cfinite").chain(args.iter().copied());
    let code = cfinite::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Sequences of order 1..=max_order with recurrence coefficients in
/// [-3, 3] (the last one nonzero) and initial values in [-5, 5].
pub fn random_seqs(seed: u64, count: usize, max_order: usize) -> Vec<CFiniteSeq> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_order);
            let mut rec: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
            while rec[d - 1] == 0 {
                rec[d - 1] = rng.gen_range(-3..=3);
            }
            let init: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
            CFiniteSeq::from_i64(&rec, &init).unwrap()
        })
        .collect()
}
