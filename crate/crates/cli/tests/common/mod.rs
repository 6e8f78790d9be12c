//! Helpers shared by the CLI test targets.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn simcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simcat"))
        .args(args)
        .env_remove("SIMCAT_SEED")
        .output()
        .expect("run simcat")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// A scratch directory unique to this process and `tag`.
pub fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("simcat-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Writes `rows` random 6-dimensional rows in [-100, 100) to `path`.
pub fn random_rows(path: &std::path::Path, rows: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let text: String = (0..rows)
        .map(|_| {
            let row: Vec<String> = (0..6)
                .map(|_| format!("{:.4}", rng.random_range(-100.0..100.0)))
                .collect();
            row.join(",") + "\n"
        })
        .collect();
    std::fs::write(path, text).unwrap();
}

/// `(arguments, expected exit code, text expected on stderr)`.
pub const EXIT_CASES: &[(&[&str], i32, &str)] = &[
    (
        &["eval", "euclidean", "--a", "5,3,4", "--b", "2,5,7"],
        0,
        "",
    ),
    (
        &["eval", "jaro", "--a", "abcbabab", "--b", "cabbaabc"],
        0,
        "",
    ),
    (&["eval", "swap", "--a", "abc", "--b", "cab"], 0, ""),
    (&["list"], 0, ""),
    (
        &["audit", "euclidean", "--trials", "500", "--seed", "1"],
        0,
        "",
    ),
    (
        &[
            "audit",
            "dice",
            "--domain",
            "vector:nonneg",
            "--trials",
            "2000",
            "--seed",
            "7",
        ],
        0,
        "",
    ),
    (
        &[
            "audit",
            "euclidean",
            "--trials",
            "500",
            "--expect",
            "not-metric",
        ],
        1,
        "",
    ),
    (
        &[
            "audit",
            "cosine-distance",
            "--trials",
            "2000",
            "--expect",
            "metric",
        ],
        1,
        "",
    ),
    (
        &["eval", "no-such-measure", "--a", "1", "--b", "1"],
        2,
        "UnknownMeasure",
    ),
    (&["audit", "no-such-measure"], 2, "UnknownMeasure"),
    (
        &["eval", "euclidean", "--a", "1,x", "--b", "1,2"],
        2,
        "not a number",
    ),
    (&["eval", "euclidean", "--a", "1,2"], 2, "missing input b"),
    (&["eval", "jaro", "--a", "abc"], 2, "--a and --b"),
    (
        &["eval", "kl", "--a-hist", "1,2", "--b-hist", "1,2"],
        2,
        "--normalize",
    ),
    (
        &[
            "eval",
            "euclidean",
            "--a",
            "1",
            "--b",
            "2",
            "--precision",
            "0",
        ],
        2,
        "",
    ),
    (&["audit", "euclidean", "--domain", "cube:dim=3"], 2, ""),
    (
        &["audit", "euclidean", "--domain", "string:len=3"],
        3,
        "IncompatibleDomain",
    ),
    (&["list", "--family", "nope"], 2, ""),
    (&["frobnicate"], 2, ""),
    (
        &["eval", "euclidean", "--a", "1,2", "--b", "1,2,3"],
        3,
        "DimensionMismatch",
    ),
    (
        &["eval", "kl", "--a-pdf", "0.5,0.5", "--b-pdf", "1,0"],
        3,
        "AbsoluteContinuityViolation",
    ),
    (
        &["eval", "kl", "--a-pdf", "0.5,0.6", "--b-pdf", "0.5,0.5"],
        3,
        "NotNormalized",
    ),
    (
        &["eval", "lcsk", "--a", "abc", "--b", "abc"],
        3,
        "MissingParameter",
    ),
    (
        &["eval", "minkowski", "--a", "1", "--b", "2", "--p", "0.5"],
        3,
        "",
    ),
    (
        &["eval", "hamming", "--a", "ab", "--b", "abc"],
        3,
        "LengthMismatch",
    ),
    (
        &["audit", "fidelity", "--trials", "10"],
        3,
        "SimilarityOnly",
    ),
];

/// Runs every exit-code case; returns the failures.
pub fn check_exit_codes() -> Vec<String> {
    EXIT_CASES
        .iter()
        .filter_map(|&(args, code, needle)| {
            let out = simcat(args);
            let got = out.status.code();
            let err = stderr(&out);
            if got != Some(code) {
                Some(format!(
                    "simcat {}: exit {got:?}, want {code}; stderr: {}",
                    args.join(" "),
                    err.trim()
                ))
            } else if !err.contains(needle) {
                Some(format!(
                    "simcat {}: stderr lacks {needle:?}: {}",
                    args.join(" "),
                    err.trim()
                ))
            } else {
                None
            }
        })
        .collect()
}

/// Serial and parallel matrices over a 50-row random file, returned as
/// `(serial, parallel)` bytes.
pub fn serial_and_parallel(measure: &str, seed: u64) -> (Vec<u8>, Vec<u8>) {
    let dir = scratch(&format!("matrix-{measure}-{seed}"));
    let file = dir.join("rows.csv");
    random_rows(&file, 50, seed);
    let f = file.to_str().unwrap();
    let serial = simcat(&["matrix", measure, "--file", f]);
    let parallel = simcat(&["matrix", measure, "--file", f, "--parallel"]);
    assert!(serial.status.success(), "{}", stderr(&serial));
    assert!(parallel.status.success(), "{}", stderr(&parallel));
    let _ = std::fs::remove_dir_all(&dir);
    (serial.stdout, parallel.stdout)
}
