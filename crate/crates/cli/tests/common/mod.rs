#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn pcgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcgrass"))
        .args(args)
        .current_dir(data_dir())
        .env_remove("PCGRASS_TOL")
        .env_remove("PCGRASS_FORMAT")
        .output()
        .expect("binary runs")
}

/// `(golden name, arguments, expected exit code)`.
pub const CASES: &[(&str, &[&str], i32)] = &[
    ("check_paper", &["check", "paper.json"], 0),
    ("check_a_prime", &["check", "a_prime.csv"], 1),
    ("convert_paper", &["convert", "paper.json"], 0),
    ("convert_a_prime_csv", &["convert", "a_prime.csv", "--format", "csv"], 0),
    ("indices_paper", &["indices", "paper.json"], 0),
    ("indices_a_prime", &["indices", "a_prime.csv"], 0),
    ("indices_paper_orthogonal", &["indices", "paper.json", "--embedding", "orthogonal", "--convention", "paper"], 0),
    (
        "indices_paper_custom",
        &["indices", "paper.json", "--embedding", "custom", "--embedding-file", "orthogonal.json", "--convention", "paper"],
        0,
    ),
    ("deviations_paper", &["deviations", "paper.json"], 0),
    ("deviations_a_prime", &["deviations", "a_prime.csv"], 0),
    ("embed_paper", &["embed", "paper.json"], 0),
    ("embed_a_prime_orthogonal", &["embed", "a_prime.csv", "--embedding", "orthogonal"], 0),
    ("wedge_file", &["wedge", "vectors.json"], 0),
    ("wedge_flags", &["wedge", "--u", "1,0,0", "--v", "0,1,0"], 0),
    ("plucker_witness", &["plucker", "witness.json"], 0),
    ("diagnose_paper", &["diagnose", "paper.json"], 0),
    ("diagnose_n4", &["diagnose", "--n", "4"], 0),
    ("diagnose_n4_lambda", &["diagnose", "--n", "4", "--lambda", "0.01", "--format", "csv"], 0),
    ("reduce_paper", &["reduce", "paper.json"], 0),
    ("reduce_a_prime", &["reduce", "a_prime.csv"], 0),
    ("reduce_a_prime_csv", &["reduce", "a_prime.csv", "--format", "csv"], 0),
    ("twoform_paper", &["twoform", "paper.json"], 0),
    ("twoform_a_prime", &["twoform", "a_prime.csv"], 0),
];
