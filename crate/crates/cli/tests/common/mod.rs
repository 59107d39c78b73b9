//! Invocations shared by the golden and acceptance tests.

use std::path::PathBuf;
use std::process::{Command, Output};

/// Name of the expected-output file and the command-line arguments.
pub const CASES: &[(&str, &[&str])] = &[
    ("bsat_x", &["bsat", "x"]),
    ("bsat_x2", &["bsat", "x^2"]),
    ("bsat_x2_y2", &["bsat", "x^2+y^2"]),
    ("bsat_cusp", &["bsat", "x^2+y^3"]),
    ("bsat_y2_in_xy", &["bsat", "y^2", "--vars", "x,y"]),
    ("lambda_x", &["lambda", "x"]),
    ("lambda_x2", &["lambda", "x^2"]),
    ("line_half", &["line", "--lambda", "1/2", "--window", "8"]),
    ("line_two", &["line", "--lambda", "2", "--window", "8"]),
    (
        "line_minus_three",
        &["line", "--lambda", "-3", "--window", "8"],
    ),
    (
        "line_two_table",
        &[
            "line", "--lambda", "2", "--window", "8", "--format", "table",
        ],
    ),
    ("line_quotient", &["line", "--quotient", "--window", "4"]),
    (
        "line_quotient_table",
        &["line", "--quotient", "--window", "4", "--format", "table"],
    ),
    ("line_shriek", &["line", "--shriek", "2", "--window", "8"]),
    ("glue_zero_k", &["glue", "tests/fixtures/zero_k.json"]),
    (
        "glue_jordan3",
        &["glue", "tests/fixtures/jordan3_image_s2.json", "--checks"],
    ),
    (
        "glue_mixed",
        &["glue", "tests/fixtures/mixed_entries.json", "--checks"],
    ),
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bsatlab"));
    cmd.current_dir(manifest_dir())
        .args(args)
        .env_remove("BSATLAB_MAX_MS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}
