#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, exit }
}

/// Every documented command over the example corpus. Paths are relative to
/// the crate root; later cases may read goldens written by earlier ones.
pub const CASES: &[Case] = &[
    case("nwd_zeros", &["nwd", "tests/corpus/auto_zeros.json"], 0),
    case(
        "nwd_no_double_one",
        &["nwd", "tests/corpus/auto_no_double_one.json"],
        0,
    ),
    case("nwd_full", &["nwd", "tests/corpus/auto_full.json"], 1),
    case(
        "nwd_interior",
        &["nwd", "tests/corpus/auto_interior.json"],
        1,
    ),
    case("nwd_truncated", &["nwd", "tests/corpus/truncated.json"], 2),
    case(
        "defeat_zeros_from",
        &[
            "defeat",
            "tests/corpus/pres_zeros_from.json",
            "--horizon",
            "8",
        ],
        0,
    ),
    case(
        "defeat_alternating",
        &[
            "defeat",
            "tests/corpus/pres_alternating.json",
            "--horizon",
            "16",
        ],
        0,
    ),
    case(
        "defeat_empty",
        &["defeat", "tests/corpus/pres_empty.json", "--horizon", "8"],
        0,
    ),
    case(
        "defeat_full_layer",
        &["defeat", "tests/corpus/pres_full_layer.json"],
        2,
    ),
    case(
        "witness_ones_cylinder",
        &[
            "witness",
            "tests/corpus/sched_ones_periodic.json",
            "tests/corpus/constraint_cylinder_one.json",
            "--pad",
            "1",
        ],
        0,
    ),
    case(
        "witness_finite_full",
        &[
            "witness",
            "tests/corpus/sched_finite.json",
            "tests/corpus/constraint_full.json",
        ],
        0,
    ),
    case(
        "witness_long_periodic",
        &[
            "witness",
            "tests/corpus/sched_long_periodic.json",
            "tests/corpus/constraint_cylinder_000.json",
        ],
        0,
    ),
    case(
        "witness_defeat_schedule",
        &[
            "witness",
            "tests/golden/defeat_alternating.json",
            "tests/corpus/constraint_full.json",
        ],
        0,
    ),
    case(
        "witness_sparse",
        &[
            "witness",
            "tests/corpus/sched_sparse.json",
            "tests/corpus/constraint_cylinder_000.json",
        ],
        2,
    ),
    case(
        "verify_alternating",
        &[
            "verify",
            "tests/corpus/pres_zeros_from.json",
            "tests/golden/defeat_zeros_from.json",
            "tests/corpus/word_alternating.json",
        ],
        0,
    ),
    case(
        "verify_zeros",
        &[
            "verify",
            "tests/corpus/pres_zeros_from.json",
            "tests/golden/defeat_zeros_from.json",
            "tests/corpus/word_zeros.json",
        ],
        0,
    ),
    case(
        "verify_witness_output",
        &[
            "verify",
            "tests/corpus/pres_alternating.json",
            "tests/golden/defeat_alternating.json",
            "tests/golden/witness_defeat_schedule.json",
            "--horizon",
            "24",
        ],
        0,
    ),
    case(
        "verify_bad_schedule",
        &[
            "verify",
            "tests/corpus/pres_zeros_from.json",
            "tests/corpus/sched_zeros_periodic.json",
            "tests/corpus/word_zeros.json",
            "--horizon",
            "4",
        ],
        1,
    ),
    case(
        "verify_bad_word",
        &[
            "verify",
            "tests/corpus/pres_zeros_from.json",
            "tests/corpus/sched_finite.json",
            "tests/corpus/word_bad_symbol.json",
        ],
        2,
    ),
    case(
        "tailsum_one_zero",
        &[
            "tailsum",
            "tests/corpus/word_one_zero.json",
            "tests/corpus/u_half.json",
            "--horizon",
            "4",
        ],
        0,
    ),
    case(
        "tailsum_zeros",
        &[
            "tailsum",
            "tests/corpus/word_zeros.json",
            "tests/corpus/u_half.json",
            "--horizon",
            "4",
        ],
        1,
    ),
    case(
        "tailsum_ones_away",
        &[
            "tailsum",
            "tests/corpus/word_ones.json",
            "tests/corpus/u_fifth.json",
            "--horizon",
            "8",
        ],
        1,
    ),
    case(
        "corollary_half",
        &[
            "corollary",
            "tests/corpus/u_half.json",
            "--start",
            "2",
            "--period",
            "4",
            "--depth",
            "8",
            "--horizon",
            "24",
        ],
        0,
    ),
    case(
        "corollary_small",
        &[
            "corollary",
            "tests/corpus/u_small.json",
            "--start",
            "8",
            "--period",
            "1",
            "--depth",
            "16",
            "--horizon",
            "16",
        ],
        0,
    ),
    case(
        "corollary_not_adherent",
        &[
            "corollary",
            "tests/corpus/u_away.json",
            "--start",
            "2",
            "--period",
            "4",
        ],
        2,
    ),
    case(
        "tailsum_corollary_word",
        &[
            "tailsum",
            "tests/golden/corollary_half.json",
            "tests/corpus/u_half.json",
            "--horizon",
            "12",
        ],
        0,
    ),
    case(
        "remark2_single",
        &["remark2", "tests/corpus/r2_single.json"],
        0,
    ),
    case(
        "remark2_several",
        &["remark2", "tests/corpus/r2_several.json"],
        0,
    ),
    case(
        "remark2_several_double",
        &["remark2", "tests/corpus/r2_several.json", "--psi", "double"],
        0,
    ),
    case(
        "remark2_conflict",
        &["remark2", "tests/corpus/r2_conflict.json"],
        2,
    ),
    case(
        "remark2_periodic",
        &["remark2", "tests/corpus/r2_periodic.json"],
        2,
    ),
];

pub fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub struct Run {
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    pub exit: i32,
}

pub fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_baire"))
        .args(args)
        .current_dir(crate_dir())
        .output()
        .expect("binary runs");
    Run {
        stdout: out.stdout,
        stderr: out.stderr,
        exit: out.status.code().expect("exit code"),
    }
}

/// Golden file for a case: stdout for verdicts, stderr for usage errors.
pub fn golden_path(c: &Case) -> PathBuf {
    let ext = if c.exit == 2 { "err" } else { "json" };
    crate_dir()
        .join("tests/golden")
        .join(format!("{}.{ext}", c.name))
}

impl Run {
    pub fn golden_bytes(&self) -> &[u8] {
        if self.exit == 2 {
            &self.stderr
        } else {
            &self.stdout
        }
    }
}
