#![allow(dead_code)]

pub mod oracles;

use std::path::PathBuf;

use blockeq::harness::{load_case, local_context, BroueCase, LocalContext};

pub fn case_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("cases").join(name)
}

pub fn omega_case() -> BroueCase {
    load_case(&case_path("omega8plus2_local.toml")).unwrap()
}

pub fn a5_case() -> BroueCase {
    load_case(&case_path("a5_l2.toml")).unwrap()
}

pub fn omega_context() -> LocalContext {
    let c = omega_case();
    local_context(&c, c.file.seed, c.file.budget).unwrap()
}

/// Socle layers of P(1) for the order-400 local algebra, top first.
pub const P1_LAYERS: &str = "1\n10\n2 3 4\n9 9\n1 1 5 6 7\n10 10\n2 3 4\n9\n1";

/// Trivial-source summands of dimension 10, one per class of order-5 subgroups, top first.
pub const R_LAYERS: [&str; 3] = ["10 / 3 4 / 9 / 1 5 / 10", "10 / 2 4 / 9 / 1 6 / 10", "10 / 2 3 / 9 / 1 7 / 10"];

/// Summands with a 3-dimensional source, one per class.
pub const U_LAYERS: [&str; 3] = [
    "6 7 / 10 10 / 2 2 3 4 8 8 / 9 9 9 / 1 5 6 6 7 7 / 10 10 / 2 8",
    "5 7 / 10 10 / 2 3 3 4 8 8 / 9 9 9 / 1 5 5 6 7 7 / 10 10 / 3 8",
    "5 6 / 10 10 / 2 3 4 4 8 8 / 9 9 9 / 1 5 5 6 6 7 / 10 10 / 4 8",
];

/// Terms of each complex in degrees −π … −2 as PIM labels, per local simple 2..10.
pub const TERMS: [(&str, &[&[&str]]); 9] = [
    ("2", &[&["2"], &["10"]]),
    ("3", &[&["3"], &["10"]]),
    ("4", &[&["4"], &["10"]]),
    ("9", &[&["9"], &["8", "10", "10"], &["2", "3", "4", "5", "6", "7", "8"]]),
    ("5", &[&["5"], &["8", "10"], &["6", "7", "9"], &["5", "6", "7", "10"]]),
    ("6", &[&["6"], &["8", "10"], &["5", "7", "9"], &["5", "6", "7", "10"]]),
    ("7", &[&["7"], &["8", "10"], &["5", "6", "9"], &["5", "6", "7", "10"]]),
    ("10", &[&["10"], &["5", "6", "7"], &["5", "6", "7", "8"], &["8", "9", "9"]]),
    ("8", &[&["8"], &["8", "8"], &["5", "6", "7"], &["10", "10"], &["8", "9", "9"]]),
];

/// Nonzero cohomology cells per complex as (degree, cell), and the total.
pub const COHOMOLOGY: [(&str, &[(i32, &str)], &str); 9] = [
    ("2", &[(-3, "2"), (-1, "1")], "2-1"),
    ("3", &[(-3, "3"), (-1, "1")], "3-1"),
    ("4", &[(-3, "4"), (-1, "1")], "4-1"),
    ("9", &[(-4, "2/3/4/9"), (-2, "1 ⊕ 1")], "9-4-3-2+1+1"),
    ("10", &[(-5, "1/10"), (-4, "1")], "10"),
    ("5", &[(-5, "3/4/9/5"), (-3, "1")], "5-9+3+4-1"),
    ("6", &[(-5, "2/4/9/6"), (-3, "1")], "6-9+2+4-1"),
    ("7", &[(-5, "2/3/9/7"), (-3, "1")], "7-9+2+3-1"),
    ("8", &[(-6, "2/3/4/9/9/10/5/6/7/8"), (-4, "1")], "1-2-3-4-5-6-7+8+9+9-10"),
];

/// Unitriangular decomposition matrix: rows in perversity order, columns
/// S1 S2 S3 S4 S9 S10 S5 S6 S7 S8, with the local simple each row belongs to.
pub const DECOMPOSITION: [(&str, [i64; 10]); 10] = [
    ("1", [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    ("2", [1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    ("3", [1, 0, 1, 0, 0, 0, 0, 0, 0, 0]),
    ("4", [1, 0, 0, 1, 0, 0, 0, 0, 0, 0]),
    ("9", [1, 1, 1, 1, 1, 0, 0, 0, 0, 0]),
    ("10", [0, 0, 0, 0, 0, 1, 0, 0, 0, 0]),
    ("5", [0, 1, 0, 0, 1, 0, 1, 0, 0, 0]),
    ("6", [0, 0, 1, 0, 1, 0, 0, 1, 0, 0]),
    ("7", [0, 0, 0, 1, 1, 0, 0, 0, 1, 0]),
    ("8", [0, 0, 0, 0, 1, 1, 1, 1, 1, 1]),
];

/// Column order of `DECOMPOSITION` as local simple labels.
pub const DECOMPOSITION_COLUMNS: [&str; 10] = ["1", "2", "3", "4", "9", "10", "5", "6", "7", "8"];

/// Perversity per character row, in case-file order.
pub const PI: [u32; 10] = [0, 3, 3, 3, 4, 5, 5, 5, 5, 6];

/// Socle layers of a module as "a b / c / …", top first.
pub fn layers(alg: &blockeq::modrep::Algebra, m: &blockeq::modrep::GModule) -> String {
    alg.format_socle_series(m).replace('\n', " / ")
}

/// Labels with multiplicity, as a sorted list.
pub fn label_multiset(cell: &str) -> Vec<String> {
    let mut v: Vec<String> = cell.split(['/', '⊕', ' ']).filter(|s| !s.is_empty()).map(str::to_string).collect();
    v.sort();
    v
}
