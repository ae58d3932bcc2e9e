//! Two generators of `M_2(Z)^16` and the conjugacy classes of `M_2(F_2)`.
//!
//! The constants below are mirrored in `fixtures/table16.json` and
//! `fixtures/tableconj.json`; tests pin both the fixture checksums and their
//! agreement with these arrays.

use serde::Serialize;

use crate::construct::{GeneratorFamily, Provenance};
use crate::domain::CoeffDomain;
use crate::error::Result;
use crate::generation::MatTuple;
use crate::matrix::Mat;

type Raw = [[i64; 2]; 2];

const E11: Raw = [[1, 0], [0, 0]];
const E12: Raw = [[0, 1], [0, 0]];
const E21: Raw = [[0, 0], [1, 0]];
const E22: Raw = [[0, 0], [0, 1]];
const SWAP: Raw = [[0, 1], [1, 0]];
const FIB: Raw = [[0, 1], [1, 1]];
const ONES: Raw = [[1, 1], [1, 1]];

/// Cross-section `i` is `(A_i, B_i)`, listed in reading order of the table.
pub const TABLE16: [(Raw, Raw); 16] = [
    (E11, SWAP),
    (E11, ONES),
    (E11, [[1, 1], [1, 0]]),
    (E11, FIB),
    (E12, E21),
    (E12, FIB),
    (E12, SWAP),
    (E12, [[0, 0], [1, 1]]),
    (FIB, SWAP),
    (FIB, E12),
    (FIB, E11),
    (FIB, E22),
    (SWAP, E11),
    (SWAP, E12),
    (SWAP, FIB),
    (SWAP, [[1, 1], [0, 1]]),
];

/// The two pairs of cross-sections (0-based) whose first and second
/// components share conjugacy classes mod 2, so eigenvalues alone do not
/// separate them.
pub const MARKED_PAIRS: [(usize, usize); 2] = [(2, 3), (10, 11)];

/// Nontrivial conjugacy classes of `M_2(F_2)` under `GL_2(F_2)`, with
/// eigenvalues valid over every prime field.
pub const CONJ_CLASSES: [(&[Raw], &str); 4] = [
    (
        &[
            E11,
            E22,
            [[1, 0], [1, 0]],
            [[0, 0], [1, 1]],
            [[1, 1], [0, 0]],
            [[0, 1], [0, 1]],
        ],
        "0, 1",
    ),
    (
        &[E12, E21, ONES],
        "0, 0 for the first two; 0, 2 for the third",
    ),
    (&[FIB, [[1, 1], [1, 0]]], "the roots of t^2 - t - 1"),
    (
        &[[[1, 0], [1, 1]], [[1, 1], [0, 1]], SWAP],
        "1, 1 for the first two; 1, -1 for the third",
    ),
];

fn mat(d: &CoeffDomain, r: &Raw) -> Mat {
    Mat::from_i64_rows(d, &[&r[0], &r[1]])
}

/// The 16 cross-sections over `Z`.
pub fn table16() -> Vec<(Mat, Mat)> {
    let z = CoeffDomain::Integers;
    TABLE16
        .iter()
        .map(|(a, b)| (mat(&z, a), mat(&z, b)))
        .collect()
}

/// The two generators of `M_2(Z)^16`.
pub fn table16_generators() -> [MatTuple; 2] {
    let (a, b): (Vec<Mat>, Vec<Mat>) = table16().into_iter().unzip();
    [MatTuple::new(a).unwrap(), MatTuple::new(b).unwrap()]
}

/// The table as a verified integer family (lattice closure plus closure mod 2, 3, 5).
pub fn table16_family() -> Result<GeneratorFamily> {
    GeneratorFamily::from_tuples(&table16_generators(), Provenance::Table16)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClass {
    pub members: Vec<Mat>,
    pub eigenvalues: String,
}

/// The classes over `domain` (entries are 0 and 1).
pub fn table_conj_classes(domain: &CoeffDomain) -> Vec<ConjClass> {
    CONJ_CLASSES
        .iter()
        .map(|(members, eig)| ConjClass {
            members: members.iter().map(|r| mat(domain, r)).collect(),
            eigenvalues: eig.to_string(),
        })
        .collect()
}
