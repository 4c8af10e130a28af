#![allow(dead_code)]

use std::path::PathBuf;

use gradefactor::data::{discretize, read_ranges, read_raw_table};
use gradefactor::{FormalConcept, FuzzySet, GradedMatrix, ParseMode, Scale, TNorm};

pub fn quarters() -> Scale {
    Scale::new(5, TNorm::Lukasiewicz).unwrap()
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

/// Decathlon scores rescaled onto five grades, as levels 0..=4.
pub const DECATHLON: [[u16; 10]; 5] = [
    [2, 4, 4, 4, 3, 4, 3, 3, 4, 3],
    [4, 4, 3, 3, 2, 4, 3, 2, 4, 2],
    [4, 4, 3, 3, 4, 4, 4, 1, 1, 3],
    [2, 2, 3, 4, 3, 2, 3, 1, 2, 4],
    [3, 3, 2, 2, 3, 4, 1, 2, 1, 3],
];

/// Published object-factor matrix (extents as columns).
pub const PUBLISHED_A: [[u16; 7]; 5] = [
    [2, 4, 3, 4, 3, 3, 4],
    [4, 3, 2, 3, 3, 2, 4],
    [4, 1, 3, 3, 4, 4, 1],
    [2, 2, 4, 2, 3, 3, 2],
    [3, 1, 2, 4, 1, 3, 1],
];

/// Published factor-attribute matrix (intents as rows).
pub const PUBLISHED_B: [[u16; 10]; 7] = [
    [4, 4, 3, 3, 2, 4, 2, 1, 1, 2],
    [2, 4, 4, 4, 3, 4, 3, 3, 4, 3],
    [2, 2, 3, 4, 3, 2, 3, 1, 2, 4],
    [2, 3, 2, 2, 3, 4, 1, 2, 1, 3],
    [3, 3, 3, 3, 3, 3, 4, 1, 1, 3],
    [3, 3, 3, 3, 4, 3, 2, 1, 1, 3],
    [2, 4, 3, 3, 2, 4, 3, 2, 4, 2],
];

pub fn decathlon() -> GradedMatrix {
    GradedMatrix::from_level_rows(quarters(), &DECATHLON).unwrap()
}

pub fn discretized_decathlon() -> GradedMatrix {
    let table = read_raw_table(data_path("decathlon.csv")).unwrap();
    let ranges = read_ranges(data_path("decathlon_ranges.csv")).unwrap();
    discretize(&table, &ranges, quarters(), ParseMode::Strict).unwrap()
}

pub fn published_a() -> GradedMatrix {
    GradedMatrix::from_level_rows(quarters(), &PUBLISHED_A).unwrap()
}

pub fn published_b() -> GradedMatrix {
    GradedMatrix::from_level_rows(quarters(), &PUBLISHED_B).unwrap()
}

/// The published factors as concepts of the decathlon matrix, in order.
pub fn published_concepts() -> Vec<FormalConcept> {
    let ctx = decathlon();
    let (a, b) = (published_a(), published_b());
    (0..7)
        .map(|l| FormalConcept::new(&ctx, a.column_set(l), b.row_set(l)).unwrap())
        .collect()
}

/// Direct max-min Boolean product, independent of the library.
pub fn boolean_product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).any(|(&x, brow)| x && brow[j]))
                .collect()
        })
        .collect()
}

pub fn to_levels(rows: &[Vec<bool>]) -> Vec<Vec<u16>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| u16::from(x)).collect())
        .collect()
}

pub fn set(scale: Scale, levels: &[u16]) -> FuzzySet {
    FuzzySet::from_levels(scale, levels).unwrap()
}
