//! Grid coordinates shipped as literal data.

use crate::grid::{GridFile, GridPoint};

fn load(json: &str) -> Vec<GridPoint> {
    serde_json::from_str::<GridFile>(json).expect("bundled grid data parses").points
}

/// A 13-point sample grid with five irreducible pairs.
pub fn example13() -> Vec<GridPoint> {
    load(include_str!("../data/example13.json"))
}

/// Join irreducibles of the E6 minuscule lattice (16 points).
pub fn h6() -> Vec<GridPoint> {
    load(include_str!("../data/h6.json"))
}

/// Join irreducibles of the E7 minuscule lattice (27 points).
pub fn h7() -> Vec<GridPoint> {
    load(include_str!("../data/h7.json"))
}
