//! Shared fixtures for the benchmarks.

use affine_subroots::classification::instantiate_all;
use affine_subroots::{AffineTypeLabel, InstanceGrid, SubrootSystem};

/// Ambients benchmarked by default, from rank one up to rank four.
pub const AMBIENTS: &[&str] = &["A1^1", "G2^1", "D3^2", "D4^3", "B3^1", "A6^2", "D5^2", "F4^1"];

pub fn label(s: &str) -> AffineTypeLabel {
    s.parse().expect("benchmark labels are valid")
}

/// One representative per family of an ambient with modulus at most 3.
pub fn representatives(ambient: &str) -> Vec<SubrootSystem> {
    instantiate_all(label(ambient), &InstanceGrid::sample(3))
        .expect("families instantiate")
        .into_iter()
        .map(|(_, _, sub)| sub)
        .collect()
}
