//! Maximal closed subroot systems of real affine root systems.
//!
//! The crate realizes finite and affine root systems exactly (doubled
//! integer coordinates and doubled δ-grades), models subroot systems by
//! their per-root grade cosets, constructs every family of maximal closed
//! subroot systems of the irreducible affine types, recognizes affine types,
//! and verifies all of it with a windowed brute-force closure oracle.

pub mod affine_roots;
pub mod chains_pi;
pub mod classification;
pub mod error;
pub mod finite_roots;
pub mod labels;
pub mod oracle;
pub mod subroot_model;

pub use affine_roots::{AffineRoot, AffineRootSystem, LengthClass, Window};
pub use chains_pi::{enumerate_closed, extract_pi_system, ChainConfig, ChainNode, PiSystem};
pub use classification::{
    affine_table, enumerate_families, instantiate, type_of, FamilyKind, InstanceGrid, MaximalFamily, Params,
};
pub use error::{Error, Result};
pub use finite_roots::{FiniteRoot, FiniteRootSystem};
pub use labels::{AffineTypeLabel, ComponentLabel, Family, FiniteTypeLabel, TypeSum};
pub use oracle::{verify_maximal, MaximalityReport, OracleConfig};
pub use subroot_model::{Coset, GradeFunction, SubrootSystem};
