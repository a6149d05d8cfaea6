//! Finite p-groups with derived subgroup of order p: constructions, exact
//! integral homology, Schur multipliers, epicenters and capability.

pub mod capability;
pub mod classifier;
pub mod error;
pub mod group;
pub mod linalg;
pub mod multiplier;

pub use error::{Error, Result};
pub use group::{AbelianInvariants, Group, GroupExpr, Sign, Subgroup};
