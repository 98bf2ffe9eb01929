//! Component census of the locus of Galois subspaces for an elliptic curve
//! embedded in `P^(n-1)` by a complete linear system of degree `n`.
//!
//! - [`modarith`]: factorization, divisor sums, CRT, quadratic congruence root counts
//! - [`torsion`]: `E[m] = (Z/mZ)^2`, automorphism matrices, canonical subgroups, closure oracle
//! - [`stable_count`]: `psi_ell(E, m)` by closed form, construction and oracle
//! - [`locus`]: disjoint counts, inventories and the full component census
//! - [`ecmodel`]: finite-field witness curves realizing the automorphism groups
//! - [`render`]: table, CSV and JSON output
//! - [`verify`]: the cross-validation sweep

pub mod ecmodel;
pub mod error;
pub mod locus;
pub mod modarith;
pub mod render;
pub mod stable_count;
pub mod torsion;
pub mod verify;

pub use ecmodel::{CurveModel, CurvePoint};
pub use error::{Error, Result};
pub use locus::{component_census, disjoint_count, disjoint_group_inventory, CensusReport, ComponentRecord};
pub use render::OutputFormat;
pub use stable_count::{psi, JClass};
pub use torsion::{AutAction, Ell, TorsionSubgroup};
