//! Constant-dimension subspace codes over finite fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: `GF(q)` and `GF(q^m)` arithmetic, dense matrices, RREF,
//!   subspaces and Gaussian coefficients.
//! * [`rank_codes`]: Gabidulin (MRD) codes and their rank distribution.
//! * [`grmc`]: rank-metric codes with restricted rank sets.
//! * [`ferrers`]: Ferrers diagrams, Ferrers-diagram rank-metric codes and
//!   echelon-Ferrers forms.
//! * [`cdc`]: lifting, multilevel and combined constructions of
//!   constant-dimension codes.
//! * [`bounds`]: exact lower and upper bounds and the reference tables.
//! * [`verify`]: minimum-distance and structure checks.
//! * [`io`]: text formats for codes and bound tables.

pub mod algebra;
pub mod bounds;
pub mod cdc;
pub mod error;
pub mod ferrers;
pub mod grmc;
pub mod io;
pub mod rank_codes;
pub mod sampling;
pub mod verify;

pub use algebra::{
    gaussian_coefficient, subspace_distance, ExtField, Field, FiniteField, MatGF, Subspace,
};
pub use bounds::{BoundRecord, TableId};
pub use cdc::{Group, GroupKind, IdentifyingVectorFamily, SubspaceCode};
pub use error::{Error, Result};
pub use ferrers::{EchelonFerrersPattern, FdrmCode, FerrersDiagram};
pub use grmc::Grmc;
pub use rank_codes::{GabidulinCode, LinearMatrixCode, RankDistribution};
pub use sampling::Mcg64;
pub use verify::{VerifyMode, VerifyReport};
