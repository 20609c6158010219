//! Almost-primitive characteristic classes and the linear relations they
//! impose on characteristic numbers of manifold bundles.
//!
//! * [`linalg`]: exact rational linear algebra.
//! * [`graded`]: `H*(BSO;Q)` and `H*(BSO(d);Q)`, the coproduct, `ph <-> p`,
//!   and restriction.
//! * [`primitives`]: the almost-primitive and near-primitive subspaces.
//! * [`bordism`]: rational oriented bordism classes via Pontryagin numbers.
//! * [`constraints`]: the linear system tying together the bordism classes
//!   of total space, base and fibre with the kappa numbers of a bundle.
//! * [`bundle`]: explicit projective bundles over complex projective space,
//!   used as an independent check of those relations.

pub mod bordism;
pub mod bundle;
pub mod cli;
pub mod constraints;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod primitives;

pub use error::{Error, Result};
