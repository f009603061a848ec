//! Exact symbolic engine for the κ-Poincaré and κ-Weyl groups, their bicovariant
//! differential calculi and quantum Lie algebras.

pub mod calculus;
pub mod error;
pub mod expr;
pub mod hopf;
pub mod ncalg;
pub mod qlie;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
pub use ncalg::algebra::{Algebra, Element, Key};
pub use ncalg::relations::{Dual, Group, Variant};
pub use report::{Check, Report, Status};
pub use ring::{Metric, Scalar, Q};
