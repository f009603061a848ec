//! Noncommutative algebra: normal forms, relation sets, confluence and ideal membership.

pub mod algebra;
pub mod confluence;
pub mod gb;
pub mod linalg;
pub mod lorentz;
pub mod membership;
pub mod relations;
pub mod rewriting;
