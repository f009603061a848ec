//! Hopf structure of the group algebras and the ideals defining their calculi.

pub mod axioms;
pub mod ideal;
pub mod structure;
pub mod tensor;

pub use axioms::hopf_axiom_suite;
pub use ideal::{ideal_theorem_suite, IdealElements, Quotient};
pub use structure::GroupHopf;
pub use tensor::TensorElement;
