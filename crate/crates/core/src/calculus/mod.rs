//! Bicovariant differential calculi on the group variants.

pub mod complex;
pub mod forms;
pub mod stated;
pub mod structure;
pub mod suite;

pub use forms::{ConstForm, ConstRaw, Form, FormBasis, RawTwoForm, TwoForm};
pub use structure::{Calculus, Exterior};
pub use complex::{Complex, RightBasis};
pub use suite::calculus_consistency_suite;
