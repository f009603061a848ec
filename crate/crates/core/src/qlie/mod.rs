//! Quantum Lie algebras of the calculi: functionals, bracket tables, substitutions
//! through the dual algebra generators and their exact verification.

pub mod oracle;
pub mod ring;
pub mod suite;
pub mod table;

pub use oracle::SeriesDual;
pub use ring::DualRing;
pub use suite::{casimir_checks, derive_momentum_conjugation, verify_brackets_suite, ORACLE_ORDER};
pub use table::{bracket_lookup, substitute_functional, FunctionalSymbol, SymPoly};
