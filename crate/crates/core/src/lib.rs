//! Screening momenta of positive definite integral lattices.

// matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod intmat;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod pairs;
pub mod rank2;
pub mod report;
pub mod screeners;

pub use error::{Error, Result};
pub use lattice::{is_positive_definite, DualVector, Lattice, LatticeVector, QuotientInvariants};
