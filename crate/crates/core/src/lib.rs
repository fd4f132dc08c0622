//! Topology of real algebraic curves: real and oriented schemes, their
//! bracket notation, classical prohibitions, complex orientation formulas,
//! finite quadratic forms and lattices, and exhaustive enumeration of
//! schemes against known classification tables.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod forms;
pub mod golden;
pub mod notation;
pub mod orientation;
pub mod rules;
pub mod scheme;
pub mod verdict;

pub use error::{Error, Result};
pub use scheme::{CurveClass, OrientedScheme, Oval, RealScheme, Scheme, Surface, TypeClaim};
pub use verdict::{Report, Verdict};
