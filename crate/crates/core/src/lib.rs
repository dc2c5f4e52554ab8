//! Workbench for Boolean function complexity and quantum query networks.
//!
//! The crate computes classical and polynomial complexity measures of
//! Boolean functions (degree, approximate degree, block sensitivity,
//! certificate complexity, decision-tree depth), simulates quantum query
//! networks numerically and symbolically, builds the concrete query
//! algorithms (XOR gadget, exact parity, Grover search for OR, phase
//! estimation counting), and machine-checks the inequalities relating all
//! of these at desk scale.

pub mod algorithms;
pub mod boolfn;
pub mod error;
pub mod measures;
pub mod polynomial;
pub mod qsim;
pub mod report;
pub mod rng;

pub use boolfn::{Family, SymmetricProfile, TruthTable};
pub use error::{Error, Result};
pub use report::{measure_report, MeasureReport};
