//! Exact computation of the genus-one invariant of the cubic Fermat
//! Landau-Ginzburg pair, by intersection theory on the three-spin moduli
//! and by torus localization on mixed-spin-P fields.

pub mod atoms;
pub mod cli;
pub mod error;
pub mod expr;
pub mod laurent;
pub mod local_algebra;
pub mod m13;
pub mod msp;
pub mod props;
pub mod rational;
pub mod report;
pub mod tables;
pub mod threespin;

pub use error::{Error, Result};
pub use rational::Rational;
