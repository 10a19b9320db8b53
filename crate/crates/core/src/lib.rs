//! Exact computations for Krichever–Novikov algebras: basis elements, structure
//! constants and cocycles, highest-weight and wedge modules, Sugawara
//! operators, weights and Casimir operators.

pub mod exact;
pub mod lie;
pub mod realization;
pub mod coeffs;
pub mod algebra;
pub mod report;
pub mod rep;
pub mod sugawara;
pub mod suites;
pub mod config;
