//! Independent reference computations used by the test suites.
//!
//! Nothing here shares code with the main crate: polynomials use `i128`,
//! integrals use closed forms, the plate eigenvalue comes from finite
//! differences, and weight optimization is brute force.

pub mod closed_form;
pub mod delta;
pub mod fd;
pub mod poly;
pub mod roots;
