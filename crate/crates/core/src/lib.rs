//! Spectra of the clamped buckling problem `(-Δ)^l u = -Λ Δu` on intervals and
//! rectangles, together with evaluators and solvers for the universal
//! inequalities that constrain those spectra on Euclidean and spherical domains.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyrec`] builds the exact integer polynomial families `Φ_q`, `F_q`, `G_q`
//!   and the scalar quantities derived from them.
//! * [`galerkin`] assembles exact form matrices of `(-Δ)^k` on a clamped
//!   polynomial basis.
//! * [`eigen`] solves the dense generalized symmetric eigenproblem.
//! * [`bounds`] evaluates the inequalities and turns them into upper bounds.
//! * [`verify`] runs the end-to-end checks on computed spectra.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod eigen;
mod error;
pub mod galerkin;
pub mod polyrec;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use spectrum::{Provenance, Spectrum};
