//! Fractional electromagnetic plane waves.
//!
//! The time- and space-fractional wave equations with Caputo derivatives of
//! order 2γ (resp. 2δ), 0 < γ, δ ≤ 1, admit separated solutions built from
//! the Mittag-Leffler function E_{2γ}. This crate evaluates those solutions,
//! provides the numerical Caputo operators needed to check them
//! independently, and drives parameter sweeps and residual studies from the
//! `fracwave` command line tool.

// Reference constants keep every published digit, and `!(x > 0.0)` style
// checks are there to reject NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod caputo;
pub mod cli;
pub mod error;
pub mod special;
pub mod verification;
pub mod wave;

pub use error::{Error, Result};
