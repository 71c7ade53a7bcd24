//! Steady-state qubit entanglement between distant cavity atoms driven by
//! a common source of broadband two-mode squeezed light.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod models;
pub mod protocols;
pub mod quadrature;
pub mod steady;

pub use error::{Error, Result};
