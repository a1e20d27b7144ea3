//! Compiler for Clifford circuits targeting programmable all-to-all
//! multiqubit entangling gates.

pub mod clifford;
pub mod cost;
mod error;
pub mod gf2;
mod parallel;
pub mod synth;
pub mod verify;

pub use error::{Error, Result};
