//! Weighted walks in the three-quarter plane: exact enumeration, the kernel
//! curve, its group of birational involutions and a D-algebraicity classifier.

pub mod arith;
pub mod classify;
pub mod curve;
pub mod error;
pub mod kernel;
pub mod model;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
