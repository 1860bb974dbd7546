//! Constant-dimension subspace codes built from Ferrers diagram rank-metric
//! codes, with exact lower bounds and exhaustive verification.

pub mod cdc;
pub mod cli;
pub mod error;
pub mod ferrers;
pub mod gf;
pub mod linalg;
pub mod rankmetric;
pub mod theorems;
pub mod verify;

pub use error::{Error, Result};
