//! Asymmetric quantum CSS and stabilizer codes built from classical codes
//! over exact finite fields, with exhaustive distance oracles.

pub mod budget;
pub mod combinators;
pub mod css;
pub mod error;
pub mod families;
pub mod galois;
pub mod linalg;
pub mod lincode;
pub mod sample;
pub mod symplectic;
pub mod table;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
