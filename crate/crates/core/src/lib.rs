//! Exact computations in the free finite-colimit completion `Fin(X)` of a
//! finite k-linear category, in categories of finite-dimensional modules,
//! and in their tensor products.

pub mod error;
pub mod algebra;
pub mod linalg;
pub mod freyd;
pub mod modcat;
pub mod sample;
pub mod semisimple;
pub mod verify;

pub use error::{Error, Result};
