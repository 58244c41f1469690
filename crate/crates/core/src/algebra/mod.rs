//! Finite-dimensional associative unital algebras.

mod ideal;
mod morphism;
mod semisimplicity;
mod structure;

pub use ideal::{quotient_algebra, Ideal};
pub use morphism::AlgebraMorphism;
pub use semisimplicity::{block_dim, center, central_primitive_idempotents, is_semisimple, radical};
pub use structure::{tensor_algebra, Algebra};
