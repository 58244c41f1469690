//! The abelian category of finite-dimensional modules over a finite-dimensional algebra.

mod hom;
mod module;
mod ops;

pub use hom::{are_isomorphic, find_isomorphism, hom_space};
pub use module::{Module, ModuleMorphism};
pub use ops::{
    biggest_quotient, cokernel, factor_through_epi, factor_through_mono, image, is_exact, kernel, quotient,
    restrict_morphism, restrict_scalars, spin, submodule, tensor_modules, tensor_modules_over, tensor_morphisms,
    ShortExactSequence,
};
