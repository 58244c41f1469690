//! The free finite-colimit completion `Fin(X)` of a presented k-linear category.

mod additive;
mod category;
mod colimits;
mod eval;
mod object;
mod tensor;
mod weak_kernel;

pub use additive::{hom_dim, injection, projection, AddMorphism, AddObject};
pub use category::{same_category, tensor_presented, CategoryRepr, CategoryShape, ComposeRepr, HomsRepr, PresentedCategory};
pub use colimits::{
    coequalizer, coimage, coimage_to_image, coproduct, coproduct_projections, cokernel, image, image_coimage_check, kernel,
    pushout, zero,
};
pub use eval::{box_eval_isomorphism, eval_morphism, eval_presentation, eval_to_modules};
pub use object::{
    extend_along, factor_through, hom_basis, hom_dimension, inverse, morphism_equal, postcompose_injective,
    precompose_injective, FreydMorphism, FreydObject, FreydObjectRepr,
};
pub use tensor::{box_tensor, box_tensor_in, box_tensor_morphisms};
pub use weak_kernel::{
    check_weak_kernel, weak_kernel, weak_kernel_for_algebra, DiscreteWeakKernels, HomFiniteWeakKernels, SigmaWeakKernels,
    WeakKernelOracle,
};
