//! Finitely presented modules over a Euclidean domain, their morphisms,
//! and the functor calculus on them.
//!
//! A module is `R^g` modulo the column span of a relation matrix; a
//! morphism is the matrix of generator images. Everything that decides
//! equality (of elements, maps, submodules) reduces to linear solving over
//! the ring, and every isomorphism type is read off the Smith form.

mod exact;
mod functors;
mod module;
mod morphism;

pub use exact::{find_isomorphism, is_exact, short_exactness, Exactness, ShortExactSeq};
pub use functors::{
    cokernel, hom_module, image, induced_hom, kernel, quotient_by, same_submodule, submodule,
    submodule_contains, submodule_quotient, tensor_module, tensor_morphisms, HomModule, Image,
    InducedHom, Quotient, Sub, SubQuotient, TensorModule, Variance,
};
pub use module::{FpModule, Normalized};
pub use morphism::{is_well_defined, ModuleMorphism};
