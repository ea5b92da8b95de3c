//! Exact computation with adic towers of finitely presented modules over a
//! Euclidean domain.
//!
//! Starting from a ring `R` and a prime element `g`, the library builds the
//! direct system `R/(g) -> R/(g^2) -> ...`, recovers the inverse system of
//! reductions from stable hom modules, forms the truncated inverse limit
//! `J_N` with its ring structure, and checks at every finite level that
//! every `R`-linear endomorphism of `J_N` is multiplication by an element of
//! `J_N`.
//!
//! * [`exactalg`]: rings, matrices, Hermite and Smith normal forms.
//! * [`fpmod`]: finitely presented modules, morphisms, hom and tensor.
//! * [`towers`]: adic towers, connecting maps, truncated limits.
//! * [`verify`]: condition and lemma checks producing a [`verify::VerificationReport`].
//!
//! ```
//! use selfsmall::exactalg::{Elem, Ideal, Ring};
//! use selfsmall::towers::AdicTower;
//!
//! let ring = Ring::Integers;
//! let tower = AdicTower::build(ring, Ideal::new(&ring, Elem::from(2)).unwrap(), 3).unwrap();
//! assert_eq!(tower.module(3).order().unwrap(), 8u32.into());
//! ```

pub mod error;
pub mod exactalg;
pub mod fixture;
pub mod fpmod;
pub mod towers;
pub mod verify;

pub use error::{Error, Result};

// Every chapter of the guide is compiled and run as a doctest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-algebra.md")]
    mod exact_algebra {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/towers.md")]
    mod towers {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
