//! Adic towers: the direct system `R/(g) -> R/(g²) -> ...`, the inverse
//! system of connecting maps recovered from stable homs, and truncations
//! `J_N` of the inverse limit.

mod limit;
mod system;
mod tower;

pub use limit::{CoherentElement, TruncatedLimit};
pub use system::{mittag_leffler_check, InverseSystem, MittagLeffler};
pub use tower::{AdicTower, StableHom};
