//! Exact computations with structure groups of conjugation quandles.
//!
//! The structure group `A(Sₙ)` of the conjugation quandle of the symmetric
//! group is modelled as the subgroup of `Sₙ × Z^{P(n)}` cut out by the
//! parity constraint `sign(σ) ≡ Σ_{odd classes} x_λ (mod 2)`. On top of this
//! the crate provides the Dehn-type lift, the extension 2-cocycle, second
//! quandle homology `H₂(Conj(Sₙ))` by two independent routes, and a small
//! backend for finite permutation groups given by conjugation and power
//! relations.

pub mod abelian;
pub mod error;
pub mod generic_cbar;
pub mod homology;
pub mod partitions;
pub mod permutations;
pub mod quandle;
pub mod structure_group;

pub use abelian::{AbelianGroup, IntMatrix};
pub use error::{Error, Result};
pub use partitions::Partition;
pub use permutations::Permutation;
