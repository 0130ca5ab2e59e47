//! Exact constructions around the Drinfeld double `I𝔟 = 𝔟 ⋉ 𝔟*` of a Borel
//! subalgebra of a simple Lie algebra: the contraction family `𝔤ᵉ₊`, the
//! quotient `I̅𝔟`, truncated loop-algebra realizations, extended Dynkin
//! diagram automorphisms and their lifts, and derivation-level checks of the
//! automorphism group structure.
//!
//! Everything is generic over [`Scalar`]; the verification paths use the exact
//! instance [`Q`].

pub mod autgroup;
pub mod chevalley;
pub mod diagaut;
pub mod doubles;
pub mod error;
pub mod linalg;
pub mod looptrunc;
pub mod liealg;
pub mod rootsys;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rationals.
pub type Q = num_rational::BigRational;
/// Dense matrix over [`Q`].
pub type QMatrix = linalg::Matrix<Q>;
/// Lie algebra over [`Q`].
pub type QLieAlgebra = liealg::LieAlgebra<Q>;
/// Algebra map over [`Q`].
pub type QAlgebraMap = liealg::AlgebraMap<Q>;
