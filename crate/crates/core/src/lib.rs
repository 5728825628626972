//! Exact construction of few-cosine spherical codes.
//!
//! Codes are orbits of the all-ones vector under groups of signed coordinate
//! permutations acting on `R^{2^d}`. The groups come from Reed-Muller codes
//! (diagonal sign changes), affine permutation groups, and 1-cocycles that
//! twist the two together. Everything is exact: codewords are bit words,
//! vectors have integer coordinates, and cosines are reduced fractions.
//!
//! Layout:
//! - [`gf2`]: linear algebra over F₂ on packed words.
//! - [`rm`]: Reed-Muller codes and the defect of a second-order codeword.
//! - [`mono`]: monomial group elements, closures, orbits and the fixed
//!   subgroups of the 16-point setting.
//! - [`cocycle`]: 1-cocycles of finite groups on F₂-modules, near-derivations
//!   and the unidefect filter.
//! - [`sphere`]: spherical and binary codes, cosines, reductions, association
//!   schemes and the binary automorphism search.
//! - [`forge`]: the catalog of named constructions, the orbit-union search and
//!   file formats used by the `forge` binary.

pub mod cocycle;
pub mod error;
pub mod forge;
pub mod gf2;
pub mod mono;
pub mod rm;
pub mod sphere;

pub use error::{Error, Result};
