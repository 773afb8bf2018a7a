//! Exact computations on strict partitions and the algebra of supersymmetric
//! functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: strict, odd and ordinary partitions, shifted diagrams,
//!   corners, shifted tableau counts and small integer helpers.
//! - [`gamma`]: elements of the algebra generated by odd power sums, stored
//!   sparsely in the `p_rho` basis.
//! - [`schurq`]: Schur P/Q-functions and spin character values.
//! - [`factorial`]: factorial Schur P*-functions and the isomorphism sending
//!   `P_lambda` to `P*_lambda`.
//! - [`frakp`]: the inhomogeneous basis obtained as the image of `p_rho` under
//!   that isomorphism, and basis changes to and from it.
//! - [`plancherel`]: shifted Plancherel measures, brute-force averages and
//!   closed-form averages as polynomials in `n`.
//! - [`content`]: content evaluations, `hat p_k`, and the corner functions
//!   `psi_k`.
//! - [`explorer`]: structure constants in the new basis, the `deg1` scan and
//!   the `E_n[p_2]` experiment.
//! - [`verify`]: the built-in table of identity checks used by `spinplan verify`.
//!
//! Every quantity is an exact rational; nothing is ever rounded.

pub mod cache;
pub mod content;
pub mod error;
pub mod explorer;
pub mod factorial;
pub mod frakp;
pub mod gamma;
pub mod partitions;
pub mod plancherel;
pub mod poly;
pub mod rational;
pub mod schurq;
pub mod series;
pub mod verify;


pub use error::{Error, Result};

pub use content::{EvenPolynomial, OrdinaryPSumExpr};
pub use frakp::FrakExpansion;
pub use gamma::GammaElement;
pub use partitions::{Cell, OddPartition, OrdinaryPartition, StrictPartition};

pub use plancherel::PolynomialInN;
pub use rational::Rational;
pub use schurq::CharacterTable;
