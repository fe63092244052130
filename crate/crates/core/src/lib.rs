//! Exact computations with diagonal braidings of Cartan type, their Nichols
//! algebras, and the pointed Hopf algebras `U(D)` attached to generic data of
//! finite Cartan type.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalars`]: monomials, Laurent polynomials and their fraction field.
//! * [`braiding`]: components, Cartan detection, twisting and classification.
//! * [`rootsys`]: positive roots, longest words and root numerations.
//! * [`freealg`]: the tensor algebra, braided commutators, shuffles and Gram ranks.
//! * [`uqd`]: generic data, PBW normal forms, coproducts and isomorphisms.

#![allow(clippy::needless_range_loop)]

pub mod braiding;
pub mod error;
pub mod freealg;
pub mod limits;
pub mod linalg;
pub mod rootsys;
pub mod scalars;
pub mod uqd;

pub use braiding::{BraidingMatrix, CartanMatrix, Classification, ComponentPartition};
pub use error::{Error, Result};
pub use limits::Limits;
pub use rootsys::RootData;
pub use scalars::{Exponents, LaurentPoly, MonomialScalar, ParamNames, ScalarFraction};
pub use uqd::{GenericDatum, PBWElement};
