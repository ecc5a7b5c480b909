//! Exact rational invariants of rationally null-homologous Legendrian and
//! transverse knots, cabling arithmetic for rational open books, and the
//! Legendrian classification data of rational unknots in lens spaces.
//!
//! Every module is generic over the integer backend ([`arith::Int`]). The
//! aliases below fix the backend: `i64` for fast sweeps (overflow panics), and
//! `BigInt` when inputs are unbounded.

pub mod arith;
pub mod cabling;
pub mod cli;
pub mod foliation;
pub mod invariants;
pub mod lens;
pub mod unknot;

use num_bigint::BigInt;

pub use arith::{ArithError, Int};
pub use invariants::{Sign, SingularityCounts};

pub type Rational = arith::Rational<BigInt>;
pub type Rational64 = arith::Rational<i64>;
pub type LensSpace = lens::LensSpace<BigInt>;
pub type LensSpace64 = lens::LensSpace<i64>;
pub type SeifertData = invariants::SeifertData<BigInt>;
pub type SeifertData64 = invariants::SeifertData<i64>;
pub type LegendrianRecord = invariants::LegendrianRecord<BigInt>;
pub type LegendrianRecord64 = invariants::LegendrianRecord<i64>;
pub type CableParams = cabling::CableParams<BigInt>;
pub type CableParams64 = cabling::CableParams<i64>;
