//! Exact continuous extensions of set functions and their pairwise-independent
//! correlation gaps.
//!
//! All arithmetic is over exact rationals. The LP-defined extensions are
//! solved with an exact simplex method, and the `n = 2` and `n = 3` closed
//! forms can be cross-checked against them.

pub mod closedform;
pub mod distributions;
pub mod error;
pub mod extensions;
pub mod gap;
pub mod io;
pub mod lp;
pub mod rational;
pub mod setfn;
pub mod subset;

pub use error::{Error, Result};
pub use extensions::{Caps, Distribution, DualCertificate, Extension, MarginalVector};
pub use rational::{q, Rational};
pub use setfn::{SetFunction, SubpolytopeLabel, Verdict};
