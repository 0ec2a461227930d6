//! Persistent homology engine.
//!
//! Bar codes of Vietoris-Rips filtrations over GF(2) by column reduction and
//! over the reals by Hodge projections, and level persistence of generic
//! piecewise-linear maps on simplicial complexes.
#![no_std]
extern crate alloc;

pub mod algebra;
pub mod complex;
pub mod error;
pub mod gf2;
pub mod hodge;
pub mod level;
pub mod reduction;
pub mod rips;

pub use error::{Error, Result};
