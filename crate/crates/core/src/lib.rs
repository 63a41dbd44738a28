//! Exact verification and construction of tiling pairs and spectral pairs in the
//! finite groups `Z_n^d`.
//!
//! Fourier coefficients of integer masks are decided exactly through cyclotomic
//! remainders, so every verdict the crate produces is free of rounding error.

pub mod acceptance;
pub mod arith;
pub mod cli;
pub mod construct;
pub mod cyclotomic;
pub mod error;
pub mod fourier;
pub mod group;
pub mod verify;

pub use error::{Error, Result};
pub use fourier::{PointMultiset, SignedFunction};
pub use group::{CyclicClass, GroupContext, GroupElement, PrimePowerSplit, SubgroupDesc};
