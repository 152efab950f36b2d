//! Finite rings, 2x2 matrix rings over them, and exhaustive checks on
//! multiplicative maps between them.
//!
//! Elements are dense `u32` indices with `0` the zero and `1` the identity
//! (unless the ring is trivial). Everything here is `no_std` with `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod finring;
pub mod maps;
pub mod report;
pub mod search;
pub mod spec;
pub mod witness;

pub use error::{Error, Result};
pub use finring::{Elem, RingTable, DEFAULT_SIZE_CAP};
pub use maps::MapTable;
pub use report::{CheckReport, Counts};
pub use spec::RingSpec;
