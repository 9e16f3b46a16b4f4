//! Low in-order delay streaming over lossy links with delayed feedback.
//!
//! The crate is `no_std` and needs only `alloc`. It provides GF(2^8)
//! arithmetic and incremental elimination ([`gf`], [`linalg`]), the
//! sliding-window streaming code and a block-code baseline ([`codec`]),
//! transmitter policies ([`policy`]), a slotted single-path simulator
//! ([`sim`]), analytic bounds and trace checks ([`analysis`]) and the
//! multipath scheduler ([`multipath`]).

#![no_std]
// Range checks are written negated so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod codec;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod multipath;
pub mod policy;
pub mod sim;

pub use error::Error;
