//! Packet codecs: the sliding-window streaming code, its counting ("ideal")
//! model, and the systematic block-code baseline.
//!
//! Information packets are numbered from 1. A coded packet carries the window
//! `[left, right]` it protects together with its coefficient vector, so the
//! decoder never needs the encoder's random state.

mod block;
mod ideal;
mod stream;
mod wire;

pub use block::{
    block_decode, block_encode, BlockDecoder, BlockEncoder, BlockOutcome, BlockPacket, BlockParams, IdealBlockDecoder,
};
pub use ideal::{IdealDecoder, IdealPacket, IdealReceived};
pub use stream::{Decoder, Encoder, Received};

use alloc::vec::Vec;

use crate::gf::Gf256;
use crate::linalg::SymbolVector;

/// A systematic packet carrying information packet `seq` verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoPacket {
    pub seq: u64,
    pub payload: SymbolVector,
}

/// A random linear combination of information packets `left..=right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodedPacket {
    pub left: u64,
    pub right: u64,
    pub coeffs: Vec<Gf256>,
    pub payload: SymbolVector,
}

impl CodedPacket {
    pub fn window_len(&self) -> usize {
        (self.right + 1 - self.left) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Packet {
    Info(InfoPacket),
    Coded(CodedPacket),
}
