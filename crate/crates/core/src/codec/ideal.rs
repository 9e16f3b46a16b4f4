use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::Error;

/// Header-only view of a packet, as seen by the counting decoder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealPacket {
    Info { seq: u64 },
    Coded { left: u64, right: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReceived {
    /// Sequence numbers released by this packet.
    pub delivered: Range<u64>,
    pub dof_gain: bool,
}

/// Decoder for an idealized code: coded packets never suffer unlucky
/// coefficients, so rank and decodability follow from window geometry alone.
///
/// Erasures are inferred from gaps in the information sequence and from the
/// right edge of coded windows. Every window starts at or before the first
/// undelivered packet, so a coded packet with right edge `r` involves
/// exactly the unknowns `<= r`. With unknowns `e_1 < e_2 < …`, a set of
/// such packets is independent iff at most `i` of them end before
/// `e_{i+1}` for every `i`, and the prefix `e_1..e_j` is solvable iff
/// exactly `j` kept packets end before `e_{j+1}`.
#[derive(Clone, Debug, Default)]
pub struct IdealDecoder {
    delivered_through: u64,
    highest_seen: u64,
    unknown: VecDeque<u64>,
    // Right edges of the independent coded packets kept, sorted.
    pending: Vec<u64>,
}

impl IdealDecoder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn delivered_through(&self) -> u64 {
        self.delivered_through
    }

    pub fn highest_seen(&self) -> u64 {
        self.highest_seen
    }

    /// Known erasures not yet matched by a useful coded packet.
    pub fn outstanding(&self) -> u64 {
        (self.unknown.len() - self.pending.len()) as u64
    }

    fn observe_through(&mut self, seq: u64) {
        while self.highest_seen < seq {
            self.highest_seen += 1;
            self.unknown.push_back(self.highest_seen);
        }
    }

    fn ends_before(&self, seq: u64) -> usize {
        self.pending.partition_point(|&r| r < seq)
    }

    /// Whether a packet ending at `right` is independent of those kept.
    fn independent(&self, right: u64) -> bool {
        let u = self.unknown.len();
        if self.pending.len() + 1 > u {
            return false;
        }
        let first = self.unknown.partition_point(|&e| e <= right);
        (first..u).all(|i| self.ends_before(self.unknown[i]) < i)
    }

    pub fn receive(&mut self, pkt: IdealPacket) -> Result<IdealReceived, Error> {
        let before = self.delivered_through;
        let mut interior = false;
        let dof_gain = match pkt {
            IdealPacket::Info { seq } => {
                if seq <= self.highest_seen {
                    false
                } else {
                    self.observe_through(seq - 1);
                    self.highest_seen = seq;
                    true
                }
            }
            IdealPacket::Coded { left, right } => {
                if right < left {
                    return Err(Error::Malformed("coded window with right < left"));
                }
                if left > self.delivered_through + 1 {
                    return Err(Error::WindowAhead { left, delivered_through: self.delivered_through });
                }
                self.observe_through(right);
                interior = self.unknown.back().is_some_and(|&u| u > right);
                let gain = self.independent(right);
                if gain {
                    let at = self.pending.partition_point(|&r| r <= right);
                    self.pending.insert(at, right);
                }
                gain
            }
        };
        self.decode(interior);
        Ok(IdealReceived { delivered: before + 1..self.delivered_through + 1, dof_gain })
    }

    /// Releases the longest solvable prefix. Unless a coded packet landed
    /// before the last unknown, only the full set can have become solvable.
    fn decode(&mut self, interior: bool) {
        if self.unknown.len() == self.pending.len() {
            self.unknown.clear();
            self.pending.clear();
            self.delivered_through = self.highest_seen;
            return;
        }
        if !interior {
            return;
        }
        let best = (1..self.unknown.len()).rev().find(|&j| self.ends_before(self.unknown[j]) == j);
        if let Some(j) = best {
            let next = self.unknown[j];
            self.unknown.drain(..j);
            self.pending.drain(..j);
            self.delivered_through = next - 1;
        }
    }
}
