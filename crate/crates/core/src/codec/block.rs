use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::InfoPacket;
use crate::error::Error;
use crate::gf::{self, Gf256};
use crate::linalg::{CoeffMatrix, SymbolVector};

/// Systematic `(n, k)` block code parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockParams {
    k: usize,
    n: usize,
}

impl BlockParams {
    pub fn new(k: usize, n: usize) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::InvalidParameter("block size k must be at least 1"));
        }
        if n <= k {
            return Err(Error::InvalidParameter("block length n must exceed k"));
        }
        Ok(BlockParams { k, n })
    }

    /// Rate matched to loss `p`: `n - k = ceil(k p / (1 - p))`, at least one.
    pub fn matched(k: usize, p: f64) -> Result<Self, Error> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::InvalidParameter("loss rate must lie in [0, 1)"));
        }
        let r = libm::ceil(k as f64 * p / (1.0 - p) - 1e-9).max(1.0) as usize;
        Self::new(k, k + r)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// Global information sequence number of position `index < k` in `block`.
    pub fn seq(&self, block: u64, index: usize) -> u64 {
        block * self.k as u64 + index as u64 + 1
    }
}

/// One of the `n` packets of a block. Indices below `k` are systematic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPacket {
    pub block: u64,
    pub index: usize,
    pub coeffs: Vec<Gf256>,
    pub payload: SymbolVector,
}

impl BlockPacket {
    pub fn is_systematic(&self, params: &BlockParams) -> bool {
        self.index < params.k
    }
}

fn unit(k: usize, i: usize) -> Vec<Gf256> {
    let mut v = vec![Gf256::ZERO; k];
    v[i] = Gf256::ONE;
    v
}

fn coded_packet<R: Rng + ?Sized>(
    block: u64,
    index: usize,
    infos: &[SymbolVector],
    payload_len: usize,
    rng: &mut R,
) -> BlockPacket {
    let mut payload = vec![0u8; payload_len];
    let coeffs = infos
        .iter()
        .map(|u| {
            let c = Gf256(rng.gen());
            gf::mul_add_assign(&mut payload, u, c);
            c
        })
        .collect();
    BlockPacket { block, index, coeffs, payload }
}

/// Encodes one full block: `k` systematic packets followed by `n - k`
/// random combinations of the block.
pub fn block_encode<R: Rng + ?Sized>(
    params: &BlockParams,
    block: u64,
    infos: &[SymbolVector],
    rng: &mut R,
) -> Result<Vec<BlockPacket>, Error> {
    if infos.len() != params.k {
        return Err(Error::DimensionMismatch { expected: params.k, got: infos.len() });
    }
    let payload_len = infos[0].len();
    if let Some(bad) = infos.iter().find(|u| u.len() != payload_len) {
        return Err(Error::DimensionMismatch { expected: payload_len, got: bad.len() });
    }
    let mut out: Vec<BlockPacket> = infos
        .iter()
        .enumerate()
        .map(|(i, u)| BlockPacket { block, index: i, coeffs: unit(params.k, i), payload: u.clone() })
        .collect();
    for index in params.k..params.n {
        out.push(coded_packet(block, index, infos, payload_len, rng));
    }
    Ok(out)
}

/// Recovers the `k` information payloads of a block from any packets of it
/// that span the full space.
pub fn block_decode(params: &BlockParams, packets: &[BlockPacket]) -> Result<Vec<SymbolVector>, Error> {
    let payload_len = packets.first().map_or(0, |p| p.payload.len());
    let mut m = CoeffMatrix::with_symbols(params.k, 1, payload_len);
    for p in packets {
        m.insert(&p.coeffs, &p.payload)?;
    }
    m.solve()
}

/// Streaming front end for the block code: the transmitter fills a block
/// one information packet at a time, then emits its coded packets.
#[derive(Clone, Debug)]
pub struct BlockEncoder {
    params: BlockParams,
    payload_len: usize,
    block: u64,
    infos: Vec<SymbolVector>,
    coded_sent: usize,
}

impl BlockEncoder {
    pub fn new(params: BlockParams, payload_len: usize) -> Self {
        BlockEncoder { params, payload_len, block: 0, infos: Vec::with_capacity(params.k), coded_sent: 0 }
    }

    pub fn params(&self) -> &BlockParams {
        &self.params
    }

    pub fn block(&self) -> u64 {
        self.block
    }

    /// True once all `k` systematic packets of the current block are out.
    pub fn info_phase_done(&self) -> bool {
        self.infos.len() == self.params.k
    }

    pub fn coded_remaining(&self) -> usize {
        if self.info_phase_done() {
            self.params.redundancy() - self.coded_sent
        } else {
            self.params.redundancy()
        }
    }

    pub fn push_info(&mut self, payload: SymbolVector) -> Result<BlockPacket, Error> {
        if self.info_phase_done() {
            return Err(Error::InvalidParameter("block is full; coded packets are due"));
        }
        if payload.len() != self.payload_len {
            return Err(Error::DimensionMismatch { expected: self.payload_len, got: payload.len() });
        }
        let index = self.infos.len();
        self.infos.push(payload.clone());
        Ok(BlockPacket { block: self.block, index, coeffs: unit(self.params.k, index), payload })
    }

    pub fn next_coded<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<BlockPacket, Error> {
        if !self.info_phase_done() {
            return Err(Error::InvalidParameter("block still accepting information packets"));
        }
        let index = self.params.k + self.coded_sent;
        let pkt = coded_packet(self.block, index, &self.infos, self.payload_len, rng);
        self.coded_sent += 1;
        if self.coded_sent == self.params.redundancy() {
            self.block += 1;
            self.infos.clear();
            self.coded_sent = 0;
        }
        Ok(pkt)
    }
}

/// Result of closing out a block at the receiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOutcome<T> {
    /// Packets released at close, in order.
    pub delivered: Vec<T>,
    /// Sequence numbers that will never be delivered.
    pub lost: Vec<u64>,
    pub decoded: bool,
}

/// Receiver for the block code using real GF(2^8) elimination.
#[derive(Clone, Debug)]
pub struct BlockDecoder {
    params: BlockParams,
    payload_len: usize,
    block: u64,
    matrix: CoeffMatrix,
    next_deliver: usize,
    failures: u64,
}

impl BlockDecoder {
    pub fn new(params: BlockParams, payload_len: usize) -> Self {
        BlockDecoder {
            params,
            payload_len,
            block: 0,
            matrix: CoeffMatrix::with_symbols(params.k, 1, payload_len),
            next_deliver: 0,
            failures: 0,
        }
    }

    pub fn block(&self) -> u64 {
        self.block
    }

    /// Blocks closed without reaching full rank.
    pub fn failures(&self) -> u64 {
        self.failures
    }

    fn drain(&mut self) -> Vec<InfoPacket> {
        let mut out = Vec::new();
        while self.next_deliver < self.params.k && self.matrix.is_solved(self.next_deliver) {
            let payload = self.matrix.solution(self.next_deliver).map(<[u8]>::to_vec).unwrap_or_default();
            out.push(InfoPacket { seq: self.params.seq(self.block, self.next_deliver), payload });
            self.next_deliver += 1;
        }
        out
    }

    /// Folds in a packet of the current block. Packets from finished blocks
    /// are ignored.
    pub fn receive(&mut self, pkt: &BlockPacket) -> Result<Vec<InfoPacket>, Error> {
        if pkt.block < self.block {
            return Ok(Vec::new());
        }
        if pkt.block > self.block {
            return Err(Error::InvalidParameter("packet from a later block; close the current one first"));
        }
        if pkt.index >= self.params.n {
            return Err(Error::Malformed("block index out of range"));
        }
        if pkt.payload.len() != self.payload_len {
            return Err(Error::DimensionMismatch { expected: self.payload_len, got: pkt.payload.len() });
        }
        self.matrix.insert(&pkt.coeffs, &pkt.payload)?;
        Ok(self.drain())
    }

    /// Closes the current block: whatever is solvable is released, the rest
    /// is reported lost.
    pub fn finish_block(&mut self) -> BlockOutcome<InfoPacket> {
        let decoded = self.matrix.is_full_rank();
        let mut delivered = self.drain();
        let mut lost = Vec::new();
        for i in self.next_deliver..self.params.k {
            let seq = self.params.seq(self.block, i);
            match self.matrix.solution(i) {
                Some(s) if self.matrix.is_solved(i) => delivered.push(InfoPacket { seq, payload: s.to_vec() }),
                _ => lost.push(seq),
            }
        }
        if !decoded {
            self.failures += 1;
        }
        self.block += 1;
        self.next_deliver = 0;
        self.matrix = CoeffMatrix::with_symbols(self.params.k, 1, self.payload_len);
        BlockOutcome { delivered, lost, decoded }
    }
}

/// Counting receiver for the block code with ideal MDS behaviour: a block
/// decodes as soon as any `k` of its packets arrive.
#[derive(Clone, Debug)]
pub struct IdealBlockDecoder {
    params: BlockParams,
    block: u64,
    have: Vec<bool>,
    count: usize,
    next_deliver: usize,
}

impl IdealBlockDecoder {
    pub fn new(params: BlockParams) -> Self {
        IdealBlockDecoder { params, block: 0, have: vec![false; params.k], count: 0, next_deliver: 0 }
    }

    pub fn block(&self) -> u64 {
        self.block
    }

    fn drain(&mut self) -> Vec<u64> {
        let decoded = self.count >= self.params.k;
        let mut out = Vec::new();
        while self.next_deliver < self.params.k && (decoded || self.have[self.next_deliver]) {
            out.push(self.params.seq(self.block, self.next_deliver));
            self.next_deliver += 1;
        }
        out
    }

    /// Registers the arrival of packet `index` of `block`; returns newly
    /// delivered sequence numbers.
    pub fn receive(&mut self, block: u64, index: usize) -> Result<Vec<u64>, Error> {
        if block < self.block {
            return Ok(Vec::new());
        }
        if block > self.block {
            return Err(Error::InvalidParameter("packet from a later block; close the current one first"));
        }
        if index >= self.params.n {
            return Err(Error::Malformed("block index out of range"));
        }
        if index < self.params.k {
            self.have[index] = true;
        }
        self.count += 1;
        Ok(self.drain())
    }

    pub fn finish_block(&mut self) -> BlockOutcome<u64> {
        let decoded = self.count >= self.params.k;
        let mut delivered = self.drain();
        let mut lost = Vec::new();
        for i in self.next_deliver..self.params.k {
            let seq = self.params.seq(self.block, i);
            if self.have[i] {
                delivered.push(seq);
            } else {
                lost.push(seq);
            }
        }
        self.block += 1;
        self.have.iter_mut().for_each(|h| *h = false);
        self.count = 0;
        self.next_deliver = 0;
        BlockOutcome { delivered, lost, decoded }
    }
}
