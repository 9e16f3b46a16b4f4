use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{CodedPacket, InfoPacket, Packet};
use crate::error::Error;
use crate::gf::{self, Gf256};
use crate::linalg::{CoeffMatrix, SymbolVector};

/// Sender side of the streaming code.
///
/// Holds every information packet that has been sent but not yet
/// acknowledged; coded packets combine exactly that window.
#[derive(Clone, Debug)]
pub struct Encoder {
    left: u64,
    next_seq: u64,
    buffered: VecDeque<SymbolVector>,
    payload_len: usize,
}

impl Encoder {
    pub fn new(payload_len: usize) -> Self {
        Encoder { left: 1, next_seq: 1, buffered: VecDeque::new(), payload_len }
    }

    /// Left edge `L` of the coding window.
    pub fn left(&self) -> u64 {
        self.left
    }

    pub fn next_seq(&self) -> u64 {
        self.next_seq
    }

    pub fn payload_len(&self) -> usize {
        self.payload_len
    }

    /// Current window `[L, next_seq - 1]`, if non-empty.
    pub fn window(&self) -> Option<(u64, u64)> {
        (self.left < self.next_seq).then(|| (self.left, self.next_seq - 1))
    }

    pub fn buffered_len(&self) -> usize {
        self.buffered.len()
    }

    /// Emits the next systematic packet and adds it to the window.
    pub fn encode_info(&mut self, payload: SymbolVector) -> Result<InfoPacket, Error> {
        if payload.len() != self.payload_len {
            return Err(Error::DimensionMismatch { expected: self.payload_len, got: payload.len() });
        }
        let seq = self.next_seq;
        self.buffered.push_back(payload.clone());
        self.next_seq += 1;
        Ok(InfoPacket { seq, payload })
    }

    /// Random linear combination over the whole window with i.i.d. uniform
    /// coefficients.
    pub fn encode_coded<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<CodedPacket, Error> {
        self.encode_coded_through(u64::MAX, rng)
    }

    /// Like [`Encoder::encode_coded`] but the window stops at `right` (or the
    /// last sent packet, whichever is earlier).
    pub fn encode_coded_through<R: Rng + ?Sized>(&self, right: u64, rng: &mut R) -> Result<CodedPacket, Error> {
        let (left, last) = self.window().ok_or(Error::EmptyWindow)?;
        let right = right.min(last);
        if right < left {
            return Err(Error::EmptyWindow);
        }
        let mut payload = vec![0u8; self.payload_len];
        let coeffs: Vec<Gf256> = self
            .buffered
            .iter()
            .take((right + 1 - left) as usize)
            .map(|u| {
                let c = Gf256(rng.gen());
                gf::mul_add_assign(&mut payload, u, c);
                c
            })
            .collect();
        Ok(CodedPacket { left, right, coeffs, payload })
    }

    /// Cumulative acknowledgement: packets `..=ack_through` are no longer
    /// protected by future coded packets.
    pub fn advance_window(&mut self, ack_through: u64) -> Result<(), Error> {
        if ack_through + 1 < self.left || ack_through >= self.next_seq {
            return Err(Error::InvalidAck { ack_through, left: self.left, next_seq: self.next_seq });
        }
        let drop = (ack_through + 1 - self.left) as usize;
        self.buffered.drain(..drop);
        self.left = ack_through + 1;
        Ok(())
    }
}

/// What a call to [`Decoder::receive`] produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Received {
    /// Packets released to the application, in order.
    pub delivered: Vec<InfoPacket>,
    /// Whether the packet increased the rank of the receiver's system.
    pub dof_gain: bool,
}

/// Receiver side of the streaming code, decoding on the fly.
///
/// The coefficient matrix spans `[delivered_through + 1, highest_seen]`.
/// Coded windows that reach back into delivered packets are reduced by
/// substituting the retained payloads before insertion.
#[derive(Clone, Debug)]
pub struct Decoder {
    delivered_through: u64,
    matrix: CoeffMatrix,
    retained: VecDeque<SymbolVector>,
    retained_from: u64,
    payload_len: usize,
}

impl Decoder {
    pub fn new(payload_len: usize) -> Self {
        Decoder {
            delivered_through: 0,
            matrix: CoeffMatrix::with_symbols(0, 1, payload_len),
            retained: VecDeque::new(),
            retained_from: 1,
            payload_len,
        }
    }

    pub fn delivered_through(&self) -> u64 {
        self.delivered_through
    }

    /// Highest information index the decoder knows about.
    pub fn highest_seen(&self) -> u64 {
        self.delivered_through + self.matrix.cols() as u64
    }

    /// Received degrees of freedom not yet delivered.
    pub fn pending_rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Unknown packets in the active window.
    pub fn missing(&self) -> usize {
        self.matrix.cols() - self.matrix.rank()
    }

    pub fn matrix(&self) -> &CoeffMatrix {
        &self.matrix
    }

    fn ensure_through(&mut self, seq: u64) {
        let hi = self.highest_seen();
        if seq > hi {
            self.matrix.extend_cols((seq - hi) as usize);
        }
    }

    fn retire(&mut self, left: u64) {
        // The sender's left edge only moves forward, so earlier payloads
        // can never be referenced again.
        while self.retained_from < left && !self.retained.is_empty() {
            self.retained.pop_front();
            self.retained_from += 1;
        }
        if self.retained.is_empty() {
            self.retained_from = self.retained_from.max(left.min(self.delivered_through + 1));
        }
    }

    pub fn receive(&mut self, pkt: &Packet) -> Result<Received, Error> {
        let dof_gain = match pkt {
            Packet::Info(info) => self.receive_info(info)?,
            Packet::Coded(coded) => self.receive_coded(coded)?,
        };
        let mut delivered = Vec::new();
        while self.matrix.cols() > 0 && self.matrix.is_solved(0) {
            let payload = self.matrix.solution(0).map(<[u8]>::to_vec).unwrap_or_default();
            self.matrix.release_leading(1)?;
            self.delivered_through += 1;
            self.retained.push_back(payload.clone());
            delivered.push(InfoPacket { seq: self.delivered_through, payload });
        }
        Ok(Received { delivered, dof_gain })
    }

    fn receive_info(&mut self, info: &InfoPacket) -> Result<bool, Error> {
        if info.payload.len() != self.payload_len {
            return Err(Error::DimensionMismatch { expected: self.payload_len, got: info.payload.len() });
        }
        if info.seq <= self.delivered_through {
            return Ok(false);
        }
        self.ensure_through(info.seq);
        let col = (info.seq - self.delivered_through - 1) as usize;
        let mut row = vec![Gf256::ZERO; self.matrix.cols()];
        row[col] = Gf256::ONE;
        self.matrix.insert(&row, &info.payload)
    }

    fn receive_coded(&mut self, c: &CodedPacket) -> Result<bool, Error> {
        if c.right < c.left || c.coeffs.len() != c.window_len() {
            let expected = if c.right < c.left { 0 } else { c.window_len() };
            return Err(Error::DimensionMismatch { expected, got: c.coeffs.len() });
        }
        if c.payload.len() != self.payload_len {
            return Err(Error::DimensionMismatch { expected: self.payload_len, got: c.payload.len() });
        }
        let d = self.delivered_through;
        if c.left > d + 1 {
            return Err(Error::WindowAhead { left: c.left, delivered_through: d });
        }
        if c.left < self.retained_from && c.left <= d {
            return Err(Error::WindowReleased { left: c.left, retained_from: self.retained_from });
        }
        if c.right <= d {
            self.retire(c.left);
            return Ok(false);
        }
        let mut payload = c.payload.clone();
        for seq in c.left..=d {
            let coef = c.coeffs[(seq - c.left) as usize];
            let known = &self.retained[(seq - self.retained_from) as usize];
            gf::mul_add_assign(&mut payload, known, coef);
        }
        self.retire(c.left);
        self.ensure_through(c.right);
        let mut row = vec![Gf256::ZERO; self.matrix.cols()];
        for seq in (d + 1)..=c.right {
            row[(seq - d - 1) as usize] = c.coeffs[(seq - c.left) as usize];
        }
        self.matrix.insert(&row, &payload)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn payload(seq: u64) -> SymbolVector {
        (0..8).map(|i| (seq as u8).wrapping_mul(31).wrapping_add(i * 17)).collect()
    }

    #[test]
    fn info_bookkeeping() {
        let mut enc = Encoder::new(8);
        let p = enc.encode_info(payload(1)).unwrap();
        assert_eq!((p.seq, p.payload.clone()), (1, payload(1)));
        enc.encode_info(payload(2)).unwrap();
        enc.encode_info(payload(3)).unwrap();
        assert_eq!(enc.window(), Some((1, 3)));
        assert_eq!(enc.next_seq(), 4);
        assert!(enc.encode_info(vec![0; 3]).is_err());
    }

    #[test]
    fn coded_needs_a_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut enc = Encoder::new(8);
        assert_eq!(enc.encode_coded(&mut rng), Err(Error::EmptyWindow));
        enc.encode_info(payload(1)).unwrap();
        let c = enc.encode_coded(&mut rng).unwrap();
        assert_eq!((c.left, c.right, c.coeffs.len()), (1, 1, 1));
        let mut expect = payload(1);
        gf::scale_assign(&mut expect, c.coeffs[0]);
        assert_eq!(c.payload, expect);
        for s in 2..=4 {
            enc.encode_info(payload(s)).unwrap();
        }
        assert_eq!(enc.encode_coded(&mut rng).unwrap().coeffs.len(), 4);
        let short = enc.encode_coded_through(2, &mut rng).unwrap();
        assert_eq!((short.left, short.right, short.coeffs.len()), (1, 2, 2));
        assert_eq!(enc.encode_coded_through(0, &mut rng), Err(Error::EmptyWindow));
    }

    #[test]
    fn advance_window_rules() {
        let mut enc = Encoder::new(8);
        for s in 1..=5 {
            enc.encode_info(payload(s)).unwrap();
        }
        enc.advance_window(0).unwrap();
        assert_eq!(enc.window(), Some((1, 5)));
        enc.advance_window(2).unwrap();
        assert_eq!(enc.window(), Some((3, 5)));
        assert!(matches!(enc.advance_window(1), Err(Error::InvalidAck { .. })));
        assert!(enc.advance_window(6).is_err());
        enc.advance_window(5).unwrap();
        assert_eq!(enc.window(), None);
        assert_eq!(enc.buffered_len(), 0);
    }

    #[test]
    fn sliding_window_figure_scenario() {
        // u1..u4, c1 over [1,4]; acks for u1,u2 arrive before c2 is built.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut enc = Encoder::new(8);
        for s in 1..=4 {
            enc.encode_info(payload(s)).unwrap();
        }
        let c1 = enc.encode_coded(&mut rng).unwrap();
        assert_eq!((c1.left, c1.right), (1, 4));
        for s in 5..=8 {
            enc.encode_info(payload(s)).unwrap();
        }
        enc.advance_window(2).unwrap();
        let c2 = enc.encode_coded(&mut rng).unwrap();
        assert_eq!((c2.left, c2.right), (3, 8));
    }

    #[test]
    fn in_order_info_is_delivered_immediately() {
        let mut dec = Decoder::new(8);
        let r = dec.receive(&Packet::Info(InfoPacket { seq: 1, payload: payload(1) })).unwrap();
        assert!(r.dof_gain);
        assert_eq!(r.delivered, vec![InfoPacket { seq: 1, payload: payload(1) }]);
        let dup = dec.receive(&Packet::Info(InfoPacket { seq: 1, payload: payload(1) })).unwrap();
        assert!(!dup.dof_gain && dup.delivered.is_empty());
    }

    #[test]
    fn first_loss_recovered_by_first_coded_packet() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut enc = Encoder::new(8);
        let _u1 = enc.encode_info(payload(1)).unwrap(); // erased
        let u2 = enc.encode_info(payload(2)).unwrap();
        let mut c = enc.encode_coded(&mut rng).unwrap();
        while c.coeffs.iter().any(|x| x.is_zero()) {
            c = enc.encode_coded(&mut rng).unwrap();
        }
        let mut dec = Decoder::new(8);
        let r = dec.receive(&Packet::Info(u2)).unwrap();
        assert!(r.delivered.is_empty());
        let r = dec.receive(&Packet::Coded(c)).unwrap();
        assert!(r.dof_gain);
        let seqs: Vec<u64> = r.delivered.iter().map(|p| p.seq).collect();
        assert_eq!(seqs, vec![1, 2]);
        assert_eq!(r.delivered[0].payload, payload(1));
    }

    #[test]
    fn coded_window_reaching_into_delivered_packets_is_reduced() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut enc = Encoder::new(8);
        let mut dec = Decoder::new(8);
        for s in 1..=3 {
            let p = enc.encode_info(payload(s)).unwrap();
            dec.receive(&Packet::Info(p)).unwrap();
        }
        enc.encode_info(payload(4)).unwrap(); // erased
        loop {
            let c = enc.encode_coded(&mut rng).unwrap();
            if c.coeffs[3].is_zero() {
                continue;
            }
            assert_eq!((c.left, c.right), (1, 4));
            let r = dec.receive(&Packet::Coded(c)).unwrap();
            assert_eq!(r.delivered, vec![InfoPacket { seq: 4, payload: payload(4) }]);
            break;
        }
    }

    #[test]
    fn malformed_and_premature_windows_are_rejected() {
        let mut dec = Decoder::new(2);
        let bad = CodedPacket { left: 1, right: 3, coeffs: vec![Gf256(1); 2], payload: vec![0; 2] };
        assert!(matches!(dec.receive(&Packet::Coded(bad)), Err(Error::DimensionMismatch { .. })));
        let ahead = CodedPacket { left: 2, right: 3, coeffs: vec![Gf256(1); 2], payload: vec![0; 2] };
        assert!(matches!(dec.receive(&Packet::Coded(ahead)), Err(Error::WindowAhead { .. })));
    }

    #[test]
    fn useless_coded_packet_reports_no_gain() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut enc = Encoder::new(8);
        let mut dec = Decoder::new(8);
        let p = enc.encode_info(payload(1)).unwrap();
        dec.receive(&Packet::Info(p)).unwrap();
        let c = enc.encode_coded(&mut rng).unwrap();
        let r = dec.receive(&Packet::Coded(c)).unwrap();
        assert!(!r.dof_gain && r.delivered.is_empty());
    }
}
