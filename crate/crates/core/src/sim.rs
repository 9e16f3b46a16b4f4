//! Slotted single-path simulator.
//!
//! Per slot: arrival, policy decision, transmission over the erasure
//! channel, receiver update, feedback emission. The transmitter sees the
//! receiver's report from `d` slots earlier.
//!
//! Queues follow
//! `Q^t_{k+1} = [Q^t_k + A_k − S_k]^+` and
//! `Q^r_{k+1} = [Q^r_k + S_k X_k − C_k (1 − X_k)]^+`, with `X_k = 1` for an
//! erasure and `Q^t_1 = Q^r_1 = 0`.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{
    BlockDecoder, BlockEncoder, BlockParams, CodedPacket, Decoder, Encoder, IdealBlockDecoder, IdealDecoder,
    IdealPacket, InfoPacket, Packet,
};
use crate::error::Error;
use crate::linalg::SymbolVector;
use crate::policy::{
    arq_decide, policy_p_decide, weighted_decide, BlockSchedule, FecCounter, PolicyKind, Predictor, SlotAction,
};

/// Independent random streams derived from one seed.
pub const STREAM_ARRIVALS: u64 = 0;
pub const STREAM_ERASURES: u64 = 1;
pub const STREAM_COEFFS: u64 = 2;

/// RNG for one purpose of one run.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feedback {
    /// Reports reach the transmitter after this many slots.
    Delay(usize),
    /// No report ever arrives.
    Disabled,
}

impl Feedback {
    pub fn delay(self) -> Option<usize> {
        match self {
            Feedback::Delay(d) => Some(d),
            Feedback::Disabled => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodecMode {
    /// Every coded packet repairs one outstanding erasure.
    Ideal,
    /// GF(2^8) coefficients and Gaussian elimination.
    Real,
}

/// Loss rate used by the predictor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LossEstimate {
    /// The true channel loss rate.
    Known,
    /// Estimated from the lagged reports of packets received.
    PlugIn,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub p: f64,
    pub a_bar: f64,
    pub feedback: Feedback,
    pub horizon: u64,
    pub seed: u64,
    pub policy: PolicyKind,
    pub codec: CodecMode,
    pub payload_len: usize,
    pub loss_estimate: LossEstimate,
    /// FEC and policy P send a coded packet instead of idling while
    /// unacknowledged packets remain.
    pub fill_idle: bool,
    pub record_trace: bool,
    pub record_packets: bool,
}

impl SimConfig {
    pub fn new(p: f64, a_bar: f64, d: usize, policy: PolicyKind) -> Self {
        SimConfig {
            p,
            a_bar,
            feedback: Feedback::Delay(d),
            horizon: 10_000,
            seed: 0,
            policy,
            codec: CodecMode::Ideal,
            payload_len: 8,
            loss_estimate: LossEstimate::Known,
            fill_idle: true,
            record_trace: false,
            record_packets: false,
        }
    }

    pub fn with_horizon(mut self, horizon: u64) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_fill_idle(mut self, fill: bool) -> Self {
        self.fill_idle = fill;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(0.0..1.0).contains(&self.p) {
            return Err(Error::InvalidParameter("p must lie in [0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.a_bar) {
            return Err(Error::InvalidParameter("arrival rate must lie in [0, 1]"));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidParameter("horizon must be at least 1"));
        }
        match self.policy {
            PolicyKind::PolicyP { gamma } if !(gamma >= 0.0) => {
                Err(Error::InvalidParameter("gamma must be non-negative"))
            }
            PolicyKind::Weighted { rho } if !(rho >= 0.0) => Err(Error::InvalidParameter("rho must be non-negative")),
            PolicyKind::Fec if self.p == 0.0 => Err(Error::InvalidParameter("FEC needs p > 0")),
            PolicyKind::Block { k, n } => match n {
                Some(n) => BlockParams::new(k, n).map(|_| ()),
                None => BlockParams::matched(k, self.p).map(|_| ()),
            },
            _ => Ok(()),
        }
    }
}

/// Per-slot record of a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trace {
    /// `Q^t_k` at the start of slot `k`.
    pub qt: Vec<u32>,
    /// `Q^r_k` at the start of slot `k`.
    pub qr: Vec<u32>,
    /// `Q̂^r_k` as seen by the transmitter.
    pub qhat: Vec<f64>,
    /// `Q^r_{k−d}` as seen by the transmitter.
    pub lagged_qr: Vec<u32>,
    pub arrival: Vec<bool>,
    pub action: Vec<SlotAction>,
    /// Channel erasure draw `X_k` (drawn every slot).
    pub erased: Vec<bool>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.qt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qt.is_empty()
    }
}

/// Life of one information packet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PacketRecord {
    pub seq: u64,
    pub enqueued: u64,
    pub sent: u64,
    pub delivered: Option<u64>,
    /// `Q^t` just after the packet joined the queue.
    pub qt_at_enqueue: u32,
    /// `Q^r` at the start of the slot the packet was sent.
    pub qr_at_send: u32,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunMetrics {
    pub slots: u64,
    pub arrivals: u64,
    pub info_sent: u64,
    pub coded_sent: u64,
    /// Coded slots with nothing left to protect.
    pub dummy: u64,
    /// Coded slots while the true receiver queue was empty.
    pub redundant: u64,
    pub delivered: u64,
    /// Packets abandoned by a failed block.
    pub lost: u64,
    /// Packets sent but not delivered by the end of the run.
    pub stranded: u64,
    pub sum_d_qt: u64,
    pub sum_d_qr: u64,
    pub max_delay: u64,
    /// Coded packets that reached a receiver with missing packets but did
    /// not increase its rank (real mode only).
    pub dof_failures: u64,
    /// Coded packets that reached a receiver with missing packets.
    pub dof_opportunities: u64,
    /// Delivered payloads that differed from what was sent (real mode).
    pub payload_errors: u64,
    pub final_qt: u64,
    pub final_qr: u64,
    pub sum_qhat: f64,
    pub trace: Option<Trace>,
    pub packets: Vec<PacketRecord>,
}

impl RunMetrics {
    fn ratio(a: u64, b: u64) -> f64 {
        if b == 0 {
            0.0
        } else {
            a as f64 / b as f64
        }
    }

    /// Average information transmit rate.
    pub fn s_bar(&self) -> f64 {
        Self::ratio(self.info_sent, self.slots)
    }

    /// Fraction of slots spent on coded packets.
    pub fn coded_fraction(&self) -> f64 {
        Self::ratio(self.coded_sent, self.slots)
    }

    /// Fraction of slots not spent on coded packets.
    pub fn non_coded_fraction(&self) -> f64 {
        1.0 - self.coded_fraction()
    }

    /// Rate of redundant coded packets.
    pub fn r_bar(&self) -> f64 {
        Self::ratio(self.redundant, self.slots)
    }

    /// In-order delivered packets per slot.
    pub fn goodput(&self) -> f64 {
        Self::ratio(self.delivered, self.slots)
    }

    pub fn mean_d_qt(&self) -> f64 {
        Self::ratio(self.sum_d_qt, self.delivered)
    }

    pub fn mean_d_qr(&self) -> f64 {
        Self::ratio(self.sum_d_qr, self.delivered)
    }

    /// Mean enqueue-to-delivery delay over delivered packets.
    pub fn mean_delay(&self) -> f64 {
        Self::ratio(self.sum_d_qt + self.sum_d_qr, self.delivered)
    }

    pub fn mean_qhat(&self) -> f64 {
        if self.slots == 0 {
            0.0
        } else {
            self.sum_qhat / self.slots as f64
        }
    }

    pub fn arrival_rate(&self) -> f64 {
        Self::ratio(self.arrivals, self.slots)
    }
}

/// What happened in one slot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlotEvents {
    pub slot: u64,
    pub arrival: bool,
    pub action: SlotAction,
    pub erased: bool,
    pub qt: u64,
    pub qr: u64,
    pub qhat: f64,
    pub lagged_qr: u64,
    pub redundant: bool,
    pub delivered: u64,
}

/// Deterministic payload of information packet `seq`.
pub fn payload_for(seq: u64, len: usize) -> SymbolVector {
    let mut x = seq.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0xD1B5_4A32_D192_ED03;
    (0..len)
        .map(|_| {
            x ^= x >> 29;
            x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
            (x >> 56) as u8
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default)]
struct Report {
    qr: u64,
    delivered_through: u64,
    /// Outcome of the previous slot, as revealed by the change in `qr`:
    /// the information packet it erased, or whether its coded packet
    /// repaired something.
    lost_info: Option<u64>,
    coded: bool,
    repaired: bool,
    sent: u64,
    received: u64,
}

/// Sender-side bookkeeping for selective repair.
#[derive(Debug, Default)]
struct ArqState {
    // Known, unrepaired losses, oldest first, flagged when a repair for
    // them is in flight.
    lost: VecDeque<(u64, bool)>,
    in_flight: VecDeque<u64>,
}

impl ArqState {
    fn observe(&mut self, r: &Report) {
        if r.coded {
            if let Some(target) = self.in_flight.pop_front() {
                if let Some(i) = self.lost.iter().position(|&(s, _)| s == target) {
                    if r.repaired {
                        self.lost.remove(i);
                    } else {
                        self.lost[i].1 = false;
                    }
                }
            }
        }
        if let Some(seq) = r.lost_info {
            self.lost.push_back((seq, false));
        }
    }

    /// Picks the oldest uncovered loss, which is also the repair window's
    /// right edge.
    fn next_repair(&mut self) -> Option<u64> {
        let entry = self.lost.iter_mut().find(|(_, covered)| !covered)?;
        entry.1 = true;
        self.in_flight.push_back(entry.0);
        Some(entry.0)
    }
}

enum Scheduler {
    Arq,
    PolicyP(f64),
    Weighted(f64),
    Fec(FecCounter),
    Block(BlockSchedule),
}

enum Link {
    StreamIdeal(IdealDecoder),
    StreamReal { enc: Encoder, dec: Decoder },
    BlockIdeal(IdealBlockDecoder),
    BlockReal { enc: BlockEncoder, dec: BlockDecoder },
}

/// One run in progress.
pub struct Simulation {
    cfg: SimConfig,
    slot: u64,
    qt: u64,
    qr: u64,
    scheduler: Scheduler,
    predictor: Predictor,
    link: Link,
    reports: VecDeque<Report>,
    arrivals_rng: ChaCha8Rng,
    erasure_rng: ChaCha8Rng,
    coeff_rng: ChaCha8Rng,
    next_seq: u64,
    ack_through: u64,
    prev_lost_info: Option<u64>,
    prev_coded: bool,
    prev_repaired: bool,
    arq: ArqState,
    received: u64,
    waiting: VecDeque<(u64, u32)>,
    // (enqueue slot, send slot, record index) for packets sent and not yet
    // delivered, in sequence order starting at `first_in_flight`.
    in_flight: VecDeque<(u64, u64, usize)>,
    first_in_flight: u64,
    metrics: RunMetrics,
}

impl Simulation {
    pub fn new(cfg: SimConfig) -> Result<Self, Error> {
        cfg.validate()?;
        let scheduler = match cfg.policy {
            PolicyKind::Arq => Scheduler::Arq,
            PolicyKind::PolicyP { gamma } => Scheduler::PolicyP(gamma),
            PolicyKind::Weighted { rho } => Scheduler::Weighted(rho),
            PolicyKind::Fec => Scheduler::Fec(FecCounter::new(cfg.p)?),
            PolicyKind::Block { k, n } => {
                let params = match n {
                    Some(n) => BlockParams::new(k, n)?,
                    None => BlockParams::matched(k, cfg.p)?,
                };
                Scheduler::Block(BlockSchedule::new(params))
            }
        };
        let link = match (&scheduler, cfg.codec) {
            (Scheduler::Block(b), CodecMode::Ideal) => Link::BlockIdeal(IdealBlockDecoder::new(*b.params())),
            (Scheduler::Block(b), CodecMode::Real) => Link::BlockReal {
                enc: BlockEncoder::new(*b.params(), cfg.payload_len),
                dec: BlockDecoder::new(*b.params(), cfg.payload_len),
            },
            (_, CodecMode::Ideal) => Link::StreamIdeal(IdealDecoder::new()),
            (_, CodecMode::Real) => {
                Link::StreamReal { enc: Encoder::new(cfg.payload_len), dec: Decoder::new(cfg.payload_len) }
            }
        };
        let metrics = RunMetrics { trace: cfg.record_trace.then(Trace::default), ..RunMetrics::default() };
        Ok(Simulation {
            predictor: Predictor::new(cfg.p, cfg.feedback.delay()),
            slot: 0,
            qt: 0,
            qr: 0,
            scheduler,
            link,
            reports: VecDeque::new(),
            arrivals_rng: stream_rng(cfg.seed, STREAM_ARRIVALS),
            erasure_rng: stream_rng(cfg.seed, STREAM_ERASURES),
            coeff_rng: stream_rng(cfg.seed, STREAM_COEFFS),
            next_seq: 1,
            ack_through: 0,
            prev_lost_info: None,
            prev_coded: false,
            prev_repaired: false,
            arq: ArqState::default(),
            received: 0,
            waiting: VecDeque::new(),
            in_flight: VecDeque::new(),
            first_in_flight: 1,
            metrics,
            cfg,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn slot(&self) -> u64 {
        self.slot
    }

    pub fn qt(&self) -> u64 {
        self.qt
    }

    pub fn qr(&self) -> u64 {
        self.qr
    }

    fn delivered_through(&self) -> u64 {
        self.first_in_flight - 1
    }

    fn lagged_report(&self) -> Report {
        match self.cfg.feedback {
            Feedback::Disabled => Report::default(),
            Feedback::Delay(d) if self.reports.len() > d => self.reports[0],
            Feedback::Delay(_) => Report::default(),
        }
    }

    /// Advances one slot.
    pub fn step(&mut self) -> Result<SlotEvents, Error> {
        self.slot += 1;
        let k = self.slot;

        // Report describing the state at the start of this slot.
        if let Feedback::Delay(d) = self.cfg.feedback {
            self.reports.push_back(Report {
                qr: self.qr,
                delivered_through: self.delivered_through(),
                lost_info: self.prev_lost_info,
                coded: self.prev_coded,
                repaired: self.prev_repaired,
                sent: self.metrics.info_sent + self.metrics.coded_sent,
                received: self.received,
            });
            while self.reports.len() > d + 1 {
                self.reports.pop_front();
            }
        }
        let lag = self.lagged_report();
        if let Scheduler::Arq = self.scheduler {
            self.arq.observe(&lag);
            debug_assert_eq!(self.arq.lost.len() as u64, lag.qr);
        }
        if lag.delivered_through > self.ack_through {
            self.ack_through = lag.delivered_through;
            if let Link::StreamReal { enc, .. } = &mut self.link {
                enc.advance_window(self.ack_through)?;
            }
        }
        if self.cfg.loss_estimate == LossEstimate::PlugIn {
            let lost = lag.sent - lag.received;
            self.predictor.set_p((lost as f64 + 1.0) / (lag.sent as f64 + 2.0));
        }

        let arrival = self.arrivals_rng.gen_bool(self.cfg.a_bar);
        let erased = self.erasure_rng.gen_bool(self.cfg.p);
        let qt_start = self.qt;
        if arrival {
            self.metrics.arrivals += 1;
            self.waiting.push_back((k, (self.qt + 1) as u32));
        }
        let qt_eff = self.qt + arrival as u64;
        let qhat = self.predictor.predict(lag.qr);

        let action = match &self.scheduler {
            Scheduler::Arq => arq_decide(lag.qr, self.predictor.recent_coded(), qt_eff),
            Scheduler::PolicyP(g) => policy_p_decide(qhat, qt_eff, *g),
            Scheduler::Weighted(rho) => weighted_decide(qhat, qt_start, *rho, qt_eff),
            Scheduler::Fec(f) => f.decide(qt_eff),
            Scheduler::Block(b) => b.decide(qt_eff),
        };
        // Threshold-triggered repairs sent while nothing is outstanding.
        let redundant = action.is_coded() && self.qr == 0;
        let fills = self.cfg.fill_idle
            && self.cfg.p > 0.0
            && matches!(self.scheduler, Scheduler::Fec(_) | Scheduler::PolicyP(_));
        let action = if action == SlotAction::Idle && fills && self.next_seq - 1 > self.ack_through {
            SlotAction::Coded
        } else {
            action
        };

        if let Some(t) = &mut self.metrics.trace {
            t.qt.push(qt_start as u32);
            t.qr.push(self.qr as u32);
            t.qhat.push(qhat);
            t.lagged_qr.push(lag.qr as u32);
            t.arrival.push(arrival);
            t.action.push(action);
            t.erased.push(erased);
        }
        self.metrics.sum_qhat += qhat;

        let qr_start = self.qr;
        let mut gain = true;
        let delivered_before = self.metrics.delivered;
        match action {
            SlotAction::Idle => {}
            SlotAction::Information => {
                self.metrics.info_sent += 1;
                let (enq, qt_at_enq) = self.waiting.pop_front().ok_or(Error::InvalidParameter("empty queue"))?;
                let seq = self.next_seq;
                self.next_seq += 1;
                let rec = self.metrics.packets.len();
                if self.cfg.record_packets {
                    self.metrics.packets.push(PacketRecord {
                        seq,
                        enqueued: enq,
                        sent: k,
                        delivered: None,
                        qt_at_enqueue: qt_at_enq,
                        qr_at_send: qr_start as u32,
                    });
                }
                self.in_flight.push_back((enq, k, rec));
                self.send_info(seq, erased)?;
            }
            SlotAction::Coded => {
                self.metrics.coded_sent += 1;
                self.metrics.redundant += redundant as u64;
                // ARQ targets the oldest known loss not already being
                // repaired; the window stops there so that it decodes alone.
                let right = match self.scheduler {
                    Scheduler::Arq => self.arq.next_repair().ok_or(Error::InvalidParameter("no loss to repair"))?,
                    _ => self.next_seq - 1,
                };
                gain = self.send_coded(right, erased)?;
            }
        }
        if !erased && action != SlotAction::Idle {
            self.received += 1;
        }
        self.prev_lost_info = (action.is_info() && erased).then(|| self.next_seq - 1);
        self.prev_coded = action.is_coded();
        self.prev_repaired = action.is_coded() && !erased && gain && self.qr > 0;

        self.qt = qt_eff - action.is_info() as u64;
        let up = (action.is_info() && erased) as u64;
        let down = (action.is_coded() && !erased && gain) as u64;
        self.qr = (self.qr + up).saturating_sub(down);
        if let Scheduler::Block(_) = self.scheduler {
        } else if self.cfg.codec == CodecMode::Ideal && self.qr == 0 {
            debug_assert_eq!(self.delivered_through(), self.next_seq - 1);
        }
        self.predictor.record(action);

        let closed = match &mut self.scheduler {
            Scheduler::Fec(f) => {
                f.record(action);
                false
            }
            Scheduler::Block(b) => b.record(action),
            _ => false,
        };
        if closed {
            self.close_block()?;
        }

        Ok(SlotEvents {
            slot: k,
            arrival,
            action,
            erased,
            qt: qt_start,
            qr: qr_start,
            qhat,
            lagged_qr: lag.qr,
            redundant,
            delivered: self.metrics.delivered - delivered_before,
        })
    }

    fn send_info(&mut self, seq: u64, erased: bool) -> Result<(), Error> {
        let mut delivered: Vec<u64> = Vec::new();
        let mut payloads: Vec<InfoPacket> = Vec::new();
        match &mut self.link {
            Link::StreamIdeal(dec) => {
                if !erased {
                    delivered.extend(dec.receive(IdealPacket::Info { seq })?.delivered);
                }
            }
            Link::StreamReal { enc, dec } => {
                let pkt = enc.encode_info(payload_for(seq, self.cfg.payload_len))?;
                if !erased {
                    payloads = dec.receive(&Packet::Info(pkt))?.delivered;
                }
            }
            Link::BlockIdeal(dec) => {
                if let Scheduler::Block(b) = &self.scheduler {
                    let (block, index) = b.position(SlotAction::Information).unwrap_or_default();
                    if !erased {
                        delivered = dec.receive(block, index)?;
                    }
                }
            }
            Link::BlockReal { enc, dec } => {
                let pkt = enc.push_info(payload_for(seq, self.cfg.payload_len))?;
                if !erased {
                    payloads = dec.receive(&pkt)?;
                }
            }
        }
        self.deliver_payloads(payloads)?;
        for s in delivered {
            self.deliver(s)?;
        }
        Ok(())
    }

    /// Returns whether the packet added a degree of freedom where one was
    /// missing (always true in ideal mode).
    fn send_coded(&mut self, right: u64, erased: bool) -> Result<bool, Error> {
        let left = self.ack_through + 1;
        let mut delivered: Vec<u64> = Vec::new();
        let mut payloads: Vec<InfoPacket> = Vec::new();
        let mut gain = true;
        match &mut self.link {
            Link::StreamIdeal(dec) => {
                if left > right {
                    self.metrics.dummy += 1;
                } else if !erased {
                    let r = dec.receive(IdealPacket::Coded { left, right })?;
                    debug_assert_eq!(r.dof_gain, self.qr > 0);
                    gain = r.dof_gain;
                    delivered.extend(r.delivered);
                }
            }
            Link::StreamReal { enc, dec } => {
                if left > right {
                    self.metrics.dummy += 1;
                } else {
                    let pkt: CodedPacket = enc.encode_coded_through(right, &mut self.coeff_rng)?;
                    if !erased {
                        let needed = self.qr > 0;
                        let r = dec.receive(&Packet::Coded(pkt))?;
                        if needed {
                            self.metrics.dof_opportunities += 1;
                            if !r.dof_gain {
                                self.metrics.dof_failures += 1;
                                gain = false;
                            }
                        }
                        payloads = r.delivered;
                    }
                }
            }
            Link::BlockIdeal(dec) => {
                if let Scheduler::Block(b) = &self.scheduler {
                    let (block, index) = b.position(SlotAction::Coded).unwrap_or_default();
                    if !erased {
                        delivered = dec.receive(block, index)?;
                    }
                }
            }
            Link::BlockReal { enc, dec } => {
                let pkt = enc.next_coded(&mut self.coeff_rng)?;
                if !erased {
                    payloads = dec.receive(&pkt)?;
                }
            }
        }
        self.deliver_payloads(payloads)?;
        for s in delivered {
            self.deliver(s)?;
        }
        Ok(gain)
    }

    fn close_block(&mut self) -> Result<(), Error> {
        let (mut delivered, lost): (Vec<u64>, Vec<u64>) = match &mut self.link {
            Link::BlockIdeal(dec) => {
                let o = dec.finish_block();
                (o.delivered, o.lost)
            }
            Link::BlockReal { dec, .. } => {
                let o = dec.finish_block();
                let seqs = o.delivered.iter().map(|p| p.seq).collect();
                for p in &o.delivered {
                    if p.payload != payload_for(p.seq, self.cfg.payload_len) {
                        self.metrics.payload_errors += 1;
                    }
                }
                (seqs, o.lost)
            }
            _ => return Ok(()),
        };
        let mut lost = lost.into_iter().peekable();
        delivered.sort_unstable();
        let mut delivered = delivered.into_iter().peekable();
        loop {
            let next_lost = lost.peek().copied();
            let next_del = delivered.peek().copied();
            match (next_lost, next_del) {
                (Some(l), d) if d.is_none_or(|d| l < d) => {
                    lost.next();
                    self.drop_lost(l)?;
                }
                (_, Some(d)) => {
                    delivered.next();
                    self.deliver(d)?;
                }
                (None, None) => break,
                _ => unreachable!(),
            }
        }
        Ok(())
    }

    fn deliver_payloads(&mut self, pkts: Vec<InfoPacket>) -> Result<(), Error> {
        for p in pkts {
            if p.payload != payload_for(p.seq, self.cfg.payload_len) {
                self.metrics.payload_errors += 1;
            }
            self.deliver(p.seq)?;
        }
        Ok(())
    }

    fn deliver(&mut self, seq: u64) -> Result<(), Error> {
        if seq != self.first_in_flight {
            return Err(Error::InvalidParameter("out-of-order delivery"));
        }
        let (enq, sent, rec) =
            self.in_flight.pop_front().ok_or(Error::InvalidParameter("delivery of unsent packet"))?;
        self.first_in_flight += 1;
        let k = self.slot;
        self.metrics.delivered += 1;
        self.metrics.sum_d_qt += sent - enq;
        self.metrics.sum_d_qr += k - sent;
        self.metrics.max_delay = self.metrics.max_delay.max(k - enq);
        if self.cfg.record_packets {
            self.metrics.packets[rec].delivered = Some(k);
        }
        Ok(())
    }

    fn drop_lost(&mut self, seq: u64) -> Result<(), Error> {
        if seq != self.first_in_flight {
            return Err(Error::InvalidParameter("out-of-order loss"));
        }
        self.in_flight.pop_front();
        self.first_in_flight += 1;
        self.metrics.lost += 1;
        Ok(())
    }

    /// Ends the run and returns its metrics.
    pub fn finish(mut self) -> RunMetrics {
        self.metrics.slots = self.slot;
        self.metrics.stranded = self.in_flight.len() as u64;
        self.metrics.final_qt = self.qt;
        self.metrics.final_qr = self.qr;
        self.metrics
    }
}

/// Runs `cfg.horizon` slots.
pub fn run(cfg: &SimConfig) -> Result<RunMetrics, Error> {
    let mut sim = Simulation::new(cfg.clone())?;
    for _ in 0..cfg.horizon {
        sim.step()?;
    }
    Ok(sim.finish())
}
