//! Flows sharing edge-disjoint lossy paths.
//!
//! Each slot every path is granted to one flow by maximizing
//! `Q̂^r_f·(1 − p_i)`. The flow sends an information packet on it while its
//! predicted receiver queue is below `1/α`, and a coded packet otherwise.
//! Paths are granted in order within a slot, and each grant updates the
//! chosen flow's prediction before the next. The round-robin ARQ baseline rotates paths
//! among flows and repairs known losses only.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::codec::{IdealDecoder, IdealPacket};
use crate::error::Error;
use crate::policy::{threshold_fires, SlotAction};
use crate::sim::{stream_rng, STREAM_ARRIVALS, STREAM_ERASURES};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultipathScheduler {
    /// Queue-weighted path allocation with the per-flow threshold rule.
    DualSubgradient,
    /// Paths rotate among flows; each flow runs ARQ.
    RoundRobinArq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultipathConfig {
    /// Erasure probability of each path.
    pub path_loss: Vec<f64>,
    /// Arrival rate of each flow; 1 saturates it.
    pub arrivals: Vec<f64>,
    pub alpha: f64,
    pub feedback_delay: usize,
    pub horizon: u64,
    pub seed: u64,
    pub scheduler: MultipathScheduler,
    pub record_trace: bool,
}

impl MultipathConfig {
    pub fn new(path_loss: Vec<f64>, arrivals: Vec<f64>, alpha: f64, d: usize) -> Self {
        MultipathConfig {
            path_loss,
            arrivals,
            alpha,
            feedback_delay: d,
            horizon: 10_000,
            seed: 0,
            scheduler: MultipathScheduler::DualSubgradient,
            record_trace: false,
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

    pub fn with_scheduler(mut self, scheduler: MultipathScheduler) -> Self {
        self.scheduler = scheduler;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.path_loss.is_empty() || self.arrivals.is_empty() {
            return Err(Error::InvalidParameter("need at least one path and one flow"));
        }
        if self.path_loss.iter().any(|p| !(0.0..1.0).contains(p)) {
            return Err(Error::InvalidParameter("path loss must lie in [0, 1)"));
        }
        if self.arrivals.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(Error::InvalidParameter("arrival rate must lie in [0, 1]"));
        }
        if !(self.alpha > 0.0) {
            return Err(Error::InvalidParameter("alpha must be positive"));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidParameter("horizon must be at least 1"));
        }
        Ok(())
    }
}

/// Flow with the largest `queue·(1 − p)` for path `path`; ties go to the
/// first maximizer counting from flow `(slot + path) mod F`.
pub fn allocate_path(queues: &[f64], p: f64, slot: u64, path: usize) -> usize {
    let f = queues.len();
    let start = ((slot + path as u64) % f as u64) as usize;
    let mut best = start;
    let mut best_w = queues[start] * (1.0 - p);
    for off in 1..f {
        let j = (start + off) % f;
        let w = queues[j] * (1.0 - p);
        if w > best_w {
            best = j;
            best_w = w;
        }
    }
    best
}

/// Grants every path independently with [`allocate_path`].
pub fn allocate_paths(queues: &[f64], path_loss: &[f64], slot: u64) -> Vec<usize> {
    path_loss.iter().enumerate().map(|(i, &p)| allocate_path(queues, p, slot, i)).collect()
}

/// Actions for the paths granted to one flow: all coded when the threshold
/// `1/α` fires, otherwise information packets first and coded for the rest.
pub fn flow_decide(granted: usize, qhat: f64, alpha: f64, available: u64) -> Vec<SlotAction> {
    if threshold_fires(qhat, 1.0 / alpha) {
        return vec![SlotAction::Coded; granted];
    }
    let infos = granted.min(available as usize);
    let mut out = vec![SlotAction::Information; infos];
    out.resize(granted, SlotAction::Coded);
    out
}

/// Per-flow predictor over several paths:
/// `Q̂ = Q^r_{k−d} + Σ_j Σ_i (S_{j,i} p_i − C_{j,i} (1−p_i))`.
#[derive(Clone, Debug)]
pub struct MultipathPredictor {
    p: Vec<f64>,
    d: usize,
    history: VecDeque<Vec<(usize, SlotAction)>>,
    infos: Vec<u64>,
    coded: Vec<u64>,
}

impl MultipathPredictor {
    pub fn new(path_loss: &[f64], d: usize) -> Self {
        let n = path_loss.len();
        MultipathPredictor { p: path_loss.to_vec(), d, history: VecDeque::new(), infos: vec![0; n], coded: vec![0; n] }
    }

    /// Records one slot's transmissions of this flow as `(path, action)`.
    pub fn record(&mut self, sent: Vec<(usize, SlotAction)>) {
        if self.d == 0 {
            return;
        }
        if self.history.len() == self.d {
            if let Some(old) = self.history.pop_front() {
                for (i, a) in old {
                    self.count(i, a, false);
                }
            }
        }
        for &(i, a) in &sent {
            self.count(i, a, true);
        }
        self.history.push_back(sent);
    }

    fn count(&mut self, path: usize, a: SlotAction, add: bool) {
        let slot = match a {
            SlotAction::Information => &mut self.infos[path],
            SlotAction::Coded => &mut self.coded[path],
            SlotAction::Idle => return,
        };
        if add {
            *slot += 1;
        } else {
            *slot -= 1;
        }
    }

    /// Coded packets still in flight, over all paths.
    pub fn recent_coded(&self) -> u64 {
        self.coded.iter().sum()
    }

    pub fn predict(&self, lagged_qr: u64) -> f64 {
        let mut q = lagged_qr as f64;
        for (&p, &n) in self.p.iter().zip(&self.infos) {
            q += p * n as f64;
        }
        for (&p, &n) in self.p.iter().zip(&self.coded) {
            q -= (1.0 - p) * n as f64;
        }
        q
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FlowMetrics {
    pub arrivals: u64,
    pub info_sent: u64,
    pub coded_sent: u64,
    pub dummy: u64,
    pub delivered: u64,
    pub stranded: u64,
    pub sum_delay: u64,
    pub final_qr: u64,
}

impl FlowMetrics {
    pub fn mean_delay(&self) -> f64 {
        if self.delivered == 0 {
            0.0
        } else {
            self.sum_delay as f64 / self.delivered as f64
        }
    }
}

/// One path's use in one slot: the flow it carried and what it sent.
pub type PathUse = Option<(usize, SlotAction)>;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MultipathMetrics {
    pub slots: u64,
    pub flows: Vec<FlowMetrics>,
    /// Packets carried by each path.
    pub path_packets: Vec<u64>,
    /// Per slot, per path use, when tracing.
    pub trace: Option<Vec<Vec<PathUse>>>,
}

impl MultipathMetrics {
    /// In-order deliveries per slot for flow `f`.
    pub fn flow_rate(&self, f: usize) -> f64 {
        self.flows[f].delivered as f64 / self.slots.max(1) as f64
    }

    pub fn aggregate_rate(&self) -> f64 {
        (0..self.flows.len()).map(|f| self.flow_rate(f)).sum()
    }

    /// Mean end-to-end delay over every delivered packet of every flow.
    pub fn mean_delay(&self) -> f64 {
        let n: u64 = self.flows.iter().map(|f| f.delivered).sum();
        let s: u64 = self.flows.iter().map(|f| f.sum_delay).sum();
        if n == 0 {
            0.0
        } else {
            s as f64 / n as f64
        }
    }
}

/// What the receiver can report about one slot of a flow.
#[derive(Clone, Debug, Default)]
struct Outcome {
    lost: Vec<u64>,
    /// `(target, repaired)` for each ARQ repair sent.
    repairs: Vec<(u64, bool)>,
}

#[derive(Clone, Debug, Default)]
struct Report {
    qr: u64,
    delivered_through: u64,
    previous: Outcome,
}

/// Sender-side record of losses learned from reports.
#[derive(Clone, Debug, Default)]
struct ArqTracker {
    lost: VecDeque<(u64, bool)>,
    in_flight: VecDeque<u64>,
}

impl ArqTracker {
    fn observe(&mut self, o: &Outcome) {
        for &(target, repaired) in &o.repairs {
            self.in_flight.pop_front();
            if let Some(pos) = self.lost.iter().position(|&(s, _)| s == target) {
                if repaired {
                    self.lost.remove(pos);
                } else {
                    self.lost[pos].1 = false;
                }
            }
        }
        self.lost.extend(o.lost.iter().map(|&s| (s, false)));
    }

    fn has_uncovered(&self) -> bool {
        self.lost.iter().any(|&(_, covered)| !covered)
    }

    fn next_repair(&mut self) -> Option<u64> {
        let entry = self.lost.iter_mut().find(|(_, covered)| !covered)?;
        entry.1 = true;
        self.in_flight.push_back(entry.0);
        Some(entry.0)
    }
}

#[derive(Clone, Debug)]
struct Flow {
    a_bar: f64,
    waiting: VecDeque<u64>,
    next_seq: u64,
    ack_through: u64,
    qr: u64,
    decoder: IdealDecoder,
    // Enqueue slots of sent, undelivered packets, from `first_in_flight`.
    in_flight: VecDeque<u64>,
    first_in_flight: u64,
    predictor: MultipathPredictor,
    reports: VecDeque<Report>,
    current: Outcome,
    arq: ArqTracker,
    metrics: FlowMetrics,
}

impl Flow {
    fn new(a_bar: f64, path_loss: &[f64], d: usize) -> Self {
        Flow {
            a_bar,
            waiting: VecDeque::new(),
            next_seq: 1,
            ack_through: 0,
            qr: 0,
            decoder: IdealDecoder::new(),
            in_flight: VecDeque::new(),
            first_in_flight: 1,
            predictor: MultipathPredictor::new(path_loss, d),
            reports: VecDeque::new(),
            current: Outcome::default(),
            arq: ArqTracker::default(),
            metrics: FlowMetrics::default(),
        }
    }

    fn unacked(&self) -> bool {
        self.next_seq - 1 > self.ack_through
    }

    fn deliver(&mut self, through: u64, slot: u64) {
        while self.first_in_flight <= through {
            if let Some(enq) = self.in_flight.pop_front() {
                self.metrics.delivered += 1;
                self.metrics.sum_delay += slot - enq;
            }
            self.first_in_flight += 1;
        }
    }

    fn send(&mut self, action: SlotAction, target: Option<u64>, erased: bool, slot: u64) -> Result<(), Error> {
        match action {
            SlotAction::Idle => {}
            SlotAction::Information => {
                self.metrics.info_sent += 1;
                let enq = self.waiting.pop_front().ok_or(Error::InvalidParameter("empty queue"))?;
                let seq = self.next_seq;
                self.next_seq += 1;
                self.in_flight.push_back(enq);
                if erased {
                    self.qr += 1;
                    self.current.lost.push(seq);
                } else {
                    let r = self.decoder.receive(IdealPacket::Info { seq })?;
                    self.deliver(r.delivered.end - 1, slot);
                }
            }
            SlotAction::Coded => {
                self.metrics.coded_sent += 1;
                let left = self.ack_through + 1;
                let right = target.unwrap_or(self.next_seq - 1);
                let mut repaired = false;
                if left > right {
                    self.metrics.dummy += 1;
                } else if !erased {
                    let r = self.decoder.receive(IdealPacket::Coded { left, right })?;
                    if r.dof_gain {
                        repaired = self.qr > 0;
                        self.qr = self.qr.saturating_sub(1);
                    }
                    self.deliver(r.delivered.end - 1, slot);
                }
                if let Some(t) = target {
                    self.current.repairs.push((t, repaired));
                }
            }
        }
        Ok(())
    }
}

/// Slotted simulation of flows over edge-disjoint paths.
#[derive(Clone, Debug)]
pub struct MultipathSim {
    cfg: MultipathConfig,
    slot: u64,
    flows: Vec<Flow>,
    arrivals_rng: ChaCha8Rng,
    erasure_rng: ChaCha8Rng,
    metrics: MultipathMetrics,
}

impl MultipathSim {
    pub fn new(cfg: MultipathConfig) -> Result<Self, Error> {
        cfg.validate()?;
        let flows = cfg.arrivals.iter().map(|&a| Flow::new(a, &cfg.path_loss, cfg.feedback_delay)).collect();
        let metrics = MultipathMetrics {
            path_packets: vec![0; cfg.path_loss.len()],
            trace: cfg.record_trace.then(Vec::new),
            ..MultipathMetrics::default()
        };
        Ok(MultipathSim {
            arrivals_rng: stream_rng(cfg.seed, STREAM_ARRIVALS),
            erasure_rng: stream_rng(cfg.seed, STREAM_ERASURES),
            slot: 0,
            flows,
            metrics,
            cfg,
        })
    }

    /// Current predicted receiver queue of each flow.
    fn predictions(&self) -> Vec<(u64, f64)> {
        self.flows
            .iter()
            .map(|f| {
                let lag = f.reports.front().map_or(0, |r| r.qr);
                (lag, f.predictor.predict(lag))
            })
            .collect()
    }

    pub fn step(&mut self) -> Result<(), Error> {
        self.slot += 1;
        let k = self.slot;
        let d = self.cfg.feedback_delay;
        let arq = self.cfg.scheduler == MultipathScheduler::RoundRobinArq;

        for f in &mut self.flows {
            f.reports.push_back(Report {
                qr: f.qr,
                delivered_through: f.first_in_flight - 1,
                previous: core::mem::take(&mut f.current),
            });
            while f.reports.len() > d + 1 {
                f.reports.pop_front();
            }
            if let Some(lag) = f.reports.front() {
                if arq {
                    f.arq.observe(&lag.previous);
                }
                f.ack_through = f.ack_through.max(lag.delivered_through);
            }
        }
        for f in &mut self.flows {
            if self.arrivals_rng.gen_bool(f.a_bar) {
                f.metrics.arrivals += 1;
                f.waiting.push_back(k);
            }
        }
        let erased: Vec<bool> = self.cfg.path_loss.iter().map(|&p| self.erasure_rng.gen_bool(p)).collect();

        let mut queues: Vec<f64> = self.predictions().into_iter().map(|(_, q)| q).collect();
        let n_flows = self.flows.len();
        let mut uses: Vec<PathUse> = vec![None; self.cfg.path_loss.len()];
        let mut sent: Vec<Vec<(usize, SlotAction)>> = vec![Vec::new(); n_flows];
        // Paths are granted one after another; each grant moves the chosen
        // flow's prediction by the packet's expected effect before the next.
        for (i, &p) in self.cfg.path_loss.iter().enumerate() {
            let (fi, action, target) = if arq {
                let fi = ((k + i as u64) % n_flows as u64) as usize;
                let f = &mut self.flows[fi];
                if f.arq.has_uncovered() {
                    (fi, SlotAction::Coded, f.arq.next_repair())
                } else if !f.waiting.is_empty() {
                    (fi, SlotAction::Information, None)
                } else {
                    (fi, SlotAction::Idle, None)
                }
            } else {
                let fi = allocate_path(&queues, p, k, i);
                let f = &self.flows[fi];
                let fires = threshold_fires(queues[fi], 1.0 / self.cfg.alpha);
                let a = flow_decide(1, queues[fi], self.cfg.alpha, f.waiting.len() as u64)[0];
                // A leftover coded packet is sent only if it protects something.
                let a = if a.is_coded() && !fires && !f.unacked() { SlotAction::Idle } else { a };
                (fi, a, None)
            };
            match action {
                SlotAction::Information => queues[fi] += p,
                SlotAction::Coded => queues[fi] -= 1.0 - p,
                SlotAction::Idle => {}
            }
            self.flows[fi].send(action, target, erased[i], k)?;
            if action != SlotAction::Idle {
                self.metrics.path_packets[i] += 1;
                uses[i] = Some((fi, action));
            }
            sent[fi].push((i, action));
        }
        for (f, s) in self.flows.iter_mut().zip(sent) {
            f.predictor.record(s);
        }
        if let Some(t) = &mut self.metrics.trace {
            t.push(uses);
        }
        Ok(())
    }

    pub fn finish(mut self) -> MultipathMetrics {
        self.metrics.slots = self.slot;
        self.metrics.flows = self
            .flows
            .into_iter()
            .map(|f| FlowMetrics { stranded: f.metrics.arrivals - f.metrics.delivered, final_qr: f.qr, ..f.metrics })
            .collect();
        self.metrics
    }
}

pub fn run_multipath(cfg: &MultipathConfig) -> Result<MultipathMetrics, Error> {
    let mut sim = MultipathSim::new(cfg.clone())?;
    for _ in 0..cfg.horizon {
        sim.step()?;
    }
    Ok(sim.finish())
}

/// Round-robin ARQ baseline on the same network.
pub fn run_multipath_rr_arq(cfg: &MultipathConfig) -> Result<MultipathMetrics, Error> {
    run_multipath(&cfg.clone().with_scheduler(MultipathScheduler::RoundRobinArq))
}
