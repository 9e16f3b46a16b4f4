//! Transmitter decision rules.
//!
//! Every slot the transmitter chooses one of [`SlotAction`]. Feedback-driven
//! rules see the receiver queue only through the `d`-slot-old report and the
//! sender's own decision history.

use alloc::collections::VecDeque;

use crate::codec::BlockParams;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotAction {
    Idle,
    Information,
    Coded,
}

impl SlotAction {
    pub fn is_info(self) -> bool {
        self == SlotAction::Information
    }

    pub fn is_coded(self) -> bool {
        self == SlotAction::Coded
    }
}

/// `d`-step-ahead predictor of the receiver queue.
///
/// `Q̂_k = Q^r_{k-d} + Σ_{j=k-d}^{k-1} (S_j p − C_j (1−p))`, evaluated from
/// integer counts so that repeated updates do not accumulate rounding.
#[derive(Clone, Debug)]
pub struct Predictor {
    p: f64,
    d: Option<usize>,
    history: VecDeque<SlotAction>,
    infos: u64,
    coded: u64,
}

impl Predictor {
    /// `d = None` means feedback never arrives: the lagged queue is 0 and the
    /// sum runs over the whole history.
    pub fn new(p: f64, d: Option<usize>) -> Self {
        Predictor { p, d, history: VecDeque::new(), infos: 0, coded: 0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn set_p(&mut self, p: f64) {
        self.p = p;
    }

    pub fn delay(&self) -> Option<usize> {
        self.d
    }

    /// Information packets among the actions still in flight.
    pub fn recent_infos(&self) -> u64 {
        self.infos
    }

    /// Coded packets among the actions still in flight.
    pub fn recent_coded(&self) -> u64 {
        self.coded
    }

    pub fn predict(&self, lagged_qr: u64) -> f64 {
        predict_from_counts(lagged_qr, self.infos, self.coded, self.p)
    }

    /// Appends this slot's action, dropping the one that has left the window.
    pub fn record(&mut self, action: SlotAction) {
        let Some(d) = self.d else {
            self.count(action, true);
            return;
        };
        if d == 0 {
            return;
        }
        if self.history.len() == d {
            if let Some(old) = self.history.pop_front() {
                self.count(old, false);
            }
        }
        self.history.push_back(action);
        self.count(action, true);
    }

    fn count(&mut self, a: SlotAction, add: bool) {
        let slot = match a {
            SlotAction::Information => &mut self.infos,
            SlotAction::Coded => &mut self.coded,
            SlotAction::Idle => return,
        };
        if add {
            *slot += 1;
        } else {
            *slot -= 1;
        }
    }
}

/// Prediction from the lagged queue and counts of in-flight actions.
pub fn predict_from_counts(lagged_qr: u64, infos: u64, coded: u64, p: f64) -> f64 {
    lagged_qr as f64 + p * infos as f64 - (1.0 - p) * coded as f64
}

/// Whether policy P's threshold calls for a coded packet.
pub fn threshold_fires(qhat: f64, gamma: f64) -> bool {
    qhat >= gamma && qhat > 0.0
}

/// Threshold rule of policy P.
///
/// Sends a coded packet when the prediction reaches `gamma` and is
/// positive. At `gamma = 1, d = 0` this is exactly "repair while the
/// receiver queue is non-empty".
pub fn policy_p_decide(qhat: f64, qt_effective: u64, gamma: f64) -> SlotAction {
    if threshold_fires(qhat, gamma) {
        SlotAction::Coded
    } else {
        info_or_idle(qt_effective)
    }
}

/// ARQ: repair while known losses exceed the repairs already in flight.
pub fn arq_decide(lagged_qr: u64, coded_in_flight: u64, qt_effective: u64) -> SlotAction {
    if lagged_qr > coded_in_flight {
        SlotAction::Coded
    } else {
        info_or_idle(qt_effective)
    }
}

/// Weighted rule: coded when `rho * Q^t − Q̂ < 0`.
pub fn weighted_decide(qhat: f64, qt: u64, rho: f64, qt_effective: u64) -> SlotAction {
    if rho * qt as f64 - qhat < 0.0 {
        SlotAction::Coded
    } else {
        info_or_idle(qt_effective)
    }
}

fn info_or_idle(qt_effective: u64) -> SlotAction {
    if qt_effective >= 1 {
        SlotAction::Information
    } else {
        SlotAction::Idle
    }
}

/// Open-loop FEC: one coded packet per `(1−p)/p` information packets.
///
/// The credit `infos·p/(1−p) − coded` is kept as a pair of counts; a coded
/// packet is due whenever it reaches 1.
#[derive(Clone, Debug)]
pub struct FecCounter {
    p: f64,
    infos: u64,
    coded: u64,
}

impl FecCounter {
    pub fn new(p: f64) -> Result<Self, Error> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter("FEC needs a loss rate in (0, 1)"));
        }
        Ok(FecCounter { p, infos: 0, coded: 0 })
    }

    pub fn credit(&self) -> f64 {
        self.infos as f64 * self.p / (1.0 - self.p) - self.coded as f64
    }

    fn due(&self) -> bool {
        // credit >= 1, multiplied through by (1-p)
        self.infos as f64 * self.p + 1e-9 >= (self.coded + 1) as f64 * (1.0 - self.p)
    }

    pub fn decide(&self, qt_effective: u64) -> SlotAction {
        if self.due() {
            SlotAction::Coded
        } else {
            info_or_idle(qt_effective)
        }
    }

    pub fn record(&mut self, action: SlotAction) {
        match action {
            SlotAction::Information => self.infos += 1,
            SlotAction::Coded => self.coded += 1,
            SlotAction::Idle => {}
        }
    }
}

/// Schedule of the systematic block code: `k` information slots (idling
/// while the queue is empty) followed by `n − k` coded slots.
#[derive(Clone, Debug)]
pub struct BlockSchedule {
    params: BlockParams,
    block: u64,
    infos: usize,
    coded: usize,
}

impl BlockSchedule {
    pub fn new(params: BlockParams) -> Self {
        BlockSchedule { params, block: 0, infos: 0, coded: 0 }
    }

    pub fn params(&self) -> &BlockParams {
        &self.params
    }

    pub fn decide(&self, qt_effective: u64) -> SlotAction {
        if self.infos < self.params.k() {
            info_or_idle(qt_effective)
        } else {
            SlotAction::Coded
        }
    }

    /// Block and in-block index of the packet about to be sent with `action`.
    pub fn position(&self, action: SlotAction) -> Option<(u64, usize)> {
        match action {
            SlotAction::Information => Some((self.block, self.infos)),
            SlotAction::Coded => Some((self.block, self.params.k() + self.coded)),
            SlotAction::Idle => None,
        }
    }

    /// Records `action`; returns `true` when it closed the block.
    pub fn record(&mut self, action: SlotAction) -> bool {
        match action {
            SlotAction::Information => self.infos += 1,
            SlotAction::Coded => self.coded += 1,
            SlotAction::Idle => return false,
        }
        if self.coded == self.params.redundancy() {
            self.block += 1;
            self.infos = 0;
            self.coded = 0;
            return true;
        }
        false
    }
}

/// Policy selector with parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PolicyKind {
    Arq,
    Fec,
    /// Block code with `k` information packets; `n = None` matches the
    /// redundancy to the loss rate.
    Block {
        k: usize,
        n: Option<usize>,
    },
    PolicyP {
        gamma: f64,
    },
    Weighted {
        rho: f64,
    },
}

impl PolicyKind {
    pub fn name(&self) -> &'static str {
        match self {
            PolicyKind::Arq => "arq",
            PolicyKind::Fec => "fec",
            PolicyKind::Block { .. } => "block",
            PolicyKind::PolicyP { .. } => "policy_p",
            PolicyKind::Weighted { .. } => "weighted",
        }
    }
}
