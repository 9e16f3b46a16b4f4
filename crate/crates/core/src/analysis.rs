//! Closed-form bounds on predictor error, receiver queue and rate, and
//! checks of simulated traces against them.

use alloc::vec::Vec;

use crate::error::Error;
use crate::policy::{threshold_fires, SlotAction};

/// Outcome of checking one bound against a trace.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub bound: f64,
    /// Worst or mean observed value, depending on the bound.
    pub observed: f64,
    pub satisfied: bool,
    /// Slots counted by the check (after burn-in and conditioning).
    pub checked: u64,
    /// Zero-based slot indices where the bound failed.
    pub violations: Vec<u64>,
}

/// Sample-path bound `2d·max(p, 1−p)` on `|Q^r_k − Q̂^r_k|`.
pub fn worst_case_delta(p: f64, d: usize) -> f64 {
    2.0 * d as f64 * p.max(1.0 - p)
}

/// Hoeffding bound `2p·sqrt((d/2)·ln(2/(1−q)))`, exceeded with probability
/// at most `1 − q`.
pub fn hoeffding_delta(p: f64, d: usize, q: f64) -> Result<f64, Error> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter("confidence q must lie in (0, 1)"));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("Hoeffding bound needs d >= 1"));
    }
    Ok(2.0 * p * libm::sqrt(d as f64 / 2.0 * libm::log(2.0 / (1.0 - q))))
}

/// Discarded prefix for asymptotic checks: `max(10d, 100)` slots.
pub fn burn_in(d: usize) -> usize {
    (10 * d).max(100)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimatorCheck {
    pub max_error: f64,
    pub worst_case: BoundReport,
    pub hoeffding_delta: f64,
    /// Fraction of slots with `|Q^r − Q̂| ≤` the Hoeffding delta.
    pub within_hoeffding: f64,
}

/// Compares per-slot `Q^r_k` and `Q̂^r_k` against both error bounds.
pub fn check_estimator_error(qr: &[u32], qhat: &[f64], p: f64, d: usize, q: f64) -> Result<EstimatorCheck, Error> {
    if qr.len() != qhat.len() {
        return Err(Error::DimensionMismatch { expected: qr.len(), got: qhat.len() });
    }
    let worst = worst_case_delta(p, d);
    let hoeff = if d == 0 { 0.0 } else { hoeffding_delta(p, d, q)? };
    let mut max_error = 0.0f64;
    let mut within = 0u64;
    let mut violations = Vec::new();
    for (k, (&r, &h)) in qr.iter().zip(qhat).enumerate() {
        let err = libm::fabs(r as f64 - h);
        max_error = max_error.max(err);
        // Q̂ is formed from counts, so allow for float rounding only.
        if err > worst + 1e-9 {
            violations.push(k as u64);
        }
        if err <= hoeff + 1e-9 {
            within += 1;
        }
    }
    let n = qr.len() as u64;
    Ok(EstimatorCheck {
        max_error,
        worst_case: BoundReport {
            name: "worst_case_delta",
            bound: worst,
            observed: max_error,
            satisfied: violations.is_empty(),
            checked: n,
            violations,
        },
        hoeffding_delta: hoeff,
        within_hoeffding: if n == 0 { 1.0 } else { within as f64 / n as f64 },
    })
}

/// Receiver queue limit `γ + δ + 1` for policy P.
pub fn queue_bound(gamma: f64, delta: f64) -> f64 {
    gamma + delta + 1.0
}

/// Checks `Q^r_k ≤ γ + δ + 1` after `burn_in` slots, on slots where the
/// estimator is accurate (`Q^r_k − Q̂^r_k ≤ δ`).
pub fn check_queue_bound(qr: &[u32], qhat: &[f64], gamma: f64, delta: f64, burn_in: usize) -> BoundReport {
    let bound = queue_bound(gamma, delta);
    let mut observed = 0.0f64;
    let mut checked = 0;
    let mut violations = Vec::new();
    for (k, (&r, &h)) in qr.iter().zip(qhat).enumerate().skip(burn_in) {
        let r = r as f64;
        if r - h > delta + 1e-9 {
            continue;
        }
        checked += 1;
        observed = observed.max(r);
        if r > bound + 1e-9 {
            violations.push(k as u64);
        }
    }
    BoundReport { name: "queue_bound", bound, observed, satisfied: violations.is_empty(), checked, violations }
}

/// Lower bound `(1−p) − (1/2 + δ + (1+δ)(1−p))/γ` on the long-run fraction
/// of slots not spent on coded packets.
pub fn capacity_loss_bound(p: f64, delta: f64, gamma: f64) -> Result<f64, Error> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter("gamma must be positive"));
    }
    Ok((1.0 - p) - (0.5 + delta + (1.0 + delta) * (1.0 - p)) / gamma)
}

/// Compares the non-coded slot fraction `1 − C̄` after `burn_in` against
/// [`capacity_loss_bound`].
pub fn check_capacity_loss(
    actions: &[SlotAction],
    p: f64,
    delta: f64,
    gamma: f64,
    burn_in: usize,
) -> Result<BoundReport, Error> {
    let bound = capacity_loss_bound(p, delta, gamma)?;
    let tail = actions.get(burn_in..).unwrap_or(&[]);
    let coded = tail.iter().filter(|a| a.is_coded()).count();
    let observed = if tail.is_empty() { 1.0 } else { 1.0 - coded as f64 / tail.len() as f64 };
    Ok(BoundReport {
        name: "capacity_loss",
        bound,
        observed,
        satisfied: observed >= bound,
        checked: tail.len() as u64,
        violations: Vec::new(),
    })
}

/// Band `[γ − (1−p), γ + p]` for the long-run mean of `Q̂^r`.
pub fn prediction_band(p: f64, gamma: f64) -> (f64, f64) {
    (gamma - (1.0 - p), gamma + p)
}

/// Mean of `Q̂^r` after `burn_in`, checked against the band widened by `slack`.
pub fn check_prediction_band(qhat: &[f64], p: f64, gamma: f64, burn_in: usize, slack: f64) -> BoundReport {
    let (lo, hi) = prediction_band(p, gamma);
    let tail = qhat.get(burn_in..).unwrap_or(&[]);
    let mean = if tail.is_empty() { 0.0 } else { tail.iter().sum::<f64>() / tail.len() as f64 };
    BoundReport {
        name: "prediction_band",
        bound: hi,
        observed: mean,
        satisfied: mean >= lo - slack && mean <= hi + slack,
        checked: tail.len() as u64,
        violations: Vec::new(),
    }
}

/// Binomial probability `C(n,u) p^u (1−p)^(n−u)`, evaluated in log space.
pub fn binomial_pmf(n: u64, p: f64, u: u64) -> f64 {
    if u > n {
        return 0.0;
    }
    if p <= 0.0 {
        return if u == 0 { 1.0 } else { 0.0 };
    }
    if p >= 1.0 {
        return if u == n { 1.0 } else { 0.0 };
    }
    let (n, u) = (n as f64, u as f64);
    let ln_choose = libm::lgamma(n + 1.0) - libm::lgamma(u + 1.0) - libm::lgamma(n - u + 1.0);
    libm::exp(ln_choose + u * libm::log(p) + (n - u) * libm::log1p(-p))
}

/// Estimated rate of redundant coded packets,
/// `r̂ = Σ_{u=0}^{⌈dp⌉} (⌈dp⌉ − u)/d · B(⌊d·ā⌋, p, u)`.
///
/// Evaluated as written. For `d < 1/p` the `u = 0` term is still positive,
/// so `r̂ > 0` there even though redundant packets are not observed.
pub fn redundancy_estimate(p: f64, a_bar: f64, d: usize) -> Result<f64, Error> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter("p must lie in (0, 1)"));
    }
    if !(a_bar > 0.0 && a_bar <= 1.0) {
        return Err(Error::InvalidParameter("arrival rate must lie in (0, 1]"));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("redundancy estimate needs d >= 1"));
    }
    let df = d as f64;
    let m = libm::ceil(df * p) as u64;
    let n = libm::floor(df * a_bar) as u64;
    Ok((0..=m).map(|u| (m - u) as f64 / df * binomial_pmf(n, p, u)).sum())
}

/// Time average of `R_k`: the threshold fired while `Q^r_k = 0`.
pub fn measure_redundancy(qhat: &[f64], qr: &[u32], gamma: f64) -> f64 {
    if qr.is_empty() {
        return 0.0;
    }
    let hits = qhat.iter().zip(qr).filter(|&(&h, &r)| r == 0 && threshold_fires(h, gamma)).count();
    hits as f64 / qr.len() as f64
}

/// Path of `q_{k+1} = [q_k + ω_k]^+` from `q_1 = q0`, including `q_1`.
pub fn queue_path(q0: f64, increments: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(increments.len() + 1);
    let mut q = q0;
    out.push(q);
    for &w in increments {
        q = (q + w).max(0.0);
        out.push(q);
    }
    out
}

/// Checks queue continuity for two increment sequences from a common
/// start: if every partial sum of `ω − ω̃` stays within `δ/2`, the two
/// queues stay within `δ`.
///
/// Returns `None` when the hypothesis fails, otherwise whether the
/// conclusion held.
pub fn queue_continuity_check(omega: &[f64], omega_tilde: &[f64], delta: f64) -> Option<bool> {
    if omega.len() != omega_tilde.len() {
        return None;
    }
    let mut gap = 0.0;
    for (a, b) in omega.iter().zip(omega_tilde) {
        gap += a - b;
        if libm::fabs(gap) > delta / 2.0 + 1e-12 {
            return None;
        }
    }
    let q = queue_path(0.0, omega);
    let qt = queue_path(0.0, omega_tilde);
    Some(q.iter().zip(&qt).all(|(a, b)| libm::fabs(a - b) <= delta + 1e-12))
}
