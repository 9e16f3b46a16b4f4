//! One function per subcommand. Each sweeps one parameter, replicates every
//! point and returns the aggregated rows.

use std::collections::BTreeMap;

use dlfec_core::analysis::{check_estimator_error, hoeffding_delta, redundancy_estimate, worst_case_delta};
use dlfec_core::multipath::{run_multipath, MultipathConfig, MultipathMetrics, MultipathScheduler};
use dlfec_core::policy::PolicyKind;
use dlfec_core::sim::{run, RunMetrics, SimConfig};

use crate::config::Settings;
use crate::error::{usage, LabError};
use crate::report::{ResultRow, Table};
use crate::stats::{replicate, summarize, Summary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    DelayVsFeedback,
    RateVsEpsilon,
    GammaSweep,
    DelayVsLoad,
    Bounds,
    DummyRate,
    QueueDelayScatter,
    MultipathThroughput,
    MultipathDelay,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::DelayVsFeedback,
        Command::RateVsEpsilon,
        Command::GammaSweep,
        Command::DelayVsLoad,
        Command::Bounds,
        Command::DummyRate,
        Command::QueueDelayScatter,
        Command::MultipathThroughput,
        Command::MultipathDelay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::DelayVsFeedback => "delay-vs-feedback",
            Command::RateVsEpsilon => "rate-vs-epsilon",
            Command::GammaSweep => "gamma-sweep",
            Command::DelayVsLoad => "delay-vs-load",
            Command::Bounds => "bounds",
            Command::DummyRate => "dummy-rate",
            Command::QueueDelayScatter => "queue-delay-scatter",
            Command::MultipathThroughput => "multipath-throughput",
            Command::MultipathDelay => "multipath-delay",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn about(self) -> &'static str {
        match self {
            Command::DelayVsFeedback => "End-to-end delay vs feedback delay d for each policy",
            Command::RateVsEpsilon => "Achieved information rate vs capacity gap epsilon",
            Command::GammaSweep => "Policy P delay vs arrival rate for several gamma",
            Command::DelayVsLoad => "ARQ vs the rho*Qt - Qr rule: delay vs capacity gap epsilon",
            Command::Bounds => "Estimator error against the worst-case and Hoeffding bounds",
            Command::DummyRate => "Measured redundant-packet rate and its analytic estimate vs d",
            Command::QueueDelayScatter => "Mean sender/receiver delay by queue occupancy",
            Command::MultipathThroughput => "Saturated 3-flow, 3-path rates vs loss on path 1",
            Command::MultipathDelay => "Multipath delay vs d: proposed scheduler vs round-robin ARQ",
        }
    }
}

/// Runs a subcommand with the merged settings.
pub fn run_command(cmd: Command, s: &Settings) -> Result<Table, LabError> {
    match cmd {
        Command::DelayVsFeedback => delay_vs_feedback(s),
        Command::RateVsEpsilon => rate_vs_epsilon(s),
        Command::GammaSweep => gamma_sweep(s),
        Command::DelayVsLoad => delay_vs_load(s),
        Command::Bounds => bounds(s),
        Command::DummyRate => dummy_rate(s),
        Command::QueueDelayScatter => queue_delay_scatter(s),
        Command::MultipathThroughput => multipath_throughput(s),
        Command::MultipathDelay => multipath_delay(s),
    }
}

/// Settings every subcommand shares.
struct Common {
    slots: u64,
    reps: usize,
    seed: u64,
    per_rep: bool,
    fill_idle: bool,
}

impl Common {
    fn read(s: &Settings, slots: u64, reps: usize) -> Result<Self, LabError> {
        let c = Common {
            slots: s.u64_or("slots", slots)?,
            reps: s.usize_or("reps", reps)?,
            seed: s.u64_or("seed", 1)?,
            per_rep: s.bool_or("per_rep", false)?,
            fill_idle: s.bool_or("fill_idle", true)?,
        };
        if c.slots == 0 || c.reps == 0 {
            return usage("`slots` and `reps` must be at least 1");
        }
        Ok(c)
    }

    fn sims<F>(&self, cfg: F) -> Result<Vec<RunMetrics>, LabError>
    where
        F: Fn(u64) -> SimConfig + Sync,
    {
        cfg(0).validate()?;
        let (slots, fill) = (self.slots, self.fill_idle);
        Ok(replicate(self.reps, self.seed, |seed| {
            run(&cfg(seed).with_horizon(slots).with_seed(seed).with_fill_idle(fill))
        })?)
    }

    fn multipath<F>(&self, cfg: F) -> Result<Vec<MultipathMetrics>, LabError>
    where
        F: Fn() -> MultipathConfig + Sync,
    {
        cfg().validate()?;
        let slots = self.slots;
        Ok(replicate(self.reps, self.seed, |seed| run_multipath(&cfg().with_horizon(slots).with_seed(seed)))?)
    }

    /// Appends the summary row and, if asked, one row per replication.
    fn push(&self, t: &mut Table, swept: f64, metric: &str, policy: &str, values: &[f64]) {
        if let Some(sum) = summarize(values) {
            t.rows.push(ResultRow::new(swept, metric, policy, sum));
        }
        if self.per_rep {
            for (i, v) in values.iter().enumerate() {
                t.rows.push(ResultRow::replication(swept, metric, policy, i, *v));
            }
        }
    }
}

fn exact(t: &mut Table, swept: f64, metric: &str, policy: &str, value: f64) {
    t.rows.push(ResultRow::new(swept, metric, policy, Summary::exact(value)));
}

/// Parses a policy name; `block_k` and `gamma` fill in the parameters.
pub fn parse_policy(name: &str, block_k: usize, gamma: f64) -> Result<PolicyKind, LabError> {
    match name {
        "arq" => Ok(PolicyKind::Arq),
        "fec" => Ok(PolicyKind::Fec),
        "block" => Ok(PolicyKind::Block { k: block_k, n: None }),
        "policy_p" | "p" => Ok(PolicyKind::PolicyP { gamma }),
        _ => usage(format!("unknown policy `{name}` (expected arq, block, fec or policy_p)")),
    }
}

fn policies(s: &Settings, default: &[&str], gamma: f64) -> Result<Vec<PolicyKind>, LabError> {
    let k = s.usize_or("block_k", 50)?;
    s.str_list_or("policies", default).iter().map(|n| parse_policy(n, k, gamma)).collect()
}

fn values(runs: &[RunMetrics], f: impl Fn(&RunMetrics) -> f64) -> Vec<f64> {
    runs.iter().map(f).collect()
}

fn label(prefix: &str, x: f64) -> String {
    format!("{prefix}_{x}")
}

fn delay_vs_feedback(s: &Settings) -> Result<Table, LabError> {
    let c = Common::read(s, 10_000, 100)?;
    let (p, a) = (s.f64_or("p", 0.2)?, s.f64_or("a", 0.7)?);
    let gamma = s.single_f64_or("gamma", 1.0)?;
    let ds = s.usize_list_or("d", &[0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100])?;
    let pols = policies(s, &["arq", "block", "fec", "policy_p"], gamma)?;
    let mut t = Table::new(Command::DelayVsFeedback.name(), "d");
    for &d in &ds {
        for &pol in &pols {
            let runs = c.sims(|_| SimConfig::new(p, a, d, pol))?;
            c.push(&mut t, d as f64, "delay", pol.name(), &values(&runs, RunMetrics::mean_delay));
            c.push(&mut t, d as f64, "goodput", pol.name(), &values(&runs, RunMetrics::goodput));
        }
    }
    Ok(t)
}

fn rate_vs_epsilon(s: &Settings) -> Result<Table, LabError> {
    let c = Common::read(s, 10_000, 100)?;
    let p = s.f64_or("p", 0.2)?;
    let d = s.single_usize_or("d", 100)?;
    let gamma = s.single_f64_or("gamma", 1.0)?;
    let eps = s.f64_list_or("sweep", &[0.01, 0.02, 0.05, 0.1, 0.15, 0.2])?;
    let pols = policies(s, &["arq", "block", "fec", "policy_p"], gamma)?;
    let mut t = Table::new(Command::RateVsEpsilon.name(), "epsilon");
    for &e in &eps {
        let a = 1.0 - p - e;
        if e <= 0.0 || a < 0.0 {
            return usage(format!("epsilon must lie in (0, 1 - p], got {e}"));
        }
        exact(&mut t, e, "arrival_rate", "offered", a);
        for &pol in &pols {
            let runs = c.sims(|_| SimConfig::new(p, a, d, pol))?;
            c.push(&mut t, e, "s_bar", pol.name(), &values(&runs, RunMetrics::s_bar));
            c.push(&mut t, e, "goodput", pol.name(), &values(&runs, RunMetrics::goodput));
            c.push(&mut t, e, "arrivals", pol.name(), &values(&runs, RunMetrics::arrival_rate));
        }
    }
    Ok(t)
}

fn gamma_sweep(s: &Settings) -> Result<Table, LabError> {
    let c = Common::read(s, 10_000, 100)?;
    let p = s.f64_or("p", 0.2)?;
    let d = s.single_usize_or("d", 100)?;
    let gammas = s.f64_list_or("gamma", &[1.0, 2.0, 5.0, 10.0])?;
    let loads = s.f64_list_or("sweep", &[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.75])?;
    let mut t = Table::new(Command::GammaSweep.name(), "a");
    for &a in &loads {
        for &g in &gammas {
            let pol = PolicyKind::PolicyP { gamma: g };
            let runs = c.sims(|_| SimConfig::new(p, a, d, pol))?;
            c.push(&mut t, a, "delay", &label("policy_p_gamma", g), &values(&runs, RunMetrics::mean_delay));
        }
    }
    Ok(t)
}

fn delay_vs_load(s: &Settings) -> Result<Table, LabError> {
    let c = Common::read(s, 10_000, 100)?;
    let p = s.f64_or("p", 0.1)?;
    let d = s.single_usize_or("d", 0)?;
    let rhos = s.f64_list_or("rho", &[0.0, 0.5, 1.0])?;
    let eps = s.f64_list_or("sweep", &[0.01, 0.02, 0.05, 0.1, 0.2])?;
    let mut pols = vec![("arq".to_string(), PolicyKind::Arq)];
    pols.extend(rhos.iter().map(|&rho| (label("weighted_rho", rho), PolicyKind::Weighted { rho })));
    let mut t = Table::new(Command::DelayVsLoad.name(), "epsilon");
    for &e in &eps {
        let a = 1.0 - p - e;
        if e <= 0.0 || a < 0.0 {
            return usage(format!("epsilon must lie in (0, 1 - p], got {e}"));
        }
        for (name, pol) in &pols {
            let runs = c.sims(|_| SimConfig::new(p, a, d, *pol))?;
            c.push(&mut t, e, "delay", name, &values(&runs, RunMetrics::mean_delay));
        }
    }
    Ok(t)
}

fn bounds(s: &Settings) -> Result<Table, LabError> {
    let c = Common::read(s, 10_000, 100)?;
    let (p, a) = (s.f64_or("p", 0.6)?, s.f64_or("a", 1.0)?);
    let q = s.f64_or("q", 0.9)?;
    let gamma = s.single_f64_or("gamma", 1.0)?;
    let ds = s.usize_list_or("d", &[1, 2, 5, 10, 20, 50, 100])?;
    let mut t = Table::new(Command::Bounds.name(), "d");
    for &d in &ds {
        let hd = hoeffding_delta(p, d, q).or_else(|e| usage(format!("bounds need d >= 1 and q in (0, 1): {e}")))?;
        exact(&mut t, d as f64, "worst_case_delta", "bound", worst_case_delta(p, d));
        exact(&mut t, d as f64, "hoeffding_delta", "bound", hd);
        let pol = PolicyKind::PolicyP { gamma };
        let runs = c.sims(|_| SimConfig::new(p, a, d, pol).with_trace())?;
        let mut max_err = Vec::with_capacity(runs.len());
        let mut within = Vec::with_capacity(runs.len());
        for m in &runs {
            let tr = m.trace.as_ref().expect("trace requested");
            let chk = check_estimator_error(&tr.qr, &tr.qhat, p, d, q)?;
            max_err.push(chk.max_error);
            within.push(chk.within_hoeffding);
        }
        c.push(&mut t, d as f64, "max_error", pol.name(), &max_err);
        c.push(&mut t, d as f64, "within_hoeffding", pol.name(), &within);
    }
    Ok(t)
}

fn dummy_rate(s: &Settings) -> Result<Table, LabError> {
    let c = Common::read(s, 10_000, 100)?;
    let (p, a) = (s.f64_or("p", 0.1)?, s.f64_or("a", 0.9)?);
    let gamma = s.single_f64_or("gamma", 1.0)?;
    let ds: Vec<usize> = s.usize_list_or("d", &(1..=100).collect::<Vec<_>>())?;
    let mut t = Table::new(Command::DummyRate.name(), "d");
    for &d in &ds {
        exact(&mut t, d as f64, "r_hat", "estimate", redundancy_estimate(p, a, d)?);
        let pol = PolicyKind::PolicyP { gamma };
        let runs = c.sims(|_| SimConfig::new(p, a, d, pol))?;
        c.push(&mut t, d as f64, "r_bar", pol.name(), &values(&runs, RunMetrics::r_bar));
    }
    Ok(t)
}

fn queue_delay_scatter(s: &Settings) -> Result<Table, LabError> {
    let c = Common::read(s, 10_000, 100)?;
    let (p, a) = (s.f64_or("p", 0.2)?, s.f64_or("a", 0.7)?);
    let d = s.single_usize_or("d", 0)?;
    let gamma = s.single_f64_or("gamma", 1.0)?;
    let pols = policies(s, &["fec"], gamma)?;
    let mut t = Table::new(Command::QueueDelayScatter.name(), "queue");
    for &pol in &pols {
        let runs = c.sims(|_| {
            let mut cfg = SimConfig::new(p, a, d, pol);
            cfg.record_packets = true;
            cfg
        })?;
        // per replication: queue value -> (sum of delays, count)
        type Bins = BTreeMap<u32, (u64, u64)>;
        let mut by_qt: Vec<Bins> = Vec::with_capacity(runs.len());
        let mut by_qr: Vec<Bins> = Vec::with_capacity(runs.len());
        for m in &runs {
            let (mut bt, mut br) = (Bins::new(), Bins::new());
            for r in &m.packets {
                let Some(done) = r.delivered else { continue };
                let e = bt.entry(r.qt_at_enqueue).or_default();
                e.0 += r.sent - r.enqueued;
                e.1 += 1;
                let e = br.entry(r.qr_at_send).or_default();
                e.0 += done - r.sent;
                e.1 += 1;
            }
            by_qt.push(bt);
            by_qr.push(br);
        }
        for (metric, bins) in [("d_qt", &by_qt), ("d_qr", &by_qr)] {
            let keys: std::collections::BTreeSet<u32> = bins.iter().flat_map(|b| b.keys().copied()).collect();
            for k in keys {
                let per_rep: Vec<f64> =
                    bins.iter().filter_map(|b| b.get(&k).map(|&(sum, n)| sum as f64 / n as f64)).collect();
                c.push(&mut t, k as f64, metric, pol.name(), &per_rep);
            }
        }
    }
    Ok(t)
}

fn multipath_throughput(s: &Settings) -> Result<Table, LabError> {
    let c = Common::read(s, 100_000, 10)?;
    let p = s.f64_or("p", 0.1)?;
    let a = s.f64_or("a", 1.0)?;
    let alpha = s.f64_or("alpha", 1.0)?;
    let d = s.single_usize_or("d", 10)?;
    let p1s = s.f64_list_or("sweep", &[0.0, 0.1, 0.2, 0.3, 0.4])?;
    let mut t = Table::new(Command::MultipathThroughput.name(), "p1");
    for &p1 in &p1s {
        let loss = vec![p1, p, p];
        exact(&mut t, p1, "capacity", "bound", loss.iter().map(|x| 1.0 - x).sum());
        let runs = c.multipath(|| MultipathConfig::new(loss.clone(), vec![a; 3], alpha, d))?;
        for f in 0..3 {
            let v: Vec<f64> = runs.iter().map(|m| m.flow_rate(f)).collect();
            c.push(&mut t, p1, "flow_rate", &format!("flow_{}", f + 1), &v);
        }
        let v: Vec<f64> = runs.iter().map(MultipathMetrics::aggregate_rate).collect();
        c.push(&mut t, p1, "aggregate_rate", "dual_subgradient", &v);
    }
    Ok(t)
}

fn multipath_delay(s: &Settings) -> Result<Table, LabError> {
    let c = Common::read(s, 100_000, 10)?;
    let (p, a) = (s.f64_or("p", 0.2)?, s.f64_or("a", 0.7)?);
    let alpha = s.f64_or("alpha", 1.0)?;
    let ds = s.usize_list_or("d", &[0, 10, 20, 40, 60, 80, 100])?;
    let scheds =
        [("dual_subgradient", MultipathScheduler::DualSubgradient), ("rr_arq", MultipathScheduler::RoundRobinArq)];
    let mut t = Table::new(Command::MultipathDelay.name(), "d");
    for &d in &ds {
        for (name, sched) in scheds {
            let runs = c.multipath(|| MultipathConfig::new(vec![p; 3], vec![a; 3], alpha, d).with_scheduler(sched))?;
            let v: Vec<f64> = runs.iter().map(MultipathMetrics::mean_delay).collect();
            c.push(&mut t, d as f64, "delay", name, &v);
        }
    }
    Ok(t)
}
