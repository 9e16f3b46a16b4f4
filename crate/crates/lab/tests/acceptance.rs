//! Acceptance suite: one check per criterion, one PASS/FAIL line each.
//!
//! Run all: `cargo test -p dlfec --test acceptance`
//! Run some: `cargo test -p dlfec --test acceptance -- 4 7`
//!
//! Criteria listed in `KNOWN_FAILURES` are reported as FAIL but do not fail
//! the target; the README explains each. Any other failure exits non-zero.

use std::collections::BTreeSet;
use std::process::{Command as Process, ExitCode};
use std::time::Instant;

use dlfec::config::Settings;
use dlfec::experiments::{run_command, Command};
use dlfec::report::{ResultRow, Table};
use dlfec::stats::replicate;
use dlfec_core::analysis::{
    burn_in, check_capacity_loss, check_estimator_error, check_prediction_band, check_queue_bound, hoeffding_delta,
    redundancy_estimate, worst_case_delta,
};
use dlfec_core::codec::{Decoder, Encoder, IdealDecoder, IdealPacket, Packet};
use dlfec_core::multipath::{run_multipath, MultipathConfig};
use dlfec_core::policy::{PolicyKind, SlotAction};
use dlfec_core::sim::{payload_for, run, Feedback, SimConfig, Simulation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_FAILURES: &[u32] = &[5, 8, 11];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(clauses: &[(bool, String)]) -> Verdict {
    Verdict {
        pass: clauses.iter().all(|c| c.0),
        detail: clauses
            .iter()
            .map(|(ok, s)| format!("[{}] {s}", if *ok { "ok" } else { "FAIL" }))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

fn saturated(p: f64, d: usize, gamma: f64) -> SimConfig {
    SimConfig::new(p, 1.0, d, PolicyKind::PolicyP { gamma })
}

// ---------------------------------------------------------------- 1

/// Largest matching of erasures to received coded packets whose window
/// contains them (augmenting paths). With generic coefficients this is the
/// receiver's rank over the erased packets.
fn max_matching(erased: &[u64], windows: &[(u64, u64)]) -> usize {
    fn augment(
        e: usize,
        erased: &[u64],
        windows: &[(u64, u64)],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for (w, &(l, r)) in windows.iter().enumerate() {
            if seen[w] || erased[e] < l || erased[e] > r {
                continue;
            }
            seen[w] = true;
            if owner[w].is_none_or(|o| augment(o, erased, windows, seen, owner)) {
                owner[w] = Some(e);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; windows.len()];
    (0..erased.len()).filter(|&e| augment(e, erased, windows, &mut vec![false; windows.len()], &mut owner)).count()
}

fn criterion_1() -> Verdict {
    const TRACES: u64 = 10_000;
    const PAYLOAD: usize = 4;
    let mut gapless = true;
    let mut complete_ok = 0u64;
    let mut payload_ok = true;
    let (mut opportunities, mut failures) = (0u64, 0u64);
    for t in 0..TRACES {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE_0000 + t);
        let n: u64 = rng.gen_range(1..=200);
        let p_loss: f64 = rng.gen_range(0.0..0.5);
        let p_coded: f64 = rng.gen_range(0.0..0.6);
        let mut enc = Encoder::new(PAYLOAD);
        let mut real = Decoder::new(PAYLOAD);
        let mut ideal = IdealDecoder::new();
        let (mut erased, mut windows) = (Vec::new(), Vec::new());
        let mut ideal_through = 0u64;
        let mut real_through = 0u64;
        let mut sent = 0u64;
        while sent < n || rng.gen_bool(0.5) {
            let coded = sent > 0 && (sent == n || rng.gen_bool(p_coded));
            let lost = rng.gen_bool(p_loss);
            if coded {
                if real_through >= sent {
                    continue;
                }
                enc.advance_window(real_through).expect("ack within range");
                let right = rng.gen_range(real_through + 1..=sent);
                let pkt = enc.encode_coded_through(right, &mut rng).expect("window");
                if lost {
                    continue;
                }
                // A lucky real decoder can run ahead of the generic one; the
                // ideal receiver then sees the window from its own frontier.
                let left = pkt.left.min(ideal_through + 1);
                windows.push((left, pkt.right));
                let i = ideal.receive(IdealPacket::Coded { left, right: pkt.right }).expect("ideal coded");
                let r = real.receive(&Packet::Coded(pkt)).expect("real coded");
                if i.dof_gain {
                    opportunities += 1;
                    if !r.dof_gain {
                        failures += 1;
                    }
                }
                gapless &= i.delivered.is_empty() || i.delivered.start == ideal_through + 1;
                ideal_through = ideal_through.max(i.delivered.end.saturating_sub(1));
                for (k, q) in r.delivered.iter().enumerate() {
                    gapless &= q.seq == real_through + 1 + k as u64;
                    payload_ok &= q.payload == payload_for(q.seq, PAYLOAD);
                }
                real_through += r.delivered.len() as u64;
            } else if sent < n {
                sent += 1;
                let info = enc.encode_info(payload_for(sent, PAYLOAD)).expect("info");
                if lost {
                    erased.push(sent);
                    continue;
                }
                let i = ideal.receive(IdealPacket::Info { seq: sent }).expect("ideal info");
                let r = real.receive(&Packet::Info(info)).expect("real info");
                gapless &= i.delivered.is_empty() || i.delivered.start == ideal_through + 1;
                ideal_through = ideal_through.max(i.delivered.end.saturating_sub(1));
                for (k, q) in r.delivered.iter().enumerate() {
                    gapless &= q.seq == real_through + 1 + k as u64;
                    payload_ok &= q.payload == payload_for(q.seq, PAYLOAD);
                }
                real_through += r.delivered.len() as u64;
            } else {
                break;
            }
        }
        let covered = max_matching(&erased, &windows) == erased.len();
        let complete = ideal_through == sent && ideal.delivered_through() == sent;
        if covered == complete {
            complete_ok += 1;
        }
    }
    let rate = failures as f64 / opportunities.max(1) as f64;
    let q = 1.0 / 256.0;
    let limit = q + 3.0 * (q * (1.0 - q) / opportunities.max(1) as f64).sqrt();
    verdict(&[
        (gapless, "in-order, gapless delivery in both modes".into()),
        (complete_ok == TRACES, format!("complete iff erasures covered: {complete_ok}/{TRACES} traces")),
        (payload_ok, "decoded payloads intact".into()),
        (rate <= limit, format!("real-mode dof failure rate {rate:.5} ({failures}/{opportunities}) <= {limit:.5}")),
    ])
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Verdict {
    let mut clauses = Vec::new();
    for p in [0.1, 0.2, 0.6] {
        for d in [1, 10, 100] {
            let cfg = saturated(p, d, 1.0).with_horizon(100_000).with_trace();
            let out: Vec<(usize, f64)> = replicate(100, 2, |s| {
                let m = run(&cfg.clone().with_seed(s))?;
                let tr = m.trace.expect("trace");
                let chk = check_estimator_error(&tr.qr, &tr.qhat, p, d, 0.9)?;
                Ok::<_, dlfec_core::Error>((chk.worst_case.violations.len(), chk.max_error))
            })
            .expect("runs");
            let v: usize = out.iter().map(|o| o.0).sum();
            let worst = out.iter().map(|o| o.1).fold(0.0, f64::max);
            clauses.push((
                v == 0,
                format!("p={p} d={d}: {v} violations, max err {worst:.1} <= {}", worst_case_delta(p, d)),
            ));
        }
    }
    verdict(&clauses)
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Verdict {
    let (p, d, q) = (0.6, 100, 0.9);
    let cfg = saturated(p, d, 1.0).with_horizon(100_000).with_trace();
    let freq: Vec<f64> = replicate(10, 3, |s| {
        let m = run(&cfg.clone().with_seed(s))?;
        let tr = m.trace.expect("trace");
        check_estimator_error(&tr.qr, &tr.qhat, p, d, q).map(|c| c.within_hoeffding)
    })
    .expect("runs");
    let min = freq.iter().copied().fold(1.0, f64::min);
    let ordered = (2..=1000)
        .all(|d| [0.1, 0.2, 0.5, 0.6, 0.9].iter().all(|&p| hoeffding_delta(p, d, q).unwrap() < worst_case_delta(p, d)));
    verdict(&[
        (min >= q, format!("within-delta frequency over 10^5 slots, min of 10 runs {min:.4} >= {q}")),
        (ordered, "Hoeffding delta < worst-case delta for d = 2..1000".into()),
    ])
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Verdict {
    let mut clauses = Vec::new();
    for d in [0usize, 20] {
        for p in [0.1, 0.2] {
            for gamma in [0.0, 1.0, 5.0] {
                let delta = worst_case_delta(p, d);
                let cfg = saturated(p, d, gamma).with_horizon(100_000).with_trace();
                let out: Vec<(usize, f64, u64)> = replicate(100, 4, |s| {
                    let m = run(&cfg.clone().with_seed(s))?;
                    let tr = m.trace.expect("trace");
                    let r = check_queue_bound(&tr.qr, &tr.qhat, gamma, delta, burn_in(d));
                    Ok::<_, dlfec_core::Error>((r.violations.len(), r.observed, r.checked))
                })
                .expect("runs");
                let v: usize = out.iter().map(|o| o.0).sum();
                let max_q = out.iter().map(|o| o.1).fold(0.0, f64::max);
                let checked: u64 = out.iter().map(|o| o.2).sum();
                clauses.push((
                    v == 0 && checked > 0,
                    format!("d={d} p={p} gamma={gamma}: max Qr {max_q} <= {}, {v} violations", gamma + delta + 1.0),
                ));
            }
        }
    }
    verdict(&clauses)
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Verdict {
    let mut clauses = Vec::new();
    for (a, p) in [(0.9, 0.1), (0.8, 0.2), (0.6, 0.1)] {
        let mut s = Settings::new();
        s.set("a", &a.to_string()).unwrap();
        s.set("p", &p.to_string()).unwrap();
        let t = run_command(Command::DummyRate, &s).expect("dummy-rate");
        let r_bar = t.series("r_bar", "policy_p");
        let mut excess = f64::NEG_INFINITY;
        let mut max_r = 0.0f64;
        let mut at = 0.0;
        let mut zero_below = true;
        for row in &r_bar {
            let d = row.swept as usize;
            let r_hat = redundancy_estimate(p, a, d).unwrap();
            excess = excess.max(row.mean - r_hat);
            if row.mean > max_r {
                max_r = row.mean;
                at = row.swept;
            }
            if (d as f64) < 1.0 / p && row.mean != 0.0 {
                zero_below = false;
            }
        }
        clauses.push((excess <= 0.02, format!("a={a} p={p}: max(r_bar - r_hat) {excess:.4} <= 0.02")));
        clauses.push((max_r <= 0.05, format!("a={a} p={p}: max r_bar {max_r:.4} (d={at}) <= 0.05")));
        clauses.push((zero_below, format!("a={a} p={p}: r_bar = 0 for d < {}", 1.0 / p)));
    }
    verdict(&clauses)
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Verdict {
    let mut identical = 0;
    for t in 0..100u64 {
        let (p, a) = [(0.2, 0.7), (0.1, 0.85), (0.3, 0.5), (0.2, 1.0)][t as usize % 4];
        let mk = |pol| SimConfig::new(p, a, 0, pol).with_horizon(10_000).with_seed(600 + t);
        let mut arq = Simulation::new(mk(PolicyKind::Arq)).unwrap();
        let mut pp = Simulation::new(mk(PolicyKind::PolicyP { gamma: 1.0 })).unwrap();
        let same = (0..10_000).all(|_| arq.step().unwrap().action == pp.step().unwrap().action);
        identical += same as u32;
    }
    let mut clauses = vec![(identical == 100, format!("P(gamma=1, d=0) and ARQ identical on {identical}/100 traces"))];
    for p in [0.1, 0.2] {
        let mut cfg = saturated(p, 0, 1.0).with_horizon(1_000_000).with_seed(6);
        cfg.feedback = Feedback::Disabled;
        let f = run(&cfg).unwrap().coded_fraction();
        clauses.push(((f - p).abs() <= 0.01, format!("no feedback, p={p}: coded fraction {f:.4} within 0.01 of p")));
    }
    verdict(&clauses)
}

// ---------------------------------------------------------------- 7

fn by_swept(rows: Vec<&ResultRow>) -> Vec<(f64, f64, f64)> {
    rows.iter().map(|r| (r.swept, r.mean, (r.ci95_high - r.ci95_low) / 2.0)).collect()
}

fn slope(xy: &[(f64, f64, f64)]) -> f64 {
    let n = xy.len() as f64;
    let mx = xy.iter().map(|v| v.0).sum::<f64>() / n;
    let my = xy.iter().map(|v| v.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|v| (v.0 - mx) * (v.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|v| (v.0 - mx) * (v.0 - mx)).sum();
    sxy / sxx
}

fn criterion_7() -> Verdict {
    let t = run_command(Command::DelayVsFeedback, &Settings::new()).expect("delay-vs-feedback");
    let arq = by_swept(t.series("delay", "arq"));
    let fec = by_swept(t.series("delay", "fec"));
    let block = by_swept(t.series("delay", "block"));
    let pp = by_swept(t.series("delay", "policy_p"));
    let increasing = arq.windows(2).all(|w| w[1].1 > w[0].1);
    let b = slope(&arq);
    let above = |i: usize| arq[i].1 > fec[i].1.max(block[i].1).max(pp[i].1);
    let cross = (0..arq.len()).find(|&i| (i..arq.len()).all(above)).map(|i| arq[i].0);
    let mut p_ok = true;
    let mut worst = String::new();
    for i in 0..arq.len() {
        let m = if arq[i].1 <= fec[i].1 { arq[i] } else { fec[i] };
        let slack = pp[i].2 + m.2;
        if pp[i].1 > m.1 + slack {
            p_ok = false;
            worst = format!(" (d={}: {:.2} > {:.2} + {:.2})", pp[i].0, pp[i].1, m.1, slack);
        }
    }
    let ratio = fec.iter().zip(&block).map(|(f, b)| f.1 / b.1).fold(0.0, f64::max);
    verdict(&[
        (increasing && b > 0.0, format!("ARQ delay increasing in d, slope {b:.3}")),
        (cross.is_some_and(|d| (20.0..=80.0).contains(&d)), format!("crossover d* = {cross:?} in [20, 80]")),
        (p_ok, format!("policy P <= min(ARQ, FEC) + CI at every d{worst}")),
        (ratio <= 0.65, format!("streaming/block delay ratio max {ratio:.3} <= 0.65")),
    ])
}

// ---------------------------------------------------------------- 8

fn criterion_8() -> Verdict {
    let t = run_command(Command::RateVsEpsilon, &Settings::new()).expect("rate-vs-epsilon");
    let p = 0.2;
    let s_bar = |pol: &str, eps: f64| -> (f64, f64) {
        let r = t.series("s_bar", pol).into_iter().find(|r| (r.swept - eps).abs() < 1e-12).expect("point");
        (r.mean, (r.ci95_high - r.ci95_low) / 2.0)
    };
    let mut clauses = Vec::new();
    for eps in [0.1, 0.15, 0.2] {
        let a = 1.0 - p - eps;
        for pol in ["arq", "block", "fec", "policy_p"] {
            let (m, h) = s_bar(pol, eps);
            clauses.push(((m - a).abs() <= h, format!("eps={eps} {pol}: s_bar {m:.4} +/- {h:.4} covers {a:.2}")));
        }
    }
    let (pm, _) = s_bar("policy_p", 0.01);
    for pol in ["block", "fec"] {
        let (m, _) = s_bar(pol, 0.01);
        clauses.push((pm > m, format!("eps=0.01: policy_p s_bar {pm:.4} > {pol} {m:.4}")));
    }
    let (m, h) = s_bar("arq", 0.01);
    clauses.push(((m - 0.79).abs() <= h, format!("eps=0.01 arq: s_bar {m:.4} +/- {h:.4} covers 0.79")));
    verdict(&clauses)
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Verdict {
    let p = 0.2;
    let mut clauses = Vec::new();
    for gamma in [5.0, 10.0, 20.0] {
        let cfg = saturated(p, 0, gamma).with_horizon(1_000_000).with_seed(9).with_trace();
        let tr = run(&cfg).unwrap().trace.expect("trace");
        let r = check_capacity_loss(&tr.action, p, 0.0, gamma, burn_in(0)).unwrap();
        clauses.push((r.satisfied, format!("gamma={gamma}: info-slot fraction {:.4} >= {:.4}", r.observed, r.bound)));
    }
    verdict(&clauses)
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Verdict {
    let cfg = saturated(0.5, 0, 3.0).with_horizon(1_000_000).with_seed(10).with_trace();
    let tr = run(&cfg).unwrap().trace.expect("trace");
    let r = check_prediction_band(&tr.qhat, 0.5, 3.0, burn_in(0), 0.1);
    verdict(&[(r.satisfied, format!("mean Qhat {:.4} in [2.4, 3.6]", r.observed))])
}

// ---------------------------------------------------------------- 11

fn mp_settings(pairs: &[(&str, &str)]) -> Settings {
    let mut s = Settings::new();
    for (k, v) in pairs {
        s.set(k, v).unwrap();
    }
    s
}

fn criterion_11() -> Verdict {
    let mut clauses = Vec::new();
    let eq = run_command(Command::MultipathThroughput, &mp_settings(&[("sweep", "0.1")])).unwrap();
    let rates: Vec<f64> = (1..=3).map(|f| eq.series("flow_rate", &format!("flow_{f}"))[0].mean).collect();
    let (lo, hi) = rates.iter().fold((f64::MAX, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
    clauses.push((hi / lo - 1.0 <= 0.05, format!("equal p=0.1: flow rates {rates:.3?} within 5%")));
    let agg = eq.series("aggregate_rate", "dual_subgradient")[0].mean;
    clauses.push(((agg / 2.7 - 1.0).abs() <= 0.05, format!("aggregate {agg:.3} within 5% of 2.7")));

    let sweep = run_command(Command::MultipathThroughput, &Settings::new()).unwrap();
    let cap = sweep.series("capacity", "bound");
    for (row, c) in sweep.series("aggregate_rate", "dual_subgradient").iter().zip(cap) {
        let gap = 1.0 - row.mean / c.mean;
        clauses.push((
            gap.abs() <= 0.05,
            format!("p1={}: aggregate {:.3} vs {:.1} ({:.1}% short)", row.swept, row.mean, c.mean, 100.0 * gap),
        ));
    }

    let delay = run_command(Command::MultipathDelay, &Settings::new()).unwrap();
    let prop = by_swept(delay.series("delay", "dual_subgradient"));
    let rr = by_swept(delay.series("delay", "rr_arq"));
    let gaps: Vec<(f64, f64)> =
        prop.iter().zip(&rr).filter(|(x, _)| x.0 >= 20.0).map(|(x, y)| (x.0, y.1 - x.1)).collect();
    let below = gaps.iter().all(|g| g.1 > 0.0);
    let widening = gaps.windows(2).all(|w| w[1].1 > w[0].1);
    let desc: Vec<String> = gaps.iter().map(|g| format!("{}:{:.1}", g.0, g.1)).collect();
    clauses.push((below && widening, format!("RR-ARQ minus proposed delay, d>=20: {}", desc.join(" "))));
    verdict(&clauses)
}

// ---------------------------------------------------------------- 12

fn criterion_12() -> Verdict {
    let mut clauses = Vec::new();
    for (d, gamma) in [(10usize, 50.0), (50, 200.0)] {
        let horizon = 200_000u64;
        let cfg =
            MultipathConfig::new(vec![0.2], vec![1.0], 1.0 / gamma, d).with_horizon(horizon).with_seed(12).with_trace();
        let m = run_multipath(&cfg).unwrap();
        let tr = m.trace.expect("trace");
        let skip = burn_in(d);
        let info = tr[skip..].iter().filter(|slot| matches!(slot[0], Some((_, SlotAction::Information)))).count();
        let s = info as f64 / (horizon as usize - skip) as f64;
        let bound = (1.0 + 2.0 * d as f64) / gamma;
        clauses.push(((s - 0.8).abs() <= bound, format!("d={d} gamma={gamma}: |{s:.4} - 0.8| <= {bound:.3}")));
    }
    verdict(&clauses)
}

// ---------------------------------------------------------------- 13

fn small_settings(cmd: Command) -> Settings {
    let mut s = mp_settings(&[("reps", "3"), ("slots", "2000"), ("seed", "13")]);
    match cmd {
        Command::DelayVsFeedback | Command::MultipathDelay => s.set("d", "0,20").unwrap(),
        Command::DummyRate | Command::Bounds => s.set("d", "2,20").unwrap(),
        Command::RateVsEpsilon | Command::DelayVsLoad => s.set("sweep", "0.05,0.1").unwrap(),
        Command::GammaSweep => s.set("sweep", "0.5").unwrap(),
        Command::MultipathThroughput => s.set("sweep", "0,0.2").unwrap(),
        Command::QueueDelayScatter => {}
    }
    s
}

fn criterion_13() -> Verdict {
    let mut clauses = Vec::new();
    for cmd in Command::ALL {
        let s = small_settings(cmd);
        let a = run_command(cmd, &s).and_then(|t: Table| t.to_csv_string()).unwrap();
        let b = run_command(cmd, &s).and_then(|t: Table| t.to_csv_string()).unwrap();
        clauses.push((a == b && a.lines().count() > 2, format!("{} rerun identical", cmd.name())));
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_dlfec");
    let mut files = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("run{i}.csv"));
        let status = Process::new(bin)
            .args(["delay-vs-feedback", "--d", "0,30", "--reps", "4", "--slots", "3000"])
            .args(["--seed", "99", "--out"])
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        files.push(std::fs::read(out).unwrap());
    }
    clauses.push((files[0] == files[1], "CLI output files byte-identical".into()));
    verdict(&clauses)
}

type Check = (u32, &'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let checks: [Check; 13] = [
        (1, "codec correctness", criterion_1),
        (2, "worst-case estimator bound", criterion_2),
        (3, "Hoeffding coverage and bound ordering", criterion_3),
        (4, "receiver queue bound", criterion_4),
        (5, "redundancy estimator", criterion_5),
        (6, "ARQ and open-loop FEC limits", criterion_6),
        (7, "delay vs feedback delay trends", criterion_7),
        (8, "capacity behaviour", criterion_8),
        (9, "capacity-loss bound", criterion_9),
        (10, "time-average prediction band", criterion_10),
        (11, "multipath throughput and delay", criterion_11),
        (12, "single-flow rate bound", criterion_12),
        (13, "determinism", criterion_13),
    ];
    let only: BTreeSet<u32> =
        std::env::args().skip(1).filter(|a| !a.starts_with('-')).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = Vec::new();
    let mut known = Vec::new();
    for (id, name, check) in checks {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = check();
        let status = match (v.pass, KNOWN_FAILURES.contains(&id)) {
            (true, _) => "PASS",
            (false, true) => {
                known.push(id);
                "FAIL (known)"
            }
            (false, false) => {
                unexpected.push(id);
                "FAIL"
            }
        };
        println!("criterion {id:>2} {status:<12} {name} ({:.1}s): {}", start.elapsed().as_secs_f64(), v.detail);
    }
    println!("known failures: {known:?}; unexpected failures: {unexpected:?}");
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
