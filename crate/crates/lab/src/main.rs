use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dlfec::config::Settings;
use dlfec::experiments::{run_command, Command};
use dlfec::LabError;

#[derive(Parser)]
#[command(name = "dlfec", version, about = "Delay/coding experiments over lossy paths with delayed feedback")]
struct Cli {
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// End-to-end delay vs feedback delay d for each policy
    DelayVsFeedback(Flags),
    /// Achieved information rate vs capacity gap epsilon
    RateVsEpsilon(Flags),
    /// Policy P delay vs arrival rate for several gamma
    GammaSweep(Flags),
    /// ARQ vs the rho*Qt - Qr rule: delay vs capacity gap epsilon
    DelayVsLoad(Flags),
    /// Estimator error against the worst-case and Hoeffding bounds
    Bounds(Flags),
    /// Measured redundant-packet rate and its analytic estimate vs d
    DummyRate(Flags),
    /// Mean sender/receiver delay by queue occupancy
    QueueDelayScatter(Flags),
    /// Saturated 3-flow, 3-path rates vs loss on path 1
    MultipathThroughput(Flags),
    /// Multipath delay vs d: proposed scheduler vs round-robin ARQ
    MultipathDelay(Flags),
}

impl Sub {
    fn split(&self) -> (Command, &Flags) {
        match self {
            Sub::DelayVsFeedback(f) => (Command::DelayVsFeedback, f),
            Sub::RateVsEpsilon(f) => (Command::RateVsEpsilon, f),
            Sub::GammaSweep(f) => (Command::GammaSweep, f),
            Sub::DelayVsLoad(f) => (Command::DelayVsLoad, f),
            Sub::Bounds(f) => (Command::Bounds, f),
            Sub::DummyRate(f) => (Command::DummyRate, f),
            Sub::QueueDelayScatter(f) => (Command::QueueDelayScatter, f),
            Sub::MultipathThroughput(f) => (Command::MultipathThroughput, f),
            Sub::MultipathDelay(f) => (Command::MultipathDelay, f),
        }
    }
}

/// Values are kept as text and typed by the subcommand; lists are comma
/// separated or `start:stop:step`.
#[derive(Args)]
struct Flags {
    /// Erasure probability
    #[arg(long)]
    p: Option<String>,
    /// Arrival rate per slot
    #[arg(long)]
    a: Option<String>,
    /// Feedback delay in slots (a list where d is swept)
    #[arg(long)]
    d: Option<String>,
    /// Threshold of policy P (a list for gamma-sweep)
    #[arg(long)]
    gamma: Option<String>,
    /// Multipath design parameter (threshold 1/alpha)
    #[arg(long)]
    alpha: Option<String>,
    /// Slots per replication
    #[arg(long)]
    slots: Option<String>,
    /// Replications per point
    #[arg(long)]
    reps: Option<String>,
    /// Master seed
    #[arg(long)]
    seed: Option<String>,
    /// Comma-separated subset of arq, block, fec, policy_p
    #[arg(long)]
    policies: Option<String>,
    /// Values of the swept parameter (epsilon, load or p1)
    #[arg(long)]
    sweep: Option<String>,
    /// Weights of the rho*Qt - Qr rule
    #[arg(long)]
    rho: Option<String>,
    /// Information packets per block
    #[arg(long)]
    block_k: Option<String>,
    /// Confidence level of the Hoeffding bound
    #[arg(long)]
    q: Option<String>,
    /// Send coded packets instead of idling (fec, policy_p): true or false
    #[arg(long)]
    fill_idle: Option<String>,
    /// Also emit one row per replication
    #[arg(long)]
    per_rep: bool,
    /// Output CSV path (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Config file of `key = value` lines; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn settings(&self) -> Result<Settings, LabError> {
        let mut cli = Settings::new();
        let pairs = [
            ("p", &self.p),
            ("a", &self.a),
            ("d", &self.d),
            ("gamma", &self.gamma),
            ("alpha", &self.alpha),
            ("slots", &self.slots),
            ("reps", &self.reps),
            ("seed", &self.seed),
            ("policies", &self.policies),
            ("sweep", &self.sweep),
            ("rho", &self.rho),
            ("block_k", &self.block_k),
            ("q", &self.q),
            ("fill_idle", &self.fill_idle),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                cli.set(k, v)?;
            }
        }
        if self.per_rep {
            cli.set("per_rep", "true")?;
        }
        if let Some(out) = &self.out {
            cli.set("out", &out.to_string_lossy())?;
        }
        let file = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::new(),
        };
        Ok(file.overlay(&cli))
    }
}

fn execute(sub: &Sub) -> Result<(), LabError> {
    let (cmd, flags) = sub.split();
    let settings = flags.settings()?;
    let table = run_command(cmd, &settings)?;
    match settings.get("out") {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write_csv(&mut w)?;
            w.flush()?;
        }
        None => table.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
