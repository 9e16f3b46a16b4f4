//! Result rows and their CSV form.

use std::io::Write;

use crate::error::LabError;
use crate::stats::{Summary, CI_METHOD};

/// One (swept value, metric, policy) aggregate, or one replication's value.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub swept: f64,
    pub metric: String,
    pub policy: String,
    pub mean: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub n_reps: usize,
    /// Replication index for per-replication rows.
    pub rep: Option<usize>,
}

impl ResultRow {
    pub fn new(swept: f64, metric: &str, policy: &str, s: Summary) -> Self {
        ResultRow {
            swept,
            metric: metric.to_string(),
            policy: policy.to_string(),
            mean: s.mean,
            ci95_low: s.ci95_low,
            ci95_high: s.ci95_high,
            n_reps: s.n,
            rep: None,
        }
    }

    pub fn replication(swept: f64, metric: &str, policy: &str, rep: usize, value: f64) -> Self {
        ResultRow { rep: Some(rep), ..ResultRow::new(swept, metric, policy, Summary::exact(value)) }
    }
}

/// Output of one subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub command: String,
    /// Name of the swept parameter, used as the first column header.
    pub swept: String,
    pub rows: Vec<ResultRow>,
}

impl Table {
    pub fn new(command: &str, swept: &str) -> Self {
        Table { command: command.to_string(), swept: swept.to_string(), rows: Vec::new() }
    }

    /// Rows matching a metric and policy, in sweep order.
    pub fn series(&self, metric: &str, policy: &str) -> Vec<&ResultRow> {
        self.rows.iter().filter(|r| r.rep.is_none() && r.metric == metric && r.policy == policy).collect()
    }

    /// Headered CSV preceded by one `#` comment line naming the CI method.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), LabError> {
        writeln!(out, "# dlfec {}; {}", self.command, CI_METHOD)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record([self.swept.as_str(), "metric", "policy", "mean", "ci95_low", "ci95_high", "n_reps", "rep"])?;
        for r in &self.rows {
            w.write_record([
                r.swept.to_string(),
                r.metric.clone(),
                r.policy.clone(),
                r.mean.to_string(),
                r.ci95_low.to_string(),
                r.ci95_high.to_string(),
                r.n_reps.to_string(),
                r.rep.map(|i| i.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String, LabError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}
