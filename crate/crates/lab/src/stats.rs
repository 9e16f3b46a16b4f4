//! Replication and confidence intervals.

use rayon::prelude::*;

/// z-value of a two-sided 95% normal interval.
pub const Z95: f64 = 1.959_963_984_540_054;

/// How the intervals in every output file are built.
pub const CI_METHOD: &str = "ci95 = mean +/- 1.96*sd/sqrt(n), normal approximation, sample sd";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub n: usize,
}

impl Summary {
    pub fn half_width(&self) -> f64 {
        (self.ci95_high - self.ci95_low) / 2.0
    }

    /// Interval of a value known exactly.
    pub fn exact(value: f64) -> Self {
        Summary { mean: value, ci95_low: value, ci95_high: value, n: 1 }
    }
}

/// Mean and normal-approximation 95% interval; `None` for no samples.
pub fn summarize(xs: &[f64]) -> Option<Summary> {
    let n = xs.len();
    if n == 0 {
        return None;
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let half = if n > 1 {
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        Z95 * (var / n as f64).sqrt()
    } else {
        0.0
    };
    Some(Summary { mean, ci95_low: mean - half, ci95_high: mean + half, n })
}

/// Seed of replication `rep` under master seed `seed` (splitmix64 mix).
pub fn rep_seed(seed: u64, rep: usize) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add((rep as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs `reps` replications in parallel; results come back in rep order.
pub fn replicate<T, E, F>(reps: usize, seed: u64, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(u64) -> Result<T, E> + Sync,
{
    (0..reps).into_par_iter().map(|r| f(rep_seed(seed, r))).collect()
}
