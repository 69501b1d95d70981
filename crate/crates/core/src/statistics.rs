//! Photon statistics over joint two-mode distributions: mean occupations,
//! normalized cross-correlation, and Mandel parameters.
//!
//! All moments are direct sums over the finite probability table. Statistics
//! that are undefined at a zero mean (the `mu = 0` corner of a sweep) are
//! reported as `None` rather than NaN so emitted tables stay machine-readable.

use crate::coherent_states::FieldMode;
use crate::{Error, Result};

/// Where a distribution came from, for labeling emitted tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionLabel {
    Initial,
    AtTime(f64),
}

/// Probability table over `(n_a, n_b)` on a finite truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPhotonDistribution {
    n_a_max: usize,
    n_b_max: usize,
    table: Vec<f64>,
    label: DistributionLabel,
}

impl JointPhotonDistribution {
    /// Build a table by evaluating `p(n_a, n_b)` on the full truncation.
    pub fn from_fn(
        n_a_max: usize,
        n_b_max: usize,
        label: DistributionLabel,
        p: impl Fn(usize, usize) -> f64,
    ) -> Self {
        let mut table = Vec::with_capacity((n_a_max + 1) * (n_b_max + 1));
        for n_a in 0..=n_a_max {
            for n_b in 0..=n_b_max {
                table.push(p(n_a, n_b));
            }
        }
        Self {
            n_a_max,
            n_b_max,
            table,
            label,
        }
    }

    pub fn probability(&self, n_a: usize, n_b: usize) -> f64 {
        if n_a > self.n_a_max || n_b > self.n_b_max {
            0.0
        } else {
            self.table[n_a * (self.n_b_max + 1) + n_b]
        }
    }

    pub fn label(&self) -> DistributionLabel {
        self.label
    }

    pub fn n_a_max(&self) -> usize {
        self.n_a_max
    }

    pub fn n_b_max(&self) -> usize {
        self.n_b_max
    }

    /// Check nonnegativity and unit total probability.
    pub fn validate(&self) -> Result<()> {
        if let Some(bad) = self.table.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Integrity(format!(
                "negative or non-finite probability {bad}"
            )));
        }
        let total: f64 = self.table.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Integrity(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(())
    }

    /// Marginal distribution of mode `a` (sum over `n_b`).
    pub fn marginal_a(&self) -> Vec<f64> {
        (0..=self.n_a_max)
            .map(|n_a| {
                (0..=self.n_b_max)
                    .map(|n_b| self.probability(n_a, n_b))
                    .sum()
            })
            .collect()
    }

    /// Marginal distribution of mode `b` (sum over `n_a`).
    pub fn marginal_b(&self) -> Vec<f64> {
        (0..=self.n_b_max)
            .map(|n_b| {
                (0..=self.n_a_max)
                    .map(|n_a| self.probability(n_a, n_b))
                    .sum()
            })
            .collect()
    }

    fn marginal(&self, mode: FieldMode) -> Vec<f64> {
        match mode {
            FieldMode::A => self.marginal_a(),
            FieldMode::B => self.marginal_b(),
        }
    }
}

/// Mean photon numbers `(<n_a>, <n_b>)`.
pub fn mean_occupations(dist: &JointPhotonDistribution) -> (f64, f64) {
    let mean_a = dist
        .marginal_a()
        .iter()
        .enumerate()
        .map(|(n, p)| n as f64 * p)
        .sum();
    let mean_b = dist
        .marginal_b()
        .iter()
        .enumerate()
        .map(|(n, p)| n as f64 * p)
        .sum();
    (mean_a, mean_b)
}

/// Normalized cross-correlation `g2 = <n_a n_b> / (<n_a><n_b>)`.
///
/// `None` when either mean vanishes. Values below one indicate intermodal
/// anticorrelation.
pub fn cross_correlation(dist: &JointPhotonDistribution) -> Option<f64> {
    let (mean_a, mean_b) = mean_occupations(dist);
    if mean_a == 0.0 || mean_b == 0.0 {
        return None;
    }
    let mut cross = 0.0;
    for n_a in 0..=dist.n_a_max() {
        for n_b in 0..=dist.n_b_max() {
            cross += (n_a * n_b) as f64 * dist.probability(n_a, n_b);
        }
    }
    Some(cross / (mean_a * mean_b))
}

/// Mandel parameter `Q = (variance - mean) / mean` of one marginal;
/// `None` when the mean vanishes. `Q < 0` is sub-Poissonian, `Q = 0`
/// Poissonian, `Q = -1` a number state.
pub fn mandel_parameter(dist: &JointPhotonDistribution, mode: FieldMode) -> Option<f64> {
    mode_statistics(dist, mode).mandel_q
}

/// Mean, variance, and Mandel parameter of one marginal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeStatistics {
    pub mean: f64,
    pub variance: f64,
    pub mandel_q: Option<f64>,
}

pub fn mode_statistics(dist: &JointPhotonDistribution, mode: FieldMode) -> ModeStatistics {
    let marginal = dist.marginal(mode);
    let mean: f64 = marginal.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
    let second: f64 = marginal
        .iter()
        .enumerate()
        .map(|(n, p)| (n * n) as f64 * p)
        .sum();
    let variance = (second - mean * mean).max(0.0);
    let mandel_q = if mean == 0.0 {
        None
    } else {
        Some((variance - mean) / mean)
    };
    ModeStatistics {
        mean,
        variance,
        mandel_q,
    }
}

fn render_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One CSV row of sweep output: the axis value followed by the summary
/// statistics, with undefined entries left empty.
pub fn statistics_csv_row(axis_value: f64, dist: &JointPhotonDistribution) -> String {
    let (mean_a, mean_b) = mean_occupations(dist);
    format!(
        "{},{},{},{},{},{}",
        axis_value,
        mean_a,
        mean_b,
        render_opt(cross_correlation(dist)),
        render_opt(mandel_parameter(dist, FieldMode::A)),
        render_opt(mandel_parameter(dist, FieldMode::B)),
    )
}

pub const STATISTICS_CSV_HEADER: &str = "axis,mean_a,mean_b,g2,q_a,q_b";
