//! Exact dynamics of a lambda-configuration three-level atom coupled to the
//! two-mode field, starting from a CK-NCS with the atom in its ground level.
//!
//! The interaction conserves the excitation charge `n_a + n_b + [level = 1]`,
//! so the evolution decomposes into independent three-dimensional sectors
//! spanned by `|0; n_a, n_b>`, `|1; n_a - 1, n_b>`, `|2; n_a - 1, n_b + 1>`.
//! Each sector is solved in closed form; the global state is the weighted
//! direct sum of sector solutions. Time is the dimensionless `tau = g_a * t`
//! and only the coupling ratio `g_b / g_a` enters the math.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::coherent_states::TwoModeAmplitudes;
use crate::statistics::{self, DistributionLabel, JointPhotonDistribution};
use crate::{Error, Result};

/// Atom-field coupling strengths for the two transition channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConfig {
    g_a: f64,
    g_b: f64,
}

impl CouplingConfig {
    pub fn new(g_a: f64, g_b: f64) -> Result<Self> {
        if !(g_a > 0.0) || !(g_b > 0.0) || !g_a.is_finite() || !g_b.is_finite() {
            return Err(Error::Domain(format!(
                "couplings must be finite and > 0, got g_a = {g_a}, g_b = {g_b}"
            )));
        }
        Ok(Self { g_a, g_b })
    }

    /// Couplings specified through the ratio `g_b / g_a` alone.
    pub fn from_ratio(g_ratio: f64) -> Result<Self> {
        Self::new(1.0, g_ratio)
    }

    pub fn g_a(&self) -> f64 {
        self.g_a
    }

    pub fn g_b(&self) -> f64 {
        self.g_b
    }

    pub fn ratio(&self) -> f64 {
        self.g_b / self.g_a
    }

    pub fn rabi(&self) -> RabiFrequencies {
        RabiFrequencies {
            g_a: self.g_a,
            g_b: self.g_b,
        }
    }
}

/// One- and two-photon Rabi frequencies of the coupled sectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiFrequencies {
    g_a: f64,
    g_b: f64,
}

impl RabiFrequencies {
    /// One-photon frequency of the mode-`a` channel, `g_a * sqrt(n + 1)`.
    pub fn one_photon_a(&self, n: u32) -> f64 {
        self.g_a * ((n + 1) as f64).sqrt()
    }

    /// One-photon frequency of the mode-`b` channel, `g_b * sqrt(n + 1)`.
    pub fn one_photon_b(&self, n: u32) -> f64 {
        self.g_b * ((n + 1) as f64).sqrt()
    }

    /// Two-photon frequency `sqrt(one_photon_a(n_a)^2 + one_photon_b(n_b)^2)`.
    pub fn two_photon(&self, n_a: u32, n_b: u32) -> f64 {
        self.one_photon_a(n_a).hypot(self.one_photon_b(n_b))
    }
}

/// Closed-form amplitudes of one invariant sector at dimensionless time
/// `tau`, for the atom initially in level 0.
///
/// `c0`, `c1`, `c2` weight `|0; n_a, n_b>`, `|1; n_a - 1, n_b>` and
/// `|2; n_a - 1, n_b + 1>` respectively; their squared moduli always sum to
/// one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorAmplitudes {
    pub n_a: u32,
    pub n_b: u32,
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl SectorAmplitudes {
    /// Occupation probabilities `(|c0|^2, |c1|^2, |c2|^2)`.
    pub fn populations(&self) -> [f64; 3] {
        [self.c0.norm_sqr(), self.c1.norm_sqr(), self.c2.norm_sqr()]
    }

    pub fn norm_defect(&self) -> f64 {
        (self.populations().iter().sum::<f64>() - 1.0).abs()
    }
}

/// Solve one sector exactly.
///
/// With `wa = sqrt(n_a)`, `wb = (g_b/g_a) * sqrt(n_b + 1)` and
/// `w = sqrt(wa^2 + wb^2)` (all in units of `g_a`):
///
/// ```text
/// c0 = (wb^2 + wa^2 cos(w tau)) / w^2
/// c1 = -i (wa / w) sin(w tau)
/// c2 = wa wb (cos(w tau) - 1) / w^2
/// ```
///
/// Sectors with `n_a = 0` have no transition channel and stay frozen at
/// `(1, 0, 0)`.
pub fn sector_amplitudes(
    n_a: u32,
    n_b: u32,
    coupling: &CouplingConfig,
    tau: f64,
) -> SectorAmplitudes {
    if n_a == 0 {
        return SectorAmplitudes {
            n_a,
            n_b,
            c0: Complex64::new(1.0, 0.0),
            c1: Complex64::ZERO,
            c2: Complex64::ZERO,
        };
    }
    let wa = (n_a as f64).sqrt();
    let wb = coupling.ratio() * ((n_b + 1) as f64).sqrt();
    let w2 = wa * wa + wb * wb;
    let w = w2.sqrt();
    let (sin, cos) = (w * tau).sin_cos();
    SectorAmplitudes {
        n_a,
        n_b,
        c0: Complex64::new((wb * wb + wa * wa * cos) / w2, 0.0),
        c1: Complex64::new(0.0, -(wa / w) * sin),
        c2: Complex64::new(wa * wb * (cos - 1.0) / w2, 0.0),
    }
}

/// Sparse atom-field state: amplitudes over kets `(level, n_a, n_b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomFieldState {
    tau: f64,
    amps: BTreeMap<(u8, u32, u32), Complex64>,
}

impl AtomFieldState {
    /// Assemble a state from explicit ket amplitudes. Levels must be 0, 1
    /// or 2; amplitudes on the same ket accumulate.
    pub fn from_parts(
        tau: f64,
        parts: impl IntoIterator<Item = ((u8, u32, u32), Complex64)>,
    ) -> Result<Self> {
        let mut amps = BTreeMap::new();
        for ((level, n_a, n_b), amp) in parts {
            if level > 2 {
                return Err(Error::Domain(format!(
                    "atomic level must be 0..=2, got {level}"
                )));
            }
            *amps.entry((level, n_a, n_b)).or_insert(Complex64::ZERO) += amp;
        }
        Ok(Self { tau, amps })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn amplitude(&self, level: u8, n_a: u32, n_b: u32) -> Complex64 {
        self.amps
            .get(&(level, n_a, n_b))
            .copied()
            .unwrap_or(Complex64::ZERO)
    }

    /// Deterministically ordered iteration over the populated kets.
    pub fn iter(&self) -> impl Iterator<Item = (&(u8, u32, u32), &Complex64)> {
        self.amps.iter()
    }

    pub fn norm(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Population of one atomic level.
    pub fn level_population(&self, level: u8) -> f64 {
        self.amps
            .iter()
            .filter(|((l, _, _), _)| *l == level)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Evolve a CK-NCS (atom initially in level 0) to dimensionless time `tau`
/// by assembling the per-sector closed forms.
pub fn evolve(initial: &TwoModeAmplitudes, coupling: &CouplingConfig, tau: f64) -> AtomFieldState {
    let total = initial.total_photons();
    let mut amps = BTreeMap::new();
    for n in 0..=total {
        let weight = initial.amplitude(n);
        let n_a = n as u32;
        let n_b = (total - n) as u32;
        let sector = sector_amplitudes(n_a, n_b, coupling, tau);
        amps.insert((0u8, n_a, n_b), weight * sector.c0);
        if n_a > 0 {
            amps.insert((1u8, n_a - 1, n_b), weight * sector.c1);
            amps.insert((2u8, n_a - 1, n_b + 1), weight * sector.c2);
        }
    }
    AtomFieldState { tau, amps }
}

/// Uniform time grid `[0, tau_max]` with `points` samples (endpoints
/// included).
pub fn tau_grid(tau_max: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2, "grid needs at least two points");
    let step = tau_max / (points - 1) as f64;
    (0..points).map(|i| i as f64 * step).collect()
}

/// Time traces of the three atomic level occupations.
#[derive(Debug, Clone)]
pub struct OccupationTraces {
    pub tau: Vec<f64>,
    /// `levels[i][k]` is the occupation of level `i` at `tau[k]`.
    pub levels: [Vec<f64>; 3],
}

impl OccupationTraces {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau,p0,p1,p2\n");
        for (k, t) in self.tau.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                t, self.levels[0][k], self.levels[1][k], self.levels[2][k]
            ));
        }
        out
    }
}

/// Atomic occupation probabilities along a time grid: the initial photon
/// distribution averaged over the per-sector populations. The three traces
/// sum to one pointwise.
pub fn atomic_occupations(
    initial: &TwoModeAmplitudes,
    coupling: &CouplingConfig,
    taus: &[f64],
) -> OccupationTraces {
    let total = initial.total_photons();
    let weights = initial.probabilities();
    let mut levels = [
        vec![0.0; taus.len()],
        vec![0.0; taus.len()],
        vec![0.0; taus.len()],
    ];
    for (k, &tau) in taus.iter().enumerate() {
        let mut acc = [0.0f64; 3];
        for n in 0..=total {
            let pops = sector_amplitudes(n as u32, (total - n) as u32, coupling, tau).populations();
            for i in 0..3 {
                acc[i] += weights[n] * pops[i];
            }
        }
        for i in 0..3 {
            levels[i][k] = acc[i];
        }
    }
    OccupationTraces {
        tau: taus.to_vec(),
        levels,
    }
}

/// Joint photon distribution of the field at the state's time, summing the
/// three atomic levels.
pub fn joint_distribution_at(state: &AtomFieldState) -> JointPhotonDistribution {
    let n_a_max = state.iter().map(|(&(_, n_a, _), _)| n_a).max().unwrap_or(0) as usize;
    let n_b_max = state.iter().map(|(&(_, _, n_b), _)| n_b).max().unwrap_or(0) as usize;
    let mut table = vec![0.0; (n_a_max + 1) * (n_b_max + 1)];
    for (&(_, n_a, n_b), amp) in state.iter() {
        table[n_a as usize * (n_b_max + 1) + n_b as usize] += amp.norm_sqr();
    }
    JointPhotonDistribution::from_fn(
        n_a_max,
        n_b_max,
        DistributionLabel::AtTime(state.tau()),
        |n_a, n_b| table[n_a * (n_b_max + 1) + n_b],
    )
}

/// Marginal photon distributions `(p_a, p_b)` of the field at the state's
/// time.
pub fn marginals_at(state: &AtomFieldState) -> (Vec<f64>, Vec<f64>) {
    let joint = joint_distribution_at(state);
    (joint.marginal_a(), joint.marginal_b())
}

/// Time traces of the field statistics; entries are `None` where the
/// statistic is undefined (zero mean).
#[derive(Debug, Clone)]
pub struct FieldStatisticsTraces {
    pub tau: Vec<f64>,
    pub g2: Vec<Option<f64>>,
    pub q_a: Vec<Option<f64>>,
    pub q_b: Vec<Option<f64>>,
}

impl FieldStatisticsTraces {
    pub fn to_csv(&self) -> String {
        let render = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::from("tau,g2,q_a,q_b\n");
        for (k, t) in self.tau.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                t,
                render(&self.g2[k]),
                render(&self.q_a[k]),
                render(&self.q_b[k])
            ));
        }
        out
    }
}

/// Evaluate cross-correlation and Mandel parameters of the evolving field on
/// a time grid.
pub fn time_statistics(
    initial: &TwoModeAmplitudes,
    coupling: &CouplingConfig,
    taus: &[f64],
) -> FieldStatisticsTraces {
    use crate::coherent_states::FieldMode;
    let mut g2 = Vec::with_capacity(taus.len());
    let mut q_a = Vec::with_capacity(taus.len());
    let mut q_b = Vec::with_capacity(taus.len());
    for &tau in taus {
        let joint = joint_distribution_at(&evolve(initial, coupling, tau));
        g2.push(statistics::cross_correlation(&joint));
        q_a.push(statistics::mandel_parameter(&joint, FieldMode::A));
        q_b.push(statistics::mandel_parameter(&joint, FieldMode::B));
    }
    FieldStatisticsTraces {
        tau: taus.to_vec(),
        g2,
        q_a,
        q_b,
    }
}

/// Autocorrelation peaks below this height are not considered significant.
pub const REVIVAL_SIGNIFICANCE: f64 = 0.2;
/// A recovery counts as a revival only after the peak envelope has dipped
/// below this fraction of the recovered height.
const REVIVAL_DIP_FACTOR: f64 = 0.5;

/// Estimate the dominant revival spacing of an evenly sampled trace.
///
/// The mean-subtracted trace is autocorrelated (biased estimator, normalized
/// to one at zero lag), and local maxima of the autocorrelation are scanned
/// in order of increasing lag. If the peak envelope dips and then recovers
/// above [`REVIVAL_SIGNIFICANCE`], the recovery lag is returned: that is the
/// collapse-and-revival spacing. For a trace whose envelope never collapses
/// (a plain oscillation) the first significant peak is returned, which is the
/// oscillation period. Returns `None` for traces with no significant
/// structure, e.g. a constant.
pub fn revival_period(values: &[f64], dt: f64) -> Option<f64> {
    let len = values.len();
    if len < 4 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / len as f64;
    let centered: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let r0: f64 = centered.iter().map(|v| v * v).sum();
    if r0 < 1e-18 * len as f64 {
        return None;
    }
    let max_lag = len / 2;
    let autocorr: Vec<f64> = (1..max_lag)
        .map(|lag| {
            centered[..len - lag]
                .iter()
                .zip(&centered[lag..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / r0
        })
        .collect();

    let mut peaks = Vec::new();
    for i in 1..autocorr.len().saturating_sub(1) {
        if autocorr[i] > autocorr[i - 1] && autocorr[i] >= autocorr[i + 1] && autocorr[i] > 0.0 {
            peaks.push((i + 1, autocorr[i]));
        }
    }
    let first = *peaks.first()?;
    let mut envelope_min = first.1;
    for &(lag, height) in &peaks[1..] {
        if height > REVIVAL_SIGNIFICANCE && envelope_min < REVIVAL_DIP_FACTOR * height {
            return Some(lag as f64 * dt);
        }
        envelope_min = envelope_min.min(height);
    }
    (first.1 > REVIVAL_SIGNIFICANCE).then(|| first.0 as f64 * dt)
}
