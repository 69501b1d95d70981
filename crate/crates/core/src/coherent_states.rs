//! Construction of cross-Kerr nonlinear coherent states (CK-NCSs) on a fixed
//! total-photon sector, their photon distributions, and numerical
//! resolution-of-identity checks.
//!
//! A CK-NCS is the normalized image of the lowest-weight ket `|0, N>` under
//! `exp(mu * J+)` with the deformed raising generator, i.e. a deformed su(2)
//! (binomial) coherent state. Support is restricted to the antidiagonal
//! `n_a + n_b = N`, so the state is a two-mode entangled state for any
//! nontrivial amplitude vector.

use num_complex::Complex64;

use crate::deformed_algebra::{ln_binomial, ln_sector_weight, SectorDimension};
use crate::statistics::{DistributionLabel, JointPhotonDistribution};
use crate::{Error, Result};

pub use crate::deformed_algebra::CoefficientConvention;

/// Defining parameters of a CK-NCS.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CKNCSParams {
    pub sector: SectorDimension,
    /// Complex coherent-state label; probability-level outputs depend only on
    /// its modulus.
    pub mu: Complex64,
    pub kappa_tilde: f64,
    pub convention: CoefficientConvention,
}

impl CKNCSParams {
    pub fn new(
        sector: SectorDimension,
        mu: Complex64,
        kappa_tilde: f64,
        convention: CoefficientConvention,
    ) -> Result<Self> {
        if !kappa_tilde.is_finite() || kappa_tilde < 0.0 {
            return Err(Error::Domain(format!(
                "kappa_tilde must be finite and >= 0, got {kappa_tilde}"
            )));
        }
        if !mu.re.is_finite() || !mu.im.is_finite() {
            return Err(Error::Domain("mu must be finite".into()));
        }
        Ok(Self {
            sector,
            mu,
            kappa_tilde,
            convention,
        })
    }
}

/// Normalized amplitude vector over the sector kets `|n, N - n>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeAmplitudes {
    total_photons: usize,
    amps: Vec<Complex64>,
}

impl TwoModeAmplitudes {
    /// Wrap an explicit amplitude vector (index `n` is the ket `|n, N - n>`),
    /// normalizing it. Intended for synthetic states in tests and tooling;
    /// [`build_ckncs`] is the production constructor.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::Domain("amplitude vector must be nonempty".into()));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr <= 0.0 || !norm_sqr.is_finite() {
            return Err(Error::Domain(
                "amplitude vector must have finite nonzero norm".into(),
            ));
        }
        let scale = norm_sqr.sqrt().recip();
        Ok(Self {
            total_photons: amps.len() - 1,
            amps: amps.into_iter().map(|a| a * scale).collect(),
        })
    }

    /// Total photon number `N` of the sector.
    pub fn total_photons(&self) -> usize {
        self.total_photons
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amps[n]
    }

    /// `|amps[n]|^2` for every sector ket.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Deviation of the total probability from one.
    pub fn norm_defect(&self) -> f64 {
        (self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs()
    }
}

/// Build the normalized CK-NCS amplitude vector for `params`.
///
/// The amplitude of `|n, N - n>` is proportional to
/// `sqrt(C(N, n)) * W_n(kappa_tilde) * mu^n` with the weight fixed by the
/// coefficient convention. Magnitudes are accumulated in the log domain and
/// exponentiated against their maximum before normalization, so large sectors
/// at large deformation stay in floating-point range. `mu = 0` yields the ket
/// `|0, N>`.
pub fn build_ckncs(params: &CKNCSParams) -> Result<TwoModeAmplitudes> {
    let total = params.sector.total_photons();
    let mu_abs = params.mu.norm();
    if mu_abs == 0.0 {
        let mut amps = vec![Complex64::ZERO; total + 1];
        amps[0] = Complex64::new(1.0, 0.0);
        return Ok(TwoModeAmplitudes {
            total_photons: total,
            amps,
        });
    }
    let mu_phase = params.mu.arg();
    let ln_mu = mu_abs.ln();

    let ln_mags: Vec<f64> = (0..=total as u64)
        .map(|n| {
            0.5 * ln_binomial(total as u64, n)
                + ln_sector_weight(params.convention, params.kappa_tilde, total as u64, n)
                + n as f64 * ln_mu
        })
        .collect();
    let ln_max = ln_mags.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mags: Vec<f64> = ln_mags.iter().map(|ln| (ln - ln_max).exp()).collect();
    let norm = mags.iter().map(|m| m * m).sum::<f64>().sqrt();

    let amps = mags
        .iter()
        .enumerate()
        .map(|(n, m)| Complex64::from_polar(m / norm, mu_phase * n as f64))
        .collect();
    Ok(TwoModeAmplitudes {
        total_photons: total,
        amps,
    })
}

/// Joint photon distribution `p(n_a, n_b)` of a CK-NCS: the marginal-a weights
/// placed on the antidiagonal `n_b = N - n_a`.
pub fn joint_distribution(state: &TwoModeAmplitudes) -> JointPhotonDistribution {
    let total = state.total_photons();
    let probs = state.probabilities();
    JointPhotonDistribution::from_fn(total, total, DistributionLabel::Initial, |n_a, n_b| {
        if n_a + n_b == total {
            probs[n_a]
        } else {
            0.0
        }
    })
}

/// One of the two field modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldMode {
    A,
    B,
}

/// Marginal photon distribution of one mode; mode `b` is the exact reversal
/// of mode `a`.
pub fn marginal_distribution(state: &TwoModeAmplitudes, mode: FieldMode) -> Vec<f64> {
    let mut p = state.probabilities();
    if mode == FieldMode::B {
        p.reverse();
    }
    p
}

/// Serialize a state to a CSV block: a header row with the defining
/// parameters, then one row per sector ket.
pub fn state_csv(params: &CKNCSParams, state: &TwoModeAmplitudes) -> String {
    let mut out = String::new();
    out.push_str("N,mu_re,mu_im,kappa_tilde,convention\n");
    out.push_str(&format!(
        "{},{},{},{},{}\n",
        params.sector.total_photons(),
        params.mu.re,
        params.mu.im,
        params.kappa_tilde,
        params.convention
    ));
    out.push_str("n,amp_re,amp_im,probability\n");
    for (n, a) in state.amplitudes().iter().enumerate() {
        out.push_str(&format!("{},{},{},{}\n", n, a.re, a.im, a.norm_sqr()));
    }
    out
}

/// Controls for the adaptive radial quadrature of the identity checks.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Absolute tolerance on each diagonal matrix element.
    pub target: f64,
    /// Gauss-Legendre order per panel.
    pub panel_order: usize,
    /// Maximum bisection depth before giving up.
    pub max_depth: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            target: 1e-8,
            panel_order: 20,
            max_depth: 24,
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrate `f` over `[a, b]` by bisection-adaptive Gauss-Legendre; returns
/// the value and an error estimate.
fn adaptive_panel(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    nodes: &(Vec<f64>, Vec<f64>),
    tol: f64,
    depth: usize,
) -> (f64, f64) {
    let gl = |lo: f64, hi: f64| -> f64 {
        let c = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        nodes
            .0
            .iter()
            .zip(&nodes.1)
            .map(|(&x, &w)| w * f(c + h * x))
            .sum::<f64>()
            * h
    };
    let whole = gl(a, b);
    let mid = 0.5 * (a + b);
    let halves = gl(a, mid) + gl(mid, b);
    let err = (whole - halves).abs();
    if err <= tol || depth == 0 {
        return (halves, err);
    }
    let (left, el) = adaptive_panel(f, a, mid, nodes, 0.5 * tol, depth - 1);
    let (right, er) = adaptive_panel(f, mid, b, nodes, 0.5 * tol, depth - 1);
    (left + right, el + er)
}

/// Numerically test the coherent-state resolution of identity on one sector,
/// returning the largest deviation of the overlap matrix from the identity.
///
/// The angular integral is exact (only diagonal elements survive), leaving
/// for each ket a radial integral over `x = |mu|^2`, compactified to `[0, 1)`
/// by `x = t / (1 - t)` and evaluated by adaptive Gauss-Legendre quadrature.
/// At `kappa_tilde = 0` the su(2) measure `(N + 1) / pi / (1 + x)^2` resolves
/// the identity and the residual is pure quadrature noise. For
/// `kappa_tilde > 0` the same ordinary integral is evaluated against the
/// deformed measure and normalization (both built from deformed binomials of
/// the chosen convention); the returned residual is a diagnostic of how far
/// that combination is from a true resolution of identity, not a pass/fail
/// quantity.
pub fn identity_resolution_check(
    sector: SectorDimension,
    kappa_tilde: f64,
    convention: CoefficientConvention,
    quadrature: &QuadratureSpec,
) -> Result<f64> {
    use crate::deformed_algebra::deformed_binomial;

    if !kappa_tilde.is_finite() || kappa_tilde < 0.0 {
        return Err(Error::Domain(format!(
            "kappa_tilde must be finite and >= 0, got {kappa_tilde}"
        )));
    }
    let total = sector.total_photons() as u64;
    let binoms: Vec<f64> = (0..=total)
        .map(|n| deformed_binomial(total, n, kappa_tilde, convention))
        .collect::<Result<_>>()?;
    let binoms2: Vec<f64> = (0..=2)
        .map(|n| deformed_binomial(2, n, kappa_tilde, convention))
        .collect::<Result<_>>()?;

    let nodes = gauss_legendre(quadrature.panel_order);
    let mut worst = 0.0f64;
    for n in 0..=total as usize {
        // integrand in t: (N+1) C_k(N,n) x^n / (P_N(x) P_2(x)) * dx/dt
        let f = |t: f64| -> f64 {
            if t >= 1.0 {
                return 0.0;
            }
            let x = t / (1.0 - t);
            let mut p_n = 0.0;
            for b in binoms.iter().rev() {
                p_n = p_n * x + b;
            }
            let p_2 = (binoms2[2] * x + binoms2[1]) * x + binoms2[0];
            let jac = 1.0 / ((1.0 - t) * (1.0 - t));
            (total as f64 + 1.0) * binoms[n] * x.powi(n as i32) / (p_n * p_2) * jac
        };
        let (value, err) = adaptive_panel(
            &f,
            0.0,
            1.0,
            &nodes,
            quadrature.target,
            quadrature.max_depth,
        );
        if err > quadrature.target {
            return Err(Error::QuadratureNonConvergence {
                achieved: err,
                target: quadrature.target,
            });
        }
        worst = worst.max((value - 1.0).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformed_algebra::su2_generators;

    const TOL: f64 = 1e-12;

    fn params(n: usize, mu: Complex64, kappa: f64, conv: CoefficientConvention) -> CKNCSParams {
        CKNCSParams::new(SectorDimension::new(n), mu, kappa, conv).unwrap()
    }

    fn real_mu(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn undeformed_limit_is_binomial_coherent_state() {
        let n_total = 8;
        let mu = Complex64::new(0.4, -0.3);
        let state = params(n_total, mu, 0.0, CoefficientConvention::OperatorExpansion);
        let state = build_ckncs(&state).unwrap();
        let norm = (1.0 + mu.norm_sqr()).powf(n_total as f64 / 2.0);
        for n in 0..=n_total {
            let expected =
                (ln_binomial(n_total as u64, n as u64) / 2.0).exp() * mu.powu(n as u32) / norm;
            assert!((state.amplitude(n) - expected).norm() < 1e-10);
        }
    }

    #[test]
    fn zero_mu_is_lowest_weight_ket() {
        let state = build_ckncs(&params(
            5,
            real_mu(0.0),
            2.0,
            CoefficientConvention::OperatorExpansion,
        ))
        .unwrap();
        assert_eq!(state.amplitude(0), Complex64::new(1.0, 0.0));
        assert!(state.probabilities()[1..].iter().all(|p| *p == 0.0));
    }

    #[test]
    fn worked_example_sector_two() {
        let state = build_ckncs(&params(
            2,
            real_mu(1.0),
            1.0,
            CoefficientConvention::OperatorExpansion,
        ))
        .unwrap();
        let p = state.probabilities();
        assert!((p[0] - 1.0 / 7.0).abs() < TOL);
        assert!((p[1] - 4.0 / 7.0).abs() < TOL);
        assert!((p[2] - 2.0 / 7.0).abs() < TOL);
    }

    // Oracle: apply the truncated power series of exp(mu J+) to |0, N> with
    // the dense generator matrix.
    fn series_state(n_total: usize, mu: Complex64, kappa: f64) -> Vec<Complex64> {
        let (j_plus, _, _) = su2_generators(SectorDimension::new(n_total), kappa).unwrap();
        let dim = n_total + 1;
        let mut term = vec![Complex64::ZERO; dim];
        term[0] = Complex64::new(1.0, 0.0);
        let mut sum = term.clone();
        let mut k = 1.0;
        loop {
            term = j_plus.apply(&term);
            for t in &mut term {
                *t *= mu / k;
            }
            let term_norm: f64 = term.iter().map(|t| t.norm_sqr()).sum::<f64>().sqrt();
            for (s, t) in sum.iter_mut().zip(&term) {
                *s += t;
            }
            if term_norm < 1e-16 {
                break;
            }
            k += 1.0;
        }
        let norm = sum.iter().map(|s| s.norm_sqr()).sum::<f64>().sqrt();
        sum.into_iter().map(|s| s / norm).collect()
    }

    #[test]
    fn operator_expansion_matches_exponential_series() {
        for &(n_total, kappa) in &[(2usize, 1.0), (6, 0.5), (10, 2.0)] {
            for &mu in &[real_mu(0.7), Complex64::new(0.3, 0.4)] {
                let built = build_ckncs(&params(
                    n_total,
                    mu,
                    kappa,
                    CoefficientConvention::OperatorExpansion,
                ))
                .unwrap();
                let series = series_state(n_total, mu, kappa);
                for n in 0..=n_total {
                    assert!(
                        (built.amplitude(n) - series[n]).norm() < 1e-10,
                        "N={n_total} kappa={kappa} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn conventions_agree_bitwise_when_undeformed() {
        for &mu in &[real_mu(0.2), Complex64::new(1.0, -2.0)] {
            let a = build_ckncs(&params(
                12,
                mu,
                0.0,
                CoefficientConvention::OperatorExpansion,
            ))
            .unwrap();
            let b = build_ckncs(&params(
                12,
                mu,
                0.0,
                CoefficientConvention::LiteralFactorial,
            ))
            .unwrap();
            assert_eq!(a.amplitudes(), b.amplitudes());
        }
    }

    #[test]
    fn normalization_over_parameter_grid() {
        for &n_total in &[1usize, 10, 40] {
            for &kappa in &[0.0, 0.1, 1.0, 10.0] {
                for &mu_abs in &[0.0, 0.2, 1.0, 2.0] {
                    for conv in [
                        CoefficientConvention::OperatorExpansion,
                        CoefficientConvention::LiteralFactorial,
                    ] {
                        let state =
                            build_ckncs(&params(n_total, real_mu(mu_abs), kappa, conv)).unwrap();
                        assert!(state.norm_defect() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn real_label_gives_real_nonnegative_amplitudes() {
        let state = build_ckncs(&params(
            9,
            real_mu(1.3),
            0.7,
            CoefficientConvention::OperatorExpansion,
        ))
        .unwrap();
        for a in state.amplitudes() {
            assert_eq!(a.im, 0.0);
            assert!(a.re >= 0.0);
        }
    }

    #[test]
    fn probabilities_depend_only_on_mu_modulus() {
        let conv = CoefficientConvention::OperatorExpansion;
        let base = build_ckncs(&params(7, real_mu(0.8), 0.5, conv)).unwrap();
        for theta in [0.3, 1.2, 2.9] {
            let rotated =
                build_ckncs(&params(7, Complex64::from_polar(0.8, theta), 0.5, conv)).unwrap();
            for (p, q) in base.probabilities().iter().zip(rotated.probabilities()) {
                assert!((p - q).abs() < TOL);
            }
        }
    }

    #[test]
    fn joint_distribution_examples() {
        let conv = CoefficientConvention::OperatorExpansion;
        let fock = build_ckncs(&params(4, real_mu(0.0), 0.3, conv)).unwrap();
        let joint = joint_distribution(&fock);
        assert_eq!(joint.probability(0, 4), 1.0);
        assert_eq!(joint.probability(1, 3), 0.0);
        joint.validate().unwrap();

        let sym = build_ckncs(&params(2, real_mu(1.0), 0.0, conv)).unwrap();
        let joint = joint_distribution(&sym);
        assert!((joint.probability(0, 2) - 0.25).abs() < TOL);
        assert!((joint.probability(1, 1) - 0.5).abs() < TOL);
        assert!((joint.probability(2, 0) - 0.25).abs() < TOL);

        let deformed = build_ckncs(&params(2, real_mu(1.0), 1.0, conv)).unwrap();
        assert!((joint_distribution(&deformed).probability(1, 1) - 4.0 / 7.0).abs() < TOL);
    }

    #[test]
    fn marginals_reverse_between_modes() {
        let conv = CoefficientConvention::OperatorExpansion;
        let state = build_ckncs(&params(6, real_mu(0.9), 0.4, conv)).unwrap();
        let pa = marginal_distribution(&state, FieldMode::A);
        let pb = marginal_distribution(&state, FieldMode::B);
        for n in 0..=6 {
            assert_eq!(pa[n], pb[6 - n]);
        }
        assert!((pa.iter().sum::<f64>() - 1.0).abs() < TOL);

        let fock = build_ckncs(&params(5, real_mu(0.0), 0.0, conv)).unwrap();
        let pb = marginal_distribution(&fock, FieldMode::B);
        assert_eq!(pb[5], 1.0);
    }

    #[test]
    fn identity_resolution_undeformed() {
        let spec = QuadratureSpec::default();
        let conv = CoefficientConvention::OperatorExpansion;
        let scalar = identity_resolution_check(SectorDimension::new(0), 0.0, conv, &spec).unwrap();
        assert!(scalar < 1e-10, "scalar residual {scalar}");
        for n in [1usize, 3, 5] {
            let res = identity_resolution_check(SectorDimension::new(n), 0.0, conv, &spec).unwrap();
            assert!(res < 1e-10, "N={n} residual {res}");
        }
    }

    #[test]
    fn identity_resolution_deformed_diagnostic() {
        // The deformed measure does not resolve the identity; the residual is
        // a stable, convergent diagnostic. Cross-check against a finer
        // quadrature.
        let conv = CoefficientConvention::OperatorExpansion;
        let coarse = QuadratureSpec::default();
        let fine = QuadratureSpec {
            target: 1e-11,
            panel_order: 40,
            ..QuadratureSpec::default()
        };
        let r1 = identity_resolution_check(SectorDimension::new(3), 0.5, conv, &coarse).unwrap();
        let r2 = identity_resolution_check(SectorDimension::new(3), 0.5, conv, &fine).unwrap();
        assert!(r1 > 0.1, "diagnostic unexpectedly small: {r1}");
        assert!((r1 - r2).abs() < 1e-7);
        assert!((r1 - 0.3941754269).abs() < 1e-6);
    }

    #[test]
    fn identity_resolution_reports_non_convergence() {
        let starved = QuadratureSpec {
            target: 1e-14,
            panel_order: 2,
            max_depth: 1,
        };
        let err = identity_resolution_check(
            SectorDimension::new(5),
            0.5,
            CoefficientConvention::OperatorExpansion,
            &starved,
        )
        .unwrap_err();
        match err {
            Error::QuadratureNonConvergence { achieved, target } => {
                assert!(achieved > target);
            }
            other => panic!("expected quadrature error, got {other:?}"),
        }
    }

    #[test]
    fn state_csv_shape() {
        let p = params(
            2,
            real_mu(1.0),
            0.5,
            CoefficientConvention::OperatorExpansion,
        );
        let state = build_ckncs(&p).unwrap();
        let csv = state_csv(&p, &state);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "N,mu_re,mu_im,kappa_tilde,convention");
        assert_eq!(lines[1], "2,1,0,0.5,operator");
        assert_eq!(lines[2], "n,amp_re,amp_im,probability");
        assert_eq!(lines.len(), 6);
    }
}
