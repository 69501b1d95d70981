//! Atomic reduced density matrix, its spectrum via the closed-form
//! trigonometric cubic, and the von Neumann entanglement entropy.
//!
//! The global atom-field state is pure, so the entropy of the 3x3 atomic
//! reduced density matrix equals the field entropy and measures the
//! atom-field entanglement. Eigenvalues come from the characteristic cubic
//! solved in its three-real-root trigonometric form; nearly degenerate
//! spectra fall back to an iterative Hermitian eigensolver and are flagged.

use num_complex::Complex64;

use crate::coherent_states::TwoModeAmplitudes;
use crate::dynamics::{evolve, AtomFieldState, CouplingConfig};
use crate::{Error, Result};

/// 3x3 Hermitian, unit-trace, positive semidefinite atomic density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix3 {
    m: [[Complex64; 3]; 3],
}

impl DensityMatrix3 {
    /// Wrap explicit elements, checking Hermiticity and unit trace.
    pub fn from_elements(m: [[Complex64; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                if (m[i][j] - m[j][i].conj()).norm() > 1e-12 {
                    return Err(Error::Integrity(format!(
                        "density matrix not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        let trace = m[0][0].re + m[1][1].re + m[2][2].re;
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::Integrity(format!(
                "density matrix trace {trace}, expected 1"
            )));
        }
        Ok(Self { m })
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0].re + self.m[1][1].re + self.m[2][2].re
    }
}

/// Partial trace of the pure state over the field: pairs the amplitudes of
/// every populated field ket across atomic levels.
pub fn atomic_density_matrix(state: &AtomFieldState) -> DensityMatrix3 {
    let mut m = [[Complex64::ZERO; 3]; 3];
    for (&(level, n_a, n_b), &amp) in state.iter() {
        for other in 0..3u8 {
            m[level as usize][other as usize] += amp * state.amplitude(other, n_a, n_b).conj();
        }
    }
    // Hermitize away the last bits of pairing roundoff.
    for i in 0..3 {
        m[i][i] = Complex64::new(m[i][i].re, 0.0);
        for j in (i + 1)..3 {
            let avg = (m[i][j] + m[j][i].conj()) * 0.5;
            m[i][j] = avg;
            m[j][i] = avg.conj();
        }
    }
    DensityMatrix3 { m }
}

/// Coefficients of the monic characteristic cubic
/// `lambda^3 + b0 lambda^2 + b1 lambda + b2 = 0`.
///
/// `b0 = -trace` (so `-1` for a unit-trace input), `b1` is the sum of
/// principal 2x2 minors, and `b2 = -det`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoefficients {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
}

pub fn characteristic_coefficients(rho: &DensityMatrix3) -> CubicCoefficients {
    let d = [rho.get(0, 0).re, rho.get(1, 1).re, rho.get(2, 2).re];
    let off01 = rho.get(0, 1).norm_sqr();
    let off02 = rho.get(0, 2).norm_sqr();
    let off12 = rho.get(1, 2).norm_sqr();

    let b0 = -(d[0] + d[1] + d[2]);
    let b1 = d[0] * d[1] + d[0] * d[2] + d[1] * d[2] - off01 - off02 - off12;
    // -det, expanded over the first row; the imaginary part cancels for
    // Hermitian input.
    let det = d[0] * (d[1] * d[2] - off12)
        - (rho.get(0, 1) * (rho.get(1, 0) * d[2] - rho.get(1, 2) * rho.get(2, 0))).re
        + (rho.get(0, 2) * (rho.get(1, 0) * rho.get(2, 1) - d[1] * rho.get(2, 0))).re;
    CubicCoefficients { b0, b1, b2: -det }
}

/// Sorted eigenvalues of a 3x3 Hermitian matrix, with a flag recording
/// whether the iterative fallback was taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum3 {
    /// Eigenvalues in descending order.
    pub lambdas: [f64; 3],
    pub fallback: bool,
}

/// Below this value of the discriminant radicand `b0^2 - 3 b1` the spectrum
/// is treated as degenerate and handed to the iterative solver. The closed
/// form loses roughly `eps / radicand` absolute accuracy near a degeneracy,
/// so this threshold keeps its error under ~1e-9.
const DEGENERACY_RADICAND: f64 = 1e-7;

/// Eigenvalues of the density matrix from the closed-form solution of the
/// characteristic cubic.
///
/// A Hermitian matrix has three real roots, so the trigonometric form of the
/// cubic solution applies: with `p = b0^2 - 3 b1` and
/// `alpha = acos((9 b0 b1 - 2 b0^3 - 27 b2) / (2 p^(3/2))) / 3`, the roots
/// are `-b0/3 + (2/3) sqrt(p) cos(alpha + 2 pi k / 3)`. Nearly degenerate
/// spectra (`p < 1e-7`, which subsumes the exactly degenerate case) use the
/// iterative Hermitian eigensolver instead and set the `fallback` flag.
pub fn cubic_eigenvalues(rho: &DensityMatrix3) -> Spectrum3 {
    let CubicCoefficients { b0, b1, b2 } = characteristic_coefficients(rho);
    let radicand = b0 * b0 - 3.0 * b1;
    if !(radicand > DEGENERACY_RADICAND) {
        return Spectrum3 {
            lambdas: iterative_eigenvalues(rho),
            fallback: true,
        };
    }
    let sqrt_p = radicand.sqrt();
    let arg = (9.0 * b0 * b1 - 2.0 * b0 * b0 * b0 - 27.0 * b2) / (2.0 * radicand * sqrt_p);
    let alpha = arg.clamp(-1.0, 1.0).acos() / 3.0;
    let mut lambdas = [0.0; 3];
    for (k, lambda) in lambdas.iter_mut().enumerate() {
        let angle = alpha + 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        *lambda = -b0 / 3.0 + 2.0 / 3.0 * sqrt_p * angle.cos();
    }
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Spectrum3 {
        lambdas,
        fallback: false,
    }
}

/// Iterative Hermitian eigensolver used as the degenerate-spectrum fallback
/// and as the oracle in tests.
pub fn iterative_eigenvalues(rho: &DensityMatrix3) -> [f64; 3] {
    let m = nalgebra::Matrix3::from_fn(|i, j| rho.get(i, j));
    let eig = m.symmetric_eigen();
    let mut lambdas = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    lambdas
}

/// Eigenvalues this far below zero are integrity failures rather than
/// roundoff.
const EIGENVALUE_FLOOR: f64 = -1e-8;

/// Von Neumann entropy `-sum lambda_i ln lambda_i` in nats, with
/// `0 ln 0 = 0`.
///
/// Eigenvalues in `[-1e-8, 0)` are clipped to zero; anything lower means the
/// density matrix was assembled wrong and produces an integrity error. The
/// result lies in `[0, ln 3]`.
pub fn von_neumann_entropy(rho: &DensityMatrix3) -> Result<f64> {
    entropy_of_spectrum(&cubic_eigenvalues(rho))
}

fn entropy_of_spectrum(spectrum: &Spectrum3) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in &spectrum.lambdas {
        if lambda < EIGENVALUE_FLOOR {
            return Err(Error::Integrity(format!(
                "density-matrix eigenvalue {lambda} below {EIGENVALUE_FLOOR}"
            )));
        }
        if lambda > 0.0 {
            s -= lambda * lambda.ln();
        }
    }
    Ok(s.max(0.0))
}

/// Entanglement entropy along a time grid, with the spectrum and fallback
/// flag kept for each point.
#[derive(Debug, Clone)]
pub struct EntropyTrace {
    pub tau: Vec<f64>,
    pub entropy: Vec<f64>,
    pub lambdas: Vec<[f64; 3]>,
    pub fallback: Vec<bool>,
}

impl EntropyTrace {
    pub fn max_entropy(&self) -> f64 {
        self.entropy.iter().copied().fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau,entropy,lambda1,lambda2,lambda3,fallback\n");
        for (k, t) in self.tau.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                t,
                self.entropy[k],
                self.lambdas[k][0],
                self.lambdas[k][1],
                self.lambdas[k][2],
                u8::from(self.fallback[k])
            ));
        }
        out
    }
}

/// Entropy of the atom (equal to that of the field) along a time grid.
pub fn entropy_trace(
    initial: &TwoModeAmplitudes,
    coupling: &CouplingConfig,
    taus: &[f64],
) -> Result<EntropyTrace> {
    let mut entropy = Vec::with_capacity(taus.len());
    let mut lambdas = Vec::with_capacity(taus.len());
    let mut fallback = Vec::with_capacity(taus.len());
    for &tau in taus {
        let rho = atomic_density_matrix(&evolve(initial, coupling, tau));
        let spectrum = cubic_eigenvalues(&rho);
        entropy.push(entropy_of_spectrum(&spectrum)?);
        lambdas.push(spectrum.lambdas);
        fallback.push(spectrum.fallback);
    }
    Ok(EntropyTrace {
        tau: taus.to_vec(),
        entropy,
        lambdas,
        fallback,
    })
}
