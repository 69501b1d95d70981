//! Cross-Kerr deformation function, deformed factorials and binomials, the
//! deformed two-mode ladder operators, and the deformed su(2) generators.
//!
//! The medium is described by a single dimensionless nonlinearity
//! `kappa_tilde = kappa / (2 * omega_a)`. Mode `a` acquires an effective
//! number dependence on mode `b` through the deformation function
//! `f(kappa_tilde, n_b) = sqrt(1 + kappa_tilde * n_b)`, which reduces to 1 in
//! the linear limit. On the sector spanned by `|n, N - n>` the deformed
//! Schwinger generators close into a deformed su(2) algebra: the commutators
//! with `J0` hold exactly, while `[J+, J-] = 2 J0` picks up a correction
//! linear in `kappa_tilde`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::{Error, Result};

/// Dimensionless cross-Kerr nonlinearity `kappa / (2 * omega_a)`.
///
/// The single knob of the medium; zero recovers the undeformed (linear)
/// results exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParameter(f64);

impl DeformationParameter {
    pub fn new(kappa_tilde: f64) -> Result<Self> {
        if !kappa_tilde.is_finite() || kappa_tilde < 0.0 {
            return Err(Error::Domain(format!(
                "kappa_tilde must be finite and >= 0, got {kappa_tilde}"
            )));
        }
        Ok(Self(kappa_tilde))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Deformation factor `sqrt(1 + kappa_tilde * n_b)`.
    pub fn deformation(self, n_b: u64) -> f64 {
        (1.0 + self.0 * n_b as f64).sqrt()
    }
}

/// Total photon number `N` of one su(2) sector.
///
/// The sector state space is spanned by the `N + 1` kets `|n, N - n>`,
/// `n = 0..=N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SectorDimension(usize);

impl SectorDimension {
    pub fn new(total_photons: usize) -> Self {
        Self(total_photons)
    }

    /// Total photon number `N`.
    pub fn total_photons(self) -> usize {
        self.0
    }

    /// Dimension of the sector Hilbert space, `N + 1`.
    pub fn dim(self) -> usize {
        self.0 + 1
    }
}

/// Which reading of the coherent-state weight to use.
///
/// The generating definition `exp(mu J+) |0, N>` fixes the weight of `|n, N-n>`
/// to the product of deformation factors collected while climbing the ladder,
/// `W_n = prod_{j=N-n}^{N-1} f(kappa_tilde, j)` ([`OperatorExpansion`]). A
/// literal reading of the deformed factorial evaluated at `n_b = N - n` gives
/// `W_n = prod_{j=1}^{N-n} f(kappa_tilde, j)` instead ([`LiteralFactorial`]).
/// The two coincide exactly in the undeformed limit but weight the sector in
/// opposite directions for `kappa_tilde > 0`; `OperatorExpansion` is the
/// default.
///
/// [`OperatorExpansion`]: CoefficientConvention::OperatorExpansion
/// [`LiteralFactorial`]: CoefficientConvention::LiteralFactorial
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CoefficientConvention {
    #[default]
    OperatorExpansion,
    LiteralFactorial,
}

impl fmt::Display for CoefficientConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OperatorExpansion => write!(f, "operator"),
            Self::LiteralFactorial => write!(f, "literal"),
        }
    }
}

impl std::str::FromStr for CoefficientConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "operator" => Ok(Self::OperatorExpansion),
            "literal" => Ok(Self::LiteralFactorial),
            other => Err(Error::Domain(format!(
                "unknown coefficient convention {other:?} (expected \"operator\" or \"literal\")"
            ))),
        }
    }
}

fn check_kappa(kappa_tilde: f64) -> Result<f64> {
    DeformationParameter::new(kappa_tilde).map(DeformationParameter::value)
}

/// Deformation function `f(kappa_tilde, n_b) = sqrt(1 + kappa_tilde * n_b)`.
///
/// Always `>= 1`, monotone in both arguments, and identically 1 at
/// `kappa_tilde = 0`.
pub fn deformation_value(kappa_tilde: f64, n_b: u64) -> Result<f64> {
    Ok(DeformationParameter::new(kappa_tilde)?.deformation(n_b))
}

/// Deformed factorial `prod_{j=1}^{m} f(kappa_tilde, j)`, empty product = 1.
///
/// Computed by the defining recursion `F(m) = f(m) * F(m - 1)`, `F(0) = 1`.
pub fn deformed_factorial(kappa_tilde: f64, m: u64) -> Result<f64> {
    let kappa = DeformationParameter::new(kappa_tilde)?;
    let mut acc = 1.0;
    for j in 1..=m {
        acc *= kappa.deformation(j);
    }
    Ok(acc)
}

/// `ln` of the binomial coefficient `C(n, k)`.
pub(crate) fn ln_binomial(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    let mut acc = 0.0;
    for j in 0..k {
        acc += ((n - j) as f64).ln() - ((j + 1) as f64).ln();
    }
    acc
}

/// `ln W_n` for the coherent-state weight of `|n, N - n>` under `convention`.
///
/// Log-domain so that sector `N = 40` at large `kappa_tilde` stays finite
/// before normalization.
pub fn ln_sector_weight(
    convention: CoefficientConvention,
    kappa_tilde: f64,
    total_photons: u64,
    n: u64,
) -> f64 {
    debug_assert!(n <= total_photons);
    let range = match convention {
        // prod_{j=N-n}^{N-1} f(kt, j)
        CoefficientConvention::OperatorExpansion => (total_photons - n)..total_photons,
        // [f(kt, .)]! at n_b = N - n  =>  prod_{j=1}^{N-n} f(kt, j)
        CoefficientConvention::LiteralFactorial => 1..(total_photons - n + 1),
    };
    range.map(|j| 0.5 * (kappa_tilde * j as f64).ln_1p()).sum()
}

/// Deformed binomial coefficient `C(N, n) * W_n(kappa_tilde)^2`.
///
/// Reduces to the ordinary binomial coefficient at `kappa_tilde = 0` and for
/// `n = 0` (empty weight product).
pub fn deformed_binomial(
    total_photons: u64,
    n: u64,
    kappa_tilde: f64,
    convention: CoefficientConvention,
) -> Result<f64> {
    let kappa_tilde = check_kappa(kappa_tilde)?;
    if n > total_photons {
        return Err(Error::Domain(format!(
            "deformed binomial needs 0 <= n <= N, got n = {n}, N = {total_photons}"
        )));
    }
    let ln = ln_binomial(total_photons, n)
        + 2.0 * ln_sector_weight(convention, kappa_tilde, total_photons, n);
    Ok(ln.exp())
}

/// A ket expansion over the two-mode Fock basis `|n_a, n_b>`.
///
/// Sparse and unnormalized; this is the scratch representation the ladder
/// operators act on.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TwoModeKetVector {
    amps: BTreeMap<(u32, u32), Complex64>,
}

impl TwoModeKetVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis ket `|n_a, n_b>` with unit amplitude.
    pub fn ket(n_a: u32, n_b: u32) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert((n_a, n_b), Complex64::new(1.0, 0.0));
        Self { amps }
    }

    pub fn add(&mut self, n_a: u32, n_b: u32, amplitude: Complex64) {
        if amplitude != Complex64::ZERO {
            *self.amps.entry((n_a, n_b)).or_insert(Complex64::ZERO) += amplitude;
        }
    }

    pub fn amplitude(&self, n_a: u32, n_b: u32) -> Complex64 {
        self.amps
            .get(&(n_a, n_b))
            .copied()
            .unwrap_or(Complex64::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.amps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.values().all(|a| *a == Complex64::ZERO)
    }

    pub fn norm(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Direction of a deformed ladder action on mode `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderDirection {
    Lower,
    Raise,
}

/// Apply the deformed mode-`a` ladder operator (annihilation for
/// [`LadderDirection::Lower`], creation for [`LadderDirection::Raise`]) to a
/// two-mode ket expansion.
///
/// The operator is the ordinary ladder operator scaled ket-wise by the
/// deformation factor `f(kappa_tilde, n_b)`; lowering the mode-`a` vacuum
/// yields the zero vector.
pub fn deformed_ladder_apply(
    direction: LadderDirection,
    kappa_tilde: f64,
    state: &TwoModeKetVector,
) -> Result<TwoModeKetVector> {
    let kappa = DeformationParameter::new(kappa_tilde)?;
    let mut out = TwoModeKetVector::zero();
    for (&(n_a, n_b), &amp) in state.iter() {
        let scale = kappa.deformation(n_b as u64);
        match direction {
            LadderDirection::Lower => {
                if n_a > 0 {
                    out.add(n_a - 1, n_b, amp * scale * (n_a as f64).sqrt());
                }
            }
            LadderDirection::Raise => {
                out.add(n_a + 1, n_b, amp * scale * ((n_a + 1) as f64).sqrt());
            }
        }
    }
    Ok(out)
}

/// Dense complex matrix on one sector, basis ordered by `n` ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let lhs = self[(i, k)];
                if lhs == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += lhs * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&other.data) {
            *o -= r;
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= factor;
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).sub(&b.mul(a))
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for OperatorMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.data[row * self.dim + col]
    }
}

impl std::ops::IndexMut<(usize, usize)> for OperatorMatrix {
    fn index_mut(&mut self, (row, col): (usize, usize)) -> &mut Complex64 {
        let dim = self.dim;
        &mut self.data[row * dim + col]
    }
}

/// Deformed su(2) generators `(J+, J-, J0)` on the sector `{|n, N - n>}`.
///
/// `J+` carries the deformation factor evaluated after the mode-`b` photon is
/// removed; `J-` is its exact conjugate transpose; `J0` is diagonal with
/// entries `(2n - N) / 2`.
pub fn su2_generators(
    sector: SectorDimension,
    kappa_tilde: f64,
) -> Result<(OperatorMatrix, OperatorMatrix, OperatorMatrix)> {
    let kappa = DeformationParameter::new(kappa_tilde)?;
    let total = sector.total_photons();
    let dim = sector.dim();
    let mut j_plus = OperatorMatrix::zeros(dim);
    let mut j0 = OperatorMatrix::zeros(dim);
    for n in 0..dim {
        j0[(n, n)] = Complex64::new((2.0 * n as f64 - total as f64) / 2.0, 0.0);
        if n + 1 < dim {
            // <n+1, N-n-1 | J+ | n, N-n>
            let n_b_after = (total - n - 1) as u64;
            let elem = ((n + 1) as f64).sqrt()
                * ((total - n) as f64).sqrt()
                * kappa.deformation(n_b_after);
            j_plus[(n + 1, n)] = Complex64::new(elem, 0.0);
        }
    }
    let j_minus = j_plus.dagger();
    Ok((j_plus, j_minus, j0))
}

/// Verify that the deformed-oscillator spectrum reproduces the cross-Kerr
/// spectrum on every sector ket, returning the largest absolute deviation.
///
/// Compares `omega_a * f^2(kappa_tilde, n_b) * n_a + omega_b * n_b` against
/// the direct form `omega_a * n_a + omega_b * n_b + (kappa / 2) * n_a * n_b`
/// with `kappa = 2 * omega_a * kappa_tilde`; the two agree algebraically, so
/// the residual is pure roundoff.
pub fn spectrum_check(
    sector: SectorDimension,
    kappa_tilde: f64,
    omega_a: f64,
    omega_b: f64,
) -> Result<f64> {
    let kappa = DeformationParameter::new(kappa_tilde)?;
    if !(omega_a > 0.0) {
        return Err(Error::Domain(format!("omega_a must be > 0, got {omega_a}")));
    }
    let total = sector.total_photons();
    let mut worst = 0.0f64;
    for n_a in 0..=total {
        let n_b = (total - n_a) as f64;
        let n_a = n_a as f64;
        let deformed = omega_a * (1.0 + kappa.value() * n_b) * n_a + omega_b * n_b;
        let direct = omega_a * n_a + omega_b * n_b + omega_a * kappa.value() * n_a * n_b;
        worst = worst.max((deformed - direct).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn deformation_value_examples() {
        assert_eq!(deformation_value(0.0, 5).unwrap(), 1.0);
        assert!((deformation_value(0.5, 2).unwrap() - 2.0f64.sqrt()).abs() < TOL);
        assert_eq!(deformation_value(1.0, 3).unwrap(), 2.0);
        assert!(deformation_value(-0.1, 0).is_err());
    }

    #[test]
    fn deformation_value_monotone() {
        let mut prev = 0.0;
        for n in 0..50 {
            let v = deformation_value(0.3, n).unwrap();
            assert!(v >= 1.0 && v >= prev);
            prev = v;
        }
        for k in [0.0, 0.1, 0.5, 2.0] {
            assert!(deformation_value(k, 7).unwrap() <= deformation_value(k + 0.1, 7).unwrap());
        }
    }

    #[test]
    fn deformed_factorial_examples() {
        for k in [0.0, 0.3, 2.0] {
            assert_eq!(deformed_factorial(k, 0).unwrap(), 1.0);
        }
        assert!((deformed_factorial(1.0, 2).unwrap() - 6.0f64.sqrt()).abs() < TOL);
        assert_eq!(deformed_factorial(0.0, 7).unwrap(), 1.0);
    }

    #[test]
    fn deformed_factorial_recursion_is_exact() {
        for m in 1..=30u64 {
            let lhs = deformed_factorial(0.7, m).unwrap();
            let rhs = deformation_value(0.7, m).unwrap() * deformed_factorial(0.7, m - 1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn deformed_binomial_examples() {
        let any = CoefficientConvention::OperatorExpansion;
        assert!((deformed_binomial(2, 1, 0.0, any).unwrap() - 2.0).abs() < TOL);
        assert!((deformed_binomial(5, 0, 0.3, any).unwrap() - 1.0).abs() < TOL);
        assert!(deformed_binomial(2, 3, 0.0, any).is_err());
        // ladder-expansion value: C(2,1) * W_1^2 with W_1 = f(1, 1) = sqrt(2)
        assert!((deformed_binomial(2, 1, 1.0, any).unwrap() - 4.0).abs() < TOL);
    }

    // Oracle: climb the sector ladder with the generator matrix and read the
    // squared weight of |n, N-n> out of (J+)^n |0, N>.
    #[test]
    fn deformed_binomial_matches_ladder_climb() {
        let total = 6usize;
        let kappa = 0.8;
        let conv = CoefficientConvention::OperatorExpansion;
        let (j_plus, _, _) = su2_generators(SectorDimension::new(total), kappa).unwrap();
        let mut v = vec![Complex64::ZERO; total + 1];
        v[0] = Complex64::new(1.0, 0.0);
        let mut factorial = 1.0;
        for n in 0..=total as u64 {
            if n > 0 {
                v = j_plus.apply(&v);
                factorial *= n as f64;
            }
            // (J+)^n |0,N> carries sqrt(n!) * sqrt(N!/(N-n)!) * W_n on |n, N-n>,
            // so (v[n] / n!)^2 = C(N, n) * W_n^2.
            let coeff = v[n as usize].re / factorial;
            let expected = deformed_binomial(total as u64, n, kappa, conv).unwrap();
            assert!(
                (coeff * coeff - expected).abs() < 1e-9 * expected.max(1.0),
                "n = {n}: {} vs {expected}",
                coeff * coeff
            );
        }
    }

    #[test]
    fn ladder_examples() {
        // lowering the mode-a vacuum annihilates the state
        let out = deformed_ladder_apply(LadderDirection::Lower, 0.4, &TwoModeKetVector::ket(0, 3))
            .unwrap();
        assert!(out.is_zero());

        // undeformed lowering is the ordinary ladder
        let out = deformed_ladder_apply(LadderDirection::Lower, 0.0, &TwoModeKetVector::ket(4, 2))
            .unwrap();
        assert!((out.amplitude(3, 2).re - 2.0).abs() < TOL);

        // raise with kappa_tilde = 1 on |0, 3>: sqrt(1) * sqrt(1 + 3) = 2
        let out = deformed_ladder_apply(LadderDirection::Raise, 1.0, &TwoModeKetVector::ket(0, 3))
            .unwrap();
        assert!((out.amplitude(1, 3).re - 2.0).abs() < TOL);
    }

    // Oracle: dense matrix of the deformed creation operator on a small
    // rectangular truncation.
    #[test]
    fn ladder_matches_dense_matrix() {
        let kappa = 0.6;
        let (na_max, nb_max) = (5u32, 4u32);
        let dim = ((na_max + 1) * (nb_max + 1)) as usize;
        let idx = |na: u32, nb: u32| (na * (nb_max + 1) + nb) as usize;
        let mut raise = vec![vec![Complex64::ZERO; dim]; dim];
        for na in 0..na_max {
            for nb in 0..=nb_max {
                let f = (1.0 + kappa * nb as f64).sqrt();
                raise[idx(na + 1, nb)][idx(na, nb)] =
                    Complex64::new(((na + 1) as f64).sqrt() * f, 0.0);
            }
        }
        let mut state = TwoModeKetVector::zero();
        state.add(1, 2, Complex64::new(0.6, 0.1));
        state.add(3, 0, Complex64::new(-0.2, 0.4));
        state.add(0, 4, Complex64::new(0.3, 0.0));

        let sparse = deformed_ladder_apply(LadderDirection::Raise, kappa, &state).unwrap();

        let mut dense_in = vec![Complex64::ZERO; dim];
        for (&(na, nb), &a) in state.iter() {
            dense_in[idx(na, nb)] = a;
        }
        for na in 0..=na_max {
            for nb in 0..=nb_max {
                let dense: Complex64 = (0..dim).map(|j| raise[idx(na, nb)][j] * dense_in[j]).sum();
                assert!((dense - sparse.amplitude(na, nb)).norm() < TOL);
            }
        }
    }

    #[test]
    fn deformed_factorial_monotone() {
        for m in 0..20u64 {
            assert!(deformed_factorial(0.4, m + 1).unwrap() >= deformed_factorial(0.4, m).unwrap());
        }
        for k in [0.0, 0.3, 1.0, 5.0] {
            assert!(deformed_factorial(k + 0.5, 9).unwrap() >= deformed_factorial(k, 9).unwrap());
        }
    }

    #[test]
    fn generator_matrices_have_ladder_structure() {
        let (jp, jm, j0) = su2_generators(SectorDimension::new(5), 0.7).unwrap();
        for row in 0..6 {
            for col in 0..6 {
                assert_eq!(jp[(row, col)].im, 0.0);
                if row == col {
                    assert_eq!(j0[(row, col)].im, 0.0);
                } else {
                    assert_eq!(j0[(row, col)], Complex64::ZERO);
                }
                if row != col + 1 {
                    assert_eq!(jp[(row, col)], Complex64::ZERO);
                } else {
                    assert!(jp[(row, col)].re >= 0.0);
                }
                if col != row + 1 {
                    assert_eq!(jm[(row, col)], Complex64::ZERO);
                } else {
                    assert!(jm[(row, col)].re >= 0.0);
                }
            }
        }
    }

    #[test]
    fn su2_spin_half_limit() {
        let (j_plus, j_minus, j0) = su2_generators(SectorDimension::new(1), 0.0).unwrap();
        assert!((j0[(0, 0)].re + 0.5).abs() < TOL);
        assert!((j0[(1, 1)].re - 0.5).abs() < TOL);
        assert!((j_plus[(1, 0)].re - 1.0).abs() < TOL);
        assert!((j_minus[(0, 1)].re - 1.0).abs() < TOL);
    }

    #[test]
    fn su2_commutators() {
        for &kappa in &[0.0, 0.1, 1.0] {
            for total in [1usize, 5, 12] {
                let sector = SectorDimension::new(total);
                let (jp, jm, j0) = su2_generators(sector, kappa).unwrap();
                let r_plus = OperatorMatrix::commutator(&j0, &jp).sub(&jp);
                let r_minus =
                    OperatorMatrix::commutator(&j0, &jm).sub(&jm.scale(Complex64::new(-1.0, 0.0)));
                assert!(r_plus.max_norm() < TOL, "kappa={kappa} N={total}");
                assert!(r_minus.max_norm() < TOL, "kappa={kappa} N={total}");
                if kappa == 0.0 {
                    let r = OperatorMatrix::commutator(&jp, &jm)
                        .sub(&j0.scale(Complex64::new(2.0, 0.0)));
                    assert!(r.max_norm() < TOL);
                }
            }
        }
    }

    #[test]
    fn su2_lowering_residual_vanishes_linearly() {
        // || [J+, J-] - 2 J0 || scales exactly linearly in kappa_tilde.
        let sector = SectorDimension::new(10);
        let mut ratios = Vec::new();
        for &kappa in &[1e-1, 1e-2, 1e-3] {
            let (jp, jm, j0) = su2_generators(sector, kappa).unwrap();
            let res = OperatorMatrix::commutator(&jp, &jm)
                .sub(&j0.scale(Complex64::new(2.0, 0.0)))
                .max_norm();
            ratios.push(res / kappa);
        }
        let bound = (sector.total_photons() * sector.total_photons()) as f64;
        for r in &ratios {
            assert!(*r <= bound);
        }
        assert!((ratios[0] - ratios[2]).abs() < 1e-6 * ratios[0]);
    }

    #[test]
    fn su2_weight_states_annihilate_exactly() {
        for &kappa in &[0.0, 0.3, 2.0] {
            let sector = SectorDimension::new(7);
            let (jp, jm, _) = su2_generators(sector, kappa).unwrap();
            let mut lowest = vec![Complex64::ZERO; sector.dim()];
            lowest[0] = Complex64::new(1.0, 0.0);
            let mut highest = vec![Complex64::ZERO; sector.dim()];
            highest[sector.dim() - 1] = Complex64::new(1.0, 0.0);
            assert!(jm.apply(&lowest).iter().all(|a| *a == Complex64::ZERO));
            assert!(jp.apply(&highest).iter().all(|a| *a == Complex64::ZERO));
        }
    }

    #[test]
    fn j_minus_is_adjoint_of_j_plus() {
        for &kappa in &[0.0, 0.25, 1.5] {
            let (jp, jm, _) = su2_generators(SectorDimension::new(9), kappa).unwrap();
            assert_eq!(jm, jp.dagger());
        }
    }

    #[test]
    fn spectrum_check_examples() {
        // undeformed case is exact
        assert_eq!(
            spectrum_check(SectorDimension::new(12), 0.0, 1.0, 1.3).unwrap(),
            0.0
        );
        assert!(spectrum_check(SectorDimension::new(10), 0.1, 1.0, 1.0).unwrap() < 1e-12);
        assert!(spectrum_check(SectorDimension::new(10), 0.1, 0.0, 1.0).is_err());
    }
}
