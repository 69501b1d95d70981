//! Two-mode quadrature means, variances, and squeezing indicators evaluated
//! on the sparse atom-field amplitude map.
//!
//! The quadratures are the symmetric combinations
//! `X1 = (a + a' + b + b') / (2 sqrt 2)` and
//! `X2 = (a - a' + b - b') / (2i sqrt 2)` with `[X1, X2] = i/2`, so the
//! variance product is bounded below by 1/16 and a coherent two-mode state
//! sits at variance 1/4 per quadrature. The squeezing indicator is
//! `S = 4 var - 1`, negative iff squeezed.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::coherent_states::TwoModeAmplitudes;
use crate::dynamics::{evolve, AtomFieldState, CouplingConfig};

/// Variances and squeezing indicators of the two joint quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    pub var_x1: f64,
    pub var_x2: f64,
    pub s_x1: f64,
    pub s_x2: f64,
    pub uncertainty_product: f64,
}

#[derive(Clone, Copy)]
enum Op {
    LowerA,
    RaiseA,
    LowerB,
    RaiseB,
}

type Amps = BTreeMap<(u8, u32, u32), Complex64>;

/// Apply a ladder operator to every ket; atomic level is untouched.
fn apply(op: Op, amps: &Amps) -> Amps {
    let mut out = Amps::new();
    for (&(l, n_a, n_b), &amp) in amps {
        let (key, factor) = match op {
            Op::LowerA => {
                if n_a == 0 {
                    continue;
                }
                ((l, n_a - 1, n_b), (n_a as f64).sqrt())
            }
            Op::RaiseA => ((l, n_a + 1, n_b), ((n_a + 1) as f64).sqrt()),
            Op::LowerB => {
                if n_b == 0 {
                    continue;
                }
                ((l, n_a, n_b - 1), (n_b as f64).sqrt())
            }
            Op::RaiseB => ((l, n_a, n_b + 1), ((n_b + 1) as f64).sqrt()),
        };
        *out.entry(key).or_insert(Complex64::ZERO) += amp * factor;
    }
    out
}

/// `<psi| O |psi>` where `O` is the product of `ops` (rightmost acts first).
fn expectation(state: &AtomFieldState, ops: &[Op]) -> Complex64 {
    let mut image: Amps = state.iter().map(|(k, a)| (*k, *a)).collect();
    for op in ops.iter().rev() {
        image = apply(*op, &image);
    }
    image
        .iter()
        .map(|(key, amp)| state.amplitude(key.0, key.1, key.2).conj() * amp)
        .sum()
}

/// Largest tolerated imaginary residue on a Hermitian expectation value.
const HERMITICITY_TOL: f64 = 1e-12;

/// Compute the quadrature report of a normalized state.
///
/// Every second moment entering the variances is evaluated as its own sum
/// over the amplitude map; the imaginary parts of the Hermitian combinations
/// are then genuine roundoff residues, asserted small and discarded.
pub fn quadrature_report(state: &AtomFieldState) -> QuadratureReport {
    use Op::*;

    let e = |ops: &[Op]| expectation(state, ops);

    let a = e(&[LowerA]);
    let b = e(&[LowerB]);

    let aa = e(&[LowerA, LowerA]);
    let ad_ad = e(&[RaiseA, RaiseA]);
    let a_ad = e(&[LowerA, RaiseA]);
    let ad_a = e(&[RaiseA, LowerA]);
    let bb = e(&[LowerB, LowerB]);
    let bd_bd = e(&[RaiseB, RaiseB]);
    let b_bd = e(&[LowerB, RaiseB]);
    let bd_b = e(&[RaiseB, LowerB]);
    let ab = e(&[LowerA, LowerB]);
    let a_bd = e(&[LowerA, RaiseB]);
    let ad_b = e(&[RaiseA, LowerB]);
    let ad_bd = e(&[RaiseA, RaiseB]);

    let mode_sq = aa + ad_ad + a_ad + ad_a + bb + bd_bd + b_bd + bd_b;
    let cross = ab + a_bd + ad_b + ad_bd;
    let x1_sq = (mode_sq + cross * 2.0) / 8.0;

    let mode_sq2 = aa + ad_ad - a_ad - ad_a + bb + bd_bd - b_bd - bd_b;
    let cross2 = ab - a_bd - ad_b + ad_bd;
    let x2_sq = -(mode_sq2 + cross2 * 2.0) / 8.0;

    assert!(
        x1_sq.im.abs() < HERMITICITY_TOL && x2_sq.im.abs() < HERMITICITY_TOL,
        "non-Hermitian quadrature moment (im {} / {})",
        x1_sq.im,
        x2_sq.im
    );

    // <X1> = Re(<a> + <b>) / sqrt 2, <X2> = Im(<a> + <b>) / sqrt 2
    let sum = a + b;
    let x1 = sum.re / std::f64::consts::SQRT_2;
    let x2 = sum.im / std::f64::consts::SQRT_2;

    let var_x1 = x1_sq.re - x1 * x1;
    let var_x2 = x2_sq.re - x2 * x2;
    assert!(
        var_x1 > -HERMITICITY_TOL && var_x2 > -HERMITICITY_TOL,
        "negative quadrature variance ({var_x1} / {var_x2})"
    );
    let var_x1 = var_x1.max(0.0);
    let var_x2 = var_x2.max(0.0);

    QuadratureReport {
        var_x1,
        var_x2,
        s_x1: 4.0 * var_x1 - 1.0,
        s_x2: 4.0 * var_x2 - 1.0,
        uncertainty_product: var_x1 * var_x2,
    }
}

/// Quadrature reports along a time grid.
#[derive(Debug, Clone)]
pub struct QuadratureTrace {
    pub tau: Vec<f64>,
    pub reports: Vec<QuadratureReport>,
}

impl QuadratureTrace {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau,s_x1,s_x2,var_x1,var_x2,product\n");
        for (t, r) in self.tau.iter().zip(&self.reports) {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                t, r.s_x1, r.s_x2, r.var_x1, r.var_x2, r.uncertainty_product
            ));
        }
        out
    }
}

pub fn quadrature_trace(
    initial: &TwoModeAmplitudes,
    coupling: &CouplingConfig,
    taus: &[f64],
) -> QuadratureTrace {
    let reports = taus
        .iter()
        .map(|&tau| quadrature_report(&evolve(initial, coupling, tau)))
        .collect();
    QuadratureTrace {
        tau: taus.to_vec(),
        reports,
    }
}
