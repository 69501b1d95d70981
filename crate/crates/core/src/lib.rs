//! Two-mode cross-Kerr nonlinear coherent states and their interaction with a
//! three-level lambda atom.
//!
//! A cross-Kerr medium couples the intensities of two field modes. Its energy
//! spectrum is reproduced exactly by an f-deformed oscillator whose deformation
//! function depends on the photon number of the second mode, which in turn
//! deforms the Schwinger two-mode realization of su(2). This crate builds the
//! deformed algebra ([`deformed_algebra`]), the associated coherent states on a
//! fixed total-photon sector ([`coherent_states`]), their photon statistics
//! ([`statistics`]), the exact dynamics of a lambda-configuration three-level
//! atom driven by such a state ([`dynamics`]), and the derived observables:
//! two-mode quadrature variances ([`quadratures`]) and the atom-field
//! entanglement entropy ([`entropy`]).
//!
//! All quantities are dimensionless: the medium enters through the single knob
//! `kappa_tilde`, couplings through the ratio `g_b/g_a`, and time as
//! `tau = g_a * t`.

pub mod coherent_states;
pub mod deformed_algebra;
pub mod dynamics;
pub mod entropy;
pub mod quadratures;
pub mod statistics;

mod error;

pub use error::{Error, Result};

pub use coherent_states::{build_ckncs, CKNCSParams, QuadratureSpec, TwoModeAmplitudes};
pub use deformed_algebra::{CoefficientConvention, DeformationParameter, SectorDimension};
pub use dynamics::CouplingConfig;
