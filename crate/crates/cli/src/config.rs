//! Scenario configs: a flat TOML file with one table of typed keys.
//!
//! Scalar-or-list fields (`kappa_tilde`, `mu_abs`) drive overlays and sweeps.
//! Validation errors name the offending field and are reported with exit
//! code 2 by the binary.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use ckncs::CoefficientConvention;

use crate::{CliError, CliResult};

/// Hard cap on the sector size; keeps desk-scale runs desk-scale.
pub const MAX_TOTAL_PHOTONS: u64 = 200;
pub const MAX_TAU_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ScalarOrList {
    Scalar(f64),
    List(Vec<f64>),
}

impl ScalarOrList {
    pub fn values(&self) -> Vec<f64> {
        match self {
            ScalarOrList::Scalar(v) => vec![*v],
            ScalarOrList::List(vs) => vs.clone(),
        }
    }

    pub fn is_list(&self) -> bool {
        matches!(self, ScalarOrList::List(_))
    }
}

/// Observables a scenario can request. Verbs ignore the ones that do not
/// apply to them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Means,
    G2,
    Mandel,
    Occupations,
    Squeezing,
    Entropy,
    IdentityCheck,
}

impl FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "means" => Ok(Self::Means),
            "g2" => Ok(Self::G2),
            "mandel" => Ok(Self::Mandel),
            "occupations" => Ok(Self::Occupations),
            "squeezing" => Ok(Self::Squeezing),
            "entropy" => Ok(Self::Entropy),
            "identity_check" => Ok(Self::IdentityCheck),
            other => Err(format!(
                "unknown observable {other:?} (expected one of means, g2, mandel, occupations, \
                 squeezing, entropy, identity_check)"
            )),
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Means => "means",
            Self::G2 => "g2",
            Self::Mandel => "mandel",
            Self::Occupations => "occupations",
            Self::Squeezing => "squeezing",
            Self::Entropy => "entropy",
            Self::IdentityCheck => "identity_check",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    #[serde(rename = "N")]
    n: u64,
    mu_abs: ScalarOrList,
    #[serde(default)]
    mu_phase: f64,
    kappa_tilde: ScalarOrList,
    g_ratio: f64,
    #[serde(default = "default_tau_max")]
    tau_max: f64,
    #[serde(default = "default_tau_points")]
    tau_points: usize,
    #[serde(default)]
    convention: Option<String>,
    observables: Vec<String>,
}

fn default_tau_max() -> f64 {
    50.0
}

fn default_tau_points() -> usize {
    5000
}

/// A parsed and validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub total_photons: u64,
    pub mu_abs: ScalarOrList,
    pub mu_phase: f64,
    pub kappa_tilde: ScalarOrList,
    pub g_ratio: f64,
    pub tau_max: f64,
    pub tau_points: usize,
    pub convention: CoefficientConvention,
    pub observables: Vec<Observable>,
}

impl Scenario {
    pub fn from_toml_str(text: &str) -> CliResult<Self> {
        let raw: RawScenario =
            toml::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))?;
        Self::validate(raw)
    }

    pub fn from_path(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    fn validate(raw: RawScenario) -> CliResult<Self> {
        let fail = |msg: String| Err(CliError::Validation(msg));

        if raw.name.is_empty()
            || !raw
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return fail(format!(
                "field `name`: must be nonempty and use only [A-Za-z0-9_-], got {:?}",
                raw.name
            ));
        }
        if raw.n > MAX_TOTAL_PHOTONS {
            return fail(format!(
                "field `N`: {} exceeds the cap {MAX_TOTAL_PHOTONS}",
                raw.n
            ));
        }
        let check_axis = |field: &str, axis: &ScalarOrList| -> CliResult<()> {
            let values = axis.values();
            if values.is_empty() {
                return Err(CliError::Validation(format!(
                    "field `{field}`: list must be nonempty"
                )));
            }
            for v in values {
                if !v.is_finite() || v < 0.0 {
                    return Err(CliError::Validation(format!(
                        "field `{field}`: values must be finite and >= 0, got {v}"
                    )));
                }
            }
            Ok(())
        };
        check_axis("kappa_tilde", &raw.kappa_tilde)?;
        check_axis("mu_abs", &raw.mu_abs)?;
        if !raw.mu_phase.is_finite() {
            return fail(format!(
                "field `mu_phase`: must be finite, got {}",
                raw.mu_phase
            ));
        }
        if !(raw.g_ratio > 0.0) || !raw.g_ratio.is_finite() {
            return fail(format!(
                "field `g_ratio`: must be finite and > 0, got {}",
                raw.g_ratio
            ));
        }
        if !(raw.tau_max > 0.0) || !raw.tau_max.is_finite() {
            return fail(format!(
                "field `tau_max`: must be finite and > 0, got {}",
                raw.tau_max
            ));
        }
        if raw.tau_points < 2 || raw.tau_points > MAX_TAU_POINTS {
            return fail(format!(
                "field `tau_points`: must be in 2..={MAX_TAU_POINTS}, got {}",
                raw.tau_points
            ));
        }
        let convention = match raw.convention.as_deref() {
            None => CoefficientConvention::default(),
            Some(s) => s
                .parse::<CoefficientConvention>()
                .map_err(|e| CliError::Validation(format!("field `convention`: {e}")))?,
        };
        if raw.observables.is_empty() {
            return fail("field `observables`: must list at least one observable".into());
        }
        let observables = raw
            .observables
            .iter()
            .map(|s| {
                s.parse::<Observable>()
                    .map_err(|e| CliError::Validation(format!("field `observables`: {e}")))
            })
            .collect::<CliResult<Vec<_>>>()?;

        Ok(Scenario {
            name: raw.name,
            total_photons: raw.n,
            mu_abs: raw.mu_abs,
            mu_phase: raw.mu_phase,
            kappa_tilde: raw.kappa_tilde,
            g_ratio: raw.g_ratio,
            tau_max: raw.tau_max,
            tau_points: raw.tau_points,
            convention,
            observables,
        })
    }

    /// Apply a command-line convention override.
    pub fn with_convention(mut self, convention: Option<CoefficientConvention>) -> Self {
        if let Some(c) = convention {
            self.convention = c;
        }
        self
    }

    pub fn wants(&self, observable: Observable) -> bool {
        self.observables.contains(&observable)
    }

    /// The single sweep axis; an error unless exactly one of the
    /// scalar-or-list fields is a list.
    pub fn sweep_axis(&self) -> CliResult<SweepAxis> {
        match (self.kappa_tilde.is_list(), self.mu_abs.is_list()) {
            (true, false) => Ok(SweepAxis::KappaTilde),
            (false, true) => Ok(SweepAxis::MuAbs),
            (false, false) => Err(CliError::Validation(
                "sweep needs exactly one list-valued axis (`kappa_tilde` or `mu_abs`); none given"
                    .into(),
            )),
            (true, true) => Err(CliError::Validation(
                "sweep needs exactly one list-valued axis, but both `kappa_tilde` and `mu_abs` \
                 are lists"
                    .into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    KappaTilde,
    MuAbs,
}

impl SweepAxis {
    pub fn field_name(self) -> &'static str {
        match self {
            SweepAxis::KappaTilde => "kappa_tilde",
            SweepAxis::MuAbs => "mu_abs",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"
name = "demo"
N = 10
mu_abs = 1.0
kappa_tilde = [0.0, 0.1]
g_ratio = 1.0
observables = ["g2", "occupations"]
"#;

    #[test]
    fn parses_minimal_config() {
        let s = Scenario::from_toml_str(GOOD).unwrap();
        assert_eq!(s.name, "demo");
        assert_eq!(s.total_photons, 10);
        assert_eq!(s.tau_max, 50.0);
        assert_eq!(s.tau_points, 5000);
        assert_eq!(s.kappa_tilde.values(), vec![0.0, 0.1]);
        assert!(s.wants(Observable::G2));
        assert!(!s.wants(Observable::Entropy));
    }

    #[test]
    fn missing_total_photon_number_names_the_field() {
        let bad = GOOD.replace("N = 10\n", "");
        let err = Scenario::from_toml_str(&bad).unwrap_err();
        assert!(err.to_string().contains('N'), "diagnostic was: {err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn rejects_out_of_range_values() {
        for (needle, replacement) in [
            ("N = 10", "N = 500"),
            ("g_ratio = 1.0", "g_ratio = 0.0"),
            ("kappa_tilde = [0.0, 0.1]", "kappa_tilde = [-0.5]"),
            ("kappa_tilde = [0.0, 0.1]", "kappa_tilde = []"),
            (
                "observables = [\"g2\", \"occupations\"]",
                "observables = []",
            ),
            (
                "observables = [\"g2\", \"occupations\"]",
                "observables = [\"volume\"]",
            ),
        ] {
            let bad = GOOD.replace(needle, replacement);
            assert!(
                Scenario::from_toml_str(&bad).is_err(),
                "accepted: {replacement}"
            );
        }
    }

    #[test]
    fn sweep_axis_rules() {
        let s = Scenario::from_toml_str(GOOD).unwrap();
        assert_eq!(s.sweep_axis().unwrap(), SweepAxis::KappaTilde);

        let both = GOOD.replace("mu_abs = 1.0", "mu_abs = [0.2, 0.5]");
        assert!(Scenario::from_toml_str(&both)
            .unwrap()
            .sweep_axis()
            .is_err());

        let neither = GOOD.replace("kappa_tilde = [0.0, 0.1]", "kappa_tilde = 0.1");
        assert!(Scenario::from_toml_str(&neither)
            .unwrap()
            .sweep_axis()
            .is_err());
    }

    #[test]
    fn convention_parsing_and_override() {
        let with = format!("{GOOD}convention = \"literal\"\n");
        let s = Scenario::from_toml_str(&with).unwrap();
        assert_eq!(s.convention, CoefficientConvention::LiteralFactorial);
        let s = s.with_convention(Some(CoefficientConvention::OperatorExpansion));
        assert_eq!(s.convention, CoefficientConvention::OperatorExpansion);
    }
}
