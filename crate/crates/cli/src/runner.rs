//! Scenario execution: computes every requested observable, validates it
//! against the producing module's invariants, and emits CSV + SVG + manifest
//! files. All computation finishes before any file is written.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use ckncs::coherent_states::{
    build_ckncs, identity_resolution_check, joint_distribution, state_csv, CKNCSParams,
    QuadratureSpec, TwoModeAmplitudes,
};
use ckncs::deformed_algebra::SectorDimension;
use ckncs::dynamics::{evolve, tau_grid, CouplingConfig, OccupationTraces};
use ckncs::entropy::{atomic_density_matrix, cubic_eigenvalues, von_neumann_entropy, EntropyTrace};
use ckncs::quadratures::{quadrature_report, QuadratureTrace};
use ckncs::statistics::{self, statistics_csv_row, JointPhotonDistribution, STATISTICS_CSV_HEADER};
use ckncs::CoefficientConvention;

use crate::config::{Observable, Scenario, SweepAxis};
use crate::svg::{line_plot, Series};
use crate::{CliError, CliResult};

/// A file to be written once computation is complete.
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

const UNCERTAINTY_FLOOR: f64 = 1.0 / 16.0 - 1e-10;

fn scalar_mu(scenario: &Scenario, verb: &str) -> CliResult<f64> {
    match scenario.mu_abs.values().as_slice() {
        [single] => Ok(*single),
        _ => Err(CliError::Validation(format!(
            "field `mu_abs`: the {verb} verb needs a scalar value (use `sweep` for lists)"
        ))),
    }
}

fn build_initial(
    total_photons: u64,
    mu_abs: f64,
    mu_phase: f64,
    kappa: f64,
    convention: CoefficientConvention,
) -> CliResult<TwoModeAmplitudes> {
    let params = CKNCSParams::new(
        SectorDimension::new(total_photons as usize),
        Complex64::from_polar(mu_abs, mu_phase),
        kappa,
        convention,
    )?;
    let state = build_ckncs(&params)?;
    if state.norm_defect() > 1e-12 {
        return Err(CliError::Integrity(format!(
            "state norm defect {}",
            state.norm_defect()
        )));
    }
    Ok(state)
}

#[derive(Serialize)]
struct Manifest {
    name: String,
    version: String,
    #[serde(rename = "N")]
    total_photons: u64,
    mu_abs: Vec<f64>,
    mu_phase: f64,
    kappa_tilde: Vec<f64>,
    g_ratio: f64,
    tau_max: f64,
    tau_points: usize,
    convention: String,
    observables: Vec<String>,
    outputs: Vec<String>,
}

fn manifest_file(scenario: &Scenario, outputs: &[OutputFile]) -> OutputFile {
    let manifest = Manifest {
        name: scenario.name.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        total_photons: scenario.total_photons,
        mu_abs: scenario.mu_abs.values(),
        mu_phase: scenario.mu_phase,
        kappa_tilde: scenario.kappa_tilde.values(),
        g_ratio: scenario.g_ratio,
        tau_max: scenario.tau_max,
        tau_points: scenario.tau_points,
        convention: scenario.convention.to_string(),
        observables: scenario.observables.iter().map(|o| o.to_string()).collect(),
        outputs: outputs.iter().map(|f| f.name.clone()).collect(),
    };
    OutputFile {
        name: format!("{}__manifest.toml", scenario.name),
        contents: toml::to_string(&manifest).expect("manifest serializes"),
    }
}

fn write_all(out_dir: &Path, files: &[OutputFile]) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::with_capacity(files.len());
    for file in files {
        let path = out_dir.join(&file.name);
        std::fs::write(&path, &file.contents)?;
        written.push(path);
    }
    Ok(written)
}

/// `state` verb: per deformation value, the amplitude table plus one summary
/// row of static statistics.
pub fn run_state(scenario: &Scenario, out_dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mu = scalar_mu(scenario, "state")?;
    let kappas = scenario.kappa_tilde.values();

    let per_kappa: Vec<(OutputFile, String)> = kappas
        .par_iter()
        .map(|&kappa| -> CliResult<(OutputFile, String)> {
            let params = CKNCSParams::new(
                SectorDimension::new(scenario.total_photons as usize),
                Complex64::from_polar(mu, scenario.mu_phase),
                kappa,
                scenario.convention,
            )?;
            let state = build_ckncs(&params)?;
            if state.norm_defect() > 1e-12 {
                return Err(CliError::Integrity(format!(
                    "state norm defect {}",
                    state.norm_defect()
                )));
            }
            let joint = joint_distribution(&state);
            joint.validate()?;
            let file = OutputFile {
                name: format!("{}__state__kt{}.csv", scenario.name, kappa),
                contents: state_csv(&params, &state),
            };
            Ok((file, statistics_csv_row(kappa, &joint)))
        })
        .collect::<CliResult<_>>()?;

    let mut files = Vec::new();
    let mut stats = format!("{STATISTICS_CSV_HEADER}\n");
    for (file, row) in per_kappa {
        files.push(file);
        stats.push_str(&row);
        stats.push('\n');
    }
    files.push(OutputFile {
        name: format!("{}__stats.csv", scenario.name),
        contents: stats,
    });
    files.push(manifest_file(scenario, &files));
    write_all(out_dir, &files)
}

/// Everything a dynamics run may need at one deformation value.
struct TraceBundle {
    kappa: f64,
    taus: Vec<f64>,
    occupations: Option<OccupationTraces>,
    means: Option<Vec<(f64, f64)>>,
    g2: Option<Vec<Option<f64>>>,
    mandel: Option<(Vec<Option<f64>>, Vec<Option<f64>>)>,
    squeezing: Option<QuadratureTrace>,
    entropy: Option<EntropyTrace>,
}

fn compute_traces(scenario: &Scenario, mu: f64, kappa: f64) -> CliResult<TraceBundle> {
    let initial = build_initial(
        scenario.total_photons,
        mu,
        scenario.mu_phase,
        kappa,
        scenario.convention,
    )?;
    let coupling = CouplingConfig::from_ratio(scenario.g_ratio)?;
    let taus = tau_grid(scenario.tau_max, scenario.tau_points);

    let wants_occ = scenario.wants(Observable::Occupations);
    let wants_means = scenario.wants(Observable::Means);
    let wants_g2 = scenario.wants(Observable::G2);
    let wants_mandel = scenario.wants(Observable::Mandel);
    let wants_squeezing = scenario.wants(Observable::Squeezing);
    let wants_entropy = scenario.wants(Observable::Entropy);
    let needs_joint = wants_means || wants_g2 || wants_mandel;

    let mut occupations = wants_occ.then(|| [vec![], vec![], vec![]]);
    let mut means = wants_means.then(Vec::new);
    let mut g2 = wants_g2.then(Vec::new);
    let mut mandel = wants_mandel.then(|| (Vec::new(), Vec::new()));
    let mut squeezing = wants_squeezing.then(Vec::new);
    let mut entropy = wants_entropy.then(|| (Vec::new(), Vec::new(), Vec::new()));

    let ln3 = 3.0f64.ln();
    for &tau in &taus {
        let state = evolve(&initial, &coupling, tau);
        if let Some(occ) = occupations.as_mut() {
            let pops = [
                state.level_population(0),
                state.level_population(1),
                state.level_population(2),
            ];
            let total: f64 = pops.iter().sum();
            if (total - 1.0).abs() > 1e-10 {
                return Err(CliError::Integrity(format!(
                    "occupations sum to {total} at tau = {tau}"
                )));
            }
            for (trace, p) in occ.iter_mut().zip(pops) {
                trace.push(p);
            }
        }
        if needs_joint {
            let joint = ckncs::dynamics::joint_distribution_at(&state);
            joint.validate()?;
            if let Some(m) = means.as_mut() {
                m.push(statistics::mean_occupations(&joint));
            }
            if let Some(g) = g2.as_mut() {
                g.push(statistics::cross_correlation(&joint));
            }
            if let Some((qa, qb)) = mandel.as_mut() {
                use ckncs::coherent_states::FieldMode;
                qa.push(statistics::mandel_parameter(&joint, FieldMode::A));
                qb.push(statistics::mandel_parameter(&joint, FieldMode::B));
            }
        }
        if let Some(sq) = squeezing.as_mut() {
            let report = quadrature_report(&state);
            if report.uncertainty_product < UNCERTAINTY_FLOOR {
                return Err(CliError::Integrity(format!(
                    "uncertainty product {} below bound at tau = {tau}",
                    report.uncertainty_product
                )));
            }
            sq.push(report);
        }
        if let Some((s, lambdas, fallback)) = entropy.as_mut() {
            let rho = atomic_density_matrix(&state);
            let spectrum = cubic_eigenvalues(&rho);
            let value = von_neumann_entropy(&rho)?;
            if !(0.0..=ln3 + 1e-12).contains(&value) {
                return Err(CliError::Integrity(format!("entropy {value} out of range")));
            }
            s.push(value);
            lambdas.push(spectrum.lambdas);
            fallback.push(spectrum.fallback);
        }
    }

    Ok(TraceBundle {
        kappa,
        occupations: occupations.map(|levels| OccupationTraces {
            tau: taus.clone(),
            levels,
        }),
        squeezing: squeezing.map(|reports| QuadratureTrace {
            tau: taus.clone(),
            reports,
        }),
        entropy: entropy.map(|(entropy, lambdas, fallback)| EntropyTrace {
            tau: taus.clone(),
            entropy,
            lambdas,
            fallback,
        }),
        taus,
        means,
        g2,
        mandel,
    })
}

fn render_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn defined_points(taus: &[f64], values: &[Option<f64>]) -> Vec<(f64, f64)> {
    taus.iter()
        .zip(values)
        .filter_map(|(&t, v)| v.map(|v| (t, v)))
        .collect()
}

/// `dynamics` verb: one CSV per observable per deformation value, one SVG per
/// observable overlaying the deformation values.
pub fn run_dynamics(scenario: &Scenario, out_dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mu = scalar_mu(scenario, "dynamics")?;
    let kappas = scenario.kappa_tilde.values();
    let bundles: Vec<TraceBundle> = kappas
        .par_iter()
        .map(|&kappa| compute_traces(scenario, mu, kappa))
        .collect::<CliResult<_>>()?;

    let mut files = Vec::new();
    let name = &scenario.name;

    for bundle in &bundles {
        let kt = bundle.kappa;
        if let Some(occ) = &bundle.occupations {
            files.push(OutputFile {
                name: format!("{name}__occupations__kt{kt}.csv"),
                contents: occ.to_csv(),
            });
        }
        if let Some(means) = &bundle.means {
            let mut csv = String::from("tau,mean_a,mean_b\n");
            for (k, t) in bundle.taus.iter().enumerate() {
                csv.push_str(&format!("{},{},{}\n", t, means[k].0, means[k].1));
            }
            files.push(OutputFile {
                name: format!("{name}__means__kt{kt}.csv"),
                contents: csv,
            });
        }
        if let Some(g2) = &bundle.g2 {
            let mut csv = String::from("tau,g2\n");
            for (k, t) in bundle.taus.iter().enumerate() {
                csv.push_str(&format!("{},{}\n", t, render_opt(g2[k])));
            }
            files.push(OutputFile {
                name: format!("{name}__g2__kt{kt}.csv"),
                contents: csv,
            });
        }
        if let Some((qa, qb)) = &bundle.mandel {
            let mut csv = String::from("tau,q_a,q_b\n");
            for (k, t) in bundle.taus.iter().enumerate() {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    t,
                    render_opt(qa[k]),
                    render_opt(qb[k])
                ));
            }
            files.push(OutputFile {
                name: format!("{name}__mandel__kt{kt}.csv"),
                contents: csv,
            });
        }
        if let Some(trace) = &bundle.squeezing {
            files.push(OutputFile {
                name: format!("{name}__squeezing__kt{kt}.csv"),
                contents: trace.to_csv(),
            });
        }
        if let Some(trace) = &bundle.entropy {
            files.push(OutputFile {
                name: format!("{name}__entropy__kt{kt}.csv"),
                contents: trace.to_csv(),
            });
        }
    }

    // overlay SVGs across deformation values
    let overlay =
        |extract: &dyn Fn(&TraceBundle) -> Vec<(String, Vec<(f64, f64)>)>| -> Vec<Series> {
            let mut series = Vec::new();
            for bundle in &bundles {
                for (label, points) in extract(bundle) {
                    series.push(Series { label, points });
                }
            }
            series
        };

    if scenario.wants(Observable::Occupations) {
        let series = overlay(&|b: &TraceBundle| {
            let occ = b.occupations.as_ref().unwrap();
            vec![(
                format!("p0, kt={}", b.kappa),
                b.taus
                    .iter()
                    .copied()
                    .zip(occ.levels[0].iter().copied())
                    .collect(),
            )]
        });
        files.push(OutputFile {
            name: format!("{name}__occupations.svg"),
            contents: line_plot(name, "tau", "ground-level occupation", &series),
        });
    }
    if scenario.wants(Observable::Means) {
        let series = overlay(&|b: &TraceBundle| {
            let m = b.means.as_ref().unwrap();
            vec![(
                format!("mean_a, kt={}", b.kappa),
                b.taus.iter().copied().zip(m.iter().map(|p| p.0)).collect(),
            )]
        });
        files.push(OutputFile {
            name: format!("{name}__means.svg"),
            contents: line_plot(name, "tau", "mean photon number (mode a)", &series),
        });
    }
    if scenario.wants(Observable::G2) {
        let series = overlay(&|b: &TraceBundle| {
            vec![(
                format!("kt={}", b.kappa),
                defined_points(&b.taus, b.g2.as_ref().unwrap()),
            )]
        });
        files.push(OutputFile {
            name: format!("{name}__g2.svg"),
            contents: line_plot(name, "tau", "cross-correlation", &series),
        });
    }
    if scenario.wants(Observable::Mandel) {
        let series = overlay(&|b: &TraceBundle| {
            let (qa, qb) = b.mandel.as_ref().unwrap();
            vec![
                (format!("q_a, kt={}", b.kappa), defined_points(&b.taus, qa)),
                (format!("q_b, kt={}", b.kappa), defined_points(&b.taus, qb)),
            ]
        });
        files.push(OutputFile {
            name: format!("{name}__mandel.svg"),
            contents: line_plot(name, "tau", "Mandel parameter", &series),
        });
    }
    if scenario.wants(Observable::Squeezing) {
        let series = overlay(&|b: &TraceBundle| {
            let trace = b.squeezing.as_ref().unwrap();
            vec![
                (
                    format!("s_x1, kt={}", b.kappa),
                    b.taus
                        .iter()
                        .copied()
                        .zip(trace.reports.iter().map(|r| r.s_x1))
                        .collect(),
                ),
                (
                    format!("s_x2, kt={}", b.kappa),
                    b.taus
                        .iter()
                        .copied()
                        .zip(trace.reports.iter().map(|r| r.s_x2))
                        .collect(),
                ),
            ]
        });
        files.push(OutputFile {
            name: format!("{name}__squeezing.svg"),
            contents: line_plot(name, "tau", "squeezing indicator", &series),
        });
    }
    if scenario.wants(Observable::Entropy) {
        let series = overlay(&|b: &TraceBundle| {
            let trace = b.entropy.as_ref().unwrap();
            vec![(
                format!("kt={}", b.kappa),
                b.taus
                    .iter()
                    .copied()
                    .zip(trace.entropy.iter().copied())
                    .collect(),
            )]
        });
        files.push(OutputFile {
            name: format!("{name}__entropy.svg"),
            contents: line_plot(name, "tau", "entanglement entropy", &series),
        });
    }

    files.push(manifest_file(scenario, &files));
    write_all(out_dir, &files)
}

/// `identity-check` verb: resolution-of-identity residual per deformation
/// value (a diagnostic for nonzero deformation).
pub fn run_identity(scenario: &Scenario, out_dir: &Path) -> CliResult<Vec<PathBuf>> {
    let spec = QuadratureSpec::default();
    let sector = SectorDimension::new(scenario.total_photons as usize);
    let rows: Vec<String> = scenario
        .kappa_tilde
        .values()
        .par_iter()
        .map(|&kappa| -> CliResult<String> {
            let residual = identity_resolution_check(sector, kappa, scenario.convention, &spec)?;
            Ok(format!("{kappa},{residual}"))
        })
        .collect::<CliResult<_>>()?;

    let mut csv = String::from("kappa_tilde,residual\n");
    for row in &rows {
        csv.push_str(row);
        csv.push('\n');
    }
    let mut files = vec![OutputFile {
        name: format!("{}__identity_check.csv", scenario.name),
        contents: csv,
    }];
    files.push(manifest_file(scenario, &files));
    write_all(out_dir, &files)
}

/// `sweep` verb: long-format rows keyed by (axis value, tau, observable).
/// Static observables leave the tau column empty.
pub fn run_sweep(scenario: &Scenario, out_dir: &Path) -> CliResult<Vec<PathBuf>> {
    let axis = scenario.sweep_axis()?;
    let axis_values = match axis {
        SweepAxis::KappaTilde => scenario.kappa_tilde.values(),
        SweepAxis::MuAbs => scenario.mu_abs.values(),
    };

    let static_requested = [Observable::Means, Observable::G2, Observable::Mandel]
        .iter()
        .any(|o| scenario.wants(*o));
    let trace_requested = [
        Observable::Occupations,
        Observable::Squeezing,
        Observable::Entropy,
    ]
    .iter()
    .any(|o| scenario.wants(*o));

    let blocks: Vec<String> = axis_values
        .par_iter()
        .map(|&value| -> CliResult<String> {
            let (mu, kappa) = match axis {
                SweepAxis::KappaTilde => (scalar_mu(scenario, "sweep")?, value),
                SweepAxis::MuAbs => (value, scenario.kappa_tilde.values()[0]),
            };
            let mut rows = String::new();
            let mut push = |tau: &str, observable: &str, v: Option<f64>| {
                rows.push_str(&format!(
                    "{},{},{},{}\n",
                    value,
                    tau,
                    observable,
                    render_opt(v)
                ));
            };

            if static_requested {
                let initial = build_initial(
                    scenario.total_photons,
                    mu,
                    scenario.mu_phase,
                    kappa,
                    scenario.convention,
                )?;
                let joint = joint_distribution(&initial);
                joint.validate()?;
                if scenario.wants(Observable::Means) {
                    let (ma, mb) = statistics::mean_occupations(&joint);
                    push("", "mean_a", Some(ma));
                    push("", "mean_b", Some(mb));
                }
                if scenario.wants(Observable::G2) {
                    push("", "g2", statistics::cross_correlation(&joint));
                }
                if scenario.wants(Observable::Mandel) {
                    use ckncs::coherent_states::FieldMode;
                    push(
                        "",
                        "q_a",
                        statistics::mandel_parameter(&joint, FieldMode::A),
                    );
                    push(
                        "",
                        "q_b",
                        statistics::mandel_parameter(&joint, FieldMode::B),
                    );
                }
            }
            if trace_requested {
                let bundle = compute_traces(scenario, mu, kappa)?;
                for (k, tau) in bundle.taus.iter().enumerate() {
                    let tau_str = tau.to_string();
                    if let Some(occ) = &bundle.occupations {
                        push(&tau_str, "p0", Some(occ.levels[0][k]));
                        push(&tau_str, "p1", Some(occ.levels[1][k]));
                        push(&tau_str, "p2", Some(occ.levels[2][k]));
                    }
                    if let Some(trace) = &bundle.squeezing {
                        push(&tau_str, "s_x1", Some(trace.reports[k].s_x1));
                        push(&tau_str, "s_x2", Some(trace.reports[k].s_x2));
                    }
                    if let Some(trace) = &bundle.entropy {
                        push(&tau_str, "entropy", Some(trace.entropy[k]));
                    }
                }
            }
            Ok(rows)
        })
        .collect::<CliResult<_>>()?;

    let mut csv = format!("{},tau,observable,value\n", axis.field_name());
    for block in &blocks {
        csv.push_str(block);
    }
    let mut files = vec![OutputFile {
        name: format!("{}__sweep.csv", scenario.name),
        contents: csv,
    }];
    files.push(manifest_file(scenario, &files));
    write_all(out_dir, &files)
}

const BUNDLED_DYNAMICS: &[&str] = &[
    include_str!("../configs/fig05_occupations_r1.toml"),
    include_str!("../configs/fig06_occupations_r2.toml"),
    include_str!("../configs/fig07_cross_correlation_r1.toml"),
    include_str!("../configs/fig08_cross_correlation_r2.toml"),
    include_str!("../configs/fig09_mandel_r1.toml"),
    include_str!("../configs/fig11_mandel_r2.toml"),
    include_str!("../configs/fig13_squeezing.toml"),
    include_str!("../configs/fig14_entropy_r1.toml"),
    include_str!("../configs/fig14_entropy_r2.toml"),
];

fn static_scan_csv(
    total_photons: u64,
    mu: f64,
    kappas: &[f64],
    convention: CoefficientConvention,
) -> CliResult<String> {
    let mut csv = format!("{STATISTICS_CSV_HEADER}\n");
    for &kappa in kappas {
        let initial = build_initial(total_photons, mu, 0.0, kappa, convention)?;
        let joint = joint_distribution(&initial);
        joint.validate()?;
        csv.push_str(&statistics_csv_row(kappa, &joint));
        csv.push('\n');
    }
    Ok(csv)
}

fn joint_of(
    total_photons: u64,
    mu: f64,
    kappa: f64,
    convention: CoefficientConvention,
) -> CliResult<JointPhotonDistribution> {
    let initial = build_initial(total_photons, mu, 0.0, kappa, convention)?;
    let joint = joint_distribution(&initial);
    joint.validate()?;
    Ok(joint)
}

/// `figures` verb: run every bundled scenario. The static scans (mode means,
/// correlation vs sector size, Mandel vs deformation) are assembled here; the
/// time-trace figures come from the bundled dynamics configs.
pub fn run_figures(out_dir: &Path) -> CliResult<Vec<PathBuf>> {
    let convention = CoefficientConvention::default();
    let mut files = Vec::new();

    // mode means against deformation, one curve per label amplitude
    {
        let kappas: Vec<f64> = (0..=20).map(|k| k as f64 * 0.05).collect();
        let mus = [0.2, 0.5, 1.0];
        let mut mean_series = (Vec::new(), Vec::new());
        for &mu in &mus {
            files.push(OutputFile {
                name: format!("fig01_means__mu{mu}.csv"),
                contents: static_scan_csv(10, mu, &kappas, convention)?,
            });
            let mut pts_a = Vec::new();
            let mut pts_b = Vec::new();
            for &kappa in &kappas {
                let joint = joint_of(10, mu, kappa, convention)?;
                let (ma, mb) = statistics::mean_occupations(&joint);
                pts_a.push((kappa, ma));
                pts_b.push((kappa, mb));
            }
            mean_series.0.push(Series {
                label: format!("mu={mu}"),
                points: pts_a,
            });
            mean_series.1.push(Series {
                label: format!("mu={mu}"),
                points: pts_b,
            });
        }
        files.push(OutputFile {
            name: "fig01_means_a.svg".into(),
            contents: line_plot(
                "mode-a mean vs deformation",
                "kappa_tilde",
                "mean_a",
                &mean_series.0,
            ),
        });
        files.push(OutputFile {
            name: "fig01_means_b.svg".into(),
            contents: line_plot(
                "mode-b mean vs deformation",
                "kappa_tilde",
                "mean_b",
                &mean_series.1,
            ),
        });
    }

    // cross-correlation against sector size
    {
        let mut csv = String::from("N,g2\n");
        let mut pts = Vec::new();
        for n in 1..=60u64 {
            let joint = joint_of(n, 0.1, 0.1, convention)?;
            let g2 = statistics::cross_correlation(&joint)
                .ok_or_else(|| CliError::Integrity("g2 undefined on the scan".into()))?;
            csv.push_str(&format!("{n},{g2}\n"));
            pts.push((n as f64, g2));
        }
        files.push(OutputFile {
            name: "fig02_g2_vs_N.csv".into(),
            contents: csv,
        });
        files.push(OutputFile {
            name: "fig02_g2_vs_N.svg".into(),
            contents: line_plot(
                "cross-correlation vs sector size",
                "N",
                "g2",
                &[Series {
                    label: "kt=0.1, mu=0.1".into(),
                    points: pts,
                }],
            ),
        });
    }

    // Mandel parameters against deformation
    {
        let kappas: Vec<f64> = (0..=25).map(|k| k as f64 * 0.2).collect();
        let mus = [0.2, 0.3, 0.4];
        let mut series_a = Vec::new();
        let mut series_b = Vec::new();
        for &mu in &mus {
            files.push(OutputFile {
                name: format!("fig03_mandel__mu{mu}.csv"),
                contents: static_scan_csv(10, mu, &kappas, convention)?,
            });
            let mut pts_a = Vec::new();
            let mut pts_b = Vec::new();
            for &kappa in &kappas {
                use ckncs::coherent_states::FieldMode;
                let joint = joint_of(10, mu, kappa, convention)?;
                if let Some(q) = statistics::mandel_parameter(&joint, FieldMode::A) {
                    pts_a.push((kappa, q));
                }
                if let Some(q) = statistics::mandel_parameter(&joint, FieldMode::B) {
                    pts_b.push((kappa, q));
                }
            }
            series_a.push(Series {
                label: format!("mu={mu}"),
                points: pts_a,
            });
            series_b.push(Series {
                label: format!("mu={mu}"),
                points: pts_b,
            });
        }
        files.push(OutputFile {
            name: "fig03_mandel_a.svg".into(),
            contents: line_plot(
                "mode-a Mandel vs deformation",
                "kappa_tilde",
                "q_a",
                &series_a,
            ),
        });
        files.push(OutputFile {
            name: "fig03_mandel_b.svg".into(),
            contents: line_plot(
                "mode-b Mandel vs deformation",
                "kappa_tilde",
                "q_b",
                &series_b,
            ),
        });
    }

    let mut written = write_all(out_dir, &files)?;

    // bundled time-trace scenarios
    for config in BUNDLED_DYNAMICS {
        let scenario = Scenario::from_toml_str(config)?;
        written.extend(run_dynamics(&scenario, out_dir)?);
    }
    Ok(written)
}
