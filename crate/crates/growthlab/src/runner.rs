//! Batch front door: run configs, growth profiles and Lie-algebra checks
//! with CSV/JSON reports and CI-friendly exit codes.
//!
//! Exit codes: 0 success (including honest "not certified" / "infeasible"
//! verdicts), 2 invariant violation or bad input, 3 quadrature
//! non-convergence.

use std::fs;
use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::form::Scalar;
use crate::gallery::{gallery, GalleryError};
use crate::growth::report::{build_report, profile_csv, GridEcho, ProfileReport};
use crate::growth::{
    check_condition_i, classify_condition_ii, finite_order_fit, geometric_grid, uniform_grid,
    GrowthError, GrowthProfile, QuadratureSpec,
};
use crate::lie::{
    build_complex, certificate_to_json, degenerate_balanced_witness, dk_membership_search,
    nullspace, p_map, parse_structure_json, sl2c_algebra, structure_equation_strings,
    CertifyOutcome, GaussianRational, InvariantForm, LieError, WitnessOutcome,
};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("quadrature non-convergence: {0}")]
    NonConvergence(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl RunError {
    /// Process exit code for CI: 2 for invariant/config trouble, 3 for
    /// quadrature non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::NonConvergence(_) => 3,
            _ => 2,
        }
    }
}

impl From<GrowthError> for RunError {
    fn from(e: GrowthError) -> Self {
        RunError::Invariant(e.to_string())
    }
}
impl From<GalleryError> for RunError {
    fn from(e: GalleryError) -> Self {
        RunError::Config(e.to_string())
    }
}
impl From<LieError> for RunError {
    fn from(e: LieError) -> Self {
        RunError::Invariant(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Geometric,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Full profile: CSV series plus JSON report.
    Profile,
    /// Classification only: JSON report, no CSV.
    Classify,
    /// Lie-algebra checks on a structure-constant file.
    Lie,
}

/// A batch run configuration (one CLI invocation).
pub struct RunConfig {
    pub command: Command,
    /// Gallery model name for growth commands.
    pub model: String,
    pub n: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub grid: GridKind,
    pub quad: QuadratureSpec,
    pub r0: f64,
    pub seed: u64,
    pub with_direct: bool,
    /// Path of a structure-constant JSON file (lie command).
    pub structure: Option<PathBuf>,
    /// Checks to run for the lie command.
    pub checks: Vec<String>,
    pub out_csv: Option<PathBuf>,
    pub out_json: Option<PathBuf>,
    /// Half-resolution convergence control (exit 3 when it trips).
    pub verify_convergence: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Profile,
            model: "torus".into(),
            n: 3,
            t_min: 0.25,
            t_max: 8.0,
            t_steps: 24,
            grid: GridKind::Uniform,
            quad: QuadratureSpec::GaussLegendreProduct {
                radial_order: 12,
                angular_order: 16,
            },
            r0: 1.0,
            seed: 0,
            with_direct: false,
            structure: None,
            checks: vec![],
            out_csv: None,
            out_json: None,
            verify_convergence: true,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<(), RunError> {
        if self.t_min <= 0.0 {
            return Err(RunError::Config("t_min must be positive".into()));
        }
        if self.t_steps < 8 {
            return Err(RunError::Config("need at least 8 grid steps".into()));
        }
        self.quad
            .validate()
            .map_err(|e| RunError::Config(e.to_string()))?;
        Ok(())
    }

    fn radii(&self) -> Result<Vec<f64>, RunError> {
        let g = match self.grid {
            GridKind::Geometric => geometric_grid(self.t_min, self.t_max, self.t_steps),
            GridKind::Uniform => uniform_grid(self.t_min, self.t_max, self.t_steps),
        };
        g.map_err(|e| RunError::Config(e.to_string()))
    }
}

/// Outcome of a profile/classify run.
pub struct ProfileRun {
    pub profile: GrowthProfile,
    pub report: ProfileReport,
    pub csv: Option<String>,
}

/// Execute a profile or classify run: quadrature sweep, invariant checks, a
/// half-resolution convergence control, classification and report files.
pub fn run_profile(config: &RunConfig) -> Result<ProfileRun, RunError> {
    config.validate()?;
    let model = gallery(&config.model, config.n)?;
    let radii = config.radii()?;
    let profile = GrowthProfile::compute(&model, &radii, &config.quad, config.with_direct)?;
    profile
        .validate()
        .map_err(|e| RunError::Invariant(e.to_string()))?;

    if config.verify_convergence {
        verify_convergence(&model, &radii, &config.quad, &profile)?;
    }

    // Thin tails degrade to an inconclusive report instead of failing: the
    // raw series are still worth emitting.
    let cond_i = check_condition_i(&profile, config.r0).ok();
    let cond_ii = classify_condition_ii(&profile).ok();
    let fit = finite_order_fit(&profile).ok();
    let grid_echo = GridEcho {
        t_min: config.t_min,
        t_max: config.t_max,
        t_steps: config.t_steps,
        spacing: match config.grid {
            GridKind::Geometric => "geometric".into(),
            GridKind::Uniform => "uniform".into(),
        },
    };
    let report = build_report(
        &profile,
        grid_echo,
        config.r0,
        cond_i.as_ref(),
        cond_ii.as_ref(),
        fit.as_ref(),
        &config.quad,
    );

    let csv = match config.command {
        Command::Profile => Some(profile_csv(&profile)),
        _ => None,
    };
    if let (Some(path), Some(body)) = (&config.out_csv, &csv) {
        write_file(path, body)?;
    }
    if let Some(path) = &config.out_json {
        let body = serde_json::to_string_pretty(&report).expect("report serializes");
        write_file(path, &(body + "\n"))?;
    }
    Ok(ProfileRun {
        profile,
        report,
        csv,
    })
}

/// Rerun the volume series at half the quadrature resolution; a relative
/// drift beyond the tolerance is reported as non-convergence (exit 3).
fn verify_convergence(
    model: &crate::gallery::PullbackModel,
    radii: &[f64],
    quad: &QuadratureSpec,
    profile: &GrowthProfile,
) -> Result<(), RunError> {
    let (coarse, tol) = match quad {
        QuadratureSpec::GaussLegendreProduct {
            radial_order,
            angular_order,
        } => (
            QuadratureSpec::GaussLegendreProduct {
                radial_order: (radial_order / 2).max(4),
                angular_order: (angular_order / 2).max(4),
            },
            0.02,
        ),
        QuadratureSpec::MonteCarlo { sample_count, seed } => (
            QuadratureSpec::MonteCarlo {
                sample_count: (sample_count / 2).max(10_000),
                seed: seed.wrapping_add(1),
            },
            0.20,
        ),
    };
    let check = GrowthProfile::compute(model, radii, &coarse, false)?;
    let k = radii.len() - 1;
    let (a, b) = (profile.vol[k], check.vol[k]);
    let drift = (a - b).abs() / a.abs().max(1e-300);
    if drift > tol {
        return Err(RunError::NonConvergence(format!(
            "volume at t={} drifts {:.2}% between resolutions (tolerance {:.0}%)",
            radii[k],
            100.0 * drift,
            100.0 * tol
        )));
    }
    Ok(())
}

fn write_file(path: &PathBuf, body: &str) -> Result<(), RunError> {
    fs::write(path, body).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })
}

// --- lie command ---------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct LieReport {
    pub dim: usize,
    pub labels: Vec<String>,
    pub checks: Vec<serde_json::Value>,
}

/// Execute the requested Lie-algebra checks and write the certificate JSON.
pub fn run_lie(config: &RunConfig) -> Result<LieReport, RunError> {
    let algebra = match &config.structure {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| RunError::Io {
                path: path.display().to_string(),
                source,
            })?;
            parse_structure_json(&text).map_err(|e| RunError::Config(e.to_string()))?
        }
        None if config.model == "sl2c" => sl2c_algebra(),
        None => {
            return Err(RunError::Config(
                "lie command needs --structure FILE (or --model sl2c)".into(),
            ))
        }
    };
    let n = algebra.dim();
    let labels = algebra.labels().to_vec();
    // Jacobi is a precondition of every other check: exit 2 when it fails,
    // naming the offending triple.
    if let Err(e) = algebra.check_jacobi() {
        return Err(RunError::Invariant(e.to_string()));
    }
    let complex = build_complex(algebra).map_err(|e| RunError::Invariant(e.to_string()))?;

    let checks = if config.checks.is_empty() {
        vec![
            "jacobi".to_string(),
            "structure-eqs".to_string(),
            "witness".to_string(),
        ]
    } else {
        config.checks.clone()
    };
    let mut results: Vec<serde_json::Value> = Vec::new();
    for check in &checks {
        match check.as_str() {
            "jacobi" => {
                results.push(serde_json::json!({
                    "check": "jacobi",
                    "ok": true,
                }));
            }
            "structure-eqs" => {
                results.push(serde_json::json!({
                    "check": "structure-eqs",
                    "equations": structure_equation_strings(complex.algebra()),
                }));
            }
            "witness" => {
                let omega = complex.algebra().standard_metric();
                let value = match degenerate_balanced_witness(&complex, &omega)
                    .map_err(|e| RunError::Invariant(e.to_string()))?
                {
                    WitnessOutcome::Certificate(cert) => serde_json::json!({
                        "check": "witness",
                        "verdict": "degenerate balanced",
                        "certificate": certificate_to_json(&cert, n),
                    }),
                    WitnessOutcome::Infeasible {
                        rank,
                        rank_augmented,
                    } => serde_json::json!({
                        "check": "witness",
                        "verdict": "not degenerate balanced",
                        "rank": rank,
                        "rank_augmented": rank_augmented,
                    }),
                };
                results.push(value);
            }
            "pmap" => {
                let basis = closed_real_two_form_basis(&complex);
                let classes: Vec<serde_json::Value> = basis
                    .iter()
                    .map(|alpha| {
                        let class = p_map(&complex, alpha).expect("closed by construction");
                        serde_json::json!({
                            "class_coordinates": class
                                .coords
                                .iter()
                                .map(|c| c.to_fraction_string())
                                .collect::<Vec<_>>(),
                            "zero": class.is_zero(),
                        })
                    })
                    .collect();
                results.push(serde_json::json!({
                    "check": "pmap",
                    "closed_basis_size": basis.len(),
                    "classes": classes,
                }));
            }
            "dk-search" => {
                let basis = closed_real_two_form_basis(&complex);
                let outcomes: Vec<serde_json::Value> = basis
                    .iter()
                    .map(|alpha| {
                        match dk_membership_search(&complex, alpha)
                            .expect("closed by construction")
                            .outcome
                        {
                            CertifyOutcome::Certified(cert) => serde_json::json!({
                                "verdict": "certified",
                                "certificate": certificate_to_json(&cert, n),
                            }),
                            CertifyOutcome::NotCertified { reason } => serde_json::json!({
                                "verdict": "not certified",
                                "reason": reason,
                            }),
                        }
                    })
                    .collect();
                results.push(serde_json::json!({
                    "check": "dk-search",
                    "outcomes": outcomes,
                }));
            }
            other => {
                return Err(RunError::Config(format!(
                    "unknown check `{other}` (expected jacobi|structure-eqs|witness|pmap|dk-search)"
                )))
            }
        }
    }
    let report = LieReport {
        dim: n,
        labels,
        checks: results,
    };
    if let Some(path) = &config.out_json {
        let body = serde_json::to_string_pretty(&report).expect("report serializes");
        write_file(path, &(body + "\n"))?;
    }
    Ok(report)
}

/// A basis of closed real invariant 2-forms: realified kernel vectors of the
/// total-degree differential.
fn closed_real_two_form_basis(complex: &crate::lie::InvariantComplex) -> Vec<InvariantForm> {
    let n = complex.dim();
    let d2 = complex.d_matrix_total(2);
    let basis = complex.total_degree_basis(2);
    let mut out = Vec::new();
    for vec in nullspace(&d2) {
        let mut w = InvariantForm::zero(n);
        for (&(i, j), c) in basis.iter().zip(&vec) {
            if !c.is_zero() {
                w.push_term(i, j, c.clone());
            }
        }
        let real = w.add(&w.conj());
        if !real.is_zero() && !out.contains(&real) {
            out.push(real);
        }
        let imag = w.scale(&GaussianRational::from_ints(0, 1));
        let imag_real = imag.add(&imag.conj());
        if !imag_real.is_zero() && !out.contains(&imag_real) {
            out.push(imag_real);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_run_on_torus() {
        let config = RunConfig {
            t_min: 0.5,
            t_max: 4.0,
            t_steps: 24,
            quad: QuadratureSpec::GaussLegendreProduct {
                radial_order: 8,
                angular_order: 8,
            },
            ..RunConfig::default()
        };
        let run = run_profile(&config).unwrap();
        assert_eq!(run.profile.radii.len(), 24);
        let csv = run.csv.unwrap();
        assert_eq!(csv.lines().count(), 25);
        assert!(csv.starts_with("t,vol,sphere_ball,sphere_direct,ratio_i,F\n"));
        assert_eq!(run.report.model, "torus");
    }

    #[test]
    fn classify_produces_no_csv() {
        let config = RunConfig {
            command: Command::Classify,
            t_min: 0.5,
            t_max: 4.0,
            t_steps: 24,
            quad: QuadratureSpec::GaussLegendreProduct {
                radial_order: 8,
                angular_order: 8,
            },
            ..RunConfig::default()
        };
        let run = run_profile(&config).unwrap();
        assert!(run.csv.is_none());
    }

    #[test]
    fn config_validation_errors() {
        let bad = RunConfig {
            t_min: -1.0,
            ..RunConfig::default()
        };
        assert!(matches!(run_profile(&bad), Err(RunError::Config(_))));
        let bad = RunConfig {
            t_steps: 4,
            ..RunConfig::default()
        };
        assert!(matches!(run_profile(&bad), Err(RunError::Config(_))));
    }

    #[test]
    fn exit_codes_distinguish_failure_modes() {
        assert_eq!(RunError::Config("x".into()).exit_code(), 2);
        assert_eq!(RunError::Invariant("x".into()).exit_code(), 2);
        assert_eq!(RunError::NonConvergence("x".into()).exit_code(), 3);
    }

    #[test]
    fn lie_run_without_input_fails() {
        let config = RunConfig {
            command: Command::Lie,
            ..RunConfig::default()
        };
        assert!(matches!(run_lie(&config), Err(RunError::Config(_))));
    }

    #[test]
    fn lie_run_on_builtin_sl2c() {
        let config = RunConfig {
            command: Command::Lie,
            model: "sl2c".into(),
            checks: vec!["structure-eqs".into(), "witness".into()],
            ..RunConfig::default()
        };
        let report = run_lie(&config).unwrap();
        assert_eq!(report.dim, 3);
        assert_eq!(report.checks.len(), 2);
        let witness = &report.checks[1];
        assert_eq!(witness["verdict"], "degenerate balanced");
    }
}
