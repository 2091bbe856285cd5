//! Experiment configuration: file schema, sweep axes and their resolution
//! into concrete runs.

use aqc_core::{AqcExperiment, FockSpace, SplittingProfile, StatePairSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_DIM: usize = aqc_core::DEFAULT_DIM;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceConfig {
    pub dim: usize,
    #[serde(default = "one")]
    pub hbar_omega: f64,
    #[serde(default = "one")]
    pub k_t: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for SpaceConfig {
    fn default() -> Self {
        Self {
            dim: DEFAULT_DIM,
            hbar_omega: 1.0,
            k_t: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepAxis {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputConfig {
    pub path: Option<String>,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            path: None,
            format: OutputFormat::Csv,
        }
    }
}

/// One experiment file: base configuration plus optional sweep axes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub space: SpaceConfig,
    pub profile: SplittingProfile,
    pub pair: StatePairSpec,
    /// Evolution time; None selects half a trap period.
    #[serde(default)]
    pub tau: Option<f64>,
    #[serde(default)]
    pub sweep: Vec<SweepAxis>,
    #[serde(default)]
    pub convergence_check: bool,
    #[serde(default)]
    pub output: OutputConfig,
}

pub const SWEEP_AXES: &[&str] = &[
    "dim",
    "hbar_omega",
    "k_t",
    "chi",
    "tau",
    "e_i",
    "e_f",
    "x_i",
    "x_f",
    "alpha",
    "alpha_i_re",
    "alpha_i_im",
    "alpha_f_re",
    "alpha_f_im",
    "r_i",
    "r_f",
];

/// A fully resolved sweep point.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedPoint {
    pub index: usize,
    pub axis_values: Vec<(String, f64)>,
    pub experiment: AqcExperiment,
    pub convergence_check: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.space.dim < 2 {
            return Err(CliError::config("space.dim must be >= 2"));
        }
        for axis in &self.sweep {
            if axis.values.is_empty() {
                return Err(CliError::config(format!(
                    "sweep axis '{}' has no values",
                    axis.name
                )));
            }
            if !SWEEP_AXES.contains(&axis.name.as_str()) {
                return Err(CliError::config(format!(
                    "unknown sweep axis '{}'; known axes: {}",
                    axis.name,
                    SWEEP_AXES.join(", ")
                )));
            }
        }
        self.profile
            .validate()
            .map_err(|e| CliError::config(e.to_string()))?;
        Ok(())
    }

    /// Cartesian product of the sweep axes, in file order, resolved to
    /// concrete experiments.
    pub fn resolve_points(&self) -> Result<Vec<ResolvedPoint>, CliError> {
        self.validate()?;
        let mut combos: Vec<Vec<(String, f64)>> = vec![Vec::new()];
        for axis in &self.sweep {
            let mut next = Vec::with_capacity(combos.len() * axis.values.len());
            for combo in &combos {
                for &value in &axis.values {
                    let mut extended = combo.clone();
                    extended.push((axis.name.clone(), value));
                    next.push(extended);
                }
            }
            combos = next;
        }

        combos
            .into_iter()
            .enumerate()
            .map(|(index, axis_values)| {
                let experiment = self.resolve_one(&axis_values)?;
                Ok(ResolvedPoint {
                    index,
                    axis_values,
                    experiment,
                    convergence_check: self.convergence_check,
                })
            })
            .collect()
    }

    fn resolve_one(&self, axis_values: &[(String, f64)]) -> Result<AqcExperiment, CliError> {
        let mut dim = self.space.dim;
        let mut hbar_omega = self.space.hbar_omega;
        let mut k_t = self.space.k_t;
        let mut tau = self.tau;
        let mut profile = self.profile.clone();
        let mut pair = self.pair.clone();

        for (name, value) in axis_values {
            match name.as_str() {
                "dim" => dim = *value as usize,
                "hbar_omega" => hbar_omega = *value,
                "k_t" => k_t = *value,
                "chi" => k_t = hbar_omega / (2.0 * value),
                "tau" => tau = Some(*value),
                "e_i" | "e_f" | "x_i" | "x_f" => {
                    profile = retarget_profile(&profile, name, *value)?;
                }
                "alpha" => {
                    pair = match pair {
                        StatePairSpec::Coherent { .. } => StatePairSpec::Coherent {
                            alpha_i: num_complex::Complex64::new(-value, 0.0),
                            alpha_f: num_complex::Complex64::new(*value, 0.0),
                        },
                        other => {
                            return Err(CliError::config(format!(
                                "axis 'alpha' applies to coherent pairs, not {other:?}"
                            )))
                        }
                    };
                }
                "alpha_i_re" | "alpha_i_im" | "alpha_f_re" | "alpha_f_im" | "r_i" | "r_f" => {
                    pair = retarget_pair(&pair, name, *value)?;
                }
                _ => unreachable!("validated axis"),
            }
        }

        let space = FockSpace::new(dim, hbar_omega, k_t)
            .map_err(|e| CliError::config(e.to_string()))?;
        Ok(AqcExperiment {
            space,
            profile,
            tau: tau.unwrap_or(std::f64::consts::PI / hbar_omega),
            pair,
        })
    }
}

fn retarget_profile(
    profile: &SplittingProfile,
    field: &str,
    value: f64,
) -> Result<SplittingProfile, CliError> {
    use SplittingProfile::*;
    let build = |e_i: f64, e_f: f64, x_i: f64, x_f: f64, like: &SplittingProfile| match like {
        FlatEnds { .. } => SplittingProfile::flat_ends(e_i, e_f, x_i, x_f),
        Sinusoidal { .. } => SplittingProfile::sinusoidal(e_i, e_f, x_i, x_f),
        Linear { .. } => SplittingProfile::linear(e_i, e_f, x_i, x_f),
        Tabulated { .. } => Err(aqc_core::Error::invalid(
            "tabulated profiles have no scalar level fields",
        )),
    };
    match profile {
        FlatEnds { e_i, e_f, x_i, x_f }
        | Sinusoidal { e_i, e_f, x_i, x_f }
        | Linear { e_i, e_f, x_i, x_f } => {
            let (mut e_i, mut e_f, mut x_i, mut x_f) = (*e_i, *e_f, *x_i, *x_f);
            match field {
                "e_i" => e_i = value,
                "e_f" => e_f = value,
                "x_i" => x_i = value,
                "x_f" => x_f = value,
                _ => unreachable!(),
            }
            build(e_i, e_f, x_i, x_f, profile).map_err(|e| CliError::config(e.to_string()))
        }
        Tabulated { .. } => Err(CliError::config(
            "sweep axes e_i/e_f/x_i/x_f do not apply to tabulated profiles",
        )),
    }
}

fn retarget_pair(
    pair: &StatePairSpec,
    field: &str,
    value: f64,
) -> Result<StatePairSpec, CliError> {
    use num_complex::Complex64;
    let mut pair = pair.clone();
    match &mut pair {
        StatePairSpec::Coherent { alpha_i, alpha_f } => match field {
            "alpha_i_re" => *alpha_i = Complex64::new(value, alpha_i.im),
            "alpha_i_im" => *alpha_i = Complex64::new(alpha_i.re, value),
            "alpha_f_re" => *alpha_f = Complex64::new(value, alpha_f.im),
            "alpha_f_im" => *alpha_f = Complex64::new(alpha_f.re, value),
            _ => {
                return Err(CliError::config(format!(
                    "axis '{field}' does not apply to coherent pairs"
                )))
            }
        },
        StatePairSpec::Squeezed {
            alpha_i,
            r_i,
            alpha_f,
            r_f,
        } => match field {
            "alpha_i_re" => *alpha_i = Complex64::new(value, alpha_i.im),
            "alpha_i_im" => *alpha_i = Complex64::new(alpha_i.re, value),
            "alpha_f_re" => *alpha_f = Complex64::new(value, alpha_f.im),
            "alpha_f_im" => *alpha_f = Complex64::new(alpha_f.re, value),
            "r_i" => *r_i = value,
            "r_f" => *r_f = value,
            _ => unreachable!(),
        },
        other => {
            return Err(CliError::config(format!(
                "axis '{field}' does not apply to {other:?}"
            )))
        }
    }
    Ok(pair)
}
