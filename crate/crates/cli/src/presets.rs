//! Built-in experiment presets. Names are a stable CLI contract.

use aqc_core::*;
use num_complex::Complex64;
use std::result::Result;
use rayon::prelude::*;
use serde_json::json;

use crate::output::{columns, Cell, Table};
use crate::CliError;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

const PI: f64 = std::f64::consts::PI;

pub const PRESET_NAMES: &[(&str, &str)] = &[
    (
        "fig1_thermal_split",
        "average thermal oscillator energy vs chi, split into thermal and vacuum parts",
    ),
    (
        "fig2_squeezed_q",
        "q(chi) for squeezed pairs, position- and momentum-displaced, r in {-1, 0, 1}",
    ),
    (
        "fig4_coherent",
        "error measures D, epsilon, 1-R vs alpha for coherent pairs",
    ),
    (
        "fig4_squeezed",
        "error measures vs alpha for squeezed pairs at r = -1 and r = +1",
    ),
    (
        "fig4_cat",
        "error measures for symmetric and one-sided cat pairs",
    ),
    (
        "fig5_potentials",
        "inferred q vs chi for flat-ends, sinusoidal and linear level splittings",
    ),
    (
        "fig8_wigner",
        "Wigner function of the excited branch evolved through a steep level splitting",
    ),
    (
        "identities",
        "residuals of the six ladder-operator disentangling identities",
    ),
    (
        "etilde_suite",
        "effective-potential property residuals (shift, scale, eigenstate, high-T, bound, phase)",
    ),
];

pub fn run_preset(name: &str, dim_override: Option<usize>) -> Result<Table, CliError> {
    match name {
        "fig1_thermal_split" => fig1_thermal_split(),
        "fig2_squeezed_q" => fig2_squeezed_q(),
        "fig4_coherent" => fig4_coherent(dim_override.unwrap_or(DEFAULT_DIM)),
        "fig4_squeezed" => fig4_squeezed(dim_override.unwrap_or(DEFAULT_DIM)),
        "fig4_cat" => fig4_cat(dim_override.unwrap_or(DEFAULT_DIM)),
        "fig5_potentials" => fig5_potentials(dim_override.unwrap_or(DEFAULT_DIM)),
        "fig8_wigner" => fig8_wigner(dim_override.unwrap_or(DEFAULT_DIM)),
        "identities" => identities_table(dim_override.unwrap_or(64)),
        "etilde_suite" => etilde_suite(),
        other => {
            let known: Vec<&str> = PRESET_NAMES.iter().map(|(n, _)| *n).collect();
            Err(CliError::config(format!(
                "unknown preset '{other}'; available presets: {}",
                known.join(", ")
            )))
        }
    }
}

/// The headline interaction window: hbar omega = 1, E_i = 1, E_f = 2,
/// kT = 1, ramp between x = -2 and 2, half-period evolution.
fn error_magnitude_experiment(dim: usize, pair: StatePairSpec) -> AqcExperiment {
    AqcExperiment {
        space: FockSpace::new(dim, 1.0, 1.0).expect("valid space"),
        profile: SplittingProfile::flat_ends(1.0, 2.0, -2.0, 2.0).expect("valid profile"),
        tau: PI,
        pair,
    }
}

fn fig1_thermal_split() -> Result<Table, CliError> {
    let chis: Vec<f64> = (1..=300).map(|k| 0.01 * k as f64).collect();
    let rows = chis
        .iter()
        .map(|&chi| {
            let space = FockSpace::new(2, 2.0 * chi, 1.0).expect("valid space");
            let split = thermal_frequency_split(&space);
            vec![
                Cell::Number(chi),
                Cell::Number(split.hbar_omega_t),
                Cell::Number(split.thermal_part),
                Cell::Number(split.vacuum_part),
            ]
        })
        .collect();
    Ok(Table {
        columns: columns(&["chi", "hbar_omega_t", "thermal_part", "vacuum_part"]),
        rows,
        resolved_config: json!({
            "tool": "aqc", "kind": "preset", "name": "fig1_thermal_split",
            "k_t": 1.0, "chi_grid": {"start": 0.01, "step": 0.01, "count": 300},
        }),
    })
}

fn fig2_squeezed_q() -> Result<Table, CliError> {
    let q_of = |r: f64, chi: f64, momentum_displaced: bool| -> f64 {
        let (alpha_i, alpha_f) = if momentum_displaced {
            (Complex64::new(0.0, 2.0), Complex64::new(0.0, 1.0))
        } else {
            (c(2.0), c(1.0))
        };
        let k_t = 1.0 / (2.0 * chi);
        let pair = StatePairSpec::Squeezed {
            alpha_i,
            r_i: r,
            alpha_f,
            r_f: r,
        };
        let sys = TwoLevelSystem::new(1.0, 2.0, k_t).expect("valid system");
        let space = FockSpace::new(2, 1.0, k_t).expect("valid space");
        pair.prediction(&sys, &space)
            .expect("closed-form prediction")
            .q
            .expect("nonzero W_q")
    };
    let rows = (1..=200)
        .map(|k| {
            let chi = 0.01 * k as f64;
            vec![
                Cell::Number(chi),
                Cell::Number(q_of(-1.0, chi, false)),
                Cell::Number(q_of(0.0, chi, false)),
                Cell::Number(q_of(1.0, chi, false)),
                Cell::Number(q_of(-1.0, chi, true)),
                Cell::Number(q_of(0.0, chi, true)),
                Cell::Number(q_of(1.0, chi, true)),
            ]
        })
        .collect();
    Ok(Table {
        columns: columns(&[
            "chi",
            "q_position_rm1",
            "q_position_r0",
            "q_position_rp1",
            "q_momentum_rm1",
            "q_momentum_r0",
            "q_momentum_rp1",
        ]),
        rows,
        resolved_config: json!({
            "tool": "aqc", "kind": "preset", "name": "fig2_squeezed_q",
            "alpha_i": 2.0, "alpha_f": 1.0, "squeezes": [-1.0, 0.0, 1.0],
            "chi_grid": {"start": 0.01, "step": 0.01, "count": 200},
        }),
    })
}

fn fig4_alphas() -> Vec<f64> {
    (4..=32).map(|k| 0.25 * k as f64).collect()
}

fn fig4_coherent(dim: usize) -> Result<Table, CliError> {
    let alphas = fig4_alphas();
    let outcomes: Result<Vec<_>, CliError> = alphas
        .par_iter()
        .map(|&alpha| {
            let experiment = error_magnitude_experiment(
                dim,
                StatePairSpec::Coherent {
                    alpha_i: c(-alpha),
                    alpha_f: c(alpha),
                },
            );
            Ok((alpha, experiment.run()?))
        })
        .collect();
    let rows = outcomes?
        .into_iter()
        .map(|(alpha, outcome)| {
            vec![
                Cell::Number(alpha),
                Cell::Number(outcome.report.d),
                Cell::Number(outcome.report.epsilon),
                Cell::Number(outcome.report.one_minus_r),
            ]
        })
        .collect();
    Ok(Table {
        columns: columns(&["alpha", "d", "epsilon", "one_minus_r"]),
        rows,
        resolved_config: json!({
            "tool": "aqc", "kind": "preset", "name": "fig4_coherent",
            "dim": dim, "hbar_omega": 1.0, "k_t": 1.0,
            "profile": {"kind": "flat_ends", "e_i": 1.0, "e_f": 2.0, "x_i": -2.0, "x_f": 2.0},
            "tau": PI, "alpha_grid": fig4_alphas(),
        }),
    })
}

fn fig4_squeezed(dim: usize) -> Result<Table, CliError> {
    let mut jobs = Vec::new();
    for &r in &[-1.0f64, 1.0] {
        for &alpha in &fig4_alphas() {
            jobs.push((alpha, r));
        }
    }
    let outcomes: Result<Vec<_>, CliError> = jobs
        .par_iter()
        .map(|&(alpha, r)| {
            let experiment = error_magnitude_experiment(
                dim,
                StatePairSpec::Squeezed {
                    alpha_i: c(-alpha),
                    r_i: r,
                    alpha_f: c(alpha),
                    r_f: r,
                },
            );
            Ok((alpha, r, experiment.run()?))
        })
        .collect();
    let rows = outcomes?
        .into_iter()
        .map(|(alpha, r, outcome)| {
            vec![
                Cell::Number(alpha),
                Cell::Number(r),
                Cell::Number(outcome.report.d),
                Cell::Number(outcome.report.epsilon),
                Cell::Number(outcome.report.one_minus_r),
            ]
        })
        .collect();
    Ok(Table {
        columns: columns(&["alpha", "r", "d", "epsilon", "one_minus_r"]),
        rows,
        resolved_config: json!({
            "tool": "aqc", "kind": "preset", "name": "fig4_squeezed",
            "dim": dim, "hbar_omega": 1.0, "k_t": 1.0,
            "profile": {"kind": "flat_ends", "e_i": 1.0, "e_f": 2.0, "x_i": -2.0, "x_f": 2.0},
            "tau": PI, "alpha_grid": fig4_alphas(), "squeezes": [-1.0, 1.0],
        }),
    })
}

fn fig4_cat(dim: usize) -> Result<Table, CliError> {
    let mut jobs: Vec<(&str, f64)> = Vec::new();
    for k in 2..=10 {
        jobs.push(("symmetric", 0.5 * k as f64));
    }
    for k in 2..=14 {
        jobs.push(("one_sided", 0.5 * k as f64));
    }
    let outcomes: Result<Vec<_>, CliError> = jobs
        .par_iter()
        .map(|&(family, alpha)| {
            let pair = match family {
                "symmetric" => {
                    let terms = vec![
                        CatTerm { weight: c(1.0), alpha: c(alpha) },
                        CatTerm { weight: c(1.0), alpha: c(-alpha) },
                    ];
                    StatePairSpec::Cat {
                        terms_i: terms.clone(),
                        terms_f: terms,
                    }
                }
                _ => StatePairSpec::Cat {
                    terms_i: vec![
                        CatTerm { weight: c(1.0), alpha: c(-alpha) },
                        CatTerm { weight: c(1.0), alpha: c(-(alpha + 1.0)) },
                    ],
                    terms_f: vec![
                        CatTerm { weight: c(1.0), alpha: c(alpha) },
                        CatTerm { weight: c(1.0), alpha: c(alpha + 1.0) },
                    ],
                },
            };
            let outcome = error_magnitude_experiment(dim, pair).run()?;
            Ok((family, alpha, outcome))
        })
        .collect();
    let rows = outcomes?
        .into_iter()
        .map(|(family, alpha, outcome)| {
            vec![
                Cell::Text(family.to_string()),
                Cell::Number(alpha),
                Cell::Number(outcome.report.d),
                Cell::Number(outcome.report.epsilon),
                Cell::Number(outcome.report.one_minus_r),
            ]
        })
        .collect();
    Ok(Table {
        columns: columns(&["family", "alpha", "d", "epsilon", "one_minus_r"]),
        rows,
        resolved_config: json!({
            "tool": "aqc", "kind": "preset", "name": "fig4_cat",
            "dim": dim, "hbar_omega": 1.0, "k_t": 1.0,
            "profile": {"kind": "flat_ends", "e_i": 1.0, "e_f": 2.0, "x_i": -2.0, "x_f": 2.0},
            "tau": PI,
        }),
    })
}

fn fig5_potentials(dim: usize) -> Result<Table, CliError> {
    // flat ends and linear ramp across the window; the sinusoidal splitting
    // places its trough and crest at the coherent-state centres
    let profiles = [
        SplittingProfile::flat_ends(1.0, 2.0, -1.0, 1.0).expect("valid"),
        SplittingProfile::sinusoidal(1.0, 2.0, -5.0, 4.0).expect("valid"),
        SplittingProfile::linear(1.0, 2.0, -1.0, 1.0).expect("valid"),
    ];
    let chis: Vec<f64> = (2..=20).map(|k| 0.05 * k as f64).collect();
    let rows: Result<Vec<_>, CliError> = chis
        .par_iter()
        .map(|&chi| {
            let k_t = 1.0 / (2.0 * chi);
            let mut qs = Vec::with_capacity(3);
            for profile in &profiles {
                let experiment = AqcExperiment {
                    space: FockSpace::new(dim, 1.0, k_t).expect("valid space"),
                    profile: profile.clone(),
                    tau: PI,
                    pair: StatePairSpec::Coherent {
                        alpha_i: c(-5.0),
                        alpha_f: c(4.0),
                    },
                };
                let outcome = experiment.run()?;
                qs.push(outcome.q_inferred.expect("nonzero W_q"));
            }
            Ok(vec![
                Cell::Number(chi),
                Cell::Number(qs[0]),
                Cell::Number(qs[1]),
                Cell::Number(qs[2]),
                Cell::Number(q_factor(chi)),
            ])
        })
        .collect();
    Ok(Table {
        columns: columns(&["chi", "q_flat", "q_sin", "q_linear", "q_analytic"]),
        rows: rows?,
        resolved_config: json!({
            "tool": "aqc", "kind": "preset", "name": "fig5_potentials",
            "dim": dim, "hbar_omega": 1.0, "alpha_i": -5.0, "alpha_f": 4.0,
            "e_i": 1.0, "e_f": 2.0, "tau": PI,
            "flat_linear_window": [-1.0, 1.0], "sin_trough_crest": [-5.0, 4.0],
            "chi_grid": chis,
        }),
    })
}

fn fig8_wigner(dim: usize) -> Result<Table, CliError> {
    let space = FockSpace::new(dim, 1.0, 1.0).map_err(CliError::from)?;
    let config = ProtocolConfig {
        space,
        profile: SplittingProfile::flat_ends(1.0, 21.0, -1.0, 1.0).map_err(CliError::from)?,
        tau: 0.75 * PI,
        direction: Direction::Forward,
        prepared: StateSpec::coherent(c(-4.5)),
        measured: StateSpec::coherent(c(4.5)),
    };
    let (branch_e, _, _) = joint_final_state(&config)?;
    let spec = WignerGridSpec {
        x_points: 257,
        p_points: 257,
        half_span: None,
    };
    let grid = wigner_of_state(&space, &branch_e, &spec)?;

    // mean-matched coherent comparison from the evolved first moments
    let approx_alpha = Complex64::new(
        branch_e.position_expectation(),
        branch_e.momentum_expectation(),
    );
    let approx = prepare_state(&space, &StateSpec::Coherent { alpha: approx_alpha })?;
    let approx_grid = wigner_of_state(&space, &approx, &spec)?;

    let mut rows = Vec::with_capacity(grid.x_axis.len() * grid.p_axis.len());
    for (i, &x) in grid.x_axis.iter().enumerate() {
        for (j, &p) in grid.p_axis.iter().enumerate() {
            rows.push(vec![
                Cell::Number(x),
                Cell::Number(p),
                Cell::Number(grid.values[(j, i)]),
            ]);
        }
    }
    Ok(Table {
        columns: columns(&["x", "p", "w"]),
        rows,
        resolved_config: json!({
            "tool": "aqc", "kind": "preset", "name": "fig8_wigner",
            "dim": dim, "hbar_omega": 1.0, "k_t": 1.0,
            "profile": {"kind": "flat_ends", "e_i": 1.0, "e_f": 21.0, "x_i": -1.0, "x_f": 1.0},
            "prepared_alpha": -4.5, "branch": "excited", "tau": 0.75 * PI,
            "grid_points": [257, 257],
            "axis_units": "quadrature x = sqrt(2) X",
            "min_w": grid.min_value,
            "negativity_volume": negativity_volume(&grid),
            "mean_matched_alpha": {"re": approx_alpha.re, "im": approx_alpha.im},
            "mean_matched_negativity_volume": negativity_volume(&approx_grid),
        }),
    })
}

pub fn identities_table(dim: usize) -> Result<Table, CliError> {
    // braiding identities across the admissible square; quadratic
    // disentangling identities where dim-64 truncation stays below 1e-8
    let braiding = [(0.3, 0.3), (0.2, -0.25), (-0.3, 0.1)];
    let quadratic = [(0.1, 0.1), (-0.1, -0.1), (0.15, 0.05)];
    let mut rows = Vec::new();
    for &(m, n) in &braiding {
        let report = identity_residuals(dim, m, n)?;
        for id in 0..3 {
            rows.push(vec![
                Cell::Integer(id as i64 + 1),
                Cell::Number(m),
                Cell::Number(n),
                Cell::Number(report.residuals[id]),
            ]);
        }
    }
    for &(m, n) in &quadratic {
        let report = identity_residuals(dim, m, n)?;
        for id in 3..6 {
            rows.push(vec![
                Cell::Integer(id as i64 + 1),
                Cell::Number(m),
                Cell::Number(n),
                Cell::Number(report.residuals[id]),
            ]);
        }
    }
    Ok(Table {
        columns: columns(&["identity", "m", "n", "residual"]),
        rows,
        resolved_config: json!({
            "tool": "aqc", "kind": "preset", "name": "identities",
            "dim": dim,
            "braiding_points": braiding,
            "quadratic_points": quadratic,
            "residual": "max |lhs - rhs| over the lower dim/2 block, relative to max(1, max |lhs|)",
        }),
    })
}

fn etilde_suite() -> Result<Table, CliError> {
    let space = FockSpace::new(96, 1.0, 0.8).map_err(CliError::from)?;
    let levels = nalgebra_levels(&space);
    let states = [
        StateSpec::coherent(Complex64::new(1.3, 0.4)),
        StateSpec::squeezed(Complex64::new(-0.8, 0.6), 0.7),
        StateSpec::cat([(c(1.0), c(1.5)), (c(0.8), c(-1.5))]),
    ];
    let mut shift_residual = 0.0f64;
    let mut scale_residual = 0.0f64;
    let mut bound_slack = f64::NEG_INFINITY;
    let mut phase_residual = 0.0f64;
    for spec in &states {
        let state = prepare_state(&space, spec)?;
        let base = effective_potential_general(&levels, state.amplitudes(), space.k_t())?;

        let delta = 0.83;
        let shifted =
            effective_potential_general(&levels.map(|e| e + delta), state.amplitudes(), space.k_t())?;
        shift_residual = shift_residual.max((shifted - base - delta).abs() / (base.abs() + delta));

        let lambda = 1.7;
        let scaled = effective_potential_general(
            &levels.map(|e| lambda * e),
            state.amplitudes(),
            lambda * space.k_t(),
        )?;
        scale_residual = scale_residual.max((scaled - lambda * base).abs() / (lambda * base.abs()));

        let mean = state.energy_expectation(&space);
        bound_slack = bound_slack.max(base - mean);

        let rotated = state.amplitudes() * Complex64::from_polar(1.0, 0.777);
        let e_rot = effective_potential_general(&levels, &rotated, space.k_t())?;
        phase_residual = phase_residual.max((e_rot - base).abs() / base.abs().max(1.0));
    }

    let eigen_state = prepare_state(&space, &StateSpec::FockLevel { n: 7 })?;
    let eigen_residual = (effective_potential(&space, &eigen_state)?
        - space.level_energy(7))
    .abs()
        / space.level_energy(7);

    let hot = FockSpace::new(96, 1.0, 5.0e3).map_err(CliError::from)?;
    let hot_state = prepare_state(&hot, &StateSpec::coherent(c(1.0)))?;
    let e_hot = effective_potential(&hot, &hot_state)?;
    let mean = hot_state.energy_expectation(&hot);
    let second: f64 = hot_state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(n, a)| hot.level_energy(n).powi(2) * a.norm_sqr())
        .sum();
    let high_t_residual = (e_hot - (mean - (second - mean * mean) / (2.0 * hot.k_t()))).abs() / mean;

    let rows = vec![
        vec![
            Cell::Text("shift".into()),
            Cell::Text("E-tilde(H + delta) - E-tilde(H) - delta, relative".into()),
            Cell::Number(shift_residual),
        ],
        vec![
            Cell::Text("scale".into()),
            Cell::Text("E-tilde(lambda H, lambda T) - lambda E-tilde(H, T), relative".into()),
            Cell::Number(scale_residual),
        ],
        vec![
            Cell::Text("eigenstate".into()),
            Cell::Text("E-tilde(|n>) - hbar omega (n + 1/2), relative".into()),
            Cell::Number(eigen_residual),
        ],
        vec![
            Cell::Text("high_t".into()),
            Cell::Text("E-tilde - (<H> - Var H / 2kT) at chi = 1e-4, relative".into()),
            Cell::Number(high_t_residual),
        ],
        vec![
            Cell::Text("bound".into()),
            Cell::Text("max(E-tilde - <H>) over test states; nonpositive".into()),
            Cell::Number(bound_slack),
        ],
        vec![
            Cell::Text("phase".into()),
            Cell::Text("E-tilde under a global phase, relative".into()),
            Cell::Number(phase_residual),
        ],
    ];
    Ok(Table {
        columns: columns(&["property", "description", "residual"]),
        rows,
        resolved_config: json!({
            "tool": "aqc", "kind": "preset", "name": "etilde_suite",
            "space": {"dim": 96, "hbar_omega": 1.0, "k_t": 0.8},
        }),
    })
}

fn nalgebra_levels(space: &FockSpace) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_fn(space.dim(), |n, _| space.level_energy(n))
}
