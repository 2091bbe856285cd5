//! Position-dependent level splitting E(x) of the two-level system and its
//! promotion to an operator on the battery.
//!
//! Positions are dimensionless, X = sqrt(m omega / 2 hbar) x, matching the
//! battery position operator (a + a^dagger)/2.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{FockSpace, OperatorMatrix};
use crate::linalg::{c, CMat, HermitianEigen};

/// The level-shift function E(x).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplittingProfile {
    /// Constant E_i below x_i, linear ramp, constant E_f above x_f.
    FlatEnds { e_i: f64, e_f: f64, x_i: f64, x_f: f64 },
    /// E_i + (E_f - E_i) sin^2(pi (x - x_i) / (2 (x_f - x_i))), so E(x_i) =
    /// E_i at a trough and E(x_f) = E_f at a crest.
    Sinusoidal { e_i: f64, e_f: f64, x_i: f64, x_f: f64 },
    /// The ramp slope extended over the whole axis.
    Linear { e_i: f64, e_f: f64, x_i: f64, x_f: f64 },
    /// Piecewise-linear interpolation of samples; queries outside the hull
    /// are an error, never clamped.
    Tabulated { samples: Vec<(f64, f64)> },
}

impl SplittingProfile {
    pub fn flat_ends(e_i: f64, e_f: f64, x_i: f64, x_f: f64) -> Result<Self> {
        Self::check_window(x_i, x_f)?;
        Ok(SplittingProfile::FlatEnds { e_i, e_f, x_i, x_f })
    }

    pub fn sinusoidal(e_i: f64, e_f: f64, x_i: f64, x_f: f64) -> Result<Self> {
        Self::check_window(x_i, x_f)?;
        Ok(SplittingProfile::Sinusoidal { e_i, e_f, x_i, x_f })
    }

    pub fn linear(e_i: f64, e_f: f64, x_i: f64, x_f: f64) -> Result<Self> {
        Self::check_window(x_i, x_f)?;
        Ok(SplittingProfile::Linear { e_i, e_f, x_i, x_f })
    }

    pub fn tabulated(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid("tabulated profile needs at least 2 samples"));
        }
        if !samples.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::invalid(
                "tabulated profile samples must be strictly increasing in x",
            ));
        }
        Ok(SplittingProfile::Tabulated { samples })
    }

    fn check_window(x_i: f64, x_f: f64) -> Result<()> {
        if !(x_i < x_f) {
            return Err(Error::invalid(format!(
                "profile window requires x_i < x_f, got [{x_i}, {x_f}]"
            )));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SplittingProfile::FlatEnds { x_i, x_f, .. }
            | SplittingProfile::Sinusoidal { x_i, x_f, .. }
            | SplittingProfile::Linear { x_i, x_f, .. } => Self::check_window(*x_i, *x_f),
            SplittingProfile::Tabulated { samples } => {
                Self::tabulated(samples.clone()).map(|_| ())
            }
        }
    }

    /// E(x).
    pub fn value(&self, x: f64) -> Result<f64> {
        match self {
            SplittingProfile::FlatEnds { e_i, e_f, x_i, x_f } => Ok(if x <= *x_i {
                *e_i
            } else if x >= *x_f {
                *e_f
            } else {
                e_i + (e_f - e_i) * (x - x_i) / (x_f - x_i)
            }),
            SplittingProfile::Sinusoidal { e_i, e_f, x_i, x_f } => {
                let phase = std::f64::consts::PI * (x - x_i) / (2.0 * (x_f - x_i));
                Ok(e_i + (e_f - e_i) * phase.sin().powi(2))
            }
            SplittingProfile::Linear { e_i, e_f, x_i, x_f } => {
                Ok(e_i + (e_f - e_i) * (x - x_i) / (x_f - x_i))
            }
            SplittingProfile::Tabulated { samples } => {
                let lo = samples.first().unwrap().0;
                let hi = samples.last().unwrap().0;
                if x < lo || x > hi {
                    return Err(Error::TabulatedOutOfRange { x, lo, hi });
                }
                let idx = samples.partition_point(|(sx, _)| *sx <= x);
                if idx == 0 {
                    return Ok(samples[0].1);
                }
                if idx == samples.len() {
                    return Ok(samples[samples.len() - 1].1);
                }
                let (x0, y0) = samples[idx - 1];
                let (x1, y1) = samples[idx];
                Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
            }
        }
    }

    /// Asymptotic level shifts (E_i, E_f) defining the nominal system
    /// Hamiltonians. For tabulated profiles these are the endpoint samples.
    pub fn nominal_levels(&self) -> (f64, f64) {
        match self {
            SplittingProfile::FlatEnds { e_i, e_f, .. }
            | SplittingProfile::Sinusoidal { e_i, e_f, .. }
            | SplittingProfile::Linear { e_i, e_f, .. } => (*e_i, *e_f),
            SplittingProfile::Tabulated { samples } => {
                (samples.first().unwrap().1, samples.last().unwrap().1)
            }
        }
    }

    /// Left edge of the interaction window, used for localisation warnings.
    pub fn window_start(&self) -> f64 {
        match self {
            SplittingProfile::FlatEnds { x_i, .. }
            | SplittingProfile::Sinusoidal { x_i, .. }
            | SplittingProfile::Linear { x_i, .. } => *x_i,
            SplittingProfile::Tabulated { samples } => samples.first().unwrap().0,
        }
    }

    /// E(x_B) by spectral calculus on the truncated position operator:
    /// diagonalise x_B = V diag(xi) V^dagger and return V diag(E(xi))
    /// V^dagger.
    pub fn operator(&self, space: &FockSpace) -> Result<OperatorMatrix> {
        self.validate()?;
        let position = space.position();
        let eig = HermitianEigen::new(position.entries())?;
        let values: Result<Vec<f64>> = eig.eigenvalues.iter().map(|&xi| self.value(xi)).collect();
        let values = values?;
        let raw = eig.apply_indexed(|k, _| c(values[k]));
        // re-symmetrise away the roundoff of V f V^dagger
        let sym = (&raw + raw.adjoint()) * c(0.5);
        Ok(OperatorMatrix::hermitian(sym))
    }
}

/// Battery blocks of the joint Hamiltonian: H_e = H_B + E(x_B) for the
/// excited system state and H_g = H_B - E(x_B) for the ground state. The
/// full 2 dim operator is block diagonal and never materialised outside
/// diagnostics.
#[derive(Debug)]
pub struct JointHamiltonian {
    h_e: OperatorMatrix,
    h_g: OperatorMatrix,
    profile: SplittingProfile,
    space: FockSpace,
    eigensystems: OnceLock<BranchEigen>,
}

/// Cached eigendecompositions of the two battery blocks; propagators and
/// Gibbs weightings for any t and kT reuse them.
#[derive(Debug, Clone)]
pub struct BranchEigen {
    pub excited: HermitianEigen,
    pub ground: HermitianEigen,
}

pub fn joint_hamiltonian(space: &FockSpace, profile: &SplittingProfile) -> Result<JointHamiltonian> {
    let shift = profile.operator(space)?.into_entries();
    let h_b = space.hamiltonian().into_entries();
    let h_e = OperatorMatrix::hermitian(&h_b + &shift);
    let h_g = OperatorMatrix::hermitian(&h_b - &shift);
    Ok(JointHamiltonian {
        h_e,
        h_g,
        profile: profile.clone(),
        space: *space,
        eigensystems: OnceLock::new(),
    })
}

impl JointHamiltonian {
    pub fn excited_block(&self) -> &OperatorMatrix {
        &self.h_e
    }

    pub fn ground_block(&self) -> &OperatorMatrix {
        &self.h_g
    }

    pub fn profile(&self) -> &SplittingProfile {
        &self.profile
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Eigendecompose both blocks, once; later calls return the cache.
    pub fn eigensystems(&self) -> Result<&BranchEigen> {
        if let Some(cached) = self.eigensystems.get() {
            return Ok(cached);
        }
        let excited = HermitianEigen::new(self.h_e.entries())?;
        let ground = HermitianEigen::new(self.h_g.entries())?;
        let _ = self.eigensystems.set(BranchEigen { excited, ground });
        Ok(self.eigensystems.get().expect("just set"))
    }

    /// The full 2 dim x 2 dim joint matrix in the basis |s> (x) |n> with the
    /// excited block first. Diagnostics only.
    pub fn full_matrix(&self) -> CMat {
        let dim = self.dim();
        let mut full = CMat::zeros(2 * dim, 2 * dim);
        full.view_mut((0, 0), (dim, dim)).copy_from(self.h_e.entries());
        full.view_mut((dim, dim), (dim, dim))
            .copy_from(self.h_g.entries());
        full
    }
}
