//! Assembly of full Crooks-equality experiments: the four-state quadruple
//! from a measured-state pair, forward and reverse runs, predictions, and
//! the error report.

use serde::{Deserialize, Serialize};

use crate::diagnostics::{discrepancy_d, factorisation_errors, infer_q, ratio_r, DirectedRun, ErrorReport};
use crate::dynamics::{run_protocol_with, Direction, ProtocolConfig, ProtocolResult};
use crate::error::{Error, Result};
use crate::fock::{gibbs_normalisation, prepare_state, CatTerm, FockSpace, StateSpec};
use crate::predictions::{
    gibbs_map_spec, spec_mean_energy, spec_z_tilde, CrooksPrediction, TwoLevelSystem,
};
use crate::splitting::{joint_hamiltonian, SplittingProfile};
use num_complex::Complex64;

/// Relative drift accepted under dimension doubling. Well-truncated runs
/// sit near 1e-8; the residual drift is the spectral-calculus sampling of
/// profile kinks, first order in 1/dim.
pub const CONVERGENCE_LIMIT: f64 = 1.0e-7;

/// The measured states of a Crooks pair: psi_i is measured in the reverse
/// process (with parameters entered unconjugated, as |alpha_i*> etc. per the
/// time-reversal convention) and phi_f in the forward process. The prepared
/// states follow from the Gibbs map and time reversal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StatePairSpec {
    Coherent {
        #[serde(deserialize_with = "crate::fock::deserialize_complex")]
        alpha_i: Complex64,
        #[serde(deserialize_with = "crate::fock::deserialize_complex")]
        alpha_f: Complex64,
    },
    Squeezed {
        #[serde(deserialize_with = "crate::fock::deserialize_complex")]
        alpha_i: Complex64,
        r_i: f64,
        #[serde(deserialize_with = "crate::fock::deserialize_complex")]
        alpha_f: Complex64,
        r_f: f64,
    },
    Cat {
        terms_i: Vec<CatTerm>,
        terms_f: Vec<CatTerm>,
    },
    Fock {
        n_i: usize,
        n_f: usize,
    },
}

/// The four battery states of one equality test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateQuadruple {
    /// Forward preparation |phi_i>.
    pub phi_i: StateSpec,
    /// Forward measurement |phi_f>.
    pub phi_f: StateSpec,
    /// Reverse measurement |psi_i>.
    pub psi_i: StateSpec,
    /// Reverse preparation |psi_f>.
    pub psi_f: StateSpec,
}

impl StatePairSpec {
    /// Reverse-process measurement |psi_i>.
    pub fn psi_i_spec(&self) -> StateSpec {
        match self {
            StatePairSpec::Coherent { alpha_i, .. } => StateSpec::Coherent {
                alpha: alpha_i.conj(),
            },
            StatePairSpec::Squeezed { alpha_i, r_i, .. } => StateSpec::SqueezedDisplaced {
                alpha: alpha_i.conj(),
                r: *r_i,
            },
            StatePairSpec::Cat { terms_i, .. } => StateSpec::Cat {
                terms: terms_i
                    .iter()
                    .map(|t| CatTerm {
                        weight: t.weight.conj(),
                        alpha: t.alpha.conj(),
                    })
                    .collect(),
            },
            StatePairSpec::Fock { n_i, .. } => StateSpec::FockLevel { n: *n_i },
        }
    }

    /// Forward-process measurement |phi_f>.
    pub fn phi_f_spec(&self) -> StateSpec {
        match self {
            StatePairSpec::Coherent { alpha_f, .. } => StateSpec::Coherent { alpha: *alpha_f },
            StatePairSpec::Squeezed { alpha_f, r_f, .. } => StateSpec::SqueezedDisplaced {
                alpha: *alpha_f,
                r: *r_f,
            },
            StatePairSpec::Cat { terms_f, .. } => StateSpec::Cat {
                terms: terms_f.clone(),
            },
            StatePairSpec::Fock { n_f, .. } => StateSpec::FockLevel { n: *n_f },
        }
    }

    /// All four states: preparations are the time-reversed Gibbs images of
    /// the opposite-direction measurements.
    pub fn quadruple(&self, chi: f64) -> Result<StateQuadruple> {
        let psi_i = self.psi_i_spec();
        let phi_f = self.phi_f_spec();
        let phi_i = gibbs_map_spec(&psi_i, chi)?.conjugated();
        let psi_f = gibbs_map_spec(&phi_f, chi)?.conjugated();
        Ok(StateQuadruple {
            phi_i,
            phi_f,
            psi_i,
            psi_f,
        })
    }

    /// Closed-form Delta E-tilde = E-tilde(psi_i) - E-tilde(phi_f)
    /// = kT ln(Z-tilde_phi_f / Z-tilde_psi_i).
    pub fn delta_e_tilde(&self, chi: f64, k_t: f64) -> Result<f64> {
        let z_i = spec_z_tilde(&self.psi_i_spec(), chi)?;
        let z_f = spec_z_tilde(&self.phi_f_spec(), chi)?;
        Ok(k_t * (z_f / z_i).ln())
    }

    /// Closed-form W_q = (Delta E_+ - Delta E_-)/2 from the mean battery
    /// energies of the quadruple.
    pub fn quantum_work(&self, chi: f64, hbar_omega: f64) -> Result<f64> {
        let quad = self.quadruple(chi)?;
        let e_phi_i = spec_mean_energy(&quad.phi_i, hbar_omega)?;
        let e_phi_f = spec_mean_energy(&quad.phi_f, hbar_omega)?;
        let e_psi_i = spec_mean_energy(&quad.psi_i, hbar_omega)?;
        let e_psi_f = spec_mean_energy(&quad.psi_f, hbar_omega)?;
        let delta_e_plus = e_phi_i - e_phi_f;
        let delta_e_minus = e_psi_f - e_psi_i;
        Ok(0.5 * (delta_e_plus - delta_e_minus))
    }

    pub fn prediction(&self, sys: &TwoLevelSystem, space: &FockSpace) -> Result<CrooksPrediction> {
        let chi = space.chi();
        let delta_e_tilde = self.delta_e_tilde(chi, sys.k_t)?;
        let w_q = self.quantum_work(chi, space.hbar_omega())?;
        Ok(CrooksPrediction::from_delta_e_tilde(sys, delta_e_tilde).with_work(w_q))
    }
}

/// One full equality test: space, splitting profile, evolution time and the
/// measured-state pair. The two-level system parameters are the profile's
/// nominal levels at the space temperature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AqcExperiment {
    pub space: FockSpace,
    pub profile: SplittingProfile,
    /// Evolution time; defaults to half a trap period.
    pub tau: f64,
    pub pair: StatePairSpec,
}

/// Everything measured and predicted for one configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AqcOutcome {
    pub quadruple: StateQuadruple,
    pub forward: ProtocolResult,
    pub reverse: ProtocolResult,
    pub z_tilde_psi_i: f64,
    pub z_tilde_phi_f: f64,
    pub prediction: CrooksPrediction,
    pub report: ErrorReport,
    /// Inferred q; None when W_q vanishes or a probability underflows.
    pub q_inferred: Option<f64>,
}

impl AqcExperiment {
    pub fn system(&self) -> Result<TwoLevelSystem> {
        let (e_i, e_f) = self.profile.nominal_levels();
        TwoLevelSystem::new(e_i, e_f, self.space.k_t())
    }

    pub fn forward_config(&self) -> Result<ProtocolConfig> {
        let quad = self.pair.quadruple(self.space.chi())?;
        Ok(ProtocolConfig {
            space: self.space,
            profile: self.profile.clone(),
            tau: self.tau,
            direction: Direction::Forward,
            prepared: quad.phi_i,
            measured: quad.phi_f,
        })
    }

    pub fn reverse_config(&self) -> Result<ProtocolConfig> {
        let quad = self.pair.quadruple(self.space.chi())?;
        Ok(ProtocolConfig {
            space: self.space,
            profile: self.profile.clone(),
            tau: self.tau,
            direction: Direction::Reverse,
            prepared: quad.psi_f,
            measured: quad.psi_i,
        })
    }

    pub fn run(&self) -> Result<AqcOutcome> {
        let sys = self.system()?;
        let chi = self.space.chi();
        let quadruple = self.pair.quadruple(chi)?;
        let joint = joint_hamiltonian(&self.space, &self.profile)?;

        let forward_config = ProtocolConfig {
            space: self.space,
            profile: self.profile.clone(),
            tau: self.tau,
            direction: Direction::Forward,
            prepared: quadruple.phi_i.clone(),
            measured: quadruple.phi_f.clone(),
        };
        let reverse_config = ProtocolConfig {
            space: self.space,
            profile: self.profile.clone(),
            tau: self.tau,
            direction: Direction::Reverse,
            prepared: quadruple.psi_f.clone(),
            measured: quadruple.psi_i.clone(),
        };
        let forward = run_protocol_with(&joint, &forward_config)?;
        let reverse = run_protocol_with(&joint, &reverse_config)?;

        // numeric Gibbs normalisations of the measured states
        let psi_i_state = prepare_state(&self.space, &quadruple.psi_i)?;
        let phi_f_state = prepare_state(&self.space, &quadruple.phi_f)?;
        let z_tilde_psi_i = gibbs_normalisation(&self.space, &psi_i_state)?;
        let z_tilde_phi_f = gibbs_normalisation(&self.space, &phi_f_state)?;

        let delta_e_tilde = sys.k_t * (z_tilde_phi_f / z_tilde_psi_i).ln();
        let w_q = self.pair.quantum_work(chi, self.space.hbar_omega())?;
        let prediction = CrooksPrediction::from_delta_e_tilde(&sys, delta_e_tilde).with_work(w_q);

        let d = discrepancy_d(
            &DirectedRun {
                config: forward_config,
                result: forward.clone(),
            },
            &DirectedRun {
                config: reverse_config,
                result: reverse.clone(),
            },
            z_tilde_psi_i,
            z_tilde_phi_f,
            &sys,
        )?;
        let (epsilon_i, epsilon_f) =
            factorisation_errors(&joint, &psi_i_state, &phi_f_state, &sys)?;
        let (r, one_minus_r) = ratio_r(forward.probability, reverse.probability, &prediction, sys.k_t)?;
        let report = ErrorReport {
            d,
            epsilon_i,
            epsilon_f,
            epsilon: epsilon_i + epsilon_f,
            r,
            one_minus_r,
        };

        let q_inferred = match prediction.w_q {
            Some(w_q) if w_q != 0.0 => {
                infer_q(forward.probability, reverse.probability, prediction.delta_f, w_q, sys.k_t)
                    .ok()
            }
            _ => None,
        };

        Ok(AqcOutcome {
            quadruple,
            forward,
            reverse,
            z_tilde_psi_i,
            z_tilde_phi_f,
            prediction,
            report,
            q_inferred,
        })
    }

    /// Run at the configured truncation and at double the dimension,
    /// returning the base outcome and the observed drift.
    pub fn run_with_convergence(&self) -> Result<(AqcOutcome, f64)> {
        let base = self.run()?;
        let doubled = AqcExperiment {
            space: self.space.with_dim(self.space.dim() * 2)?,
            profile: self.profile.clone(),
            tau: self.tau,
            pair: self.pair.clone(),
        }
        .run()?;
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0e-30);
        let drift = rel(base.forward.probability, doubled.forward.probability)
            .max(rel(base.reverse.probability, doubled.reverse.probability))
            .max((base.report.one_minus_r - doubled.report.one_minus_r).abs());
        Ok((base, drift))
    }

    /// As `run_with_convergence`, failing when the drift exceeds
    /// `CONVERGENCE_LIMIT`.
    pub fn run_converged(&self) -> Result<(AqcOutcome, f64)> {
        let (outcome, drift) = self.run_with_convergence()?;
        if drift > CONVERGENCE_LIMIT {
            return Err(Error::ConvergenceFailure {
                drift,
                limit: CONVERGENCE_LIMIT,
            });
        }
        Ok((outcome, drift))
    }
}
