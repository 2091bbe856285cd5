//! Unitary evolution of the joint state and the forward/reverse battery
//! transition probabilities.
//!
//! The joint Hamiltonian is diagonal in the system energy basis, so the
//! dynamics decomposes exactly into two battery branches evolving under
//! H_B +/- E(x_B). The thermal two-level mixture enters as an exact weight
//! pair, never sampled.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{prepare_state, BatteryState, FockSpace, StateSpec};
use crate::linalg::{max_abs_entry, CMat};
use crate::splitting::{joint_hamiltonian, JointHamiltonian, SplittingProfile};

/// Unitarity tolerance on each propagator block.
pub const UNITARITY_TOL: f64 = 1.0e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Reverse,
}

/// One directed protocol run: prepare, evolve for tau, project.
#[derive(Debug, Clone)]
pub struct ProtocolConfig {
    pub space: FockSpace,
    pub profile: SplittingProfile,
    pub tau: f64,
    pub direction: Direction,
    pub prepared: StateSpec,
    pub measured: StateSpec,
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau >= 0.0) {
            return Err(Error::invalid(format!("tau must be >= 0, got {}", self.tau)));
        }
        self.profile.validate()
    }

    /// Default evolution time: half a trap period, carrying a packet from
    /// one side of the centred trap to the other.
    pub fn default_tau(space: &FockSpace) -> f64 {
        std::f64::consts::PI / space.omega()
    }

    /// Thermal weights (p_e, p_g) of the two-level system for this
    /// direction: the forward protocol thermalises against E_i, the reverse
    /// against E_f, with p_e/p_g = exp(-2 E / kT).
    pub fn thermal_weights(&self) -> (f64, f64) {
        let (e_i, e_f) = self.profile.nominal_levels();
        let level = match self.direction {
            Direction::Forward => e_i,
            Direction::Reverse => e_f,
        };
        thermal_weight_pair(level, self.space.k_t())
    }
}

/// (p_e, p_g) for a two-level system E sigma_z at temperature kT.
pub fn thermal_weight_pair(level: f64, k_t: f64) -> (f64, f64) {
    // exact two-level Gibbs weights, normalised to avoid overflow
    let z = 2.0 * (level / k_t).cosh();
    ((-level / k_t).exp() / z, (level / k_t).exp() / z)
}

/// Exponentials of both battery blocks at one time.
#[derive(Debug, Clone)]
pub struct Propagator {
    pub u_excited: CMat,
    pub u_ground: CMat,
    pub t: f64,
}

/// exp(-i H t / hbar) for both blocks via the cached Hermitian
/// eigendecompositions.
pub fn build_propagator(joint: &JointHamiltonian, t: f64) -> Result<Propagator> {
    if !(t >= 0.0) {
        return Err(Error::invalid(format!("propagator time must be >= 0, got {t}")));
    }
    let eig = joint.eigensystems()?;
    let u_excited = eig.excited.propagator(t, 1.0);
    let u_ground = eig.ground.propagator(t, 1.0);
    for u in [&u_excited, &u_ground] {
        let defect = max_abs_entry(&(u.adjoint() * u - CMat::identity(u.nrows(), u.nrows())));
        if defect > UNITARITY_TOL {
            return Err(Error::EigensolverFailure { dim: u.nrows() });
        }
    }
    Ok(Propagator {
        u_excited,
        u_ground,
        t,
    })
}

/// Transition probability and its branch amplitudes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProtocolResult {
    pub probability: f64,
    pub branch_e_amp: num_complex::Complex64,
    pub branch_g_amp: num_complex::Complex64,
    pub weights: (f64, f64),
    /// Set when a forward preparation was not localised left of the
    /// interaction window; expected for symmetric cats.
    pub localization_warning: bool,
}

/// Run one directed protocol: P = p_e |<meas|U_e|prep>|^2 +
/// p_g |<meas|U_g|prep>|^2.
pub fn run_protocol(config: &ProtocolConfig) -> Result<ProtocolResult> {
    let joint = joint_hamiltonian(&config.space, &config.profile)?;
    run_protocol_with(&joint, config)
}

/// As `run_protocol`, reusing an already-built joint Hamiltonian so sweeps
/// share the eigendecompositions.
pub fn run_protocol_with(joint: &JointHamiltonian, config: &ProtocolConfig) -> Result<ProtocolResult> {
    config.validate()?;
    let prepared = prepare_state(&config.space, &config.prepared)?;
    let measured = prepare_state(&config.space, &config.measured)?;

    let localization_warning = config.direction == Direction::Forward
        && prepared.position_expectation() >= config.profile.window_start();
    if localization_warning {
        log::warn!(
            "forward preparation has <X> = {:.3} inside the interaction window (x_i = {:.3})",
            prepared.position_expectation(),
            config.profile.window_start()
        );
    }

    let eig = joint.eigensystems()?;
    let evolved_e = eig.excited.evolve(prepared.amplitudes(), config.tau, 1.0);
    let evolved_g = eig.ground.evolve(prepared.amplitudes(), config.tau, 1.0);
    let branch_e_amp = measured.amplitudes().dotc(&evolved_e);
    let branch_g_amp = measured.amplitudes().dotc(&evolved_g);
    let weights = config.thermal_weights();
    let probability = weights.0 * branch_e_amp.norm_sqr() + weights.1 * branch_g_amp.norm_sqr();
    Ok(ProtocolResult {
        probability,
        branch_e_amp,
        branch_g_amp,
        weights,
        localization_warning,
    })
}

/// The two evolved branch states for phase-space inspection, with their
/// thermal weights.
pub fn joint_final_state(
    config: &ProtocolConfig,
) -> Result<(BatteryState, BatteryState, (f64, f64))> {
    config.validate()?;
    let joint = joint_hamiltonian(&config.space, &config.profile)?;
    let prepared = prepare_state(&config.space, &config.prepared)?;
    let eig = joint.eigensystems()?;
    let branch_e = BatteryState::from_amplitudes(
        eig.excited.evolve(prepared.amplitudes(), config.tau, 1.0),
        prepared.recipe().clone(),
        prepared.norm_deficit(),
    );
    let branch_g = BatteryState::from_amplitudes(
        eig.ground.evolve(prepared.amplitudes(), config.tau, 1.0),
        prepared.recipe().clone(),
        prepared.norm_deficit(),
    );
    Ok((branch_e, branch_g, config.thermal_weights()))
}
