//! Simulator and analytic engine for autonomous quantum Crooks equalities of
//! a two-level system coupled to a harmonic-oscillator battery.
//!
//! The battery lives in a truncated Fock space ([`fock`]); the interaction
//! is a position-dependent level splitting ([`splitting`]); the joint
//! dynamics decomposes into two battery branches ([`dynamics`]). Closed-form
//! predictions for coherent, squeezed and cat states live in
//! [`predictions`], the error-bounded equality machinery in
//! [`diagnostics`], phase-space inspection in [`wigner`], and full
//! experiment orchestration in [`protocol`].

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod predictions;
pub mod protocol;
pub mod splitting;
pub mod wigner;

pub use diagnostics::{
    discrepancy_d, factorisation_errors, identity_oracle, identity_residuals, infer_q, ratio_r,
    DirectedRun, ErrorReport, IdentityReport, IDENTITY_PARAM_LIMIT,
};
pub use dynamics::{
    build_propagator, joint_final_state, run_protocol, run_protocol_with, thermal_weight_pair,
    Direction, Propagator, ProtocolConfig, ProtocolResult,
};
pub use error::{Error, Result};
pub use fock::{
    apply_gibbs_weight, coherent_amplitudes, coherent_overlap, effective_potential,
    effective_potential_general, gibbs_normalisation, prepare_state, time_reverse, BatteryState,
    CatTerm, FockSpace, OperatorMatrix, Operators, StateSpec, DEFAULT_DIM, NORM_DEFICIT_LIMIT,
};
pub use predictions::{
    cat_mean_energy, cat_pair_map, coherent_delta_e_tilde, coherent_pair_map,
    coherent_quantum_work, coherent_ratio_via_thermal_frequency, coherent_z_tilde, eta_chi,
    gibbs_map_spec, predicted_ratio, q_factor, spec_mean_energy, spec_z_tilde, squeezed_mean_energy,
    squeezed_pair_map, thermal_frequency_split, CatMap, CrooksPrediction, SqueezedMap,
    ThermalSplit, TwoLevelSystem, WorkTerms,
};
pub use protocol::{AqcExperiment, AqcOutcome, StatePairSpec, StateQuadruple, CONVERGENCE_LIMIT};
pub use splitting::{joint_hamiltonian, BranchEigen, JointHamiltonian, SplittingProfile};
pub use wigner::{negativity_volume, position_wavefunction, wigner_of_state, WignerGrid, WignerGridSpec};
