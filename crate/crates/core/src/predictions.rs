//! Closed-form quantities entering the Crooks equalities: free-energy
//! changes, the quantum prefactor q, the thermal frequency, coherent work
//! terms, and the Gibbs-map parameter transformations for coherent, squeezed
//! and cat states.
//!
//! All Z-tilde values include the oscillator zero-point weight e^{-chi},
//! matching <psi| e^{-H_B/kT} |psi> with H_B = hbar omega (n + 1/2).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{coherent_overlap, CatTerm, FockSpace, StateSpec};
use crate::linalg::c;

/// Two-level system H_S = E sigma_z; E_i and E_f are half-splittings, so the
/// level gap is 2E.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelSystem {
    pub e_i: f64,
    pub e_f: f64,
    pub k_t: f64,
}

impl TwoLevelSystem {
    pub fn new(e_i: f64, e_f: f64, k_t: f64) -> Result<Self> {
        if !(k_t > 0.0) {
            return Err(Error::invalid(format!("kT must be positive, got {k_t}")));
        }
        Ok(Self { e_i, e_f, k_t })
    }

    /// Z = Tr e^{-E sigma_z / kT} = 2 cosh(E/kT).
    pub fn partition_function(&self, level: f64) -> f64 {
        2.0 * (level / self.k_t).cosh()
    }

    pub fn partition_initial(&self) -> f64 {
        self.partition_function(self.e_i)
    }

    pub fn partition_final(&self) -> f64 {
        self.partition_function(self.e_f)
    }

    /// Delta F = -kT ln(cosh(E_f/kT) / cosh(E_i/kT)).
    pub fn free_energy_change(&self) -> f64 {
        -self.k_t * ((self.e_f / self.k_t).cosh() / (self.e_i / self.k_t).cosh()).ln()
    }
}

/// Quantum prefactor q(chi) = tanh(chi)/chi, with the chi -> 0 limit pinned
/// to 1.
pub fn q_factor(chi: f64) -> f64 {
    debug_assert!(chi >= 0.0);
    if chi == 0.0 {
        1.0
    } else {
        chi.tanh() / chi
    }
}

/// hbar omega_T and its decomposition into thermal and vacuum parts.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ThermalSplit {
    /// Average energy kT/q(chi) of a thermal oscillator.
    pub hbar_omega_t: f64,
    /// h^2 / (m lambda_th^2), the equipartition part.
    pub thermal_part: f64,
    /// hbar omega / 2, the vacuum part.
    pub vacuum_part: f64,
}

pub fn thermal_frequency_split(space: &FockSpace) -> ThermalSplit {
    let hbar_omega_t = space.k_t() / q_factor(space.chi());
    let vacuum_part = space.hbar_omega() / 2.0;
    ThermalSplit {
        hbar_omega_t,
        thermal_part: hbar_omega_t - vacuum_part,
        vacuum_part,
    }
}

/// eta_chi = exp(-(1 - e^{-2 chi})/2), the coherent-amplitude weight picked
/// up under the Gibbs map.
pub fn eta_chi(chi: f64) -> f64 {
    (-(1.0 - (-2.0 * chi).exp()) / 2.0).exp()
}

/// Gibbs map of a coherent label: alpha -> alpha e^{-chi}.
pub fn coherent_pair_map(alpha: Complex64, chi: f64) -> Complex64 {
    alpha * c((-chi).exp())
}

/// Z-tilde of a coherent state, e^{-chi} exp(-|alpha|^2 (1 - e^{-2 chi})).
pub fn coherent_z_tilde(alpha: Complex64, chi: f64) -> f64 {
    (-chi).exp() * (-alpha.norm_sqr() * (1.0 - (-2.0 * chi).exp())).exp()
}

/// Delta E-tilde for a coherent pair:
/// kT (|alpha_i|^2 - |alpha_f|^2)(1 - e^{-2 chi}).
pub fn coherent_delta_e_tilde(alpha_i: Complex64, alpha_f: Complex64, chi: f64, k_t: f64) -> f64 {
    k_t * (alpha_i.norm_sqr() - alpha_f.norm_sqr()) * (1.0 - (-2.0 * chi).exp())
}

/// Average battery energy changes of the forward (+) and reverse (-)
/// processes and their half-difference W_q.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WorkTerms {
    pub delta_e_plus: f64,
    pub delta_e_minus: f64,
    pub w_q: f64,
}

/// W_q for a coherent pair: Delta E_+ = (e^{-2 chi}|alpha_i|^2 -
/// |alpha_f|^2) hbar omega and Delta E_- with i and f exchanged.
pub fn coherent_quantum_work(
    alpha_i: Complex64,
    alpha_f: Complex64,
    chi: f64,
    hbar_omega: f64,
) -> WorkTerms {
    let shrink = (-2.0 * chi).exp();
    let delta_e_plus = (shrink * alpha_i.norm_sqr() - alpha_f.norm_sqr()) * hbar_omega;
    let delta_e_minus = (shrink * alpha_f.norm_sqr() - alpha_i.norm_sqr()) * hbar_omega;
    WorkTerms {
        delta_e_plus,
        delta_e_minus,
        w_q: 0.5 * (delta_e_plus - delta_e_minus),
    }
}

/// Gibbs-mapped displacement and squeeze of a squeezed displaced state,
/// with its Z-tilde.
///
/// Follows the crate squeeze convention S(r) = exp(r/2 (a^dagger^2 - a^2)):
/// tanh s = e^{-2 chi} tanh r, Re mu = Re alpha e^{-chi}(1 - tanh r)/(1 -
/// e^{-2 chi} tanh r) and Im mu = Im alpha e^{-chi}(1 + tanh r)/(1 +
/// e^{-2 chi} tanh r).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SqueezedMap {
    pub s: f64,
    pub mu: Complex64,
    pub z_tilde: f64,
}

pub fn squeezed_pair_map(alpha: Complex64, r: f64, chi: f64) -> Result<SqueezedMap> {
    if !r.is_finite() {
        return Err(Error::invalid("squeeze parameter must be finite"));
    }
    let u = r.tanh();
    let shrink = (-chi).exp();
    let u_s = u * shrink * shrink;
    let s = u_s.atanh();
    let mu = Complex64::new(
        alpha.re * shrink * (1.0 - u) / (1.0 - u_s),
        alpha.im * shrink * (1.0 + u) / (1.0 + u_s),
    );
    // |C|^2 of the prepared Gaussian, times the norm of the mapped Gaussian
    let prepared = (-alpha.norm_sqr() + u * (alpha * alpha).re).exp() / r.cosh();
    let mapped = (mu.norm_sqr() - u_s * (mu * mu).re).exp() / (1.0 - u_s * u_s).sqrt();
    let z_tilde = (-chi).exp() * prepared * mapped;
    Ok(SqueezedMap { s, mu, z_tilde })
}

/// Mean battery energy of a squeezed displaced state:
/// hbar omega (|alpha|^2 + sinh^2 r + 1/2).
pub fn squeezed_mean_energy(alpha: Complex64, r: f64, hbar_omega: f64) -> f64 {
    hbar_omega * (alpha.norm_sqr() + r.sinh().powi(2) + 0.5)
}

/// Gibbs-mapped cat state: each component |alpha_k> picks up the weight
/// factor eta_chi^{|alpha_k|^2} and shrinks to |alpha_k e^{-chi}>.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatMap {
    pub eta_chi: f64,
    pub mapped_terms: Vec<CatTerm>,
    pub z_tilde: f64,
}

pub fn cat_pair_map(terms: &[CatTerm], chi: f64) -> Result<CatMap> {
    if terms.is_empty() {
        return Err(Error::invalid("cat state needs at least one term"));
    }
    let eta = eta_chi(chi);
    let shrink = c((-chi).exp());
    let mapped_terms: Vec<CatTerm> = terms
        .iter()
        .map(|t| CatTerm {
            weight: t.weight * c(eta.powf(t.alpha.norm_sqr())),
            alpha: t.alpha * shrink,
        })
        .collect();

    // Z-tilde from the overlap Gram sums of the input and mapped terms,
    // including all cross terms.
    let mut input_norm = Complex64::new(0.0, 0.0);
    let mut mapped_norm = Complex64::new(0.0, 0.0);
    for (tj, mj) in terms.iter().zip(&mapped_terms) {
        for (tk, mk) in terms.iter().zip(&mapped_terms) {
            input_norm += tj.weight.conj() * tk.weight * coherent_overlap(tj.alpha, tk.alpha);
            mapped_norm += mj.weight.conj() * mk.weight * coherent_overlap(mj.alpha, mk.alpha);
        }
    }
    if input_norm.re <= 0.0 {
        return Err(Error::invalid("cat state is destructively degenerate"));
    }
    let z_tilde = (-chi).exp() * mapped_norm.re / input_norm.re;
    Ok(CatMap {
        eta_chi: eta,
        mapped_terms,
        z_tilde,
    })
}

/// Mean battery energy of a normalised cat state, from coherent-state
/// algebra: <a^dagger a> = sum_jk w_j* w_k alpha_j* alpha_k <alpha_j|alpha_k>
/// over the Gram norm.
pub fn cat_mean_energy(terms: &[CatTerm], hbar_omega: f64) -> Result<f64> {
    let mut gram = Complex64::new(0.0, 0.0);
    let mut weighted = Complex64::new(0.0, 0.0);
    for tj in terms {
        for tk in terms {
            let ov = tj.weight.conj() * tk.weight * coherent_overlap(tj.alpha, tk.alpha);
            gram += ov;
            weighted += ov * tj.alpha.conj() * tk.alpha;
        }
    }
    if gram.re <= 0.0 {
        return Err(Error::invalid("cat state is destructively degenerate"));
    }
    Ok(hbar_omega * (weighted.re / gram.re + 0.5))
}

/// Closed-form Z-tilde for any preparation recipe.
pub fn spec_z_tilde(spec: &StateSpec, chi: f64) -> Result<f64> {
    Ok(match spec {
        StateSpec::Coherent { alpha } => coherent_z_tilde(*alpha, chi),
        StateSpec::SqueezedDisplaced { alpha, r } => squeezed_pair_map(*alpha, *r, chi)?.z_tilde,
        StateSpec::Cat { terms } => cat_pair_map(terms, chi)?.z_tilde,
        StateSpec::FockLevel { n } => (-2.0 * chi * (*n as f64 + 0.5)).exp(),
    })
}

/// Closed-form mean battery energy for any preparation recipe.
pub fn spec_mean_energy(spec: &StateSpec, hbar_omega: f64) -> Result<f64> {
    Ok(match spec {
        StateSpec::Coherent { alpha } => hbar_omega * (alpha.norm_sqr() + 0.5),
        StateSpec::SqueezedDisplaced { alpha, r } => squeezed_mean_energy(*alpha, *r, hbar_omega),
        StateSpec::Cat { terms } => cat_mean_energy(terms, hbar_omega)?,
        StateSpec::FockLevel { n } => hbar_omega * (*n as f64 + 0.5),
    })
}

/// The normalised Gibbs map on recipes: for every family the weighted state
/// stays in the family with transformed parameters.
pub fn gibbs_map_spec(spec: &StateSpec, chi: f64) -> Result<StateSpec> {
    Ok(match spec {
        StateSpec::Coherent { alpha } => StateSpec::Coherent {
            alpha: coherent_pair_map(*alpha, chi),
        },
        StateSpec::SqueezedDisplaced { alpha, r } => {
            let map = squeezed_pair_map(*alpha, *r, chi)?;
            StateSpec::SqueezedDisplaced {
                alpha: map.mu,
                r: map.s,
            }
        }
        StateSpec::Cat { terms } => StateSpec::Cat {
            terms: cat_pair_map(terms, chi)?.mapped_terms,
        },
        StateSpec::FockLevel { n } => StateSpec::FockLevel { n: *n },
    })
}

/// Right-hand side of the Crooks equality,
/// exp(-Delta F/kT) exp(Delta E-tilde/kT).
pub fn predicted_ratio(sys: &TwoLevelSystem, delta_e_tilde: f64) -> f64 {
    ((delta_e_tilde - sys.free_energy_change()) / sys.k_t).exp()
}

/// Coherent rewrite of the right-hand side,
/// exp(-Delta F/kT) exp(W_q / hbar omega_T).
pub fn coherent_ratio_via_thermal_frequency(
    sys: &TwoLevelSystem,
    w_q: f64,
    space: &FockSpace,
) -> f64 {
    let split = thermal_frequency_split(space);
    (-sys.free_energy_change() / sys.k_t).exp() * (w_q / split.hbar_omega_t).exp()
}

/// Closed-form prediction bundle for one configuration.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CrooksPrediction {
    pub delta_f: f64,
    pub delta_e_tilde: f64,
    pub predicted_ratio: f64,
    /// Defined for pairs with a meaningful average-energy difference.
    pub w_q: Option<f64>,
    /// Delta E-tilde / W_q; None when W_q vanishes.
    pub q: Option<f64>,
}

impl CrooksPrediction {
    pub fn from_delta_e_tilde(sys: &TwoLevelSystem, delta_e_tilde: f64) -> Self {
        Self {
            delta_f: sys.free_energy_change(),
            delta_e_tilde,
            predicted_ratio: predicted_ratio(sys, delta_e_tilde),
            w_q: None,
            q: None,
        }
    }

    pub fn with_work(mut self, w_q: f64) -> Self {
        self.w_q = Some(w_q);
        self.q = if w_q == 0.0 {
            None
        } else {
            Some(self.delta_e_tilde / w_q)
        };
        self
    }
}
