//! Truncated Fock-space representation of the oscillator battery: ladder
//! operators, state preparation, Gibbs weighting, time reversal and the
//! effective potential.
//!
//! Units are dimensionless throughout: hbar = 1, m = 1, and the trap
//! frequency follows from `hbar_omega`. The position operator is
//! X = (a + a^dagger)/2, so a coherent state with real displacement alpha is
//! centred at X = alpha and the vacuum position variance is 1/4.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, hermiticity_defect, CMat, CVec};

/// Default oscillator truncation used by protocol runs.
pub const DEFAULT_DIM: usize = 256;

/// States whose truncation tail exceeds this are rejected from protocol runs.
pub const NORM_DEFICIT_LIMIT: f64 = 1.0e-8;

/// Gibbs normalisations below this floor are treated as underflow.
pub const UNDERFLOW_FLOOR: f64 = 1.0e-300;

/// Hermitian operators must satisfy max |M - M^dagger| below this.
pub const HERMITICITY_TOL: f64 = 1.0e-12;

/// Truncated oscillator basis with its physical constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockSpace {
    dim: usize,
    hbar_omega: f64,
    k_t: f64,
}

impl FockSpace {
    pub fn new(dim: usize, hbar_omega: f64, k_t: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::invalid(format!("dim must be >= 2, got {dim}")));
        }
        if !(hbar_omega > 0.0) || !(k_t > 0.0) {
            return Err(Error::invalid(format!(
                "hbar_omega and k_t must be positive, got {hbar_omega}, {k_t}"
            )));
        }
        Ok(Self {
            dim,
            hbar_omega,
            k_t,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hbar_omega(&self) -> f64 {
        self.hbar_omega
    }

    pub fn k_t(&self) -> f64 {
        self.k_t
    }

    /// Trap angular frequency (hbar = 1).
    pub fn omega(&self) -> f64 {
        self.hbar_omega
    }

    /// chi = hbar omega / (2 kT), the ratio of vacuum to thermal
    /// fluctuations. Recomputed from its inputs, never stored.
    pub fn chi(&self) -> f64 {
        self.hbar_omega / (2.0 * self.k_t)
    }

    /// Oscillator level energy hbar omega (n + 1/2).
    pub fn level_energy(&self, n: usize) -> f64 {
        self.hbar_omega * (n as f64 + 0.5)
    }

    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(dim, self.hbar_omega, self.k_t)
    }

    pub fn with_k_t(&self, k_t: f64) -> Result<Self> {
        Self::new(self.dim, self.hbar_omega, k_t)
    }

    /// Lowering operator a with a|n> = sqrt(n)|n-1>.
    pub fn lowering(&self) -> OperatorMatrix {
        let mut m = CMat::zeros(self.dim, self.dim);
        for n in 1..self.dim {
            m[(n - 1, n)] = c((n as f64).sqrt());
        }
        OperatorMatrix::general(m)
    }

    pub fn raising(&self) -> OperatorMatrix {
        OperatorMatrix::general(self.lowering().entries.adjoint())
    }

    pub fn number(&self) -> OperatorMatrix {
        let m = CMat::from_diagonal(&CVec::from_fn(self.dim, |n, _| c(n as f64)));
        OperatorMatrix::hermitian(m)
    }

    /// Dimensionless position X = (a + a^dagger)/2.
    pub fn position(&self) -> OperatorMatrix {
        let mut m = CMat::zeros(self.dim, self.dim);
        for n in 1..self.dim {
            let v = c(0.5 * (n as f64).sqrt());
            m[(n - 1, n)] = v;
            m[(n, n - 1)] = v;
        }
        OperatorMatrix::hermitian(m)
    }

    /// Dimensionless momentum P = (a - a^dagger)/(2i), conjugate to X with
    /// [X, P] = i/2.
    pub fn momentum(&self) -> OperatorMatrix {
        let mut m = CMat::zeros(self.dim, self.dim);
        for n in 1..self.dim {
            let v = Complex64::new(0.0, 0.5 * (n as f64).sqrt());
            m[(n - 1, n)] = -v;
            m[(n, n - 1)] = v;
        }
        OperatorMatrix::hermitian(m)
    }

    /// Battery Hamiltonian, diagonal with entries hbar omega (n + 1/2).
    pub fn hamiltonian(&self) -> OperatorMatrix {
        let m = CMat::from_diagonal(&CVec::from_fn(self.dim, |n, _| c(self.level_energy(n))));
        OperatorMatrix::hermitian(m)
    }

    /// The full operator set in one call.
    pub fn build_operators(&self) -> Operators {
        Operators {
            lowering: self.lowering(),
            raising: self.raising(),
            number: self.number(),
            position: self.position(),
            hamiltonian: self.hamiltonian(),
        }
    }
}

/// Ladder, number, position and Hamiltonian matrices for one truncation.
#[derive(Debug, Clone)]
pub struct Operators {
    pub lowering: OperatorMatrix,
    pub raising: OperatorMatrix,
    pub number: OperatorMatrix,
    pub position: OperatorMatrix,
    pub hamiltonian: OperatorMatrix,
}

/// Dense operator with an asserted Hermiticity flag.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    entries: CMat,
    hermitian: bool,
}

impl OperatorMatrix {
    /// Wrap a matrix that must be Hermitian to `HERMITICITY_TOL`.
    ///
    /// Panics if the defect exceeds the tolerance: every Hermitian operator
    /// here is Hermitian by construction, so a violation is a bug.
    pub fn hermitian(entries: CMat) -> Self {
        let defect = hermiticity_defect(&entries);
        assert!(
            defect < HERMITICITY_TOL,
            "operator marked Hermitian has defect {defect:.3e}"
        );
        Self {
            entries,
            hermitian: true,
        }
    }

    pub fn general(entries: CMat) -> Self {
        Self {
            entries,
            hermitian: false,
        }
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn into_entries(self) -> CMat {
        self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn expectation(&self, state: &BatteryState) -> Complex64 {
        state.amplitudes().dotc(&(&self.entries * state.amplitudes()))
    }
}

/// One weighted coherent component of a cat state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatTerm {
    #[serde(deserialize_with = "deserialize_complex")]
    pub weight: Complex64,
    #[serde(deserialize_with = "deserialize_complex")]
    pub alpha: Complex64,
}

/// Preparation recipe for a battery state.
///
/// Squeeze convention: `SqueezedDisplaced { alpha, r }` is
/// D(alpha) S(r) |0> with S(r) = exp(r/2 (a^dagger^2 - a^2)). Positive r
/// narrows the momentum quadrature (Var P = e^{-2r}/4) and widens position;
/// negative r narrows position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateSpec {
    Coherent {
        #[serde(deserialize_with = "deserialize_complex")]
        alpha: Complex64,
    },
    SqueezedDisplaced {
        #[serde(deserialize_with = "deserialize_complex")]
        alpha: Complex64,
        r: f64,
    },
    Cat {
        terms: Vec<CatTerm>,
    },
    FockLevel {
        n: usize,
    },
}

impl StateSpec {
    pub fn coherent(alpha: impl Into<Complex64>) -> Self {
        StateSpec::Coherent {
            alpha: alpha.into(),
        }
    }

    pub fn squeezed(alpha: impl Into<Complex64>, r: f64) -> Self {
        StateSpec::SqueezedDisplaced {
            alpha: alpha.into(),
            r,
        }
    }

    pub fn cat(terms: impl IntoIterator<Item = (Complex64, Complex64)>) -> Self {
        StateSpec::Cat {
            terms: terms
                .into_iter()
                .map(|(weight, alpha)| CatTerm { weight, alpha })
                .collect(),
        }
    }

    /// The recipe of the time-reversed state: complex conjugation in the
    /// Fock basis maps each family onto itself with conjugated parameters.
    pub fn conjugated(&self) -> Self {
        match self {
            StateSpec::Coherent { alpha } => StateSpec::Coherent {
                alpha: alpha.conj(),
            },
            StateSpec::SqueezedDisplaced { alpha, r } => StateSpec::SqueezedDisplaced {
                alpha: alpha.conj(),
                r: *r,
            },
            StateSpec::Cat { terms } => StateSpec::Cat {
                terms: terms
                    .iter()
                    .map(|t| CatTerm {
                        weight: t.weight.conj(),
                        alpha: t.alpha.conj(),
                    })
                    .collect(),
            },
            StateSpec::FockLevel { n } => StateSpec::FockLevel { n: *n },
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            StateSpec::Cat { terms } => {
                if terms.is_empty() {
                    return Err(Error::invalid("cat state needs at least one term"));
                }
                if terms.iter().all(|t| t.weight.norm() == 0.0) {
                    return Err(Error::invalid("cat state weights are all zero"));
                }
                Ok(())
            }
            StateSpec::SqueezedDisplaced { r, .. } => {
                if !r.is_finite() {
                    return Err(Error::invalid("squeeze parameter must be finite"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Normalised battery state in the Fock basis, together with the recipe it
/// was prepared from and the truncation loss of the untruncated analytic
/// state.
#[derive(Debug, Clone)]
pub struct BatteryState {
    amplitudes: CVec,
    recipe: StateSpec,
    norm_deficit: f64,
}

impl BatteryState {
    pub fn amplitudes(&self) -> &CVec {
        &self.amplitudes
    }

    pub fn recipe(&self) -> &StateSpec {
        &self.recipe
    }

    pub fn norm_deficit(&self) -> f64 {
        self.norm_deficit
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Wrap an already-normalised amplitude vector produced by unitary
    /// evolution or weighting of an accepted state. The recipe records the
    /// preparation provenance, not the current vector.
    pub(crate) fn from_amplitudes(amplitudes: CVec, recipe: StateSpec, norm_deficit: f64) -> Self {
        debug_assert!((amplitudes.norm() - 1.0).abs() < 1.0e-9);
        Self {
            amplitudes,
            recipe,
            norm_deficit,
        }
    }

    pub fn overlap(&self, other: &BatteryState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn fidelity(&self, other: &BatteryState) -> f64 {
        self.overlap(other).norm_sqr()
    }

    /// <a> in the Fock basis; X and P expectations are its real and
    /// imaginary parts.
    pub fn lowering_expectation(&self) -> Complex64 {
        let n = self.amplitudes.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n - 1 {
            acc += self.amplitudes[k].conj() * self.amplitudes[k + 1] * ((k + 1) as f64).sqrt();
        }
        acc
    }

    pub fn position_expectation(&self) -> f64 {
        self.lowering_expectation().re
    }

    pub fn momentum_expectation(&self) -> f64 {
        self.lowering_expectation().im
    }

    pub fn mean_number(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum()
    }

    pub fn energy_expectation(&self, space: &FockSpace) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(n, a)| space.level_energy(n) * a.norm_sqr())
            .sum()
    }

    /// Smallest n holding `mass` of the population, for grid sizing.
    pub fn support_level(&self, mass: f64) -> usize {
        let mut acc = 0.0;
        for (n, a) in self.amplitudes.iter().enumerate() {
            acc += a.norm_sqr();
            if acc >= mass {
                return n;
            }
        }
        self.amplitudes.len() - 1
    }
}

/// Exact Fock coefficients of a coherent state, e^{-|alpha|^2/2} alpha^n /
/// sqrt(n!), truncated to `dim`. The returned vector has norm <= 1.
pub fn coherent_amplitudes(dim: usize, alpha: Complex64) -> CVec {
    let mut v = CVec::zeros(dim);
    v[0] = c((-alpha.norm_sqr() / 2.0).exp());
    for n in 1..dim {
        v[n] = v[n - 1] * alpha / c((n as f64).sqrt());
    }
    v
}

/// Overlap <beta|alpha> of two coherent states.
pub fn coherent_overlap(beta: Complex64, alpha: Complex64) -> Complex64 {
    (-c(0.5 * (alpha.norm_sqr() + beta.norm_sqr())) + beta.conj() * alpha).exp()
}

/// Exact Fock coefficients of D(alpha) S(r) |0> with
/// S(r) = exp(r/2 (a^dagger^2 - a^2)), via the stable three-term recurrence
/// of the Gaussian generating function. Unit norm before truncation.
fn squeezed_displaced_amplitudes(dim: usize, alpha: Complex64, r: f64) -> CVec {
    let u = r.tanh();
    let nu = alpha - c(u) * alpha.conj();
    let prefactor =
        (c(-alpha.norm_sqr() / 2.0) + c(u / 2.0) * alpha.conj() * alpha.conj()).exp()
            / c(r.cosh().sqrt());
    let mut v = CVec::zeros(dim);
    v[0] = prefactor;
    if dim > 1 {
        v[1] = nu * prefactor;
    }
    for n in 1..dim - 1 {
        v[n + 1] =
            (nu * v[n] + c(u * (n as f64).sqrt()) * v[n - 1]) / c(((n + 1) as f64).sqrt());
    }
    v
}

/// Prepare a normalised battery state, rejecting truncations whose tail loss
/// reaches `NORM_DEFICIT_LIMIT`.
pub fn prepare_state(space: &FockSpace, spec: &StateSpec) -> Result<BatteryState> {
    spec.validate()?;
    let dim = space.dim();
    let (raw, exact_norm_sq) = match spec {
        StateSpec::Coherent { alpha } => (coherent_amplitudes(dim, *alpha), 1.0),
        StateSpec::SqueezedDisplaced { alpha, r } => {
            (squeezed_displaced_amplitudes(dim, *alpha, *r), 1.0)
        }
        StateSpec::Cat { terms } => {
            let mut v = CVec::zeros(dim);
            for t in terms {
                v += coherent_amplitudes(dim, t.alpha) * t.weight;
            }
            let mut gram = Complex64::new(0.0, 0.0);
            for tj in terms {
                for tk in terms {
                    gram += tj.weight.conj() * tk.weight * coherent_overlap(tj.alpha, tk.alpha);
                }
            }
            let scale: f64 = terms.iter().map(|t| t.weight.norm_sqr()).sum();
            if gram.re <= 1.0e-14 * scale.max(1.0) {
                return Err(Error::invalid(
                    "cat state is destructively degenerate (zero norm)",
                ));
            }
            (v, gram.re)
        }
        StateSpec::FockLevel { n } => {
            if *n >= dim {
                return Err(Error::TruncationInsufficient {
                    deficit: 1.0,
                    limit: NORM_DEFICIT_LIMIT,
                    dim,
                });
            }
            let mut v = CVec::zeros(dim);
            v[*n] = c(1.0);
            (v, 1.0)
        }
    };

    let norm_sq = raw.norm_squared();
    let deficit = (1.0 - norm_sq / exact_norm_sq).max(0.0);
    if deficit >= NORM_DEFICIT_LIMIT {
        return Err(Error::TruncationInsufficient {
            deficit,
            limit: NORM_DEFICIT_LIMIT,
            dim,
        });
    }
    let normalised = raw / c(norm_sq.sqrt());
    Ok(BatteryState {
        amplitudes: normalised,
        recipe: spec.clone(),
        norm_deficit: deficit,
    })
}

/// Apply the half Gibbs weighting e^{-H_B/2kT} and renormalise, returning the
/// weighted state together with Z-tilde = <psi| e^{-H_B/kT} |psi>.
///
/// H_B is diagonal in the Fock basis, so this is exact, no matrix
/// exponential involved.
pub fn apply_gibbs_weight(space: &FockSpace, state: &BatteryState) -> Result<(BatteryState, f64)> {
    let chi = space.chi();
    let z_tilde: f64 = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(n, a)| a.norm_sqr() * (-2.0 * chi * (n as f64 + 0.5)).exp())
        .sum();
    if z_tilde < UNDERFLOW_FLOOR {
        return Err(Error::UnderflowRisk { z_tilde });
    }
    let scale = 1.0 / z_tilde.sqrt();
    let weighted = CVec::from_fn(state.dim(), |n, _| {
        state.amplitudes[n] * c((-chi * (n as f64 + 0.5)).exp() * scale)
    });
    Ok((
        BatteryState::from_amplitudes(weighted, state.recipe.clone(), state.norm_deficit),
        z_tilde,
    ))
}

/// Z-tilde alone, without building the weighted state.
pub fn gibbs_normalisation(space: &FockSpace, state: &BatteryState) -> Result<f64> {
    let chi = space.chi();
    let z_tilde: f64 = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(n, a)| a.norm_sqr() * (-2.0 * chi * (n as f64 + 0.5)).exp())
        .sum();
    if z_tilde < UNDERFLOW_FLOOR {
        return Err(Error::UnderflowRisk { z_tilde });
    }
    Ok(z_tilde)
}

/// Time reversal: complex conjugation in the energy eigenbasis.
pub fn time_reverse(state: &BatteryState) -> BatteryState {
    let amplitudes = CVec::from_fn(state.dim(), |n, _| state.amplitudes[n].conj());
    BatteryState {
        amplitudes,
        recipe: state.recipe.conjugated(),
        norm_deficit: state.norm_deficit,
    }
}

/// Effective potential E-tilde(psi) = -kT ln <psi| e^{-H_B/kT} |psi>.
pub fn effective_potential(space: &FockSpace, state: &BatteryState) -> Result<f64> {
    Ok(-space.k_t() * gibbs_normalisation(space, state)?.ln())
}

/// E-tilde for an arbitrary diagonal Hamiltonian, used by the scaling and
/// shifting checks on the effective potential.
pub fn effective_potential_general(levels: &DVector<f64>, amplitudes: &CVec, k_t: f64) -> Result<f64> {
    let z: f64 = amplitudes
        .iter()
        .zip(levels.iter())
        .map(|(a, e)| a.norm_sqr() * (-e / k_t).exp())
        .sum();
    if z < UNDERFLOW_FLOOR {
        return Err(Error::UnderflowRisk { z_tilde: z });
    }
    Ok(-k_t * z.ln())
}

pub(crate) fn deserialize_complex<'de, D>(
    deserializer: D,
) -> std::result::Result<Complex64, D::Error>
where
    D: Deserializer<'de>,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Flexible {
        Real(f64),
        Pair([f64; 2]),
        Parts { re: f64, #[serde(default)] im: f64 },
    }
    Ok(match Flexible::deserialize(deserializer)? {
        Flexible::Real(re) => Complex64::new(re, 0.0),
        Flexible::Pair([re, im]) => Complex64::new(re, im),
        Flexible::Parts { re, im } => Complex64::new(re, im),
    })
}
