//! Error measures for the autonomous Crooks equality: the discrepancy D, the
//! factorisation error bound epsilon, the two-sided ratio R, q inference
//! from transition probabilities, and a dense-matrix oracle for the ladder
//! operator disentangling identities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{Direction, ProtocolConfig, ProtocolResult};
use crate::error::{Error, Result};
use crate::fock::{BatteryState, StateSpec, UNDERFLOW_FLOOR};
use crate::linalg::{c, dyad_difference_trace_norm, expm, max_abs_entry, CMat, CVec};
use crate::predictions::{gibbs_map_spec, CrooksPrediction, TwoLevelSystem};
use crate::splitting::JointHamiltonian;

/// D, the factorisation errors and the ratio diagnostics for one
/// configuration.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ErrorReport {
    pub d: f64,
    pub epsilon_i: f64,
    pub epsilon_f: f64,
    pub epsilon: f64,
    pub r: f64,
    pub one_minus_r: f64,
}

impl ErrorReport {
    /// The bound D <= epsilon must hold on every valid run.
    pub fn bound_satisfied(&self) -> bool {
        self.d <= self.epsilon + 1.0e-10
    }
}

/// Factorisation errors (epsilon_i, epsilon_f).
///
/// Each is the trace norm of J_{H_SB}(1_S (x) |psi><psi|) -
/// J_K(1_S (x) |psi><psi|) with K = H_S (x) 1 + 1 (x) H_B, computed
/// blockwise: the excited block compares e^{-H_e/2kT} against
/// e^{-(E + H_B)/2kT}, the ground block uses -E. Each block is a difference
/// of two dyads, so its singular values come from the Gram data in closed
/// form; the blocks have orthogonal supports and their trace norms add.
pub fn factorisation_errors(
    joint: &JointHamiltonian,
    psi_i: &BatteryState,
    phi_f: &BatteryState,
    sys: &TwoLevelSystem,
) -> Result<(f64, f64)> {
    let eps_i = factorisation_error_for(joint, psi_i, sys.e_i, sys.k_t)?;
    let eps_f = factorisation_error_for(joint, phi_f, sys.e_f, sys.k_t)?;
    Ok((eps_i, eps_f))
}

fn factorisation_error_for(
    joint: &JointHamiltonian,
    state: &BatteryState,
    level: f64,
    k_t: f64,
) -> Result<f64> {
    let eig = joint.eigensystems()?;
    let chi_step = |n: usize| joint.space().level_energy(n);
    let psi = state.amplitudes();

    // e^{-H_B/2kT} psi, diagonal in the Fock basis
    let free = CVec::from_fn(psi.len(), |n, _| psi[n] * c((-chi_step(n) / (2.0 * k_t)).exp()));

    let u_e = eig.excited.half_gibbs(psi, k_t);
    let u_g = eig.ground.half_gibbs(psi, k_t);
    let v_e = &free * c((-level / (2.0 * k_t)).exp());
    let v_g = &free * c((level / (2.0 * k_t)).exp());

    let scale = u_e
        .norm_squared()
        .max(u_g.norm_squared())
        .max(v_e.norm_squared())
        .max(v_g.norm_squared());
    if scale < UNDERFLOW_FLOOR {
        return Err(Error::UnderflowRisk { z_tilde: scale });
    }

    Ok(dyad_difference_trace_norm(&u_e, &v_e) + dyad_difference_trace_norm(&u_g, &v_g))
}

/// A completed directed run, carrying its configuration for pairing checks.
#[derive(Debug, Clone)]
pub struct DirectedRun {
    pub config: ProtocolConfig,
    pub result: ProtocolResult,
}

/// D = |Z_i Z-tilde_psi_i P_fwd - Z_f Z-tilde_phi_f P_rev|.
///
/// The two runs must form a valid quadruple: same space, profile and tau,
/// opposite directions, and preparations related to the other direction's
/// measurement by the time-reversed Gibbs map.
pub fn discrepancy_d(
    forward: &DirectedRun,
    reverse: &DirectedRun,
    z_tilde_psi_i: f64,
    z_tilde_phi_f: f64,
    sys: &TwoLevelSystem,
) -> Result<f64> {
    validate_pairing(forward, reverse, sys)?;
    let z_i = sys.partition_initial();
    let z_f = sys.partition_final();
    Ok(
        (z_i * z_tilde_psi_i * forward.result.probability
            - z_f * z_tilde_phi_f * reverse.result.probability)
            .abs(),
    )
}

fn validate_pairing(forward: &DirectedRun, reverse: &DirectedRun, sys: &TwoLevelSystem) -> Result<()> {
    if forward.config.direction != Direction::Forward || reverse.config.direction != Direction::Reverse
    {
        return Err(Error::ConfigMismatch {
            reason: "runs must be one forward and one reverse".into(),
        });
    }
    if forward.config.space != reverse.config.space {
        return Err(Error::ConfigMismatch {
            reason: "forward and reverse runs use different spaces".into(),
        });
    }
    if forward.config.profile != reverse.config.profile {
        return Err(Error::ConfigMismatch {
            reason: "forward and reverse runs use different profiles".into(),
        });
    }
    if forward.config.tau != reverse.config.tau {
        return Err(Error::ConfigMismatch {
            reason: "forward and reverse runs use different evolution times".into(),
        });
    }
    let (e_i, e_f) = forward.config.profile.nominal_levels();
    if (e_i - sys.e_i).abs() > 1.0e-12
        || (e_f - sys.e_f).abs() > 1.0e-12
        || (forward.config.space.k_t() - sys.k_t).abs() > 1.0e-12
    {
        return Err(Error::ConfigMismatch {
            reason: "two-level system does not match the profile and space".into(),
        });
    }

    let chi = forward.config.space.chi();
    let expected_phi_i = gibbs_map_spec(&reverse.config.measured, chi)?.conjugated();
    if !specs_close(&forward.config.prepared, &expected_phi_i) {
        return Err(Error::ConfigMismatch {
            reason: "forward preparation is not the reversed Gibbs map of the reverse measurement"
                .into(),
        });
    }
    let expected_psi_f = gibbs_map_spec(&forward.config.measured, chi)?.conjugated();
    if !specs_close(&reverse.config.prepared, &expected_psi_f) {
        return Err(Error::ConfigMismatch {
            reason: "reverse preparation is not the reversed Gibbs map of the forward measurement"
                .into(),
        });
    }
    Ok(())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1.0e-9 * (1.0 + a.abs().max(b.abs()))
}

fn complex_close(a: Complex64, b: Complex64) -> bool {
    close(a.re, b.re) && close(a.im, b.im)
}

fn specs_close(a: &StateSpec, b: &StateSpec) -> bool {
    match (a, b) {
        (StateSpec::Coherent { alpha: x }, StateSpec::Coherent { alpha: y }) => complex_close(*x, *y),
        (
            StateSpec::SqueezedDisplaced { alpha: x, r: rx },
            StateSpec::SqueezedDisplaced { alpha: y, r: ry },
        ) => complex_close(*x, *y) && close(*rx, *ry),
        (StateSpec::Cat { terms: tx }, StateSpec::Cat { terms: ty }) => {
            if tx.len() != ty.len() {
                return false;
            }
            // cat weights are defined up to one global complex scale
            let lead = tx.iter().zip(ty).find(|(a, _)| a.weight.norm() > 1.0e-12);
            let Some((la, lb)) = lead else { return false };
            if lb.weight.norm() <= 1.0e-12 {
                return false;
            }
            let scale = lb.weight / la.weight;
            tx.iter().zip(ty).all(|(ta, tb)| {
                complex_close(ta.alpha, tb.alpha) && complex_close(ta.weight * scale, tb.weight)
            })
        }
        (StateSpec::FockLevel { n: x }, StateSpec::FockLevel { n: y }) => x == y,
        _ => false,
    }
}

/// R and 1 - R: the measured ratio of the two sides of the Crooks equality.
pub fn ratio_r(
    p_forward: f64,
    p_reverse: f64,
    prediction: &CrooksPrediction,
    k_t: f64,
) -> Result<(f64, f64)> {
    if p_reverse < UNDERFLOW_FLOOR {
        return Err(Error::DegenerateRatio {
            p_reverse,
        });
    }
    let r = (p_forward / p_reverse)
        * ((prediction.delta_f - prediction.delta_e_tilde) / k_t).exp();
    Ok((r, 1.0 - r))
}

/// Infer q from measured transition probabilities:
/// q = (kT / W_q) ln[(P_fwd / P_rev) exp(Delta F / kT)].
pub fn infer_q(p_forward: f64, p_reverse: f64, delta_f: f64, w_q: f64, k_t: f64) -> Result<f64> {
    if w_q == 0.0 {
        return Err(Error::UndefinedQ);
    }
    if p_reverse < UNDERFLOW_FLOOR || p_forward < UNDERFLOW_FLOOR {
        return Err(Error::DegenerateRatio {
            p_reverse: p_reverse.min(p_forward),
        });
    }
    Ok((k_t / w_q) * ((p_forward / p_reverse).ln() + delta_f / k_t))
}

/// Residuals of the six ladder-operator disentangling identities at one
/// parameter pair, dense matrices at the given truncation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IdentityReport {
    pub dim: usize,
    pub m: f64,
    pub n: f64,
    /// Max entrywise |LHS - RHS| over the lower dim/2 block, relative to the
    /// block's magnitude scale max(1, max |LHS|).
    pub residuals: [f64; 6],
}

/// Largest admissible |m|, |n|: beyond this the truncation error of the
/// unbounded-operator identities dominates the comparison.
pub const IDENTITY_PARAM_LIMIT: f64 = 0.3;

pub fn identity_oracle(dim: usize, params: &[(f64, f64)]) -> Result<Vec<IdentityReport>> {
    params
        .iter()
        .map(|&(m, n)| identity_residuals(dim, m, n))
        .collect()
}

pub fn identity_residuals(dim: usize, m: f64, n: f64) -> Result<IdentityReport> {
    if m.abs() > IDENTITY_PARAM_LIMIT || n.abs() > IDENTITY_PARAM_LIMIT {
        return Err(Error::invalid(format!(
            "identity oracle parameters must satisfy |m|, |n| <= {IDENTITY_PARAM_LIMIT}"
        )));
    }
    if dim < 8 {
        return Err(Error::invalid("identity oracle needs dim >= 8"));
    }

    let mut a = CMat::zeros(dim, dim);
    for k in 1..dim {
        a[(k - 1, k)] = c((k as f64).sqrt());
    }
    let ad = a.adjoint();
    let num = &ad * &a;
    let a_sq = &a * &a;
    let ad_sq = &ad * &ad;

    let cm = c(m);
    let cn = c(n);

    let mut residuals = [0.0f64; 6];

    // 1: e^{m n} braiding of e^{n a^dagger} through e^{m a^dagger a}
    {
        let lhs = expm(&(&num * cm)) * expm(&(&ad * cn)) * expm(&(&num * -cm));
        let rhs = expm(&(&ad * (cn * m.exp())));
        residuals[0] = block_residual(&lhs, &rhs);
    }
    // 2: e^{m a} e^{n a^dagger} = e^{mn} e^{n a^dagger} e^{m a}
    {
        let lhs = expm(&(&a * cm)) * expm(&(&ad * cn));
        let rhs = expm(&(&ad * cn)) * expm(&(&a * cm)) * c((m * n).exp());
        residuals[1] = block_residual(&lhs, &rhs);
    }
    // 3: e^{m a^2} e^{n a^dagger} = e^{m n^2} e^{n a^dagger} e^{m a^2} e^{2mn a}
    {
        let lhs = expm(&(&a_sq * cm)) * expm(&(&ad * cn));
        let rhs = expm(&(&ad * cn))
            * expm(&(&a_sq * cm))
            * expm(&(&a * c(2.0 * m * n)))
            * c((m * n * n).exp());
        residuals[2] = block_residual(&lhs, &rhs);
    }
    // 4 and 5: disentangling of e^{(m a^2 + n a^dagger^2)/2}
    {
        let lhs = expm(&((&a_sq * cm + &ad_sq * cn) * c(0.5)));
        let (p_up, diag, p_down, pref) = disentangle_coefficients(m, n);
        let rhs4 = expm(&(&ad_sq * p_up))
            * expm(&(&num * -diag))
            * expm(&(&a_sq * p_down))
            * pref.finv();
        residuals[3] = block_residual(&lhs, &rhs4);
        let rhs5 = expm(&(&a_sq * p_down))
            * expm(&(&num * diag))
            * expm(&(&ad_sq * p_up))
            * pref;
        residuals[4] = block_residual(&lhs, &rhs5);
    }
    // 6: e^{m a^2} e^{n a^dagger^2} normal ordering with prefactor
    // 1/sqrt(1 - 4mn)
    {
        let denom = 1.0 - 4.0 * m * n;
        if denom <= 0.0 {
            return Err(Error::invalid("identity 6 requires 4 m n < 1"));
        }
        let lhs = expm(&(&a_sq * cm)) * expm(&(&ad_sq * cn));
        let rhs = expm(&(&ad_sq * c(n / denom)))
            * expm(&(&num * c((1.0 / denom).ln())))
            * expm(&(&a_sq * c(m / denom)))
            * c(1.0 / denom.sqrt());
        residuals[5] = block_residual(&lhs, &rhs);
    }

    Ok(IdentityReport {
        dim,
        m,
        n,
        residuals,
    })
}

/// Coefficients (a^dagger^2 weight, ln cos term, a^2 weight, sqrt(cos)
/// prefactor) of the two-mode disentangling. Written in terms of tan(z)/z
/// and cos(z) with z^2 = mn, which are even in z, so the square-root branch
/// is immaterial for any parameter signs.
fn disentangle_coefficients(m: f64, n: f64) -> (Complex64, Complex64, Complex64, Complex64) {
    let z = Complex64::new(m * n, 0.0).sqrt();
    let tan_over_z = if z.norm() < 1.0e-30 {
        Complex64::new(1.0, 0.0)
    } else {
        z.tan() / z
    };
    let cos = z.cos();
    let p_up = c(0.5 * n) * tan_over_z;
    let p_down = c(0.5 * m) * tan_over_z;
    (p_up, cos.ln(), p_down, cos.sqrt())
}

/// Max entrywise deviation over the lower dim/2 block, normalised by the
/// block's magnitude scale so identities with large entries are compared
/// relatively.
fn block_residual(lhs: &CMat, rhs: &CMat) -> f64 {
    let half = lhs.nrows() / 2;
    let lhs_block = lhs.view((0, 0), (half, half));
    let rhs_block = rhs.view((0, 0), (half, half));
    let diff = max_abs_entry(&(lhs_block - rhs_block).into_owned());
    let scale = lhs_block
        .iter()
        .map(|z| z.norm())
        .fold(1.0f64, f64::max);
    diff / scale
}
