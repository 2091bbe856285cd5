//! Wigner function of battery states on a phase-space grid.
//!
//! Quadrature units: x = (a + a^dagger)/sqrt(2) and p = (a -
//! a^dagger)/(i sqrt(2)), i.e. hbar = 1 and [x, p] = i, so the vacuum Wigner
//! function peaks at 1/pi. These axes are sqrt(2) times the dimensionless
//! position X used by the splitting profiles.
//!
//! W(x, p) = (1/pi) Int psi(x+y) conj(psi(x-y)) e^{-2 i p y} dy, evaluated by
//! trapezoid quadrature on a lattice fine enough to resolve the largest
//! momentum on the grid. The position wavefunction comes from the
//! normalised Hermite-function recurrence, stable far beyond n = 170.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{BatteryState, FockSpace};

/// Requested grid geometry; `half_span` of None auto-sizes from the state
/// support.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WignerGridSpec {
    pub x_points: usize,
    pub p_points: usize,
    pub half_span: Option<f64>,
}

impl Default for WignerGridSpec {
    fn default() -> Self {
        Self {
            x_points: 512,
            p_points: 512,
            half_span: None,
        }
    }
}

/// Wigner values on a uniform grid; `values[(j, i)]` is W(x_i, p_j).
#[derive(Debug, Clone)]
pub struct WignerGrid {
    pub x_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    pub values: DMatrix<f64>,
    pub min_value: f64,
}

impl WignerGrid {
    pub fn step_x(&self) -> f64 {
        self.x_axis[1] - self.x_axis[0]
    }

    pub fn step_p(&self) -> f64 {
        self.p_axis[1] - self.p_axis[0]
    }

    /// Grid quadrature of W over the whole plane; 1 for a faithful grid.
    pub fn integral(&self) -> f64 {
        self.values.sum() * self.step_x() * self.step_p()
    }

    /// Position marginal Int W dp per x column.
    pub fn position_marginal(&self) -> Vec<f64> {
        let dp = self.step_p();
        (0..self.x_axis.len())
            .map(|i| self.values.column(i).sum() * dp)
            .collect()
    }
}

/// Integrated negative volume, Int max(-W, 0) dx dp.
pub fn negativity_volume(grid: &WignerGrid) -> f64 {
    let cell = grid.step_x() * grid.step_p();
    grid.values.iter().map(|w| (-w).max(0.0)).sum::<f64>() * cell
}

/// psi(x) = sum_n c_n phi_n(x) in quadrature units, with the normalised
/// Hermite-function three-term recurrence evaluated in a streaming pass.
pub fn position_wavefunction(state: &BatteryState, x: f64) -> Complex64 {
    let amps = state.amplitudes();
    let dim = amps.len();
    let mut phi_prev = std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
    let mut acc = amps[0] * phi_prev;
    if dim == 1 {
        return acc;
    }
    let mut phi = std::f64::consts::SQRT_2 * x * phi_prev;
    acc += amps[1] * phi;
    for n in 1..dim - 1 {
        let nf = n as f64;
        let phi_next = (2.0 / (nf + 1.0)).sqrt() * x * phi - (nf / (nf + 1.0)).sqrt() * phi_prev;
        acc += amps[n + 1] * phi_next;
        phi_prev = phi;
        phi = phi_next;
    }
    acc
}

pub fn wigner_of_state(
    space: &FockSpace,
    state: &BatteryState,
    spec: &WignerGridSpec,
) -> Result<WignerGrid> {
    let _ = space;
    if spec.x_points < 2 || spec.p_points < 2 {
        return Err(Error::invalid("wigner grid needs at least 2x2 points"));
    }
    // support radius in quadrature units from the 99.9% Fock mass
    let n_support = state.support_level(0.999);
    let support = (2.0 * n_support as f64 + 1.0).sqrt();
    let half_span = match spec.half_span {
        Some(span) => {
            if span < support {
                return Err(Error::GridTooSmall {
                    support,
                    hull: span,
                });
            }
            span
        }
        None => support + 3.0,
    };

    let x_axis: Vec<f64> = (0..spec.x_points)
        .map(|i| -half_span + 2.0 * half_span * i as f64 / (spec.x_points - 1) as f64)
        .collect();
    let p_axis: Vec<f64> = (0..spec.p_points)
        .map(|j| -half_span + 2.0 * half_span * j as f64 / (spec.p_points - 1) as f64)
        .collect();

    // The integrand oscillates as e^{-2ipy}; sample y at >= 8 points per
    // period of the largest momentum.
    let p_max = half_span;
    let h = (std::f64::consts::PI / (8.0 * p_max)).min(0.05);
    let m_max = (half_span / h).ceil() as usize;

    // psi evaluated on demand per column; the Hermite recurrence at one
    // point costs O(dim) with no allocation.
    let rows: Vec<Vec<f64>> = x_axis
        .par_iter()
        .map(|&x| {
            // f(y_m) = psi(x + y_m) conj(psi(x - y_m)), m = 0..m_max
            let mut f = Vec::with_capacity(m_max + 1);
            for m in 0..=m_max {
                let y = m as f64 * h;
                let plus = position_wavefunction(state, x + y);
                let minus = position_wavefunction(state, x - y);
                f.push(plus * minus.conj());
            }
            // trapezoid over the symmetric lattice using f(-y) = conj(f(y))
            p_axis
                .iter()
                .map(|&p| {
                    let rot = Complex64::from_polar(1.0, -2.0 * p * h);
                    let mut phase = rot;
                    let mut acc = f[0].re * 0.5; // half weight at y = 0 counted twice below
                    for fm in f.iter().skip(1) {
                        acc += (fm * phase).re;
                        phase *= rot;
                    }
                    2.0 * acc * h / std::f64::consts::PI
                })
                .collect()
        })
        .collect();

    let mut values = DMatrix::zeros(spec.p_points, spec.x_points);
    for (i, row) in rows.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            values[(j, i)] = *w;
        }
    }
    let min_value = values.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(WignerGrid {
        x_axis,
        p_axis,
        values,
        min_value,
    })
}
