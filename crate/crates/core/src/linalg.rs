//! Dense complex linear algebra shared by the simulator: Hermitian
//! eigendecompositions, matrix functions, and trace norms.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Eigendecomposition H = V diag(w) V^dagger of a Hermitian matrix, with
/// eigenvalues sorted ascending so repeated runs are bit-identical.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: DVector<f64>,
    pub vectors: CMat,
}

impl HermitianEigen {
    pub fn new(matrix: &CMat) -> Result<Self> {
        let dim = matrix.nrows();
        let sym = nalgebra::linalg::SymmetricEigen::try_new(matrix.clone(), 1.0e-13, 10_000)
            .ok_or(Error::EigensolverFailure { dim })?;
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| sym.eigenvalues[a].total_cmp(&sym.eigenvalues[b]));
        let eigenvalues = DVector::from_iterator(dim, order.iter().map(|&k| sym.eigenvalues[k]));
        let mut vectors = CMat::zeros(dim, dim);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &sym.eigenvectors.column(src));
        }
        Ok(Self {
            eigenvalues,
            vectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// V f(w) V^dagger for a scalar function of the eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> CMat {
        self.apply_indexed(|_, w| f(w))
    }

    /// V f(k, w_k) V^dagger with the eigenvalue index exposed.
    pub fn apply_indexed(&self, f: impl Fn(usize, f64) -> Complex64) -> CMat {
        let dim = self.dim();
        let mut scaled = self.vectors.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            let fk = f(k, self.eigenvalues[k]);
            for entry in col.iter_mut() {
                *entry *= fk;
            }
        }
        let mut out = CMat::zeros(dim, dim);
        scaled.mul_to(&self.vectors.adjoint(), &mut out);
        out
    }

    /// f(H) psi without materialising the matrix function.
    pub fn apply_to_vec(&self, f: impl Fn(f64) -> Complex64, psi: &CVec) -> CVec {
        let mut coeffs = self.vectors.adjoint() * psi;
        for (k, entry) in coeffs.iter_mut().enumerate() {
            *entry *= f(self.eigenvalues[k]);
        }
        &self.vectors * coeffs
    }

    /// exp(-i H t / hbar) as a dense matrix.
    pub fn propagator(&self, t: f64, hbar: f64) -> CMat {
        self.apply(|w| (-I * (w * t / hbar)).exp())
    }

    /// exp(-i H t / hbar) psi.
    pub fn evolve(&self, psi: &CVec, t: f64, hbar: f64) -> CVec {
        self.apply_to_vec(|w| (-I * (w * t / hbar)).exp(), psi)
    }

    /// exp(-H / (2 kT)) psi, the half Gibbs weighting.
    pub fn half_gibbs(&self, psi: &CVec, k_t: f64) -> CVec {
        self.apply_to_vec(|w| c((-w / (2.0 * k_t)).exp()), psi)
    }
}

/// Scaling-and-squaring Taylor evaluation of exp(A) for a general complex
/// matrix. Adequate for the operator-identity oracle where the scaled norm is
/// modest; Hermitian exponentials elsewhere go through `HermitianEigen`.
pub fn expm(a: &CMat) -> CMat {
    let dim = a.nrows();
    let norm: f64 = a
        .row_iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scale = 2.0f64.powi(-(squarings as i32));
    let scaled = a * c(scale);

    let mut result = CMat::identity(dim, dim);
    let mut term = CMat::identity(dim, dim);
    for k in 1..=30 {
        term = (&term * &scaled) / c(k as f64);
        result += &term;
        let term_norm: f64 = term.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if term_norm < 1.0e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Trace norm of a Hermitian matrix: sum of the absolute eigenvalues, which
/// are its singular values.
pub fn trace_norm_hermitian(m: &CMat) -> Result<f64> {
    let eig = HermitianEigen::new(m)?;
    Ok(eig.eigenvalues.iter().map(|w| w.abs()).sum())
}

/// Trace norm of u u^dagger - v v^dagger. The difference of two dyads has at
/// most two nonzero singular values, known in closed form from the Gram data.
pub fn dyad_difference_trace_norm(u: &CVec, v: &CVec) -> f64 {
    let nu = u.norm_squared();
    let nv = v.norm_squared();
    let uv = u.dotc(v).norm_sqr();
    let disc = (nu + nv) * (nu + nv) - 4.0 * uv;
    disc.max(0.0).sqrt()
}

pub fn max_abs_entry(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest deviation from Hermiticity, max |M - M^dagger|.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// |<a|b>|^2 for unit vectors.
pub fn fidelity(a: &CVec, b: &CVec) -> f64 {
    a.dotc(b).norm_sqr()
}
