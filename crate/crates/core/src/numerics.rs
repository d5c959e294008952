//! Linear-algebra and evaluation kernels shared by the estimators.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result, SpecError};
use crate::parametric::{ArMethod, ArModel};
use crate::signal::AutocorrSeq;
use crate::spectrum::{FrequencyGrid, PowerSpectrum, FLAG_ZERO_RHO};

/// Relative tolerance for prediction-error clamping and reflection magnitudes.
pub const PREDICTION_TOL: f64 = 1e-9;
/// Smallest |A(f)|² accepted by [`ar_spectrum`] before capping.
pub const DENOMINATOR_FLOOR: f64 = 1e-300;

/// Dense square matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(invalid("matrix must be square and non-empty"));
        }
        Ok(Self {
            dim,
            data: rows.concat(),
        })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..dim * dim).map(|i| f(i / dim, i % dim)).collect();
        Self { dim, data }
    }

    /// Symmetric Toeplitz matrix T[i][j] = r(|i-j|) of size `dim`.
    pub fn toeplitz(r: &[f64], dim: usize) -> Result<Self> {
        if dim == 0 || r.len() < dim {
            return Err(invalid(format!(
                "toeplitz of size {dim} needs {dim} lags, got {}",
                r.len()
            )));
        }
        Ok(Self::from_fn(dim, |i, j| r[i.abs_diff(j)]))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    fn is_symmetric(&self, rel_tol: f64) -> bool {
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        (0..self.dim).all(|i| {
            (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= rel_tol * scale)
        })
    }
}

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky {
    dim: usize,
    lower: Vec<f64>,
}

impl Cholesky {
    /// Factors `matrix + loading·I`.
    pub fn factor(matrix: &Matrix, loading: f64) -> Result<Self> {
        if !loading.is_finite() || loading < 0.0 {
            return Err(invalid("diagonal loading must be finite and non-negative"));
        }
        if !matrix.is_symmetric(1e-10) {
            return Err(invalid("matrix is not symmetric"));
        }
        let n = matrix.dim;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = matrix.get(j, j) + loading;
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !d.is_finite() || d <= 0.0 {
                return Err(SpecError::SingularSystem(format!(
                    "cholesky pivot {j} is {d:e} (loading {loading:e})"
                )));
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            for i in j + 1..n {
                let mut s = matrix.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / d;
            }
        }
        Ok(Self { dim: n, lower: l })
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let l = &self.lower;
        let mut y = rhs.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= l[i * n + k] * y[k];
            }
            y[i] /= l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= l[k * n + i] * y[k];
            }
            y[i] /= l[i * n + i];
        }
        y
    }

    /// Full inverse, column by column.
    pub fn inverse(&self) -> Matrix {
        let n = self.dim;
        let mut data = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e);
            for i in 0..n {
                data[i * n + j] = col[i];
            }
        }
        // symmetrize rounding noise
        for i in 0..n {
            for j in 0..i {
                let m = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = m;
                data[j * n + i] = m;
            }
        }
        Matrix { dim: n, data }
    }
}

/// Solves (matrix + loading·I) y = rhs for symmetric positive-definite input.
pub fn solve_spd(matrix: &Matrix, rhs: &[f64], loading: f64) -> Result<Vec<f64>> {
    if rhs.len() != matrix.dim() {
        return Err(invalid(format!(
            "rhs length {} does not match matrix dimension {}",
            rhs.len(),
            matrix.dim()
        )));
    }
    Ok(Cholesky::factor(matrix, loading)?.solve(rhs))
}

/// Fits an order-`p` AR model to an autocorrelation sequence by the
/// Levinson-Durbin recursion on the Yule-Walker normal equations.
pub fn levinson_durbin(r: &AutocorrSeq, p: usize) -> Result<ArModel> {
    if p == 0 {
        return Err(invalid("AR order must be at least 1"));
    }
    r.require_lags(p)?;
    let r = r.values();
    let r0 = r[0];
    if r0.is_nan() || r0 <= 0.0 {
        return Err(SpecError::SingularSystem("r(0) must be positive".into()));
    }
    let tol = PREDICTION_TOL * r0;
    let mut a = vec![0.0; p + 1];
    let mut prev = vec![0.0; p + 1];
    let mut err = r0;
    for m in 1..=p {
        if err <= tol {
            return Err(SpecError::SingularSystem(format!(
                "prediction error vanished at order {}",
                m - 1
            )));
        }
        let acc = r[m] + (1..m).map(|j| a[j] * r[m - j]).sum::<f64>();
        let k = -acc / err;
        if k.abs() >= 1.0 + PREDICTION_TOL {
            return Err(SpecError::SingularSystem(format!(
                "reflection coefficient {k} at order {m}"
            )));
        }
        prev[..m].copy_from_slice(&a[..m]);
        for j in 1..m {
            a[j] = prev[j] + k * prev[m - j];
        }
        a[m] = k;
        err *= 1.0 - k * k;
        if err < -tol {
            return Err(SpecError::SingularSystem(format!(
                "negative prediction error {err:e} at order {m}"
            )));
        }
    }
    let coefficients = a[1..].to_vec();
    let rho = r0 + coefficients.iter().zip(&r[1..]).map(|(ak, rk)| ak * rk).sum::<f64>();
    let rho = clamp_rho(rho, tol)?;
    ArModel::new(coefficients, rho, ArMethod::YuleWalker)
}

pub(crate) fn clamp_rho(rho: f64, tol: f64) -> Result<f64> {
    if rho >= 0.0 {
        Ok(rho)
    } else if rho >= -tol {
        Ok(0.0)
    } else {
        Err(SpecError::SingularSystem(format!(
            "driving variance {rho:e} is negative"
        )))
    }
}

/// e(f) = [1, e^{-jω}, ..., e^{-j(M-1)ω}] with ω = 2πf.
pub fn steering_vector(f: f64, m: usize) -> Vec<Complex64> {
    let w = 2.0 * PI * f;
    (0..m).map(|k| Complex64::from_polar(1.0, -w * k as f64)).collect()
}

/// c(0) + 2 Σ_{k≥1} c(k) cos(2πfk): the Fourier sum of an even sequence.
pub fn even_cosine_sum(coeffs: &[f64], f: f64) -> f64 {
    let w = 2.0 * PI * f;
    let tail: f64 = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * (w * k as f64).cos())
        .sum();
    coeffs.first().copied().unwrap_or(0.0) + 2.0 * tail
}

/// S(f) = ρ / |1 + Σ a(k) e^{-j2πfk}|² over the grid.
///
/// Points where the denominator falls below [`DENOMINATOR_FLOOR`] are capped
/// at ρ/floor and listed in `capped`. A model with ρ = 0 (a perfectly
/// predictable record) is evaluated with ρ = [`DENOMINATOR_FLOOR`] and
/// flagged, so the pole structure stays visible.
pub fn ar_spectrum(model: &ArModel, grid: &FrequencyGrid) -> PowerSpectrum {
    let mut capped = Vec::new();
    let zero_rho = model.rho() == 0.0;
    let rho = if zero_rho { DENOMINATOR_FLOOR } else { model.rho() };
    let values = grid
        .points()
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let den = ar_denominator(model.coefficients(), f);
            if den < DENOMINATOR_FLOOR {
                capped.push(i);
                rho / DENOMINATOR_FLOOR
            } else {
                rho / den
            }
        })
        .collect();
    let mut s = PowerSpectrum::new(
        grid,
        values,
        model.method().name(),
        format!("p={}", model.order()),
    );
    s.capped = capped;
    if zero_rho {
        s.flags.push(FLAG_ZERO_RHO);
    }
    s
}

/// |1 + Σ a(k) e^{-j2πfk}|².
pub(crate) fn ar_denominator(a: &[f64], f: f64) -> f64 {
    let w = 2.0 * PI * f;
    let (mut re, mut im) = (1.0, 0.0);
    for (k, ak) in a.iter().enumerate() {
        let phase = w * (k + 1) as f64;
        re += ak * phase.cos();
        im -= ak * phase.sin();
    }
    re * re + im * im
}
