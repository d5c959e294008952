//! Capon minimum-variance, Yule-Walker and modified-covariance estimators.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, SpecError};
use crate::numerics::{
    ar_spectrum, clamp_rho, even_cosine_sum, levinson_durbin, solve_spd, Cholesky, Matrix,
    PREDICTION_TOL,
};
use crate::signal::{AutocorrSeq, RealSignal};
use crate::spectrum::{FrequencyGrid, PowerSpectrum, FLAG_LOADED};

/// Relative diagonal loading applied to the Capon matrix when plain
/// factorization fails: ε = CAPON_LOADING · trace(R) / M.
pub const CAPON_LOADING: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArMethod {
    YuleWalker,
    ModifiedCovariance,
}

impl ArMethod {
    pub fn name(self) -> &'static str {
        match self {
            ArMethod::YuleWalker => "yule_walker",
            ArMethod::ModifiedCovariance => "modcov",
        }
    }
}

/// All-pole model 1/(1 + Σ a(k) z^-k) driven by white noise of variance ρ.
#[derive(Debug, Clone, PartialEq)]
pub struct ArModel {
    coefficients: Vec<f64>,
    rho: f64,
    method: ArMethod,
}

impl ArModel {
    pub fn new(coefficients: Vec<f64>, rho: f64, method: ArMethod) -> Result<Self> {
        if coefficients.iter().any(|a| !a.is_finite()) {
            return Err(invalid("AR coefficients must be finite"));
        }
        if !rho.is_finite() || rho < 0.0 {
            return Err(invalid(format!("driving variance {rho} must be finite and >= 0")));
        }
        Ok(Self {
            coefficients,
            rho,
            method,
        })
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// a(1..=p).
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn method(&self) -> ArMethod {
        self.method
    }
}

/// Capon spectrum 1 / (eᴴ R⁻¹ e) with R the M×M Toeplitz matrix of r(0..M-1).
pub fn capon_spectrum(r: &AutocorrSeq, m: usize, grid: &FrequencyGrid) -> Result<PowerSpectrum> {
    if m == 0 {
        return Err(invalid("Capon dimension M must be at least 1"));
    }
    r.require_lags(m - 1)?;
    let matrix = Matrix::toeplitz(r.values(), m)?;
    let (chol, loaded) = match Cholesky::factor(&matrix, 0.0) {
        Ok(c) => (c, false),
        Err(SpecError::SingularSystem(_)) => {
            let eps = CAPON_LOADING * matrix.trace() / m as f64;
            (Cholesky::factor(&matrix, eps)?, true)
        }
        Err(e) => return Err(e),
    };
    let inv = chol.inverse();
    // eᴴ Q e = Σ_d q(d) e^{jωd} with q(d) the d-th diagonal sum of Q.
    let diag_sums: Vec<f64> = (0..m)
        .map(|d| (0..m - d).map(|i| inv.get(i + d, i)).sum())
        .collect();
    let values = grid
        .points()
        .iter()
        .map(|&f| {
            let quad = even_cosine_sum(&diag_sums, f);
            if quad > 0.0 {
                Ok(1.0 / quad)
            } else {
                Err(SpecError::SingularSystem(format!(
                    "Capon quadratic form {quad:e} at f = {f}"
                )))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut s = PowerSpectrum::new(grid, values, "capon", format!("M={m}"));
    if loaded {
        s.flags.push(FLAG_LOADED);
    }
    Ok(s)
}

/// Yule-Walker AR fit through Levinson-Durbin, then its rational spectrum.
pub fn yule_walker_spectrum(
    r: &AutocorrSeq,
    p: usize,
    grid: &FrequencyGrid,
) -> Result<(ArModel, PowerSpectrum)> {
    let model = levinson_durbin(r, p)?;
    let spectrum = ar_spectrum(&model, grid);
    Ok((model, spectrum))
}

/// Forward-backward covariance table c(j,k), 0 ≤ j,k ≤ p.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceTable {
    order: usize,
    values: Vec<f64>,
}

impl CovarianceTable {
    /// c(j,k) = 1/(2(N-p)) Σ_{n=p}^{N-1} [x(n-j)x(n-k) + x(n-p+j)x(n-p+k)].
    pub fn forward_backward(x: &RealSignal, p: usize) -> Result<Self> {
        let n = x.len();
        if n < 2 * p + 1 {
            return Err(SpecError::DataTooShort {
                needed: 2 * p + 1,
                available: n,
            });
        }
        let s = x.samples();
        let dim = p + 1;
        let norm = 1.0 / (2.0 * (n - p) as f64);
        let mut values = vec![0.0; dim * dim];
        for j in 0..dim {
            for k in j..dim {
                let sum: f64 = (p..n)
                    .map(|t| s[t - j] * s[t - k] + s[t - p + j] * s[t - p + k])
                    .sum();
                values[j * dim + k] = sum * norm;
                values[k * dim + j] = sum * norm;
            }
        }
        Ok(Self { order: p, values })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.values[j * (self.order + 1) + k]
    }

    /// Σ_j Σ_k b(j) c(j,k) b(k) with b = [1, a(1..p)]: the mean forward plus
    /// backward squared prediction error of the coefficients `a`.
    pub fn prediction_error(&self, a: &[f64]) -> f64 {
        let b: Vec<f64> = std::iter::once(1.0).chain(a.iter().copied()).collect();
        let dim = self.order + 1;
        (0..dim)
            .map(|j| (0..dim).map(|k| b[j] * self.get(j, k) * b[k]).sum::<f64>())
            .sum()
    }
}

/// Modified covariance (forward-backward least squares) AR fit.
pub fn modcov_fit(x: &RealSignal, p: usize) -> Result<ArModel> {
    if p == 0 {
        return Err(invalid("AR order must be at least 1"));
    }
    let c = CovarianceTable::forward_backward(x, p)?;
    let normal = Matrix::from_fn(p, |j, k| c.get(j + 1, k + 1));
    let rhs: Vec<f64> = (1..=p).map(|j| -c.get(j, 0)).collect();
    let a = solve_spd(&normal, &rhs, 0.0)?;
    let rho = c.get(0, 0) + (1..=p).map(|k| a[k - 1] * c.get(0, k)).sum::<f64>();
    let rho = clamp_rho(rho, PREDICTION_TOL * c.get(0, 0))?;
    ArModel::new(a, rho, ArMethod::ModifiedCovariance)
}

pub fn modcov_spectrum(
    x: &RealSignal,
    p: usize,
    grid: &FrequencyGrid,
) -> Result<(ArModel, PowerSpectrum)> {
    let model = modcov_fit(x, p)?;
    let spectrum = ar_spectrum(&model, grid);
    Ok((model, spectrum))
}
