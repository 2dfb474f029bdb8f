//! Least-squares helper shared by the ADF and Granger regressions.

use nalgebra::{Cholesky, DMatrix, DVector};

use super::StatError;

/// An ordinary-least-squares fit with the pieces hypothesis tests need.
#[derive(Debug, Clone)]
pub struct Ols {
    pub coef: DVector<f64>,
    pub cov: DMatrix<f64>,
    pub se: Vec<f64>,
    pub residuals: DVector<f64>,
    pub rss: f64,
    pub sigma2: f64,
    pub n: usize,
    pub k: usize,
}

impl Ols {
    /// Gaussian AIC up to an additive constant: `n ln(RSS/n) + 2k`.
    pub fn aic(&self) -> f64 {
        self.n as f64 * (self.rss / self.n as f64).ln() + 2.0 * self.k as f64
    }
}

/// Solves `y ~ X` by normal equations with a Cholesky factorization.
pub fn ols(x: &DMatrix<f64>, y: &DVector<f64>) -> Result<Ols, StatError> {
    let n = x.nrows();
    let k = x.ncols();
    if n != y.len() {
        return Err(StatError::LengthMismatch(n, y.len()));
    }
    if n <= k {
        return Err(StatError::SeriesTooShort { need: k + 1, got: n });
    }
    let xtx = x.transpose() * x;
    let xty = x.transpose() * y;
    let chol = Cholesky::new(xtx.clone()).ok_or(StatError::SingularRegression)?;
    // Reject numerically rank-deficient designs that squeak past Cholesky.
    let diag = chol.l_dirty().diagonal();
    let max_d = diag.amax();
    if diag.iter().any(|d| *d <= 1e-10 * max_d) {
        return Err(StatError::SingularRegression);
    }
    let coef = chol.solve(&xty);
    let residuals = y - x * &coef;
    let rss = residuals.dot(&residuals);
    let sigma2 = rss / (n - k) as f64;
    let cov = chol.inverse() * sigma2;
    let se = (0..k).map(|i| cov[(i, i)].max(0.0).sqrt()).collect();
    Ok(Ols {
        coef,
        cov,
        se,
        residuals,
        rss,
        sigma2,
        n,
        k,
    })
}
