//! Augmented Dickey-Fuller unit-root test with AIC lag selection.

use nalgebra::{DMatrix, DVector};

use super::linreg::ols;
use super::StatError;
use crate::series::DailySeries;

/// Deterministic terms included in the test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegressionKind {
    NoConstant,
    Constant,
    ConstantTrend,
}

impl RegressionKind {
    fn deterministic_terms(self) -> usize {
        match self {
            RegressionKind::NoConstant => 0,
            RegressionKind::Constant => 1,
            RegressionKind::ConstantTrend => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RegressionKind::NoConstant => "none",
            RegressionKind::Constant => "constant",
            RegressionKind::ConstantTrend => "constant_trend",
        }
    }
}

/// Dickey-Fuller critical values at the three conventional levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalValues {
    pub pct1: f64,
    pub pct5: f64,
    pub pct10: f64,
}

// MacKinnon (2010) response-surface coefficients for the single-series
// Dickey-Fuller tau distribution: cv = b0 + b1/T + b2/T^2 + b3/T^3.
const TAU_NC: [[f64; 4]; 3] = [
    [-2.56574, -2.2358, -3.627, 0.0],
    [-1.94100, -0.2686, -3.365, 31.223],
    [-1.61682, 0.2656, -2.714, 25.364],
];
const TAU_C: [[f64; 4]; 3] = [
    [-3.43035, -6.5393, -16.786, -79.433],
    [-2.86154, -2.8903, -4.234, -40.040],
    [-2.56677, -1.5384, -2.809, 0.0],
];
const TAU_CT: [[f64; 4]; 3] = [
    [-3.95877, -9.0531, -28.428, -134.155],
    [-3.41049, -4.3904, -9.036, -45.374],
    [-3.12705, -2.5856, -3.925, -22.380],
];

impl CriticalValues {
    /// Critical values for an effective sample of `n` observations.
    pub fn for_sample(kind: RegressionKind, n: usize) -> Self {
        let table = match kind {
            RegressionKind::NoConstant => &TAU_NC,
            RegressionKind::Constant => &TAU_C,
            RegressionKind::ConstantTrend => &TAU_CT,
        };
        let t = n as f64;
        let eval = |b: &[f64; 4]| b[0] + b[1] / t + b[2] / (t * t) + b[3] / (t * t * t);
        Self {
            pct1: eval(&table[0]),
            pct5: eval(&table[1]),
            pct10: eval(&table[2]),
        }
    }
}

/// Outcome of the unit-root test. Rejection (a statistic below the 5%
/// critical value) indicates stationarity.
#[derive(Debug, Clone)]
pub struct AdfResult {
    pub statistic: f64,
    pub lags_used: usize,
    pub regression_kind: RegressionKind,
    pub critical_values: CriticalValues,
    pub stationary_at_5pct: bool,
    pub n_effective: usize,
}

/// Runs the ADF regression `Δy_t = α + βt + γ·y_{t-1} + Σ δ_j Δy_{t-j} + ε`
/// (deterministic terms per `kind`), selecting the augmentation order by AIC
/// over `0..=max_lags` on a common sample and refitting the chosen order on
/// its full sample.
pub fn adf_test(
    series: &DailySeries,
    max_lags: usize,
    kind: RegressionKind,
) -> Result<AdfResult, StatError> {
    let y = series.values();
    let n = y.len();
    if n < 20 + max_lags {
        return Err(StatError::SeriesTooShort {
            need: 20 + max_lags,
            got: n,
        });
    }
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();

    // Order selection on the sample every candidate can use.
    let mut best = (0usize, f64::INFINITY);
    for lags in 0..=max_lags {
        let fit = adf_regression(y, &dy, lags, max_lags, kind)?;
        let aic = fit.aic();
        if aic < best.1 {
            best = (lags, aic);
        }
    }
    let lags = best.0;

    // Final fit on the full sample available for the chosen order.
    let fit = adf_regression(y, &dy, lags, lags, kind)?;
    let gamma_idx = kind.deterministic_terms();
    let statistic = fit.coef[gamma_idx] / fit.se[gamma_idx];
    let critical_values = CriticalValues::for_sample(kind, fit.n);
    Ok(AdfResult {
        statistic,
        lags_used: lags,
        regression_kind: kind,
        critical_values,
        stationary_at_5pct: statistic < critical_values.pct5,
        n_effective: fit.n,
    })
}

/// Builds and fits the ADF design for `lags` augmentation terms, starting
/// the sample late enough that `sample_lags` terms would fit (so candidates
/// with different orders can share a sample during selection).
fn adf_regression(
    y: &[f64],
    dy: &[f64],
    lags: usize,
    sample_lags: usize,
    kind: RegressionKind,
) -> Result<super::linreg::Ols, StatError> {
    // dy[t] = y[t+1] - y[t]; row for dy[t] uses level y[t] and dy[t-1..t-lags]
    let first = sample_lags; // first usable index into dy
    let rows = dy.len() - first;
    let det = kind.deterministic_terms();
    let k = det + 1 + lags;
    if rows <= k + 1 {
        return Err(StatError::SeriesTooShort { need: k + 2, got: rows });
    }
    let mut x = DMatrix::zeros(rows, k);
    let mut b = DVector::zeros(rows);
    for (row, t) in (first..dy.len()).enumerate() {
        let mut col = 0;
        if det >= 1 {
            x[(row, col)] = 1.0;
            col += 1;
        }
        if det == 2 {
            x[(row, col)] = (row + 1) as f64;
            col += 1;
        }
        x[(row, col)] = y[t];
        col += 1;
        for j in 1..=lags {
            x[(row, col)] = dy[t - j];
            col += 1;
        }
        b[row] = dy[t];
    }
    ols(&x, &b)
}
