//! Bivariate Granger causality via a Wald test on the lagged-cause block.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use statrs::distribution::{ChiSquared, ContinuousCDF, FisherSnedecor};

use super::adf::{adf_test, AdfResult, RegressionKind};
use super::linreg::{ols, Ols};
use super::StatError;
use crate::series::DailySeries;
use crate::signals::SignalSet;

/// Wald-form Granger test outcome for one (cause, effect, lag) triple.
#[derive(Debug, Clone)]
pub struct GrangerResult {
    pub cause: String,
    pub effect: String,
    pub lag_order: usize,
    pub chi2: f64,
    pub p_value: f64,
    pub significant_at_5pct: bool,
}

/// F-form variant of the same regression, for callers that prefer it.
#[derive(Debug, Clone)]
pub struct GrangerFResult {
    pub cause: String,
    pub effect: String,
    pub lag_order: usize,
    pub f_stat: f64,
    pub p_value: f64,
    pub significant_at_5pct: bool,
}

/// Regresses the effect on its own `lag_order` lags plus the cause's
/// `lag_order` lags (with intercept) and Wald-tests the joint null that the
/// cause coefficients are all zero. Both series are expected stationary;
/// difference first where the ADF screen says so.
pub fn granger_test(
    cause: &DailySeries,
    effect: &DailySeries,
    lag_order: usize,
) -> Result<GrangerResult, StatError> {
    let (fit, rows) = granger_regression(cause, effect, lag_order)?;
    let wald = wald_statistic(&fit, lag_order)?;
    let dist = ChiSquared::new(lag_order as f64).expect("valid dof");
    let p_value = 1.0 - dist.cdf(wald);
    let _ = rows;
    Ok(GrangerResult {
        cause: cause.name().to_string(),
        effect: effect.name().to_string(),
        lag_order,
        chi2: wald,
        p_value,
        significant_at_5pct: p_value < 0.05,
    })
}

/// Same regression, F statistic `W / L` against `F(L, n - k)`.
pub fn granger_test_f(
    cause: &DailySeries,
    effect: &DailySeries,
    lag_order: usize,
) -> Result<GrangerFResult, StatError> {
    let (fit, rows) = granger_regression(cause, effect, lag_order)?;
    let wald = wald_statistic(&fit, lag_order)?;
    let f_stat = wald / lag_order as f64;
    let dist = FisherSnedecor::new(lag_order as f64, (rows - fit.k) as f64).expect("valid dof");
    let p_value = 1.0 - dist.cdf(f_stat);
    Ok(GrangerFResult {
        cause: cause.name().to_string(),
        effect: effect.name().to_string(),
        lag_order,
        f_stat,
        p_value,
        significant_at_5pct: p_value < 0.05,
    })
}

fn granger_regression(
    cause: &DailySeries,
    effect: &DailySeries,
    lag_order: usize,
) -> Result<(Ols, usize), StatError> {
    assert!(lag_order >= 1, "lag_order must be at least 1");
    let joined = SignalSet::inner_join(vec![
        cause.clone().with_name("__cause"),
        effect.clone().with_name("__effect"),
    ])?;
    let xs = joined.get("__cause").unwrap().values().to_vec();
    let ys = joined.get("__effect").unwrap().values().to_vec();
    let n = ys.len();
    if n < 10 * lag_order {
        return Err(StatError::SeriesTooShort {
            need: 10 * lag_order,
            got: n,
        });
    }
    let rows = n - lag_order;
    let k = 1 + 2 * lag_order;
    let mut x = DMatrix::zeros(rows, k);
    let mut b = DVector::zeros(rows);
    for (row, t) in (lag_order..n).enumerate() {
        x[(row, 0)] = 1.0;
        for j in 1..=lag_order {
            x[(row, j)] = ys[t - j];
            x[(row, lag_order + j)] = xs[t - j];
        }
        b[row] = ys[t];
    }
    Ok((ols(&x, &b)?, rows))
}

/// Wald statistic for the hypothesis that the trailing `block` coefficients
/// are jointly zero.
fn wald_statistic(fit: &Ols, block: usize) -> Result<f64, StatError> {
    let k = fit.coef.len();
    let beta = fit.coef.rows(k - block, block).into_owned();
    let cov = fit.cov.view((k - block, k - block), (block, block)).into_owned();
    let inv = cov.try_inverse().ok_or(StatError::SingularRegression)?;
    Ok((beta.transpose() * inv * beta)[(0, 0)].max(0.0))
}

/// Per-series ADF verdict recorded by the screening table.
#[derive(Debug, Clone)]
pub struct AdfScreenRow {
    pub name: String,
    pub adf: AdfResult,
    pub differenced: bool,
}

/// The Granger screening table plus the ADF/differencing decisions that
/// preceded it.
#[derive(Debug)]
pub struct GrangerScreen {
    pub adf_rows: Vec<AdfScreenRow>,
    pub lags: Vec<usize>,
    pub results: Vec<GrangerResult>,
}

/// ADF-tests every series (target included), first-differences the
/// non-stationary ones, then runs the Wald Granger test of every predictor
/// against the target at lags 1..=3. A predictor named like the target is
/// excluded; a series never Granger-causes itself in the screen.
pub fn granger_screen(
    signals: &SignalSet,
    target: &DailySeries,
    adf_max_lags: usize,
    adf_kind: RegressionKind,
) -> Result<GrangerScreen, StatError> {
    let mut adf_rows = Vec::new();
    let stationary = |s: &DailySeries| -> Result<(DailySeries, AdfScreenRow), StatError> {
        let adf = adf_test(s, adf_max_lags, adf_kind)?;
        let differenced = !adf.stationary_at_5pct;
        let out = if differenced { s.difference(1)? } else { s.clone() };
        Ok((
            out,
            AdfScreenRow {
                name: s.name().to_string(),
                adf,
                differenced,
            },
        ))
    };

    let (target_ready, target_row) = stationary(target)?;
    adf_rows.push(target_row);
    let mut predictors = Vec::new();
    for s in signals.series() {
        if s.name() == target.name() {
            continue;
        }
        let (ready, row) = stationary(s)?;
        adf_rows.push(row);
        predictors.push(ready);
    }

    let lags = vec![1usize, 2, 3];
    let mut results = Vec::with_capacity(predictors.len() * lags.len());
    for predictor in &predictors {
        for &lag in &lags {
            results.push(granger_test(predictor, &target_ready, lag)?);
        }
    }
    Ok(GrangerScreen {
        adf_rows,
        lags,
        results,
    })
}

impl GrangerScreen {
    pub fn result(&self, cause: &str, lag: usize) -> Option<&GrangerResult> {
        self.results
            .iter()
            .find(|r| r.cause == cause && r.lag_order == lag)
    }

    /// CSV export: `cause,lag,chi2,p_value,significant`.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "cause,lag,chi2,p_value,significant")?;
        for r in &self.results {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.cause, r.lag_order, r.chi2, r.p_value, r.significant_at_5pct
            )?;
        }
        Ok(())
    }

    /// Aligned plain-text chi-squared table, `*` at p < 0.05.
    pub fn write_text(&self, mut w: impl Write, n: Option<usize>) -> std::io::Result<()> {
        let mut names: Vec<&str> = Vec::new();
        for r in &self.results {
            if !names.contains(&r.cause.as_str()) {
                names.push(&r.cause);
            }
        }
        let name_width = names
            .iter()
            .map(|r| r.len())
            .chain(["Variable".len()].into_iter())
            .max()
            .unwrap_or(8);
        write!(w, "{:<name_width$}", "Variable")?;
        for lag in &self.lags {
            let header = match lag {
                1 => "First Lag".to_string(),
                2 => "Second Lag".to_string(),
                3 => "Third Lag".to_string(),
                other => format!("Lag {other}"),
            };
            write!(w, "  {header:>12}")?;
        }
        writeln!(w)?;
        for name in names {
            write!(w, "{name:<name_width$}")?;
            for lag in &self.lags {
                let text = match self.result(name, *lag) {
                    Some(r) => format!(
                        "{:.3}{}",
                        r.chi2,
                        if r.significant_at_5pct { "*" } else { "" }
                    ),
                    None => String::new(),
                };
                write!(w, "  {text:>12}")?;
            }
            writeln!(w)?;
        }
        if let Some(n) = n {
            writeln!(w, "N = {n}; *p<0.05")?;
        } else {
            writeln!(w, "*p<0.05")?;
        }
        Ok(())
    }

    /// CSV of the ADF screen: `name,statistic,lags,cv_5pct,stationary,differenced`.
    pub fn write_adf_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "name,statistic,lags_used,kind,cv_1pct,cv_5pct,cv_10pct,stationary_at_5pct,differenced")?;
        for row in &self.adf_rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                row.name,
                row.adf.statistic,
                row.adf.lags_used,
                row.adf.regression_kind.label(),
                row.adf.critical_values.pct1,
                row.adf.critical_values.pct5,
                row.adf.critical_values.pct10,
                row.adf.stationary_at_5pct,
                row.differenced
            )?;
        }
        Ok(())
    }
}
