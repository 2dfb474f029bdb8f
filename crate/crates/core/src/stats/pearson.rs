//! Pearson correlation screening and the predictor-by-lag table.

use std::io::Write;

use statrs::distribution::{ContinuousCDF, StudentsT};

use super::StatError;
use crate::series::DailySeries;
use crate::signals::SignalSet;

/// One correlation measurement between a (possibly lagged) predictor and the
/// target.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationEntry {
    pub predictor: String,
    /// Business-day lag applied to the predictor; 0 for contemporaneous.
    pub lag: usize,
    pub r: f64,
    pub p_value: f64,
    pub n: usize,
}

impl CorrelationEntry {
    pub fn significant_at_5pct(&self) -> bool {
        self.p_value < 0.05
    }
}

/// Pearson correlation on the date intersection of the two series, with a
/// two-sided p-value from the t distribution on `n - 2` degrees of freedom.
pub fn pearson(x: &DailySeries, y: &DailySeries) -> Result<CorrelationEntry, StatError> {
    let joined = SignalSet::inner_join(vec![x.clone().with_name("__x"), y.clone().with_name("__y")])?;
    let xs = joined.get("__x").unwrap().values();
    let ys = joined.get("__y").unwrap().values();
    let n = xs.len();
    if n < 3 {
        return Err(StatError::SeriesTooShort { need: 3, got: n });
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mx, my) = (mean(xs), mean(ys));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in xs.iter().zip(ys) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 {
        return Err(StatError::ZeroVariance(x.name().to_string()));
    }
    if syy == 0.0 {
        return Err(StatError::ZeroVariance(y.name().to_string()));
    }
    let r = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    let p_value = if (1.0 - r * r) <= f64::EPSILON {
        0.0
    } else {
        let t = r * ((n as f64 - 2.0) / (1.0 - r * r)).sqrt();
        let dist = StudentsT::new(0.0, 1.0, n as f64 - 2.0).expect("valid dof");
        2.0 * (1.0 - dist.cdf(t.abs()))
    };
    Ok(CorrelationEntry {
        predictor: x.name().to_string(),
        lag: 0,
        r,
        p_value,
        n,
    })
}

/// One table cell: either a correlation entry or the screening failure that
/// produced no number (e.g. a constant predictor).
#[derive(Debug)]
pub struct CorrelationCell {
    pub predictor: String,
    pub lag: usize,
    pub entry: Result<CorrelationEntry, StatError>,
}

/// Predictor-by-lag correlation table against the target.
#[derive(Debug)]
pub struct CorrelationTable {
    pub lags: Vec<usize>,
    pub cells: Vec<CorrelationCell>,
}

/// Correlates every signal, lagged by each requested lag, with the target on
/// their joined span. Failed cells are kept in the table rather than
/// aborting the screen.
pub fn correlation_table(
    signals: &SignalSet,
    target: &DailySeries,
    lags: &[usize],
) -> CorrelationTable {
    let mut cells = Vec::with_capacity(signals.series().len() * lags.len());
    for predictor in signals.series() {
        for &lag in lags {
            let entry = predictor
                .lag(lag)
                .map_err(StatError::from)
                .and_then(|lagged| pearson(&lagged, target))
                .map(|mut e| {
                    e.predictor = predictor.name().to_string();
                    e.lag = lag;
                    e
                });
            cells.push(CorrelationCell {
                predictor: predictor.name().to_string(),
                lag,
                entry,
            });
        }
    }
    CorrelationTable {
        lags: lags.to_vec(),
        cells,
    }
}

impl CorrelationTable {
    fn rows(&self) -> Vec<&str> {
        let mut names: Vec<&str> = Vec::new();
        for cell in &self.cells {
            if !names.contains(&cell.predictor.as_str()) {
                names.push(&cell.predictor);
            }
        }
        names
    }

    fn cell(&self, predictor: &str, lag: usize) -> Option<&CorrelationCell> {
        self.cells
            .iter()
            .find(|c| c.predictor == predictor && c.lag == lag)
    }

    fn format_cell(cell: Option<&CorrelationCell>) -> String {
        match cell.map(|c| &c.entry) {
            Some(Ok(e)) => format!("{:.3}{}", e.r, if e.significant_at_5pct() { "*" } else { "" }),
            Some(Err(_)) => "err".to_string(),
            None => String::new(),
        }
    }

    /// CSV export: `predictor,lag,r,p_value,n,significant`.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "predictor,lag,r,p_value,n,significant")?;
        for cell in &self.cells {
            match &cell.entry {
                Ok(e) => writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    cell.predictor,
                    cell.lag,
                    e.r,
                    e.p_value,
                    e.n,
                    e.significant_at_5pct()
                )?,
                Err(err) => writeln!(w, "{},{},err,err,0,false # {}", cell.predictor, cell.lag, err)?,
            }
        }
        Ok(())
    }

    /// Aligned plain-text table: predictor rows, one column per lag, `*` on
    /// entries significant at p < 0.05.
    pub fn write_text(&self, mut w: impl Write, n: Option<usize>) -> std::io::Result<()> {
        let rows = self.rows();
        let name_width = rows
            .iter()
            .map(|r| r.len())
            .chain(["Sources".len()].into_iter())
            .max()
            .unwrap_or(8);
        write!(w, "{:<name_width$}", "Sources")?;
        for lag in &self.lags {
            let header = match lag {
                1 => "One-day lag".to_string(),
                2 => "Two-day lag".to_string(),
                3 => "Three-day lag".to_string(),
                other => format!("{other}-day lag"),
            };
            write!(w, "  {header:>13}")?;
        }
        writeln!(w)?;
        for row in rows {
            write!(w, "{row:<name_width$}")?;
            for lag in &self.lags {
                write!(w, "  {:>13}", Self::format_cell(self.cell(row, *lag)))?;
            }
            writeln!(w)?;
        }
        if let Some(n) = n {
            writeln!(w, "N = {n}, *p<0.05")?;
        } else {
            writeln!(w, "*p<0.05")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calendar::TradingCalendar;
    use chrono::NaiveDate;
    use proptest::prelude::*;

    fn series(name: &str, values: &[f64]) -> DailySeries {
        DailySeries::new(
            name,
            TradingCalendar::default(),
            NaiveDate::from_ymd_opt(2013, 4, 1).unwrap(),
            values.to_vec(),
            "test",
        )
        .unwrap()
    }

    #[test]
    fn self_correlation_is_one() {
        let x = series("x", &[1.0, 2.0, 4.0, 3.0, 5.0]);
        let e = pearson(&x, &x).unwrap();
        assert!((e.r - 1.0).abs() < 1e-12);
        assert!(e.p_value < 1e-9);
    }

    #[test]
    fn negated_correlation_is_minus_one() {
        let x = series("x", &[1.0, 2.0, 4.0, 3.0, 5.0]);
        let neg = x.with_values(x.values().iter().map(|v| -v).collect()).unwrap();
        let e = pearson(&x, &neg).unwrap();
        assert!((e.r + 1.0).abs() < 1e-12);
    }

    #[test]
    fn hand_computed_three_points() {
        // x=[1,2,3], y=[2,4,7]: r = 5 / sqrt(2 * 38/3)
        let x = series("x", &[1.0, 2.0, 3.0]);
        let y = series("y", &[2.0, 4.0, 7.0]);
        let e = pearson(&x, &y).unwrap();
        let expected = 5.0 / (2.0 * 38.0 / 3.0f64).sqrt();
        assert!((e.r - expected).abs() < 1e-12);
        assert!((e.r - 0.9934).abs() < 5e-5);
    }

    #[test]
    fn constant_series_is_zero_variance() {
        let x = series("x", &[2.0; 5]);
        let y = series("y", &[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(matches!(pearson(&x, &y), Err(StatError::ZeroVariance(_))));
    }

    #[test]
    fn too_short_after_join() {
        let x = series("x", &[1.0, 2.0]);
        let y = series("y", &[2.0, 4.0]);
        assert!(matches!(pearson(&x, &y), Err(StatError::SeriesTooShort { .. })));
    }

    #[test]
    fn table_on_persistent_series_decays_with_lag() {
        // Persistent AR(1): correlation of the lagged copy with the original
        // declines as the lag grows, the shape of the paper-style WTI row.
        use rand::SeedableRng;
        use rand_distr::{Distribution, Normal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let mut values = vec![0.0f64; 400];
        for i in 1..values.len() {
            values[i] = 0.97 * values[i - 1] + normal.sample(&mut rng);
        }
        let target = series("wti", &values);
        let signals = SignalSet::inner_join(vec![target.clone(), series("other", &values)]).unwrap();
        let table = correlation_table(&signals, &target, &[1, 2, 3]);
        let r = |lag: usize| {
            table
                .cell("wti", lag)
                .unwrap()
                .entry
                .as_ref()
                .unwrap()
                .r
        };
        assert!(r(1) > r(2) && r(2) > r(3));
        assert!(r(1) > 0.8);
    }

    #[test]
    fn constant_predictor_becomes_error_row() {
        let target = series("wti", &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let flat = series("flat", &[7.0; 6]);
        let signals = SignalSet::inner_join(vec![flat, target.clone()]).unwrap();
        let table = correlation_table(&signals, &target, &[1]);
        assert!(table.cell("flat", 1).unwrap().entry.is_err());
        assert!(table.cell("wti", 1).unwrap().entry.is_ok());
    }

    #[test]
    fn independent_noise_mostly_insignificant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut significant = 0usize;
        let trials = 200;
        for _ in 0..trials {
            let a: Vec<f64> = (0..60).map(|_| rng.random::<f64>()).collect();
            let b: Vec<f64> = (0..60).map(|_| rng.random::<f64>()).collect();
            let e = pearson(&series("a", &a), &series("b", &b)).unwrap();
            assert!(e.r.abs() < 0.6);
            if e.significant_at_5pct() {
                significant += 1;
            }
        }
        // nominal 5% false-positive rate, generous band
        assert!(significant <= trials / 8, "{significant} significant of {trials}");
    }

    proptest! {
        #[test]
        fn symmetric_and_affine_invariant(
            xs in proptest::collection::vec(-1e3..1e3f64, 8..40),
            scale in 0.01..50.0f64,
            shift in -1e3..1e3f64,
        ) {
            let ys: Vec<f64> = xs.iter().rev().map(|v| v * 0.5 + 1.0).collect();
            let x = series("x", &xs);
            let y = series("y", &ys);
            prop_assume!(pearson(&x, &y).is_ok());
            let rxy = pearson(&x, &y).unwrap().r;
            let ryx = pearson(&y, &x).unwrap().r;
            prop_assert!((rxy - ryx).abs() < 1e-12);

            let scaled = x.with_values(xs.iter().map(|v| v * scale + shift).collect()).unwrap();
            let r_scaled = pearson(&scaled, &y).unwrap().r;
            prop_assert!((rxy - r_scaled).abs() < 1e-9);

            let negated = x.with_values(xs.iter().map(|v| -v * scale + shift).collect()).unwrap();
            let r_neg = pearson(&negated, &y).unwrap().r;
            prop_assert!((rxy + r_neg).abs() < 1e-9);
        }
    }
}
