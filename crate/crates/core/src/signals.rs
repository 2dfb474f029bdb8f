//! A named collection of daily series on one shared date grid.

use std::io::{BufRead, Write};

use chrono::NaiveDate;

use crate::calendar::TradingCalendar;
use crate::series::{parse_date_value, DailySeries, SeriesError};

/// Aligned predictors (and, where convenient, the target) on a common span.
///
/// All member series share the calendar, start date, and length; order is
/// the order of insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSet {
    series: Vec<DailySeries>,
}

impl SignalSet {
    /// Joins series onto their common date intersection.
    pub fn inner_join(series: Vec<DailySeries>) -> Result<Self, SeriesError> {
        if series.len() < 2 {
            return Err(SeriesError::TooFewSeries {
                need: 2,
                got: series.len(),
            });
        }
        for s in &series[1..] {
            if s.calendar() != series[0].calendar() {
                return Err(SeriesError::CalendarMismatch(
                    series[0].name().to_string(),
                    s.name().to_string(),
                ));
            }
        }
        let from = series.iter().map(|s| s.start_date()).max().unwrap();
        let to = series.iter().map(|s| s.end_date()).min().unwrap();
        if from > to {
            return Err(SeriesError::EmptyIntersection);
        }
        let joined: Vec<DailySeries> = series
            .iter()
            .map(|s| s.window(from, to).ok_or(SeriesError::EmptyIntersection))
            .collect::<Result<_, _>>()?;
        Ok(Self { series: joined })
    }

    /// Wraps already-aligned series without re-joining. Debug builds assert
    /// the alignment.
    pub fn from_aligned(series: Vec<DailySeries>) -> Result<Self, SeriesError> {
        if series.len() < 2 {
            return Err(SeriesError::TooFewSeries {
                need: 2,
                got: series.len(),
            });
        }
        let first = &series[0];
        for s in &series[1..] {
            if s.calendar() != first.calendar() {
                return Err(SeriesError::CalendarMismatch(
                    first.name().to_string(),
                    s.name().to_string(),
                ));
            }
            if s.start_date() != first.start_date() || s.len() != first.len() {
                return Err(SeriesError::EmptyIntersection);
            }
        }
        Ok(Self { series })
    }

    pub fn series(&self) -> &[DailySeries] {
        &self.series
    }

    pub fn get(&self, name: &str) -> Option<&DailySeries> {
        self.series.iter().find(|s| s.name() == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.series.iter().map(|s| s.name()).collect()
    }

    pub fn start_date(&self) -> NaiveDate {
        self.series[0].start_date()
    }

    pub fn end_date(&self) -> NaiveDate {
        self.series[0].end_date()
    }

    /// Observations per member series.
    pub fn len(&self) -> usize {
        self.series[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.series[0].is_empty()
    }

    pub fn calendar(&self) -> &TradingCalendar {
        self.series[0].calendar()
    }

    pub fn dates(&self) -> Vec<NaiveDate> {
        self.series[0].dates()
    }

    /// Writes a wide CSV: `date,<name1>,<name2>,...` in member order.
    pub fn write_wide_csv(&self, mut writer: impl Write) -> std::io::Result<()> {
        write!(writer, "date")?;
        for s in &self.series {
            write!(writer, ",{}", s.name())?;
        }
        writeln!(writer)?;
        for (i, date) in self.dates().iter().enumerate() {
            write!(writer, "{}", date.format("%Y-%m-%d"))?;
            for s in &self.series {
                write!(writer, ",{}", s.values()[i])?;
            }
            writeln!(writer)?;
        }
        Ok(())
    }

    /// Reads a wide CSV produced by [`write_wide_csv`](Self::write_wide_csv).
    pub fn read_wide_csv(
        reader: impl BufRead,
        calendar: TradingCalendar,
        provenance: &str,
    ) -> Result<Self, SeriesError> {
        let mut lines = reader.lines().enumerate();
        let (_, header) = lines.next().ok_or(SeriesError::EmptyInput)?;
        let header = header?;
        let mut cols = header.trim().split(',');
        if cols.next() != Some("date") {
            return Err(SeriesError::MalformedCsv {
                line: 1,
                reason: "expected `date` as first column".into(),
            });
        }
        let names: Vec<String> = cols.map(|c| c.to_string()).collect();
        if names.is_empty() {
            return Err(SeriesError::MalformedCsv {
                line: 1,
                reason: "no signal columns".into(),
            });
        }
        let mut dates: Vec<NaiveDate> = Vec::new();
        let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
        for (idx, line) in lines {
            let line = line?;
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.trim().split(',').collect();
            if fields.len() != names.len() + 1 {
                return Err(SeriesError::MalformedCsv {
                    line: lineno,
                    reason: format!("expected {} columns, got {}", names.len() + 1, fields.len()),
                });
            }
            let (date, first) = parse_date_value(&format!("{},{}", fields[0], fields[1]), lineno)?;
            dates.push(date);
            columns[0].push(first);
            for (c, field) in fields[2..].iter().enumerate() {
                let value: f64 = field.trim().parse().map_err(|_| SeriesError::MalformedCsv {
                    line: lineno,
                    reason: format!("invalid value `{}`", field.trim()),
                })?;
                columns[c + 1].push(value);
            }
        }
        if dates.is_empty() {
            return Err(SeriesError::EmptyInput);
        }
        let start = dates[0];
        let mut expected = start;
        for date in &dates {
            if *date != expected {
                return Err(SeriesError::GapInCsv(expected));
            }
            expected = calendar.next_business_day(expected);
        }
        let series = names
            .into_iter()
            .zip(columns)
            .map(|(name, values)| DailySeries::new(name, calendar.clone(), start, values, provenance))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_aligned(series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::DailySeries;

    fn d(s: &str) -> NaiveDate {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
    }

    fn series(name: &str, start: &str, values: &[f64]) -> DailySeries {
        DailySeries::new(
            name,
            TradingCalendar::default(),
            d(start),
            values.to_vec(),
            "test",
        )
        .unwrap()
    }

    #[test]
    fn identical_spans_unchanged() {
        let a = series("a", "2013-04-01", &[1.0, 2.0, 3.0]);
        let b = series("b", "2013-04-01", &[4.0, 5.0, 6.0]);
        let set = SignalSet::inner_join(vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(set.get("a").unwrap().values(), a.values());
        assert_eq!(set.get("b").unwrap().values(), b.values());
    }

    #[test]
    fn overlapping_spans_truncate_to_intersection() {
        let a = series("a", "2013-04-01", &[1.0, 2.0, 3.0, 4.0, 5.0]); // Mon..Fri
        let b = series("b", "2013-04-03", &[30.0, 40.0, 50.0, 60.0]); // Wed..Mon
        let set = SignalSet::inner_join(vec![a, b]).unwrap();
        assert_eq!(set.start_date(), d("2013-04-03"));
        assert_eq!(set.end_date(), d("2013-04-05"));
        assert_eq!(set.get("a").unwrap().values(), &[3.0, 4.0, 5.0]);
        assert_eq!(set.get("b").unwrap().values(), &[30.0, 40.0, 50.0]);
    }

    #[test]
    fn disjoint_spans_error() {
        let a = series("a", "2013-04-01", &[1.0, 2.0]);
        let b = series("b", "2013-06-03", &[3.0, 4.0]);
        assert!(matches!(
            SignalSet::inner_join(vec![a, b]),
            Err(SeriesError::EmptyIntersection)
        ));
    }

    #[test]
    fn member_order_is_preserved() {
        let a = series("z_last", "2013-04-01", &[1.0, 2.0]);
        let b = series("a_first", "2013-04-01", &[3.0, 4.0]);
        let set = SignalSet::inner_join(vec![a, b]).unwrap();
        assert_eq!(set.names(), vec!["z_last", "a_first"]);
    }

    #[test]
    fn wide_csv_roundtrip() {
        let a = series("a", "2013-04-01", &[1.5, 2.0, 3.0]);
        let b = series("b", "2013-04-01", &[4.0, 5.5, 6.0]);
        let set = SignalSet::inner_join(vec![a, b]).unwrap();
        let mut buf = Vec::new();
        set.write_wide_csv(&mut buf).unwrap();
        let back =
            SignalSet::read_wide_csv(buf.as_slice(), TradingCalendar::default(), "test").unwrap();
        assert_eq!(back.names(), set.names());
        assert_eq!(back.get("b").unwrap().values(), set.get("b").unwrap().values());
    }
}
