//! Calendar-aware daily series: alignment, interpolation, lagging,
//! differencing, and train/test splitting.

use std::io::{BufRead, Write};

use chrono::NaiveDate;
use thiserror::Error;

use crate::calendar::TradingCalendar;

/// Lag cap carried through the whole pipeline; media signals older than
/// three business days are treated as stale.
pub const MAX_LAG: usize = 3;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("duplicate date {0} in raw observations")]
    DuplicateDate(NaiveDate),
    #[error("no observations fall on a business day")]
    EmptyAfterAlignment,
    #[error("raw observations are empty")]
    EmptyInput,
    #[error("non-finite value {value} at {date}")]
    NonFinite { date: NaiveDate, value: f64 },
    #[error("lag {lag} outside 1..={max} (pipeline lag cap)")]
    LagTooLarge { lag: usize, max: usize },
    #[error("lag {lag} does not leave any observations (length {len})")]
    LagExceedsLength { lag: usize, len: usize },
    #[error("differencing order {order} does not leave any observations (length {len})")]
    OrderExceedsLength { order: usize, len: usize },
    #[error("split boundary {0} is not strictly inside the series span")]
    BoundaryOutOfRange(NaiveDate),
    #[error("series share no common dates")]
    EmptyIntersection,
    #[error("series `{0}` and `{1}` use different calendars")]
    CalendarMismatch(String, String),
    #[error("need at least {need} series, got {got}")]
    TooFewSeries { need: usize, got: usize },
    #[error("csv line {line}: {reason}")]
    MalformedCsv { line: usize, reason: String },
    #[error("csv is missing business day {0}")]
    GapInCsv(NaiveDate),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Unaligned `(date, value)` pairs as parsed from a source file.
///
/// Construction sorts by date and rejects duplicates outright; a duplicate
/// date in an input file is an ingestion bug, not something to paper over.
#[derive(Debug, Clone, Default)]
pub struct RawObservations {
    entries: Vec<(NaiveDate, f64)>,
}

impl RawObservations {
    pub fn new(entries: impl IntoIterator<Item = (NaiveDate, f64)>) -> Result<Self, SeriesError> {
        let mut entries: Vec<(NaiveDate, f64)> = entries.into_iter().collect();
        entries.sort_by_key(|(d, _)| *d);
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(SeriesError::DuplicateDate(pair[0].0));
            }
        }
        for (date, value) in &entries {
            if !value.is_finite() {
                return Err(SeriesError::NonFinite {
                    date: *date,
                    value: *value,
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(NaiveDate, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reads two-column `date,value` CSV with a header row.
    pub fn from_csv(reader: impl BufRead) -> Result<Self, SeriesError> {
        let mut entries = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            if lineno == 1 {
                if line.trim() != "date,value" {
                    return Err(SeriesError::MalformedCsv {
                        line: 1,
                        reason: format!("expected header `date,value`, got `{}`", line.trim()),
                    });
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let (date, value) = parse_date_value(&line, lineno)?;
            entries.push((date, value));
        }
        Self::new(entries)
    }
}

pub(crate) fn parse_date_value(line: &str, lineno: usize) -> Result<(NaiveDate, f64), SeriesError> {
    let mut parts = line.trim().splitn(2, ',');
    let date_text = parts.next().unwrap_or("");
    let value_text = parts.next().ok_or_else(|| SeriesError::MalformedCsv {
        line: lineno,
        reason: "missing value column".into(),
    })?;
    let date = NaiveDate::parse_from_str(date_text.trim(), "%Y-%m-%d").map_err(|_| {
        SeriesError::MalformedCsv {
            line: lineno,
            reason: format!("invalid date `{}`", date_text.trim()),
        }
    })?;
    let value: f64 = value_text.trim().parse().map_err(|_| SeriesError::MalformedCsv {
        line: lineno,
        reason: format!("invalid value `{}`", value_text.trim()),
    })?;
    Ok((date, value))
}

/// A gapless real-valued series on a business-day grid.
///
/// `values[i]` is the observation on the `i`-th business day from
/// `start_date` under `calendar`. All values are finite and the series is
/// never empty. Immutable after construction; every operation returns a new
/// series.
#[derive(Debug, Clone, PartialEq)]
pub struct DailySeries {
    name: String,
    calendar: TradingCalendar,
    start_date: NaiveDate,
    values: Vec<f64>,
    provenance: String,
}

impl DailySeries {
    pub fn new(
        name: impl Into<String>,
        calendar: TradingCalendar,
        start_date: NaiveDate,
        values: Vec<f64>,
        provenance: impl Into<String>,
    ) -> Result<Self, SeriesError> {
        if values.is_empty() {
            return Err(SeriesError::EmptyInput);
        }
        let start_date = calendar.roll_forward(start_date);
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(SeriesError::NonFinite {
                    date: calendar.add_business_days(start_date, i),
                    value: *v,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            calendar,
            start_date,
            values,
            provenance: provenance.into(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn calendar(&self) -> &TradingCalendar {
        &self.calendar
    }

    pub fn start_date(&self) -> NaiveDate {
        self.start_date
    }

    pub fn end_date(&self) -> NaiveDate {
        self.calendar
            .add_business_days(self.start_date, self.values.len() - 1)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn date_at(&self, index: usize) -> NaiveDate {
        debug_assert!(index < self.values.len());
        self.calendar.add_business_days(self.start_date, index)
    }

    pub fn dates(&self) -> Vec<NaiveDate> {
        let mut out = Vec::with_capacity(self.values.len());
        let mut current = self.start_date;
        for i in 0..self.values.len() {
            if i > 0 {
                current = self.calendar.next_business_day(current);
            }
            out.push(current);
        }
        out
    }

    /// Index of `date` in the series grid, if it lies on it.
    pub fn index_of(&self, date: NaiveDate) -> Option<usize> {
        if date < self.start_date || date > self.end_date() || !self.calendar.is_business_day(date) {
            return None;
        }
        Some(self.calendar.business_days_between(self.start_date, date))
    }

    pub fn value_on(&self, date: NaiveDate) -> Option<f64> {
        self.index_of(date).map(|i| self.values[i])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_values(&self, values: Vec<f64>) -> Result<Self, SeriesError> {
        Self::new(
            self.name.clone(),
            self.calendar.clone(),
            self.start_date,
            values,
            self.provenance.clone(),
        )
    }

    /// Shifts the series forward by `k` business days, so the value observed
    /// at date `t` is the one that was current `k` business days earlier.
    pub fn lag(&self, k: usize) -> Result<Self, SeriesError> {
        if k == 0 || k > MAX_LAG {
            return Err(SeriesError::LagTooLarge { lag: k, max: MAX_LAG });
        }
        if k >= self.values.len() {
            return Err(SeriesError::LagExceedsLength {
                lag: k,
                len: self.values.len(),
            });
        }
        let values = self.values[..self.values.len() - k].to_vec();
        Ok(Self {
            name: self.name.clone(),
            calendar: self.calendar.clone(),
            start_date: self.calendar.add_business_days(self.start_date, k),
            values,
            provenance: self.provenance.clone(),
        })
    }

    /// Applies first differencing `order` times; `order = 0` is the identity.
    pub fn difference(&self, order: usize) -> Result<Self, SeriesError> {
        if order >= self.values.len() {
            return Err(SeriesError::OrderExceedsLength {
                order,
                len: self.values.len(),
            });
        }
        let mut values = self.values.clone();
        let mut start = self.start_date;
        for _ in 0..order {
            values = values.windows(2).map(|w| w[1] - w[0]).collect();
            start = self.calendar.next_business_day(start);
        }
        Ok(Self {
            name: self.name.clone(),
            calendar: self.calendar.clone(),
            start_date: start,
            values,
            provenance: self.provenance.clone(),
        })
    }

    /// Splits into `(train, test)` where train covers dates `<= boundary`.
    /// The boundary itself need not be a business day.
    pub fn split(&self, boundary: NaiveDate) -> Result<(Self, Self), SeriesError> {
        if boundary <= self.start_date || boundary >= self.end_date() {
            return Err(SeriesError::BoundaryOutOfRange(boundary));
        }
        let dates = self.dates();
        let n_train = dates.iter().take_while(|d| **d <= boundary).count();
        if n_train == 0 || n_train == self.values.len() {
            return Err(SeriesError::BoundaryOutOfRange(boundary));
        }
        let train = Self {
            name: self.name.clone(),
            calendar: self.calendar.clone(),
            start_date: self.start_date,
            values: self.values[..n_train].to_vec(),
            provenance: self.provenance.clone(),
        };
        let test = Self {
            name: self.name.clone(),
            calendar: self.calendar.clone(),
            start_date: dates[n_train],
            values: self.values[n_train..].to_vec(),
            provenance: self.provenance.clone(),
        };
        Ok((train, test))
    }

    /// Truncates to the business days in `[from, to]`; `None` if disjoint.
    pub fn window(&self, from: NaiveDate, to: NaiveDate) -> Option<Self> {
        let to = to.min(self.end_date());
        let from = self.calendar.roll_forward(from.max(self.start_date));
        let mut last = to;
        while last >= from && !self.calendar.is_business_day(last) {
            last = last.pred_opt().expect("date underflow");
        }
        if from > last {
            return None;
        }
        let i = self.index_of(from)?;
        let k = i + self.calendar.business_days_between(from, last);
        Some(Self {
            name: self.name.clone(),
            calendar: self.calendar.clone(),
            start_date: from,
            values: self.values[i..=k].to_vec(),
            provenance: self.provenance.clone(),
        })
    }

    /// Writes two-column `date,value` CSV with a header row.
    pub fn write_csv(&self, mut writer: impl Write) -> std::io::Result<()> {
        writeln!(writer, "date,value")?;
        for (date, value) in self.dates().iter().zip(&self.values) {
            writeln!(writer, "{},{}", date.format("%Y-%m-%d"), value)?;
        }
        Ok(())
    }

    /// Strict inverse of [`write_csv`](Self::write_csv): every business day
    /// between the first and last row must be present.
    pub fn read_csv(
        reader: impl BufRead,
        name: impl Into<String>,
        calendar: TradingCalendar,
        provenance: impl Into<String>,
    ) -> Result<Self, SeriesError> {
        let raw = RawObservations::from_csv(reader)?;
        if raw.is_empty() {
            return Err(SeriesError::EmptyInput);
        }
        let entries = raw.entries();
        let start = entries[0].0;
        if !calendar.is_business_day(start) {
            return Err(SeriesError::GapInCsv(calendar.roll_forward(start)));
        }
        let mut expected = start;
        let mut values = Vec::with_capacity(entries.len());
        for (date, value) in entries {
            if *date != expected {
                return Err(SeriesError::GapInCsv(expected));
            }
            values.push(*value);
            expected = calendar.next_business_day(expected);
        }
        Self::new(name, calendar, start, values, provenance)
    }
}

/// Aligns raw observations onto the business-day grid.
///
/// Weekend/holiday entries are dropped. The grid spans the first to the last
/// surviving business day; interior missing days are linearly interpolated
/// between their nearest known neighbours, while leading and trailing gaps
/// are trimmed rather than filled.
pub fn align_to_calendar(
    raw: &RawObservations,
    calendar: &TradingCalendar,
    name: impl Into<String>,
    provenance: impl Into<String>,
) -> Result<DailySeries, SeriesError> {
    if raw.is_empty() {
        return Err(SeriesError::EmptyInput);
    }
    let known: Vec<(NaiveDate, f64)> = raw
        .entries()
        .iter()
        .filter(|(d, _)| calendar.is_business_day(*d))
        .copied()
        .collect();
    if known.is_empty() {
        return Err(SeriesError::EmptyAfterAlignment);
    }
    let grid = calendar.business_days(known[0].0, known[known.len() - 1].0);
    let mut values = Vec::with_capacity(grid.len());
    let mut next_known = 0usize; // index of the first known entry at or after the cursor
    for (i, date) in grid.iter().enumerate() {
        if known[next_known].0 == *date {
            values.push(known[next_known].1);
            next_known += 1;
        } else {
            // interior gap: interpolate between the previous and next anchors
            let (prev_date, prev_value) = known[next_known - 1];
            let (next_date, next_value) = known[next_known];
            let gap = calendar.business_days_between(prev_date, next_date) as f64;
            let step = calendar.business_days_between(prev_date, *date) as f64;
            values.push(prev_value + (next_value - prev_value) * step / gap);
        }
        debug_assert_eq!(calendar.business_days_between(grid[0], *date), i);
    }
    DailySeries::new(name, calendar.clone(), grid[0], values, provenance)
}
