//! Business-day calendar used to place every series on a five-day week.

use std::collections::BTreeSet;
use std::io::BufRead;
use std::path::Path;

use chrono::{Datelike, NaiveDate, Weekday};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CalendarError {
    #[error("unreadable holiday file: {0}")]
    Io(#[from] std::io::Error),
    #[error("holiday file line {line}: invalid date `{text}`")]
    InvalidDate { line: usize, text: String },
}

/// A trading calendar: weekday exclusions plus an explicit holiday set.
///
/// Holidays that fall on an excluded weekday are dropped on construction,
/// so membership checks never consult both sets for the same date.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradingCalendar {
    // indexed by Weekday::num_days_from_monday()
    weekend_days: [bool; 7],
    holidays: BTreeSet<NaiveDate>,
}

impl Default for TradingCalendar {
    fn default() -> Self {
        Self::new([Weekday::Sat, Weekday::Sun], [])
    }
}

impl TradingCalendar {
    pub fn new(
        weekend_days: impl IntoIterator<Item = Weekday>,
        holidays: impl IntoIterator<Item = NaiveDate>,
    ) -> Self {
        let mut weekend = [false; 7];
        for day in weekend_days {
            weekend[day.num_days_from_monday() as usize] = true;
        }
        let holidays = holidays
            .into_iter()
            .filter(|d| !weekend[d.weekday().num_days_from_monday() as usize])
            .collect();
        Self {
            weekend_days: weekend,
            holidays,
        }
    }

    /// Saturday/Sunday weekend with the given holiday set.
    pub fn with_holidays(holidays: impl IntoIterator<Item = NaiveDate>) -> Self {
        Self::new([Weekday::Sat, Weekday::Sun], holidays)
    }

    /// Reads one ISO-8601 date per line; blank lines are skipped.
    pub fn load_holidays(path: &Path) -> Result<Vec<NaiveDate>, CalendarError> {
        let file = std::fs::File::open(path)?;
        Self::parse_holidays(std::io::BufReader::new(file))
    }

    pub fn parse_holidays(reader: impl BufRead) -> Result<Vec<NaiveDate>, CalendarError> {
        let mut out = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() {
                continue;
            }
            let date = NaiveDate::parse_from_str(text, "%Y-%m-%d").map_err(|_| {
                CalendarError::InvalidDate {
                    line: idx + 1,
                    text: text.to_string(),
                }
            })?;
            out.push(date);
        }
        Ok(out)
    }

    pub fn is_business_day(&self, date: NaiveDate) -> bool {
        !self.weekend_days[date.weekday().num_days_from_monday() as usize]
            && !self.holidays.contains(&date)
    }

    pub fn holidays(&self) -> impl Iterator<Item = NaiveDate> + '_ {
        self.holidays.iter().copied()
    }

    /// First business day on or after `date`.
    pub fn roll_forward(&self, mut date: NaiveDate) -> NaiveDate {
        while !self.is_business_day(date) {
            date = date.succ_opt().expect("date overflow");
        }
        date
    }

    /// The business day `n` steps after `date` (`date` itself must be a
    /// business day; `n = 0` returns it unchanged).
    pub fn add_business_days(&self, date: NaiveDate, n: usize) -> NaiveDate {
        debug_assert!(self.is_business_day(date));
        let mut current = date;
        for _ in 0..n {
            current = self.roll_forward(current.succ_opt().expect("date overflow"));
        }
        current
    }

    pub fn next_business_day(&self, date: NaiveDate) -> NaiveDate {
        self.roll_forward(date.succ_opt().expect("date overflow"))
    }

    /// Business days in `[from, to]`, strictly increasing.
    pub fn business_days(&self, from: NaiveDate, to: NaiveDate) -> Vec<NaiveDate> {
        let mut out = Vec::new();
        let mut current = from;
        while current <= to {
            if self.is_business_day(current) {
                out.push(current);
            }
            current = current.succ_opt().expect("date overflow");
        }
        out
    }

    /// Number of business-day steps from `from` to `to` (both business days,
    /// `from <= to`).
    pub fn business_days_between(&self, from: NaiveDate, to: NaiveDate) -> usize {
        debug_assert!(from <= to);
        let mut steps = 0;
        let mut current = from;
        while current < to {
            current = self.next_business_day(current);
            steps += 1;
        }
        steps
    }
}
