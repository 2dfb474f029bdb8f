//! Per-business-day aggregation of document scores into the four daily
//! language signals.

use std::collections::BTreeMap;

use chrono::NaiveDate;

use super::idf::{build_idf, complexity_score};
use super::lexicon::{sentiment_score, Lexicon};
use super::{Document, TextError};
use crate::calendar::TradingCalendar;
use crate::series::{DailySeries, SeriesError};

/// The four Twitter-style daily signals, all on one date grid.
#[derive(Debug, Clone)]
pub struct DailyTextSignals {
    pub messages: DailySeries,
    pub sentiment: DailySeries,
    pub emotionality: DailySeries,
    pub complexity: DailySeries,
}

impl DailyTextSignals {
    pub fn into_vec(self) -> Vec<DailySeries> {
        vec![self.messages, self.sentiment, self.emotionality, self.complexity]
    }
}

/// Aggregates documents into daily signals on the business-day grid.
///
/// Documents on weekends/holidays are dropped. The grid spans the first to
/// the last business day carrying a document; business days with no
/// documents in between take the quiet-day defaults (0 messages, neutral 0.5
/// sentiment, 0 complexity). The IDF table is built once over the whole
/// corpus, so per-day complexity scores share one vocabulary.
pub fn aggregate_daily(
    docs: &[Document],
    lexicon: &Lexicon,
    calendar: &TradingCalendar,
    name_prefix: &str,
    provenance: &str,
) -> Result<DailyTextSignals, TextError> {
    if docs.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let idf = build_idf(docs)?;

    let mut by_day: BTreeMap<NaiveDate, Vec<&Document>> = BTreeMap::new();
    for doc in docs {
        let day = doc.timestamp.date_naive();
        if calendar.is_business_day(day) {
            by_day.entry(day).or_default().push(doc);
        }
    }
    if by_day.is_empty() {
        return Err(SeriesError::EmptyAfterAlignment.into());
    }

    let first = *by_day.keys().next().unwrap();
    let last = *by_day.keys().next_back().unwrap();
    let grid = calendar.business_days(first, last);

    let mut messages = Vec::with_capacity(grid.len());
    let mut sentiment = Vec::with_capacity(grid.len());
    let mut emotionality = Vec::with_capacity(grid.len());
    let mut complexity = Vec::with_capacity(grid.len());
    for day in &grid {
        match by_day.get(day) {
            Some(day_docs) => {
                let n = day_docs.len() as f64;
                let mean_sent =
                    day_docs.iter().map(|d| sentiment_score(d, lexicon)).sum::<f64>() / n;
                let mean_cplx =
                    day_docs.iter().map(|d| complexity_score(d, &idf)).sum::<f64>() / n;
                messages.push(n);
                sentiment.push(mean_sent);
                emotionality.push(2.0 * (mean_sent - 0.5).abs());
                complexity.push(mean_cplx);
            }
            None => {
                messages.push(0.0);
                sentiment.push(0.5);
                emotionality.push(0.0);
                complexity.push(0.0);
            }
        }
    }

    let build = |suffix: &str, values: Vec<f64>| -> Result<DailySeries, SeriesError> {
        DailySeries::new(
            format!("{name_prefix}_{suffix}"),
            calendar.clone(),
            first,
            values,
            provenance,
        )
    };
    Ok(DailyTextSignals {
        messages: build("messages", messages)?,
        sentiment: build("sentiment", sentiment)?,
        emotionality: build("emotionality", emotionality)?,
        complexity: build("complexity", complexity)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::DocSource;
    use chrono::{TimeZone, Utc};

    fn doc(day: u32, hour: u32, text: &str) -> Document {
        Document::new(
            Utc.with_ymd_and_hms(2013, 4, day, hour, 0, 0).unwrap(),
            text,
            DocSource::Tweet,
            "q",
        )
        .unwrap()
    }

    fn lexicon() -> Lexicon {
        Lexicon::new(
            ["gain", "rally", "up"].map(String::from),
            ["drop", "fall", "crash"].map(String::from),
        )
        .unwrap()
    }

    #[test]
    fn one_day_mean_sentiment() {
        // scores {1.0, 0.5, 0.0} -> mean 0.5, messages 3
        let docs = vec![
            doc(1, 9, "gain rally"),
            doc(1, 10, "nothing polar here"),
            doc(1, 11, "drop crash"),
        ];
        let out = aggregate_daily(&docs, &lexicon(), &TradingCalendar::default(), "tw", "t").unwrap();
        assert_eq!(out.messages.values(), &[3.0]);
        assert_eq!(out.sentiment.values(), &[0.5]);
        assert_eq!(out.emotionality.values(), &[0.0]);
    }

    #[test]
    fn all_neutral_days_have_zero_emotionality() {
        let docs = vec![doc(1, 9, "quiet words"), doc(2, 9, "more quiet words")];
        let out = aggregate_daily(&docs, &lexicon(), &TradingCalendar::default(), "tw", "t").unwrap();
        assert!(out.emotionality.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn weekend_only_docs_error() {
        let docs = vec![doc(6, 9, "gain")]; // 2013-04-06 is a Saturday
        let err = aggregate_daily(&docs, &lexicon(), &TradingCalendar::default(), "tw", "t")
            .unwrap_err();
        assert!(matches!(err, TextError::Series(SeriesError::EmptyAfterAlignment)));
    }

    #[test]
    fn quiet_interior_day_gets_defaults() {
        let docs = vec![doc(1, 9, "gain"), doc(3, 9, "drop")]; // Mon and Wed, Tue quiet
        let out = aggregate_daily(&docs, &lexicon(), &TradingCalendar::default(), "tw", "t").unwrap();
        assert_eq!(out.messages.values(), &[1.0, 0.0, 1.0]);
        assert_eq!(out.sentiment.values(), &[1.0, 0.5, 0.0]);
        assert_eq!(out.emotionality.values(), &[1.0, 0.0, 1.0]);
        assert_eq!(out.complexity.values()[1], 0.0);
    }

    #[test]
    fn series_share_dates() {
        let docs = vec![doc(1, 9, "gain"), doc(4, 9, "drop fall")];
        let out = aggregate_daily(&docs, &lexicon(), &TradingCalendar::default(), "tw", "t").unwrap();
        assert_eq!(out.messages.dates(), out.sentiment.dates());
        assert_eq!(out.sentiment.dates(), out.emotionality.dates());
        assert_eq!(out.emotionality.dates(), out.complexity.dates());
    }

    #[test]
    fn empty_corpus_rejected() {
        let err = aggregate_daily(&[], &lexicon(), &TradingCalendar::default(), "tw", "t")
            .unwrap_err();
        assert!(matches!(err, TextError::EmptyCorpus));
    }
}
