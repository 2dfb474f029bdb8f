//! Daily language signals extracted from query-matched documents: message
//! volume, lexicon sentiment, emotionality, and IDF complexity.

mod aggregate;
mod idf;
mod lexicon;
mod tokenize;

pub use aggregate::{aggregate_daily, DailyTextSignals};
pub use idf::{build_idf, complexity_score, IdfTable};
pub use lexicon::{emotionality, sentiment_score, Lexicon};
pub use tokenize::tokenize;

use chrono::{DateTime, Utc};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TextError {
    #[error("document corpus is empty")]
    EmptyCorpus,
    #[error("sentiment score {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("token `{0}` appears in both lexicon lists")]
    OverlappingLexicon(String),
    #[error("document text is empty")]
    EmptyText,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Series(#[from] crate::series::SeriesError),
}

/// Where a document came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocSource {
    Tweet,
    News,
}

/// One timestamped text item that matched a search query.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Document {
    pub timestamp: DateTime<Utc>,
    pub text: String,
    pub source: DocSource,
    pub query: String,
}

impl Document {
    pub fn new(
        timestamp: DateTime<Utc>,
        text: impl Into<String>,
        source: DocSource,
        query: impl Into<String>,
    ) -> Result<Self, TextError> {
        let text = text.into();
        if text.split_whitespace().next().is_none() {
            return Err(TextError::EmptyText);
        }
        Ok(Self {
            timestamp,
            text,
            source,
            query: query.into(),
        })
    }
}
