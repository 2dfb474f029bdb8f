//! Lexicon-ratio sentiment and its deviation-from-neutral transform.

use std::collections::BTreeSet;
use std::io::BufRead;
use std::path::Path;

use super::tokenize::tokenize;
use super::{Document, TextError};

/// Positive/negative token lists. The two sets are disjoint by construction.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    positive: BTreeSet<String>,
    negative: BTreeSet<String>,
}

impl Lexicon {
    pub fn new(
        positive: impl IntoIterator<Item = String>,
        negative: impl IntoIterator<Item = String>,
    ) -> Result<Self, TextError> {
        let positive: BTreeSet<String> = positive.into_iter().map(|t| t.to_lowercase()).collect();
        let negative: BTreeSet<String> = negative.into_iter().map(|t| t.to_lowercase()).collect();
        if let Some(shared) = positive.intersection(&negative).next() {
            return Err(TextError::OverlappingLexicon(shared.clone()));
        }
        Ok(Self { positive, negative })
    }

    /// Loads the two one-token-per-line lists.
    pub fn load(positive_path: &Path, negative_path: &Path) -> Result<Self, TextError> {
        let read = |path: &Path| -> Result<Vec<String>, TextError> {
            let file = std::fs::File::open(path)?;
            let mut tokens = Vec::new();
            for line in std::io::BufReader::new(file).lines() {
                let line = line?;
                let token = line.trim();
                if !token.is_empty() {
                    tokens.push(token.to_string());
                }
            }
            Ok(tokens)
        };
        Self::new(read(positive_path)?, read(negative_path)?)
    }

    pub fn is_positive(&self, token: &str) -> bool {
        self.positive.contains(token)
    }

    pub fn is_negative(&self, token: &str) -> bool {
        self.negative.contains(token)
    }

    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }
}

/// Ratio of positive to polar token hits, in `[0, 1]`; documents with no
/// lexicon hits score the neutral 0.5.
pub fn sentiment_score(doc: &Document, lexicon: &Lexicon) -> f64 {
    let mut positive = 0usize;
    let mut negative = 0usize;
    for token in tokenize(&doc.text) {
        if lexicon.is_positive(&token) {
            positive += 1;
        } else if lexicon.is_negative(&token) {
            negative += 1;
        }
    }
    if positive + negative == 0 {
        0.5
    } else {
        positive as f64 / (positive + negative) as f64
    }
}

/// Deviation from neutral sentiment, rescaled onto `[0, 1]`.
pub fn emotionality(score: f64) -> Result<f64, TextError> {
    if !(0.0..=1.0).contains(&score) {
        return Err(TextError::OutOfRange(score));
    }
    Ok(2.0 * (score - 0.5).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::DocSource;
    use chrono::{TimeZone, Utc};
    use proptest::prelude::*;

    fn doc(text: &str) -> Document {
        Document::new(
            Utc.with_ymd_and_hms(2013, 4, 1, 12, 0, 0).unwrap(),
            text,
            DocSource::Tweet,
            "crude oil price",
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
    fn all_positive_scores_one() {
        assert_eq!(sentiment_score(&doc("gain rally up"), &lexicon()), 1.0);
    }

    #[test]
    fn no_hits_is_neutral() {
        assert_eq!(sentiment_score(&doc("oil markets quiet"), &lexicon()), 0.5);
    }

    #[test]
    fn one_positive_three_negative() {
        // p/(p+n) = 1/4
        assert_eq!(sentiment_score(&doc("gain drop fall crash"), &lexicon()), 0.25);
    }

    #[test]
    fn duplication_leaves_ratio_unchanged() {
        let lex = lexicon();
        let once = sentiment_score(&doc("gain drop"), &lex);
        let twice = sentiment_score(&doc("gain drop gain drop"), &lex);
        assert_eq!(once, twice);
    }

    #[test]
    fn overlapping_lists_rejected() {
        let err = Lexicon::new(["up".to_string()], ["up".to_string()]).unwrap_err();
        assert!(matches!(err, TextError::OverlappingLexicon(_)));
    }

    #[test]
    fn emotionality_values() {
        assert_eq!(emotionality(0.5).unwrap(), 0.0);
        assert_eq!(emotionality(1.0).unwrap(), 1.0);
        assert_eq!(emotionality(0.75).unwrap(), 0.5);
        assert!(matches!(emotionality(1.5), Err(TextError::OutOfRange(_))));
    }

    proptest! {
        #[test]
        fn emotionality_is_symmetric(s in 0.0..=1.0f64) {
            let a = emotionality(s).unwrap();
            let b = emotionality(1.0 - s).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}
