//! Inverse-document-frequency table and the language-complexity score built
//! on it: rarer words score higher.

use std::collections::{BTreeMap, BTreeSet};

use super::tokenize::tokenize;
use super::{Document, TextError};

/// Document frequencies over a corpus: `doc_freq[token]` counts documents
/// containing the token at least once, never occurrences.
#[derive(Debug, Clone)]
pub struct IdfTable {
    doc_count: usize,
    doc_freq: BTreeMap<String, usize>,
}

impl IdfTable {
    pub fn doc_count(&self) -> usize {
        self.doc_count
    }

    pub fn doc_freq(&self, token: &str) -> Option<usize> {
        self.doc_freq.get(token).copied()
    }

    /// `ln(N / df)`; tokens never seen in the corpus take `df = 1`, the
    /// maximum-surprise convention.
    pub fn idf(&self, token: &str) -> f64 {
        let df = self.doc_freq.get(token).copied().unwrap_or(1).max(1);
        (self.doc_count as f64 / df as f64).ln()
    }
}

pub fn build_idf(corpus: &[Document]) -> Result<IdfTable, TextError> {
    if corpus.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let mut doc_freq: BTreeMap<String, usize> = BTreeMap::new();
    for doc in corpus {
        let unique: BTreeSet<String> = tokenize(&doc.text).into_iter().collect();
        for token in unique {
            *doc_freq.entry(token).or_insert(0) += 1;
        }
    }
    Ok(IdfTable {
        doc_count: corpus.len(),
        doc_freq,
    })
}

/// Mean IDF of the document's tokens; an empty token list scores 0.
pub fn complexity_score(doc: &Document, idf: &IdfTable) -> f64 {
    let tokens = tokenize(&doc.text);
    if tokens.is_empty() {
        return 0.0;
    }
    tokens.iter().map(|t| idf.idf(t)).sum::<f64>() / tokens.len() as f64
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
            "q",
        )
        .unwrap()
    }

    fn corpus() -> Vec<Document> {
        vec![
            doc("oil price drops sharply"),
            doc("oil price steady"),
            doc("oil markets rally"),
            doc("oil output unchanged"),
        ]
    }

    #[test]
    fn rare_token_idf_is_ln_four() {
        let idf = build_idf(&corpus()).unwrap();
        // "sharply" appears in 1 of 4 documents
        assert!((idf.idf("sharply") - 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn ubiquitous_token_idf_is_zero() {
        let idf = build_idf(&corpus()).unwrap();
        assert_eq!(idf.idf("oil"), 0.0);
    }

    #[test]
    fn repeats_inside_one_doc_count_once() {
        let docs = vec![doc("spud spud spud spud spud"), doc("other text here")];
        let idf = build_idf(&docs).unwrap();
        assert_eq!(idf.doc_freq("spud"), Some(1));
    }

    #[test]
    fn all_common_tokens_score_zero() {
        let docs = vec![doc("alpha beta"), doc("beta alpha")];
        let idf = build_idf(&docs).unwrap();
        assert_eq!(complexity_score(&docs[0], &idf), 0.0);
    }

    #[test]
    fn single_rare_token_scores_ln_four() {
        let idf = build_idf(&corpus()).unwrap();
        assert!((complexity_score(&doc("sharply"), &idf) - 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn no_tokens_scores_zero() {
        let idf = build_idf(&corpus()).unwrap();
        assert_eq!(complexity_score(&doc("@bob http://x.co"), &idf), 0.0);
    }

    #[test]
    fn unseen_token_uses_df_one() {
        let idf = build_idf(&corpus()).unwrap();
        assert!((idf.idf("zeitgeist") - 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn empty_corpus_rejected() {
        assert!(matches!(build_idf(&[]), Err(TextError::EmptyCorpus)));
    }

    proptest! {
        /// Dropping every occurrence of the most common token never lowers
        /// the mean IDF of a document with at least two distinct tokens.
        #[test]
        fn removing_most_common_token_never_decreases_score(
            picks in proptest::collection::vec(0usize..6, 2..12)
        ) {
            let vocab = ["oil", "price", "rally", "sharply", "opec", "barrel"];
            let corpus = corpus();
            let idf = build_idf(&corpus).unwrap();
            let words: Vec<&str> = picks.iter().map(|i| vocab[*i]).collect();
            let distinct: std::collections::BTreeSet<&&str> = words.iter().collect();
            prop_assume!(distinct.len() >= 2);
            let full = doc(&words.join(" "));
            let most_common = words
                .iter()
                .min_by(|a, b| idf.idf(a).partial_cmp(&idf.idf(b)).unwrap())
                .unwrap()
                .to_string();
            let rest: Vec<&str> = words.iter().filter(|w| **w != most_common).copied().collect();
            let reduced = doc(&rest.join(" "));
            prop_assert!(complexity_score(&reduced, &idf) >= complexity_score(&full, &idf) - 1e-12);
        }
    }
}
