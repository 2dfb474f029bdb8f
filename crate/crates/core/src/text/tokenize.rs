//! Whitespace/punctuation tokenizer shared by the sentiment and complexity
//! scorers.

/// Lowercased tokens of length >= 2, split on non-alphanumeric runs.
/// URLs and @-mentions are dropped whole before splitting.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        if word.starts_with('@')
            || word.starts_with("http://")
            || word.starts_with("https://")
            || word.starts_with("www.")
        {
            continue;
        }
        for piece in word.split(|c: char| !c.is_alphanumeric()) {
            if piece.chars().count() >= 2 {
                tokens.push(piece.to_lowercase());
            }
        }
    }
    tokens
}
