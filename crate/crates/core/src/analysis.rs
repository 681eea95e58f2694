//! Text analysis: raw field text and query strings to normalized terms.
//!
//! The pipeline is deliberately minimal: split on every maximal run of
//! non-alphanumeric characters (Unicode-aware), lowercase what survives.
//! No stemming, no stopwords. Positions are token ordinals, not byte offsets.

use std::collections::HashSet;

/// Token position within a field (0-based ordinal).
pub type Position = u32;

/// A normalized term together with its ordinal in the token sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub term: String,
    pub position: Position,
}

impl Token {
    pub fn new(term: impl Into<String>, position: Position) -> Self {
        Self {
            term: term.into(),
            position,
        }
    }
}

/// An ordered set of distinct query terms.
///
/// Duplicate occurrences are dropped at construction, keeping the first
/// occurrence order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Query {
    terms: Vec<String>,
}

impl Query {
    /// Builds a query from already-normalized terms, dropping repeats.
    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen = HashSet::new();
        let terms = terms
            .into_iter()
            .map(Into::into)
            .filter(|t: &String| seen.insert(t.clone()))
            .collect();
        Self { terms }
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Splits `text` into lowercase alphanumeric tokens with dense positions.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|piece| !piece.is_empty())
        .enumerate()
        .map(|(i, piece)| Token::new(piece.to_lowercase(), i as Position))
        .collect()
}

/// Tokenizes a raw query and removes duplicate terms.
///
/// An empty result is not an error here; scorers reject empty queries.
pub fn analyze_query(text: &str) -> Query {
    Query::from_terms(tokenize(text).into_iter().map(|t| t.term))
}
