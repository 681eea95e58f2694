//! Expanded span extraction over the query-term occurrences of one token
//! sequence (a single field, or the flat view of a document).
//!
//! A span is a chain of query-term occurrences in ascending position order
//! where each term appears at most once and adjoining occurrences are at most
//! `M` positions apart. Spans never overlap.
//!
//! Extraction is greedy and leftmost: a span opens at the first unconsumed
//! occurrence and absorbs the next occurrence while the gap is within `M` and
//! its term is new to the span. Anything else closes the span and opens a new
//! one at that occurrence, so the spans partition the input and each span is
//! a contiguous run of it.

use crate::analysis::Position;

/// Default window `M`.
pub const DEFAULT_MAX_GAP: u32 = 45;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpanError {
    #[error("span window M must be at least 1")]
    ZeroWindow,
    #[error("occurrences not strictly ascending at index {0}")]
    Unsorted(usize),
}

/// Window parameter `M`: the largest allowed distance between adjoining
/// occurrences in a span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanConfig {
    max_gap: u32,
}

impl SpanConfig {
    pub fn new(max_gap: u32) -> Result<Self, SpanError> {
        if max_gap == 0 {
            return Err(SpanError::ZeroWindow);
        }
        Ok(Self { max_gap })
    }

    pub fn max_gap(self) -> u32 {
        self.max_gap
    }

    /// Width given to a single-occurrence span: `1/M`.
    pub fn singleton_width(self) -> f64 {
        1.0 / f64::from(self.max_gap)
    }
}

impl Default for SpanConfig {
    fn default() -> Self {
        Self {
            max_gap: DEFAULT_MAX_GAP,
        }
    }
}

/// One occurrence of a query term. `term` is the term's index in the query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Occurrence {
    pub position: Position,
    pub term: usize,
}

impl Occurrence {
    pub fn new(position: Position, term: usize) -> Self {
        Self { position, term }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    entries: Vec<Occurrence>,
}

impl Span {
    pub fn entries(&self) -> &[Occurrence] {
        &self.entries
    }

    pub fn first(&self) -> Position {
        self.entries[0].position
    }

    pub fn last(&self) -> Position {
        self.entries[self.entries.len() - 1].position
    }

    /// Number of term positions in the span.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn contains(&self, term: usize) -> bool {
        self.entries.iter().any(|o| o.term == term)
    }

    pub fn width(&self, config: SpanConfig) -> f64 {
        span_width(&self.entries, config)
    }
}

/// Inclusive extent `last - first + 1` for spans of two or more occurrences;
/// `1/M` for a singleton.
pub fn span_width(entries: &[Occurrence], config: SpanConfig) -> f64 {
    match entries {
        [] | [_] => config.singleton_width(),
        [first, .., last] => f64::from(last.position - first.position + 1),
    }
}

/// Extracts spans from occurrences sorted by strictly ascending position.
pub fn extract_spans(
    occurrences: &[Occurrence],
    config: SpanConfig,
) -> Result<Vec<Span>, SpanError> {
    if let Some(i) = occurrences
        .windows(2)
        .position(|w| w[0].position >= w[1].position)
    {
        return Err(SpanError::Unsorted(i + 1));
    }
    Ok(SpanChunks::new(occurrences, config)
        .map(|chunk| Span {
            entries: chunk.to_vec(),
        })
        .collect())
}

/// Iterator over spans as contiguous sub-slices of a sorted occurrence list.
/// Performs no sortedness check.
pub(crate) struct SpanChunks<'a> {
    rest: &'a [Occurrence],
    max_gap: u32,
}

impl<'a> SpanChunks<'a> {
    pub(crate) fn new(occurrences: &'a [Occurrence], config: SpanConfig) -> Self {
        Self {
            rest: occurrences,
            max_gap: config.max_gap,
        }
    }
}

impl<'a> Iterator for SpanChunks<'a> {
    type Item = &'a [Occurrence];

    fn next(&mut self) -> Option<Self::Item> {
        if self.rest.is_empty() {
            return None;
        }
        let mut end = 1;
        while end < self.rest.len() {
            let next = self.rest[end];
            let prev = self.rest[end - 1];
            let within = next.position - prev.position <= self.max_gap;
            if !within || self.rest[..end].iter().any(|o| o.term == next.term) {
                break;
            }
            end += 1;
        }
        let (span, rest) = self.rest.split_at(end);
        self.rest = rest;
        Some(span)
    }
}
