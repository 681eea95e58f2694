//! Field-aware, proximity-sensitive document scoring.
//!
//! The crate provides a positional per-field inverted index and four scoring
//! functions over it: BM25, BM25F with per-field length normalization, the
//! Expanded Span proximity model, and FieldSpan, which feeds per-field span
//! relevance contributions into BM25F in place of raw term frequencies.
//!
//! ```
//! use fieldspan::{analyze_query, build_index, search_topk, FieldedDocument, Scorer, ScorerParams};
//!
//! let docs = vec![
//!     FieldedDocument::new("D1")
//!         .with_text("title", "cheap sea travel")
//!         .with_text("body", "cheap travel across the deep sea"),
//!     FieldedDocument::new("D2")
//!         .with_text("title", "budget flight deals")
//!         .with_text("body", "book cheap flights to warm cities"),
//! ];
//! let schema = vec!["title".to_string(), "body".to_string()];
//! let index = build_index(&docs, &schema).unwrap();
//! let params = ScorerParams::defaults_for(&schema);
//! let hits = search_topk(&index, &analyze_query("sea travel"), Scorer::FieldSpan, &params, 10).unwrap();
//! assert_eq!(hits.hits[0].doc_id, "D1");
//! ```

pub mod analysis;
pub mod config;
pub mod corpus;
pub mod index;
pub mod run;
pub mod scoring;
pub mod search;
pub mod spans;

#[cfg(test)]
pub(crate) mod testutil;

pub use analysis::{analyze_query, tokenize, Position, Query, Token};
pub use config::{ConfigError, ScorerConfig};
pub use corpus::{read_jsonl, CorpusError, FieldedDocument};
pub use index::{
    build_index, load_index, save_index, CollectionStats, DocOrdinal, FormatError, Index,
    IndexError, Posting,
};
pub use scoring::{
    bm25_score, bm25f_field_weight, bm25f_score, es_score, explain_score, fieldspan_score, idf,
    score, Bm25Params, EsParams, FieldParams, ScoreError, ScoreExplanation, Scorer, ScorerParams,
};
pub use search::{search_topk, Hit, RankedList, SearchError};
pub use spans::{extract_spans, span_width, Occurrence, Span, SpanConfig};
