//! Immutable positional per-field inverted index and collection statistics.
//!
//! Postings are keyed by term, then by field ordinal (schema order), and are
//! sorted by document ordinal. Document ordinals follow corpus input order.

mod format;

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::analysis::{Position, Token};
use crate::corpus::FieldedDocument;

pub use format::{load_index, read_index, save_index, write_index, FormatError};

/// Internal document number, assigned in corpus input order.
pub type DocOrdinal = u32;

/// Occurrences of one term in one field of one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Posting {
    pub doc: DocOrdinal,
    /// Strictly ascending, never empty.
    pub positions: Vec<Position>,
}

impl Posting {
    pub fn tf(&self) -> usize {
        self.positions.len()
    }
}

/// All postings of a single term, one list per schema field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermPostings {
    df: u32,
    by_field: Vec<Vec<Posting>>,
}

impl TermPostings {
    /// Number of documents holding the term in at least one field.
    pub fn df(&self) -> u32 {
        self.df
    }

    pub fn field(&self, field: usize) -> &[Posting] {
        &self.by_field[field]
    }

    /// Positions of the term in `field` of `doc`; empty when absent.
    pub fn positions(&self, field: usize, doc: DocOrdinal) -> &[Position] {
        let list = &self.by_field[field];
        match list.binary_search_by_key(&doc, |p| p.doc) {
            Ok(i) => &list[i].positions,
            Err(_) => &[],
        }
    }
}

/// Document count plus per-field lengths.
///
/// Average lengths are taken over all documents, a missing field counting as
/// length zero, so `avg_len(f) * N == sum of field_len(f, ·)` before rounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionStats {
    num_docs: u32,
    // field ordinal -> doc ordinal -> token count
    field_lens: Vec<Vec<u32>>,
    field_totals: Vec<u64>,
}

impl CollectionStats {
    fn new(field_lens: Vec<Vec<u32>>, num_docs: u32) -> Self {
        let field_totals = field_lens
            .iter()
            .map(|lens| lens.iter().map(|&l| u64::from(l)).sum())
            .collect();
        Self {
            num_docs,
            field_lens,
            field_totals,
        }
    }

    pub fn num_docs(&self) -> u32 {
        self.num_docs
    }

    pub fn field_len(&self, field: usize, doc: DocOrdinal) -> u32 {
        self.field_lens[field][doc as usize]
    }

    /// Sum of `field_len(field, ·)` over every document.
    pub fn field_total(&self, field: usize) -> u64 {
        self.field_totals[field]
    }

    pub fn avg_len(&self, field: usize) -> f64 {
        if self.num_docs == 0 {
            return 0.0;
        }
        self.field_totals[field] as f64 / f64::from(self.num_docs)
    }

    /// Length of the flat (all fields concatenated) view of `doc`.
    pub fn flat_len(&self, doc: DocOrdinal) -> u64 {
        self.field_lens
            .iter()
            .map(|lens| u64::from(lens[doc as usize]))
            .sum()
    }

    /// Mean flat length over all documents.
    pub fn avg_flat_len(&self) -> f64 {
        if self.num_docs == 0 {
            return 0.0;
        }
        self.field_totals.iter().sum::<u64>() as f64 / f64::from(self.num_docs)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IndexError {
    #[error("duplicate document id {0:?}")]
    DuplicateDocId(String),
    #[error("document {doc:?}: field {field:?} is not in the schema")]
    FieldNotInSchema { doc: String, field: String },
    #[error("document {doc:?}: field {field:?} given twice")]
    DuplicateField { doc: String, field: String },
    #[error("schema lists field {0:?} twice")]
    DuplicateSchemaField(String),
    #[error("unknown field {0:?}")]
    UnknownField(String),
    #[error("document ordinal {0} out of range")]
    DocOutOfRange(DocOrdinal),
    #[error("too many documents for 32-bit ordinals")]
    TooManyDocuments,
}

/// Positional inverted index over a fixed field schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Index {
    schema: Vec<String>,
    doc_ids: Vec<String>,
    terms: BTreeMap<String, TermPostings>,
    stats: CollectionStats,
}

impl Index {
    /// Builds the index; documents receive ordinals in input order.
    pub fn build(corpus: &[FieldedDocument], schema: &[String]) -> Result<Self, IndexError> {
        let mut field_of = HashMap::with_capacity(schema.len());
        for (i, name) in schema.iter().enumerate() {
            if field_of.insert(name.as_str(), i).is_some() {
                return Err(IndexError::DuplicateSchemaField(name.clone()));
            }
        }
        let num_docs = u32::try_from(corpus.len()).map_err(|_| IndexError::TooManyDocuments)?;

        let mut seen_ids = HashSet::with_capacity(corpus.len());
        let mut field_lens = vec![vec![0u32; corpus.len()]; schema.len()];
        let mut terms: HashMap<&str, TermPostings> = HashMap::new();

        for (ord, doc) in corpus.iter().enumerate() {
            let ord = ord as DocOrdinal;
            if !seen_ids.insert(doc.id.as_str()) {
                return Err(IndexError::DuplicateDocId(doc.id.clone()));
            }
            let mut seen_fields = vec![false; schema.len()];
            for (name, tokens) in &doc.fields {
                let field =
                    *field_of
                        .get(name.as_str())
                        .ok_or_else(|| IndexError::FieldNotInSchema {
                            doc: doc.id.clone(),
                            field: name.clone(),
                        })?;
                if std::mem::replace(&mut seen_fields[field], true) {
                    return Err(IndexError::DuplicateField {
                        doc: doc.id.clone(),
                        field: name.clone(),
                    });
                }
                field_lens[field][ord as usize] = tokens.len() as u32;
                add_field(&mut terms, schema.len(), field, ord, tokens);
            }
        }

        let terms = terms
            .into_iter()
            .map(|(term, mut postings)| {
                for list in &mut postings.by_field {
                    list.shrink_to_fit();
                }
                (term.to_owned(), postings)
            })
            .collect();

        Ok(Self {
            schema: schema.to_vec(),
            doc_ids: corpus.iter().map(|d| d.id.clone()).collect(),
            terms,
            stats: CollectionStats::new(field_lens, num_docs),
        })
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn field_ordinal(&self, name: &str) -> Option<usize> {
        self.schema.iter().position(|f| f == name)
    }

    pub fn stats(&self) -> &CollectionStats {
        &self.stats
    }

    pub fn num_docs(&self) -> u32 {
        self.stats.num_docs
    }

    pub fn vocabulary_size(&self) -> usize {
        self.terms.len()
    }

    /// Vocabulary in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&str, &TermPostings)> {
        self.terms.iter().map(|(t, p)| (t.as_str(), p))
    }

    pub fn term(&self, term: &str) -> Option<&TermPostings> {
        self.terms.get(term)
    }

    /// Document frequency; zero for unindexed terms.
    pub fn df(&self, term: &str) -> u32 {
        self.terms.get(term).map_or(0, TermPostings::df)
    }

    pub fn doc_id(&self, doc: DocOrdinal) -> Option<&str> {
        self.doc_ids.get(doc as usize).map(String::as_str)
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    /// Reverse lookup from external id; linear in the number of documents.
    pub fn doc_ordinal(&self, id: &str) -> Option<DocOrdinal> {
        self.doc_ids
            .iter()
            .position(|d| d == id)
            .map(|i| i as DocOrdinal)
    }

    /// Stored positions of `term` in `field` of `doc`, or an empty slice.
    pub fn lookup_positions(
        &self,
        term: &str,
        field: &str,
        doc: DocOrdinal,
    ) -> Result<&[Position], IndexError> {
        let field = self
            .field_ordinal(field)
            .ok_or_else(|| IndexError::UnknownField(field.to_owned()))?;
        Ok(self
            .terms
            .get(term)
            .map_or(&[][..], |p| p.positions(field, doc)))
    }

    /// Reconstructs the flat view of `doc`: fields concatenated in schema
    /// order, positions renumbered from zero.
    ///
    /// This walks the whole vocabulary; scorers never call it.
    pub fn flatten(&self, doc: DocOrdinal) -> Result<Vec<Token>, IndexError> {
        if doc >= self.stats.num_docs {
            return Err(IndexError::DocOutOfRange(doc));
        }
        let mut out = Vec::with_capacity(self.stats.flat_len(doc) as usize);
        for field in 0..self.schema.len() {
            let mut slots: Vec<Option<&str>> =
                vec![None; self.stats.field_len(field, doc) as usize];
            for (term, postings) in &self.terms {
                for &p in postings.positions(field, doc) {
                    slots[p as usize] = Some(term);
                }
            }
            let offset = out.len() as Position;
            out.extend(
                slots
                    .into_iter()
                    .enumerate()
                    .map(|(i, t)| Token::new(t.expect("dense positions"), offset + i as Position)),
            );
        }
        Ok(out)
    }

    pub(crate) fn from_parts(
        schema: Vec<String>,
        doc_ids: Vec<String>,
        field_lens: Vec<Vec<u32>>,
        terms: BTreeMap<String, TermPostings>,
    ) -> Self {
        let num_docs = doc_ids.len() as u32;
        Self {
            schema,
            doc_ids,
            terms,
            stats: CollectionStats::new(field_lens, num_docs),
        }
    }
}

impl TermPostings {
    pub(crate) fn from_parts(df: u32, by_field: Vec<Vec<Posting>>) -> Self {
        Self { df, by_field }
    }
}

fn add_field<'a>(
    terms: &mut HashMap<&'a str, TermPostings>,
    num_fields: usize,
    field: usize,
    doc: DocOrdinal,
    tokens: &'a [Token],
) {
    for token in tokens {
        let entry = terms
            .entry(token.term.as_str())
            .or_insert_with(|| TermPostings {
                df: 0,
                by_field: vec![Vec::new(); num_fields],
            });
        let already_in_doc = entry
            .by_field
            .iter()
            .any(|list| list.last().is_some_and(|p| p.doc == doc));
        let list = &mut entry.by_field[field];
        match list.last_mut() {
            Some(last) if last.doc == doc => {
                debug_assert!(last.positions.last() < Some(&token.position));
                last.positions.push(token.position);
            }
            _ => {
                if !already_in_doc {
                    entry.df += 1;
                }
                list.push(Posting {
                    doc,
                    positions: vec![token.position],
                });
            }
        }
    }
}

/// Convenience wrapper over [`Index::build`].
pub fn build_index(corpus: &[FieldedDocument], schema: &[String]) -> Result<Index, IndexError> {
    Index::build(corpus, schema)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{corpus_c, schema};

    #[test]
    fn corpus_c_statistics() {
        let index = build_index(&corpus_c(), &schema(&["title", "body"])).unwrap();
        let stats = index.stats();
        assert_eq!(stats.num_docs(), 4);
        assert_eq!(stats.avg_len(0), 3.0);
        assert_eq!(stats.avg_len(1), 6.0);
        assert_eq!(stats.avg_flat_len(), 9.0);
        assert_eq!(index.df("sea"), 1);
        assert_eq!(index.df("across"), 3);
        assert_eq!(index.df("travel"), 1);
        assert_eq!(index.df("nowhere"), 0);
    }

    #[test]
    fn empty_corpus() {
        let index = build_index(&[], &schema(&["title"])).unwrap();
        assert_eq!(index.num_docs(), 0);
        assert_eq!(index.vocabulary_size(), 0);
        assert_eq!(index.stats().avg_len(0), 0.0);
    }

    #[test]
    fn lookup_examples() {
        let index = build_index(&corpus_c(), &schema(&["title", "body"])).unwrap();
        assert_eq!(index.lookup_positions("sea", "body", 0).unwrap(), [5]);
        assert_eq!(
            index.lookup_positions("sea", "title", 1).unwrap(),
            [] as [u32; 0]
        );
        assert_eq!(index.lookup_positions("travel", "title", 0).unwrap(), [2]);
        assert_eq!(index.lookup_positions("cheap", "title", 0).unwrap(), [0]);
        assert!(matches!(
            index.lookup_positions("sea", "abstract", 0),
            Err(IndexError::UnknownField(_))
        ));
    }

    #[test]
    fn flatten_concatenates_in_schema_order() {
        let index = build_index(&corpus_c(), &schema(&["title", "body"])).unwrap();
        let flat: Vec<_> = index
            .flatten(0)
            .unwrap()
            .into_iter()
            .map(|t| (t.term, t.position))
            .collect();
        let expected = [
            "cheap", "sea", "travel", "cheap", "travel", "across", "the", "deep", "sea",
        ];
        assert_eq!(flat.len(), 9);
        for (i, (term, pos)) in flat.iter().enumerate() {
            assert_eq!(term, expected[i]);
            assert_eq!(*pos as usize, i);
        }
        assert!(matches!(
            index.flatten(4),
            Err(IndexError::DocOutOfRange(4))
        ));
    }

    #[test]
    fn flatten_single_and_empty_fields() {
        let docs = vec![
            FieldedDocument::new("a").with_text("body", "x y z"),
            FieldedDocument::new("b")
                .with_text("title", "")
                .with_text("body", "y"),
        ];
        let index = build_index(&docs, &schema(&["title", "body"])).unwrap();
        let terms = |d| -> Vec<String> {
            index
                .flatten(d)
                .unwrap()
                .into_iter()
                .map(|t| t.term)
                .collect()
        };
        assert_eq!(terms(0), ["x", "y", "z"]);
        assert_eq!(terms(1), ["y"]);
    }

    #[test]
    fn rejects_duplicate_ids() {
        let docs = vec![
            FieldedDocument::new("a").with_text("body", "x"),
            FieldedDocument::new("a").with_text("body", "y"),
        ];
        let err = build_index(&docs, &schema(&["body"])).unwrap_err();
        assert!(matches!(&err, IndexError::DuplicateDocId(id) if id == "a"));
    }

    #[test]
    fn rejects_unknown_fields() {
        let docs = vec![FieldedDocument::new("a").with_text("summary", "x")];
        let err = build_index(&docs, &schema(&["body"])).unwrap_err();
        assert!(
            matches!(&err, IndexError::FieldNotInSchema { doc, field } if doc == "a" && field == "summary")
        );
    }

    #[test]
    fn field_order_follows_schema_not_document() {
        let docs = vec![FieldedDocument::new("a")
            .with_text("body", "b1 b2")
            .with_text("title", "t1")];
        let index = build_index(&docs, &schema(&["title", "body"])).unwrap();
        let flat: Vec<_> = index
            .flatten(0)
            .unwrap()
            .into_iter()
            .map(|t| t.term)
            .collect();
        assert_eq!(flat, ["t1", "b1", "b2"]);
    }
}
