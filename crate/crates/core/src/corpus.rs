//! Fielded documents and the JSON Lines corpus reader.
//!
//! Each input line is `{"id": string, "fields": {name: text, ...}}`.

use std::io::BufRead;

use serde::Deserialize;

use crate::analysis::{tokenize, Token};

/// A document as an ordered list of named, tokenized text fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldedDocument {
    pub id: String,
    pub fields: Vec<(String, Vec<Token>)>,
}

impl FieldedDocument {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            fields: Vec::new(),
        }
    }

    /// Appends a field, tokenizing `text`.
    pub fn with_text(mut self, field: impl Into<String>, text: &str) -> Self {
        self.fields.push((field.into(), tokenize(text)));
        self
    }

    /// Appends a field from pre-normalized terms; positions are assigned densely.
    pub fn with_terms<I, S>(mut self, field: impl Into<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens = terms
            .into_iter()
            .enumerate()
            .map(|(i, t)| Token::new(t, i as u32))
            .collect();
        self.fields.push((field.into(), tokens));
        self
    }

    pub fn field(&self, name: &str) -> Option<&[Token]> {
        self.fields
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t.as_slice())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: {source}")]
    Malformed {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: missing \"id\"")]
    MissingId { line: usize },
    #[error("line {line}: field {field:?} is not a string")]
    NonTextField { line: usize, field: String },
    #[error("reading corpus: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Deserialize)]
struct RawDocument {
    id: Option<String>,
    #[serde(default)]
    fields: serde_json::Map<String, serde_json::Value>,
}

/// Parses one JSON Lines corpus. Blank lines are skipped; line numbers in
/// errors are 1-based.
///
/// Field order in the returned documents is the order of the JSON object,
/// which the index re-sorts into schema order.
pub fn read_jsonl<R: BufRead>(reader: R) -> Result<Vec<FieldedDocument>, CorpusError> {
    let mut docs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawDocument =
            serde_json::from_str(&line).map_err(|source| CorpusError::Malformed {
                line: line_no,
                source,
            })?;
        let id = raw.id.ok_or(CorpusError::MissingId { line: line_no })?;
        let mut doc = FieldedDocument::new(id);
        for (name, value) in raw.fields {
            let text = value.as_str().ok_or_else(|| CorpusError::NonTextField {
                line: line_no,
                field: name.clone(),
            })?;
            doc = doc.with_text(name, text);
        }
        docs.push(doc);
    }
    Ok(docs)
}
