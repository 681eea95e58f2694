//! The four document scoring functions.
//!
//! * `bm25`: Okapi BM25 over the flat view of a document.
//! * `bm25f`: fielded BM25 with per-field boost and per-field `b`.
//! * `es`: Expanded Span, BM25 with `tf(t, D)` replaced by the span
//!   relevance contribution `rc(t, D)` on the flat view.
//! * `fieldspan`: BM25F with `tf(t, f, D)` replaced by `rc(t, f, D)`, spans
//!   extracted independently per field.
//!
//! All four share the idf factor `ln((N - df + 0.5) / (df + 0.5))`, summed
//! over distinct query terms. Note the fielded saturation is `w / (k1 + w)`
//! without the `(k1 + 1)` factor of the flat form.
//!
//! Fields and terms are summed in schema and query order. A term absent from
//! the document contributes exactly zero, as does a field whose length or
//! average length is zero.

mod explain;
mod params;

use std::fmt;
use std::str::FromStr;

use crate::analysis::Query;
use crate::index::{DocOrdinal, Index, TermPostings};
use crate::spans::{Occurrence, SpanChunks, SpanConfig};

pub use explain::{FieldBreakdown, ScoreExplanation, TermBreakdown};
pub use params::{
    Bm25Params, EsParams, FieldParams, ParamError, ScorerParams, DEFAULT_B, DEFAULT_K1,
    DEFAULT_TITLE_BOOST, DEFAULT_X, DEFAULT_Z,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScoreError {
    #[error("empty query")]
    EmptyQuery,
    #[error("df {df} exceeds document count {num_docs}")]
    DfExceedsN { num_docs: u32, df: u32 },
    #[error("document ordinal {0} out of range")]
    DocOutOfRange(DocOrdinal),
    #[error("expected {expected} field parameter sets, got {got}")]
    FieldCount { expected: usize, got: usize },
}

/// Scorer selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scorer {
    Bm25,
    Bm25f,
    Es,
    FieldSpan,
}

impl Scorer {
    pub const ALL: [Scorer; 4] = [Scorer::Bm25, Scorer::Bm25f, Scorer::Es, Scorer::FieldSpan];

    pub fn name(self) -> &'static str {
        match self {
            Scorer::Bm25 => "bm25",
            Scorer::Bm25f => "bm25f",
            Scorer::Es => "es",
            Scorer::FieldSpan => "fieldspan",
        }
    }
}

impl fmt::Display for Scorer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown scorer {0:?} (expected bm25, bm25f, es or fieldspan)")]
pub struct UnknownScorer(pub String);

impl FromStr for Scorer {
    type Err = UnknownScorer;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scorer::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| UnknownScorer(s.to_owned()))
    }
}

/// `ln((N - df + 0.5) / (df + 0.5))`; negative once `df > N/2`.
pub fn idf(num_docs: u32, df: u32) -> Result<f64, ScoreError> {
    if df > num_docs {
        return Err(ScoreError::DfExceedsN { num_docs, df });
    }
    Ok(idf_unchecked(num_docs, df))
}

fn idf_unchecked(num_docs: u32, df: u32) -> f64 {
    let n = f64::from(num_docs);
    let df = f64::from(df);
    ((n - df + 0.5) / (df + 0.5)).ln()
}

/// `(k1 + 1) * freq / (K + freq)`, shared by BM25 and ES.
fn saturate_flat(k1: f64, k_doc: f64, freq: f64) -> f64 {
    (k1 + 1.0) * freq / (k_doc + freq)
}

/// `(1 - b) + b * len / avg_len`.
fn length_norm(b: f64, len: f64, avg_len: f64) -> f64 {
    (1.0 - b) + b * len / avg_len
}

/// Span relevance contribution of one span: `len(s)^z / width(s)^x`.
fn span_contribution(span: &[Occurrence], config: SpanConfig, z: f64, x: f64) -> f64 {
    (span.len() as f64).powf(z) / crate::spans::span_width(span, config).powf(x)
}

/// Relevance contribution `rc(t)` of every query term from a list of spans:
/// the sum of `len(s)^z / width(s)^x` over spans containing the term.
pub fn relevance_contributions(
    spans: &[crate::spans::Span],
    num_terms: usize,
    config: SpanConfig,
    z: f64,
    x: f64,
) -> Vec<f64> {
    let mut rc = vec![0.0; num_terms];
    for span in spans {
        let c = span_contribution(span.entries(), config, z, x);
        for o in span.entries() {
            rc[o.term] += c;
        }
    }
    rc
}

/// `rc(t, D)` for the flat scorer: spans of the flat document.
pub fn relevance_contribution_flat(
    spans: &[crate::spans::Span],
    term: usize,
    params: &EsParams,
) -> f64 {
    spans
        .iter()
        .filter(|s| s.contains(term))
        .map(|s| span_contribution(s.entries(), params.span, params.z, params.x))
        .sum()
}

/// `rc(t, f, D)`: spans of one field with that field's exponents.
pub fn relevance_contribution_field(
    spans: &[crate::spans::Span],
    term: usize,
    field: &FieldParams,
    span: SpanConfig,
) -> f64 {
    spans
        .iter()
        .filter(|s| s.contains(term))
        .map(|s| span_contribution(s.entries(), span, field.z, field.x))
        .sum()
}

/// Resolved settings for one evaluation.
#[derive(Clone, Copy)]
pub(crate) struct Setting<'a> {
    k1: f64,
    b: f64,
    z: f64,
    x: f64,
    span: SpanConfig,
    fields: &'a [FieldParams],
    clamp_idf: bool,
}

impl<'a> Setting<'a> {
    pub(crate) fn from_params(params: &'a ScorerParams) -> Self {
        Self {
            k1: params.bm25.k1,
            b: params.bm25.b,
            z: params.es.z,
            x: params.es.x,
            span: params.es.span,
            fields: &params.fields,
            clamp_idf: params.clamp_negative_idf,
        }
    }
}

/// Reusable buffers for scoring many documents against one query.
pub(crate) struct Evaluator<'i> {
    index: &'i Index,
    postings: Vec<Option<&'i TermPostings>>,
    idfs: Vec<f64>,
    freqs: Vec<f64>,
    occurrences: Vec<Occurrence>,
}

impl<'i> Evaluator<'i> {
    pub(crate) fn new(
        index: &'i Index,
        query: &Query,
        clamp_idf: bool,
    ) -> Result<Self, ScoreError> {
        if query.is_empty() {
            return Err(ScoreError::EmptyQuery);
        }
        let num_docs = index.num_docs();
        let postings: Vec<_> = query.terms().iter().map(|t| index.term(t)).collect();
        let idfs = postings
            .iter()
            .map(|p| {
                let raw = idf_unchecked(num_docs, p.map_or(0, |p| p.df()));
                if clamp_idf {
                    raw.max(0.0)
                } else {
                    raw
                }
            })
            .collect();
        Ok(Self {
            index,
            postings,
            idfs,
            freqs: vec![0.0; query.len()],
            occurrences: Vec::new(),
        })
    }

    /// Scores one document. When `explain` is given, one breakdown per
    /// query term is pushed onto it; the total is accumulated identically
    /// either way.
    pub(crate) fn score(
        &mut self,
        scorer: Scorer,
        setting: &Setting<'_>,
        query: &Query,
        doc: DocOrdinal,
        mut explain: Option<&mut Vec<TermBreakdown>>,
    ) -> Result<f64, ScoreError> {
        if doc >= self.index.num_docs() {
            return Err(ScoreError::DocOutOfRange(doc));
        }
        let schema_len = self.index.schema().len();
        if matches!(scorer, Scorer::Bm25f | Scorer::FieldSpan) && setting.fields.len() != schema_len
        {
            return Err(ScoreError::FieldCount {
                expected: schema_len,
                got: setting.fields.len(),
            });
        }
        let mut total = 0.0;
        match scorer {
            Scorer::Bm25 | Scorer::Es => {
                let stats = self.index.stats();
                let len = stats.flat_len(doc) as f64;
                let k_doc = setting.k1 * length_norm(setting.b, len, stats.avg_flat_len());
                if scorer == Scorer::Bm25 {
                    self.flat_tf(doc);
                } else {
                    self.flat_rc(doc, setting);
                }
                for (i, term) in query.terms().iter().enumerate() {
                    let freq = self.freqs[i];
                    let (weight, score) = if freq > 0.0 {
                        let weight = saturate_flat(setting.k1, k_doc, freq);
                        (weight, weight * self.idfs[i])
                    } else {
                        (0.0, 0.0)
                    };
                    total += score;
                    if let Some(out) = explain.as_deref_mut() {
                        out.push(TermBreakdown {
                            term: term.clone(),
                            idf: self.idfs[i],
                            fields: vec![FieldBreakdown {
                                field: None,
                                frequency: freq,
                                normalizer: Some(k_doc),
                                contribution: freq,
                            }],
                            weight,
                            score,
                        });
                    }
                }
            }
            Scorer::Bm25f | Scorer::FieldSpan => {
                let stats = self.index.stats();
                let mut weights = vec![0.0; query.len()];
                let mut field_parts: Vec<Vec<FieldBreakdown>> = if explain.is_some() {
                    vec![Vec::with_capacity(schema_len); query.len()]
                } else {
                    Vec::new()
                };
                for (field, fp) in setting.fields.iter().enumerate() {
                    let len = stats.field_len(field, doc);
                    let avg = stats.avg_len(field);
                    let active = len > 0 && avg > 0.0;
                    if active {
                        if scorer == Scorer::Bm25f {
                            self.field_tf(field, doc);
                        } else {
                            self.field_rc(field, doc, fp, setting.span);
                        }
                    }
                    let norm = active.then(|| length_norm(fp.b, f64::from(len), avg));
                    for i in 0..query.len() {
                        let freq = if active { self.freqs[i] } else { 0.0 };
                        let contribution = match norm {
                            Some(norm) if freq > 0.0 => freq * fp.boost / norm,
                            _ => 0.0,
                        };
                        if contribution != 0.0 {
                            weights[i] += contribution;
                        }
                        if explain.is_some() {
                            field_parts[i].push(FieldBreakdown {
                                field: Some(self.index.schema()[field].clone()),
                                frequency: freq,
                                normalizer: norm,
                                contribution,
                            });
                        }
                    }
                }
                for (i, term) in query.terms().iter().enumerate() {
                    let w = weights[i];
                    let (weight, score) = if w > 0.0 {
                        let weight = w / (setting.k1 + w);
                        (weight, weight * self.idfs[i])
                    } else {
                        (0.0, 0.0)
                    };
                    total += score;
                    if let Some(out) = explain.as_deref_mut() {
                        out.push(TermBreakdown {
                            term: term.clone(),
                            idf: self.idfs[i],
                            fields: std::mem::take(&mut field_parts[i]),
                            weight,
                            score,
                        });
                    }
                }
            }
        }
        Ok(total)
    }

    fn flat_tf(&mut self, doc: DocOrdinal) {
        let num_fields = self.index.schema().len();
        for (i, postings) in self.postings.iter().enumerate() {
            self.freqs[i] = postings.map_or(0.0, |p| {
                (0..num_fields)
                    .map(|f| p.positions(f, doc).len())
                    .sum::<usize>() as f64
            });
        }
    }

    fn field_tf(&mut self, field: usize, doc: DocOrdinal) {
        for (i, postings) in self.postings.iter().enumerate() {
            self.freqs[i] = postings.map_or(0.0, |p| p.positions(field, doc).len() as f64);
        }
    }

    fn flat_rc(&mut self, doc: DocOrdinal, setting: &Setting<'_>) {
        self.occurrences.clear();
        let stats = self.index.stats();
        let mut offset = 0u32;
        for field in 0..self.index.schema().len() {
            for (i, postings) in self.postings.iter().enumerate() {
                if let Some(p) = postings {
                    self.occurrences.extend(
                        p.positions(field, doc)
                            .iter()
                            .map(|&pos| Occurrence::new(offset + pos, i)),
                    );
                }
            }
            offset += stats.field_len(field, doc);
        }
        self.occurrences.sort_unstable();
        accumulate_rc(
            &self.occurrences,
            setting.span,
            setting.z,
            setting.x,
            &mut self.freqs,
        );
    }

    fn field_rc(&mut self, field: usize, doc: DocOrdinal, fp: &FieldParams, span: SpanConfig) {
        self.occurrences.clear();
        for (i, postings) in self.postings.iter().enumerate() {
            if let Some(p) = postings {
                self.occurrences.extend(
                    p.positions(field, doc)
                        .iter()
                        .map(|&pos| Occurrence::new(pos, i)),
                );
            }
        }
        self.occurrences.sort_unstable();
        accumulate_rc(&self.occurrences, span, fp.z, fp.x, &mut self.freqs);
    }
}

fn accumulate_rc(occurrences: &[Occurrence], span: SpanConfig, z: f64, x: f64, rc: &mut [f64]) {
    rc.fill(0.0);
    for chunk in SpanChunks::new(occurrences, span) {
        let c = span_contribution(chunk, span, z, x);
        for o in chunk {
            rc[o.term] += c;
        }
    }
}

fn evaluate(
    index: &Index,
    doc: DocOrdinal,
    query: &Query,
    scorer: Scorer,
    setting: &Setting<'_>,
) -> Result<f64, ScoreError> {
    Evaluator::new(index, query, setting.clamp_idf)?.score(scorer, setting, query, doc, None)
}

/// Okapi BM25 over the flat view:
/// `sum_t (k1 + 1) tf / (K(D) + tf) * idf`, `K(D) = k1 ((1 - b) + b len(D) / avgLen)`.
pub fn bm25_score(
    index: &Index,
    doc: DocOrdinal,
    query: &Query,
    params: &Bm25Params,
) -> Result<f64, ScoreError> {
    let setting = Setting {
        k1: params.k1,
        b: params.b,
        z: 0.0,
        x: 0.0,
        span: SpanConfig::default(),
        fields: &[],
        clamp_idf: false,
    };
    evaluate(index, doc, query, Scorer::Bm25, &setting)
}

/// BM25F pseudo-frequency `w(t, D) = sum_f tf(t, f, D) boost_f / ((1 - b_f) + b_f len(f, D) / avgLen(f))`.
pub fn bm25f_field_weight(
    index: &Index,
    term: &str,
    doc: DocOrdinal,
    fields: &[FieldParams],
) -> Result<f64, ScoreError> {
    let query = Query::from_terms([term]);
    let setting = fielded_setting(1.0, fields, SpanConfig::default());
    let mut explain = Vec::with_capacity(1);
    Evaluator::new(index, &query, false)?.score(
        Scorer::Bm25f,
        &setting,
        &query,
        doc,
        Some(&mut explain),
    )?;
    Ok(explain[0].fields.iter().map(|f| f.contribution).sum())
}

fn fielded_setting(k1: f64, fields: &[FieldParams], span: SpanConfig) -> Setting<'_> {
    Setting {
        k1,
        b: 0.0,
        z: 0.0,
        x: 0.0,
        span,
        fields,
        clamp_idf: false,
    }
}

/// BM25F: `sum_t w(t, D) / (k1 + w(t, D)) * idf`.
pub fn bm25f_score(
    index: &Index,
    doc: DocOrdinal,
    query: &Query,
    k1: f64,
    fields: &[FieldParams],
) -> Result<f64, ScoreError> {
    let setting = fielded_setting(k1, fields, SpanConfig::default());
    evaluate(index, doc, query, Scorer::Bm25f, &setting)
}

/// Expanded Span: BM25 with `tf(t, D)` replaced by `rc(t, D)` over the flat
/// view. `K(D)` still uses the flat length.
pub fn es_score(
    index: &Index,
    doc: DocOrdinal,
    query: &Query,
    bm25: &Bm25Params,
    es: &EsParams,
) -> Result<f64, ScoreError> {
    let setting = Setting {
        k1: bm25.k1,
        b: bm25.b,
        z: es.z,
        x: es.x,
        span: es.span,
        fields: &[],
        clamp_idf: false,
    };
    evaluate(index, doc, query, Scorer::Es, &setting)
}

/// BM25F with `tf(t, f, D)` replaced by `rc(t, f, D)`, spans extracted
/// per field with the shared window.
pub fn fieldspan_score(
    index: &Index,
    doc: DocOrdinal,
    query: &Query,
    k1: f64,
    fields: &[FieldParams],
    span: SpanConfig,
) -> Result<f64, ScoreError> {
    let setting = fielded_setting(k1, fields, span);
    evaluate(index, doc, query, Scorer::FieldSpan, &setting)
}

/// Scores `doc` under `scorer` using the full parameter set.
pub fn score(
    index: &Index,
    doc: DocOrdinal,
    query: &Query,
    scorer: Scorer,
    params: &ScorerParams,
) -> Result<f64, ScoreError> {
    evaluate(index, doc, query, scorer, &Setting::from_params(params))
}

/// Per-term, per-field breakdown whose `total` equals [`score`] bit for bit.
pub fn explain_score(
    index: &Index,
    doc: DocOrdinal,
    query: &Query,
    scorer: Scorer,
    params: &ScorerParams,
) -> Result<ScoreExplanation, ScoreError> {
    let setting = Setting::from_params(params);
    let mut terms = Vec::with_capacity(query.len());
    let total = Evaluator::new(index, query, setting.clamp_idf)?.score(
        scorer,
        &setting,
        query,
        doc,
        Some(&mut terms),
    )?;
    Ok(ScoreExplanation {
        scorer,
        doc_id: index.doc_id(doc).unwrap_or_default().to_owned(),
        terms,
        total,
    })
}
