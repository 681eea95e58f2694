//! Brute-force reference evaluator.
//!
//! Works on plain token lists, recounting tf, df and lengths from scratch for
//! every call, and re-derives spans from the span constraints alone: at each
//! start it tries every segment length from the longest down and keeps the
//! first one that is a valid span.

#![allow(dead_code)]

#[derive(Debug, Clone)]
pub struct RawDoc {
    pub id: String,
    /// Schema-aligned; a missing field is an empty list.
    pub fields: Vec<Vec<String>>,
}

impl RawDoc {
    pub fn flat(&self) -> Vec<String> {
        self.fields.iter().flatten().cloned().collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OracleField {
    pub boost: f64,
    pub b: f64,
    pub z: f64,
    pub x: f64,
}

#[derive(Debug, Clone)]
pub struct OracleParams {
    pub k1: f64,
    pub b: f64,
    pub z: f64,
    pub x: f64,
    pub m: u32,
    pub fields: Vec<OracleField>,
}

fn count(tokens: &[String], term: &str) -> usize {
    tokens.iter().filter(|t| *t == term).count()
}

pub fn df(corpus: &[RawDoc], term: &str) -> usize {
    corpus
        .iter()
        .filter(|d| d.fields.iter().any(|f| f.iter().any(|t| t == term)))
        .count()
}

pub fn idf(corpus: &[RawDoc], term: &str) -> f64 {
    let n = corpus.len() as f64;
    let df = df(corpus, term) as f64;
    ((n - df + 0.5) / (df + 0.5)).ln()
}

fn avg_field_len(corpus: &[RawDoc], field: usize) -> f64 {
    let total: usize = corpus.iter().map(|d| d.fields[field].len()).sum();
    total as f64 / corpus.len() as f64
}

fn avg_flat_len(corpus: &[RawDoc]) -> f64 {
    let total: usize = corpus.iter().map(|d| d.flat().len()).sum();
    total as f64 / corpus.len() as f64
}

fn is_valid_span(seg: &[(usize, &str)], m: u32) -> bool {
    for i in 0..seg.len() {
        for j in i + 1..seg.len() {
            if seg[i].1 == seg[j].1 {
                return false;
            }
        }
    }
    seg.windows(2)
        .all(|w| w[0].0 < w[1].0 && w[1].0 - w[0].0 <= m as usize)
}

/// Spans over `tokens` restricted to `query`, as lists of (position, term).
pub fn spans<'a>(tokens: &'a [String], query: &[String], m: u32) -> Vec<Vec<(usize, &'a str)>> {
    let occ: Vec<(usize, &str)> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| query.contains(t))
        .map(|(p, t)| (p, t.as_str()))
        .collect();
    let mut out = Vec::new();
    let mut start = 0;
    while start < occ.len() {
        let len = (1..=occ.len() - start)
            .rev()
            .find(|&len| is_valid_span(&occ[start..start + len], m))
            .unwrap();
        out.push(occ[start..start + len].to_vec());
        start += len;
    }
    out
}

fn width(span: &[(usize, &str)], m: u32) -> f64 {
    if span.len() == 1 {
        1.0 / m as f64
    } else {
        (span[span.len() - 1].0 - span[0].0 + 1) as f64
    }
}

pub fn rc(tokens: &[String], query: &[String], term: &str, z: f64, x: f64, m: u32) -> f64 {
    let mut total = 0.0;
    for span in spans(tokens, query, m) {
        if span.iter().any(|(_, t)| *t == term) {
            total += (span.len() as f64).powf(z) / width(&span, m).powf(x);
        }
    }
    total
}

fn flat_score(
    corpus: &[RawDoc],
    doc: usize,
    query: &[String],
    p: &OracleParams,
    freq: impl Fn(&[String], &str) -> f64,
) -> f64 {
    let flat = corpus[doc].flat();
    let k = p.k1 * ((1.0 - p.b) + p.b * flat.len() as f64 / avg_flat_len(corpus));
    let mut score = 0.0;
    for t in query {
        let f = freq(&flat, t);
        if f > 0.0 {
            score += (p.k1 + 1.0) * f / (k + f) * idf(corpus, t);
        }
    }
    score
}

fn fielded_score(
    corpus: &[RawDoc],
    doc: usize,
    query: &[String],
    p: &OracleParams,
    freq: impl Fn(&[String], &str, &OracleField) -> f64,
) -> f64 {
    let mut score = 0.0;
    for t in query {
        let mut w = 0.0;
        for (f, fp) in p.fields.iter().enumerate() {
            let tokens = &corpus[doc].fields[f];
            let freq = freq(tokens, t, fp);
            if freq > 0.0 {
                let norm = (1.0 - fp.b) + fp.b * tokens.len() as f64 / avg_field_len(corpus, f);
                w += freq * fp.boost / norm;
            }
        }
        if w > 0.0 {
            score += w / (p.k1 + w) * idf(corpus, t);
        }
    }
    score
}

pub fn bm25(corpus: &[RawDoc], doc: usize, query: &[String], p: &OracleParams) -> f64 {
    flat_score(corpus, doc, query, p, |toks, t| count(toks, t) as f64)
}

pub fn es(corpus: &[RawDoc], doc: usize, query: &[String], p: &OracleParams) -> f64 {
    flat_score(corpus, doc, query, p, |toks, t| {
        rc(toks, query, t, p.z, p.x, p.m)
    })
}

pub fn bm25f(corpus: &[RawDoc], doc: usize, query: &[String], p: &OracleParams) -> f64 {
    fielded_score(corpus, doc, query, p, |toks, t, _| count(toks, t) as f64)
}

pub fn fieldspan(corpus: &[RawDoc], doc: usize, query: &[String], p: &OracleParams) -> f64 {
    fielded_score(corpus, doc, query, p, |toks, t, fp| {
        rc(toks, query, t, fp.z, fp.x, p.m)
    })
}
