#![allow(dead_code)]

pub mod oracle;

use fieldspan::{
    Bm25Params, EsParams, FieldParams, FieldedDocument, Index, ScorerParams, SpanConfig,
};
use oracle::{OracleField, OracleParams, RawDoc};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const CORPUS_C: [(&str, &str, &str); 4] = [
    ("D1", "cheap sea travel", "cheap travel across the deep sea"),
    (
        "D2",
        "budget flight deals",
        "book cheap flights to warm cities",
    ),
    (
        "D3",
        "walking across europe",
        "long walk across the old continent",
    ),
    (
        "D4",
        "rivers and lakes",
        "boats drift across the quiet lake",
    ),
];

pub fn schema(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn corpus_c() -> Vec<FieldedDocument> {
    CORPUS_C
        .iter()
        .map(|(id, title, body)| {
            FieldedDocument::new(*id)
                .with_text("title", title)
                .with_text("body", body)
        })
        .collect()
}

pub fn corpus_c_raw() -> Vec<RawDoc> {
    CORPUS_C
        .iter()
        .map(|(id, title, body)| RawDoc {
            id: id.to_string(),
            fields: [title, body]
                .iter()
                .map(|text| text.split(' ').map(str::to_owned).collect())
                .collect(),
        })
        .collect()
}

pub fn corpus_c_jsonl() -> String {
    CORPUS_C
        .iter()
        .map(|(id, title, body)| {
            format!(
                "{{\"id\":\"{id}\",\"fields\":{{\"title\":\"{title}\",\"body\":\"{body}\"}}}}\n"
            )
        })
        .collect()
}

/// Worked-example parameters: k1 1.2, b 0.75, z 0.55, x 0.25, M 2,
/// boosts title 2 / body 1, b_f 0.5 on both fields.
pub fn corpus_c_params() -> OracleParams {
    OracleParams {
        k1: 1.2,
        b: 0.75,
        z: 0.55,
        x: 0.25,
        m: 2,
        fields: vec![
            OracleField {
                boost: 2.0,
                b: 0.5,
                z: 0.55,
                x: 0.25,
            },
            OracleField {
                boost: 1.0,
                b: 0.5,
                z: 0.55,
                x: 0.25,
            },
        ],
    }
}

pub fn engine_params(p: &OracleParams) -> ScorerParams {
    ScorerParams {
        bm25: Bm25Params::new(p.k1, p.b).unwrap(),
        es: EsParams::new(p.z, p.x, p.m).unwrap(),
        fields: p
            .fields
            .iter()
            .map(|f| FieldParams::new(f.boost, f.b, f.z, f.x).unwrap())
            .collect(),
        clamp_negative_idf: false,
    }
}

pub fn span_config(p: &OracleParams) -> SpanConfig {
    SpanConfig::new(p.m).unwrap()
}

/// Builds the engine index from raw documents. Empty fields are omitted
/// from some documents to exercise the missing-field path.
pub fn engine_index(corpus: &[RawDoc], schema: &[String], rng: &mut StdRng) -> Index {
    let docs: Vec<_> = corpus
        .iter()
        .map(|d| {
            let mut doc = FieldedDocument::new(d.id.clone());
            for (name, tokens) in schema.iter().zip(&d.fields) {
                if tokens.is_empty() && rng.gen_bool(0.5) {
                    continue;
                }
                doc = doc.with_terms(name.clone(), tokens.iter().cloned());
            }
            doc
        })
        .collect();
    Index::build(&docs, schema).unwrap()
}

pub const VOCAB: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn random_params(rng: &mut StdRng, num_fields: usize) -> OracleParams {
    OracleParams {
        k1: rng.gen_range(0.5..=2.0),
        b: rng.gen_range(0.0..=1.0),
        z: rng.gen_range(0.0..=1.0),
        x: rng.gen_range(0.0..=1.0),
        m: rng.gen_range(1..=6),
        fields: (0..num_fields)
            .map(|_| OracleField {
                boost: rng.gen_range(0.0..=3.0),
                b: rng.gen_range(0.0..=1.0),
                z: rng.gen_range(0.0..=1.0),
                x: rng.gen_range(0.0..=1.0),
            })
            .collect(),
    }
}

/// At most 5 documents, 3 fields, 12 tokens per field.
pub fn random_micro_corpus(rng: &mut StdRng) -> (Vec<RawDoc>, Vec<String>) {
    let num_fields = rng.gen_range(1..=3);
    let vocab = rng.gen_range(2..=VOCAB.len());
    let corpus = (0..rng.gen_range(1..=5))
        .map(|d| RawDoc {
            id: format!("doc{d}"),
            fields: (0..num_fields)
                .map(|_| {
                    (0..rng.gen_range(0..=12))
                        .map(|_| VOCAB[rng.gen_range(0..vocab)].to_string())
                        .collect()
                })
                .collect(),
        })
        .collect();
    let schema = (0..num_fields).map(|f| format!("f{f}")).collect();
    (corpus, schema)
}

/// One to three distinct terms, occasionally one that is not indexed.
pub fn random_query(rng: &mut StdRng) -> Vec<String> {
    let mut pool: Vec<&str> = VOCAB.to_vec();
    pool.push("zz");
    pool.shuffle(rng);
    pool.truncate(rng.gen_range(1..=3));
    pool.into_iter().map(str::to_owned).collect()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn synth_word(i: usize) -> String {
    format!("w{i}")
}

fn synth_draw(rng: &mut StdRng, vocab: usize) -> usize {
    let u: f64 = rng.gen();
    ((vocab as f64).powf(u) - 1.0) as usize
}

/// Title of 3-10 tokens and a body of 50-150 tokens, words drawn
/// log-uniformly from a `vocab`-word vocabulary.
pub fn synthetic_corpus(docs: usize, vocab: usize, seed: u64) -> Vec<FieldedDocument> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..docs)
        .map(|d| {
            let title_len = rng.gen_range(3..=10);
            let body_len = rng.gen_range(50..=150);
            let title: Vec<_> = (0..title_len)
                .map(|_| synth_word(synth_draw(&mut rng, vocab)))
                .collect();
            let body: Vec<_> = (0..body_len)
                .map(|_| synth_word(synth_draw(&mut rng, vocab)))
                .collect();
            FieldedDocument::new(format!("doc{d:06}"))
                .with_terms("title", title)
                .with_terms("body", body)
        })
        .collect()
}

pub fn synthetic_queries(count: usize, vocab: usize, seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            format!(
                "s{i}\t{} {}\n",
                synth_word(synth_draw(&mut rng, vocab)),
                synth_word(synth_draw(&mut rng, vocab))
            )
        })
        .collect()
}
