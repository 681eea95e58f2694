//! Synthetic corpora for benchmarks.

use fieldspan::FieldedDocument;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Word `i` of the synthetic vocabulary.
pub fn word(i: usize) -> String {
    format!("w{i}")
}

/// Roughly Zipfian draw over `vocab` words.
fn draw(rng: &mut StdRng, vocab: usize) -> usize {
    let u: f64 = rng.gen();
    ((vocab as f64).powf(u) - 1.0) as usize
}

/// `docs` documents with a short title and a ~`body_len` token body.
pub fn synthetic_corpus(
    docs: usize,
    body_len: usize,
    vocab: usize,
    seed: u64,
) -> Vec<FieldedDocument> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..docs)
        .map(|d| {
            let title_len = rng.gen_range(3..=10);
            let body_len = rng.gen_range(body_len / 2..=body_len * 3 / 2);
            let title: Vec<_> = (0..title_len)
                .map(|_| word(draw(&mut rng, vocab)))
                .collect();
            let body: Vec<_> = (0..body_len).map(|_| word(draw(&mut rng, vocab))).collect();
            FieldedDocument::new(format!("doc{d:06}"))
                .with_terms("title", title)
                .with_terms("body", body)
        })
        .collect()
}

/// Two-term queries over the synthetic vocabulary.
pub fn two_term_queries(count: usize, vocab: usize, seed: u64) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            format!(
                "{} {}",
                word(draw(&mut rng, vocab)),
                word(draw(&mut rng, vocab))
            )
        })
        .collect()
}
