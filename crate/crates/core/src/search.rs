//! Exhaustive top-k retrieval.
//!
//! Candidates are the union of the query terms' posting lists over every
//! field; each candidate is scored exactly. No pruning.

use std::cmp::Ordering;

use crate::analysis::Query;
use crate::index::{DocOrdinal, Index};
use crate::scoring::{Evaluator, ScoreError, Scorer, ScorerParams, Setting};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error(transparent)]
    Score(#[from] ScoreError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hit {
    pub doc: DocOrdinal,
    pub doc_id: String,
    pub score: f64,
}

/// Hits ordered by descending score, ties by ascending external id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankedList {
    pub hits: Vec<Hit>,
}

impl RankedList {
    pub fn len(&self) -> usize {
        self.hits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hits.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Hit> {
        self.hits.iter()
    }
}

/// Canonical ranking order.
pub fn rank_order(a: &Hit, b: &Hit) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then_with(|| a.doc_id.cmp(&b.doc_id))
}

/// Ordinals of every document holding at least one query term, ascending.
pub fn candidates(index: &Index, query: &Query) -> Vec<DocOrdinal> {
    let mut docs: Vec<DocOrdinal> = query
        .terms()
        .iter()
        .filter_map(|t| index.term(t))
        .flat_map(|postings| {
            (0..index.schema().len()).flat_map(move |f| postings.field(f).iter().map(|p| p.doc))
        })
        .collect();
    docs.sort_unstable();
    docs.dedup();
    docs
}

pub fn search_topk(
    index: &Index,
    query: &Query,
    scorer: Scorer,
    params: &ScorerParams,
    k: usize,
) -> Result<RankedList, SearchError> {
    if k == 0 {
        return Err(SearchError::ZeroK);
    }
    let setting = Setting::from_params(params);
    let mut evaluator = Evaluator::new(index, query, params.clamp_negative_idf)?;
    let mut hits = candidates(index, query)
        .into_iter()
        .map(|doc| {
            Ok(Hit {
                doc,
                doc_id: index.doc_id(doc).expect("candidate in range").to_owned(),
                score: evaluator.score(scorer, &setting, query, doc, None)?,
            })
        })
        .collect::<Result<Vec<_>, ScoreError>>()?;
    if hits.len() > k {
        hits.select_nth_unstable_by(k - 1, rank_order);
        hits.truncate(k);
    }
    hits.sort_unstable_by(rank_order);
    Ok(RankedList { hits })
}
