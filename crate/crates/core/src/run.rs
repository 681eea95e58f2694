//! Batch query evaluation and TREC run files.
//!
//! Queries come as `query_id<TAB>query text` lines; output lines are
//! `qid Q0 docid rank score tag` with the score printed to six decimals.

use std::collections::HashSet;
use std::fmt;
use std::io::{self, BufRead, Write};

use crate::analysis::analyze_query;
use crate::index::Index;
use crate::scoring::{Scorer, ScorerParams};
use crate::search::{search_topk, SearchError};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("queries line {line}: expected \"query_id<TAB>query text\"")]
    MalformedQuery { line: usize },
    #[error("queries line {line}: duplicate query id {id:?}")]
    DuplicateQueryId { line: usize, id: String },
    #[error("query {id:?}: {source}")]
    Search {
        id: String,
        #[source]
        source: SearchError,
    },
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySpec {
    pub id: String,
    pub text: String,
}

/// Reads a tab-separated query file. Blank lines are skipped.
pub fn read_queries<R: BufRead>(reader: R) -> Result<Vec<QuerySpec>, RunError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() {
            continue;
        }
        let (id, text) = line
            .split_once('\t')
            .ok_or(RunError::MalformedQuery { line: line_no })?;
        let id = id.trim();
        if id.is_empty() || id.contains(char::is_whitespace) {
            return Err(RunError::MalformedQuery { line: line_no });
        }
        if !seen.insert(id.to_owned()) {
            return Err(RunError::DuplicateQueryId {
                line: line_no,
                id: id.to_owned(),
            });
        }
        out.push(QuerySpec {
            id: id.to_owned(),
            text: text.to_owned(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunLine {
    pub query_id: String,
    pub doc_id: String,
    /// 1-based.
    pub rank: usize,
    pub score: f64,
    pub tag: String,
}

impl fmt::Display for RunLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} Q0 {} {} {:.6} {}",
            self.query_id, self.doc_id, self.rank, self.score, self.tag
        )
    }
}

/// Runs one query and converts the ranking to run lines.
pub fn run_query(
    index: &Index,
    query: &QuerySpec,
    scorer: Scorer,
    params: &ScorerParams,
    k: usize,
    tag: &str,
) -> Result<Vec<RunLine>, RunError> {
    let ranked =
        search_topk(index, &analyze_query(&query.text), scorer, params, k).map_err(|source| {
            RunError::Search {
                id: query.id.clone(),
                source,
            }
        })?;
    Ok(ranked
        .hits
        .into_iter()
        .enumerate()
        .map(|(i, hit)| RunLine {
            query_id: query.id.clone(),
            doc_id: hit.doc_id,
            rank: i + 1,
            score: hit.score,
            tag: tag.to_owned(),
        })
        .collect())
}

/// All queries in input order.
pub fn batch_run(
    index: &Index,
    queries: &[QuerySpec],
    scorer: Scorer,
    params: &ScorerParams,
    k: usize,
    tag: &str,
) -> Result<Vec<RunLine>, RunError> {
    let mut lines = Vec::new();
    for query in queries {
        lines.extend(run_query(index, query, scorer, params, k, tag)?);
    }
    Ok(lines)
}

pub fn write_run<W: Write>(lines: &[RunLine], mut out: W) -> io::Result<()> {
    for line in lines {
        writeln!(out, "{line}")?;
    }
    out.flush()
}
