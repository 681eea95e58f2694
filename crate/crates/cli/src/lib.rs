//! Command implementations for the `fieldspan` binary.
//!
//! Each command writes its report to the given writer so tests can capture it.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fieldspan::run::{batch_run, read_queries, write_run};
use fieldspan::{
    analyze_query, build_index, explain_score, load_index, read_jsonl, save_index, search_topk,
    Index, Scorer, ScorerConfig, ScorerParams,
};

#[derive(Debug, Parser)]
#[command(
    name = "fieldspan",
    version,
    about = "Field-aware proximity scoring engine"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an index from a JSON Lines corpus.
    Index(IndexArgs),
    /// Run a single query and print the ranking.
    Search(SearchArgs),
    /// Run a query file and write a TREC run.
    Batch(BatchArgs),
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Comma-separated field names, in flat-view order.
    #[arg(long, value_delimiter = ',', required = true)]
    pub schema: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScoringArgs {
    #[arg(long)]
    pub index: PathBuf,
    /// bm25, bm25f, es or fieldspan.
    #[arg(long, default_value = "fieldspan")]
    pub scorer: Scorer,
    /// JSON parameter file; built-in defaults when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(short = 'k', default_value_t = 10)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub scoring: ScoringArgs,
    #[arg(long)]
    pub query: String,
    /// Print the per-term, per-field score breakdown under each hit.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    #[command(flatten)]
    pub scoring: ScoringArgs,
    /// Lines of "query_id<TAB>query text".
    #[arg(long)]
    pub queries: PathBuf,
    #[arg(long, default_value = "fieldspan")]
    pub tag: String,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Index(args) => cmd_index(&args, out),
        Command::Search(args) => cmd_search(&args, out),
        Command::Batch(args) => cmd_batch(&args, out),
    }
}

pub fn cmd_index(args: &IndexArgs, out: &mut dyn Write) -> Result<()> {
    let file = File::open(&args.corpus)
        .with_context(|| format!("opening corpus {}", args.corpus.display()))?;
    let docs = read_jsonl(BufReader::new(file))
        .with_context(|| format!("reading corpus {}", args.corpus.display()))?;
    let index = build_index(&docs, &args.schema)?;
    save_index(&index, &args.out)
        .with_context(|| format!("writing index {}", args.out.display()))?;

    let stats = index.stats();
    writeln!(out, "N={}", stats.num_docs())?;
    for (i, field) in index.schema().iter().enumerate() {
        writeln!(out, "avgLen({field})={}", stats.avg_len(i))?;
    }
    writeln!(out, "vocabulary={}", index.vocabulary_size())?;
    Ok(())
}

fn open_index(path: &Path) -> Result<Index> {
    load_index(path).with_context(|| format!("loading index {}", path.display()))
}

fn resolve_params(config: Option<&Path>, index: &Index) -> Result<ScorerParams> {
    let config = match config {
        Some(path) => ScorerConfig::load(path)
            .with_context(|| format!("loading config {}", path.display()))?,
        None => ScorerConfig::default(),
    };
    Ok(config.resolve(index.schema())?)
}

pub fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<()> {
    let index = open_index(&args.scoring.index)?;
    let params = resolve_params(args.scoring.config.as_deref(), &index)?;
    let query = analyze_query(&args.query);
    if query.is_empty() {
        bail!("empty query");
    }
    let ranked = search_topk(&index, &query, args.scoring.scorer, &params, args.scoring.k)?;
    for (i, hit) in ranked.iter().enumerate() {
        writeln!(out, "{} {} {:.6}", i + 1, hit.doc_id, hit.score)?;
        if args.explain {
            let explanation = explain_score(&index, hit.doc, &query, args.scoring.scorer, &params)?;
            for line in explanation.to_string().lines() {
                writeln!(out, "    {line}")?;
            }
        }
    }
    Ok(())
}

pub fn cmd_batch(args: &BatchArgs, out: &mut dyn Write) -> Result<()> {
    if args.tag.is_empty() || args.tag.contains(char::is_whitespace) {
        bail!("run tag must be a single non-empty word");
    }
    let index = open_index(&args.scoring.index)?;
    let params = resolve_params(args.scoring.config.as_deref(), &index)?;
    let file = File::open(&args.queries)
        .with_context(|| format!("opening queries {}", args.queries.display()))?;
    let queries = read_queries(BufReader::new(file))?;
    let lines = batch_run(
        &index,
        &queries,
        args.scoring.scorer,
        &params,
        args.scoring.k,
        &args.tag,
    )?;
    let run_file = File::create(&args.out)
        .with_context(|| format!("creating run file {}", args.out.display()))?;
    write_run(&lines, BufWriter::new(run_file))?;
    writeln!(
        out,
        "{} queries, {} run lines -> {}",
        queries.len(),
        lines.len(),
        args.out.display()
    )?;
    Ok(())
}
