use std::fmt;

use super::Scorer;

/// One field's share of a term's pseudo-frequency. `field` is `None` for the
/// flat view used by `bm25` and `es`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldBreakdown {
    pub field: Option<String>,
    /// `tf` or `rc`, depending on the scorer.
    pub frequency: f64,
    /// Length normalizer: `K(D)` on the flat view, `(1 - b_f) + b_f len/avgLen`
    /// per field. `None` when the field is empty or has zero average length.
    pub normalizer: Option<f64>,
    /// Boosted, normalized frequency added into `w(t, D)`; the raw frequency
    /// for the flat scorers.
    pub contribution: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermBreakdown {
    pub term: String,
    pub idf: f64,
    pub fields: Vec<FieldBreakdown>,
    /// Saturated weight before the idf factor.
    pub weight: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreExplanation {
    pub scorer: Scorer,
    pub doc_id: String,
    pub terms: Vec<TermBreakdown>,
    pub total: f64,
}

impl fmt::Display for ScoreExplanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} total={:.6}", self.scorer, self.doc_id, self.total)?;
        for term in &self.terms {
            writeln!(
                f,
                "  {}: score={:.6} weight={:.6} idf={:.6}",
                term.term, term.score, term.weight, term.idf
            )?;
            for field in &term.fields {
                let name = field.field.as_deref().unwrap_or("(flat)");
                let norm = field
                    .normalizer
                    .map_or_else(|| "-".to_string(), |n| format!("{n:.6}"));
                writeln!(
                    f,
                    "    {name}: freq={:.6} norm={norm} contrib={:.6}",
                    field.frequency, field.contribution
                )?;
            }
        }
        Ok(())
    }
}
