use crate::corpus::FieldedDocument;

/// Four-document title/body fixture. Every title has 3 tokens and every
/// body 6; "sea" and "travel" occur only in D1, "across" in D1, D3 and D4.
pub fn corpus_c() -> Vec<FieldedDocument> {
    [
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
    ]
    .into_iter()
    .map(|(id, title, body)| {
        FieldedDocument::new(id)
            .with_text("title", title)
            .with_text("body", body)
    })
    .collect()
}

pub fn schema(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
