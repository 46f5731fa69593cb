//! Scores and ranks sentences against the bundled co-occurrence counts.
//!
//! ```text
//! cargo run --example sentence_scoring -- [counts-file]
//! ```

use trivenn::ngram::{self, ScoringOptions, DEFAULT_K};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sample_counts.txt").into());
    let stats = ngram::load_counts(&path)?;
    let opts = ScoringOptions::default();

    let words = ["the", "cat", "sat", "on", "the", "mat"];
    let score = ngram::score_sentence(&words, &stats, DEFAULT_K, opts)?;
    println!("{}", words.join(" "));
    for t in &score.reduction_trace {
        println!("  {{{}}} {:.6}", t.events.join(" "), t.estimate);
    }
    println!(
        "  raw={:.6} calibrated={:.6} markov={:.6}",
        score.raw_area,
        score.calibrated,
        ngram::markov_score(&words, &stats)?
    );

    let sentences: Vec<Vec<&str>> = [
        "the cat sat on the mat",
        "the dog ran on the mat",
        "the dog ran park",
        "the mat sat on the cat",
        "cat dog park mat",
        "the cat flew",
    ]
    .iter()
    .map(|s| s.split_whitespace().collect())
    .collect();
    let smoothed = ScoringOptions {
        smoothing: true,
        ..opts
    };
    let ranking = ngram::rank_sentences(&sentences, &stats, DEFAULT_K, smoothed);
    println!("\nranking (add-one smoothing):");
    for (rank, r) in ranking.ranked.iter().enumerate() {
        println!("  {}. {:.6}  {}", rank + 1, r.score.calibrated, r.words.join(" "));
    }
    for (i, e) in &ranking.failures {
        println!("  not scored: {} ({e})", sentences[*i].join(" "));
    }
    Ok(())
}
