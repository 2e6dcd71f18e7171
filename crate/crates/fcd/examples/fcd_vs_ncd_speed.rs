//! Compare wall-clock time for a full distance matrix under the dictionary
//! distance versus the compression distance.
//!
//! The dictionary work happens once per document; after that each pair costs
//! one sorted intersection. The compression distance re-parses both
//! documents for every pair, which is where its time goes.
//!
//! Run with: cargo run --release --example fcd_vs_ncd_speed

use std::time::Instant;

use fcd::{extract_dictionary, fcd_matrix, ncd_matrix, LanguageRule, TokenSequence};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const WORDS: [&str; 40] = [
    "the", "of", "and", "to", "in", "was", "it", "that", "tide", "harbor", "mast", "gull", "salt",
    "rope", "deck", "fog", "field", "barn", "plough", "seed", "harvest", "fence", "soil", "crow",
    "ledger", "ink", "desk", "file", "stamp", "notice", "account", "drawer", "moon", "ember",
    "hush", "veil", "mayor", "budget", "council", "vote",
];

fn generate(seed: u64, tokens: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..tokens)
        .map(|_| WORDS[rng.random_range(0..WORDS.len())])
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> fcd::Result<()> {
    let docs: Vec<String> = (0..20).map(|i| generate(i, 2000)).collect();
    let labels: Vec<String> = (0..docs.len()).map(|i| format!("doc-{i:02}")).collect();
    println!(
        "{} documents, ~{} bytes each",
        docs.len(),
        docs.iter().map(String::len).sum::<usize>() / docs.len()
    );

    let start = Instant::now();
    let dictionaries: Vec<_> = docs
        .iter()
        .enumerate()
        .map(|(i, text)| {
            extract_dictionary(&TokenSequence::from_text(
                labels[i].clone(),
                text,
                LanguageRule::None,
            ))
        })
        .collect();
    let extraction = start.elapsed();

    let start = Instant::now();
    let fcd_result = fcd_matrix(labels.clone(), &dictionaries)?;
    let fcd_time = start.elapsed();

    let texts: Vec<Vec<u8>> = docs.iter().map(|d| d.as_bytes().to_vec()).collect();
    let start = Instant::now();
    let ncd_result = ncd_matrix(labels, &texts)?;
    let ncd_time = start.elapsed();

    println!(
        "dictionary extraction: {:>8.1?} (once per corpus)",
        extraction
    );
    println!("fcd matrix:            {:>8.1?}", fcd_time);
    println!("ncd matrix:            {:>8.1?}", ncd_time);
    println!(
        "ncd / fcd (extraction included): {:.1}x",
        ncd_time.as_secs_f64() / (fcd_time + extraction).as_secs_f64()
    );
    println!(
        "\nsample pair {} vs {}: fcd {:.4}, ncd {:.4}",
        fcd_result.labels()[0],
        fcd_result.labels()[1],
        fcd_result.get(0, 1),
        ncd_result.get(0, 1)
    );
    Ok(())
}
