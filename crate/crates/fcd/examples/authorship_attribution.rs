//! Synthetic authorship attribution: three invented authors, held-out
//! queries attributed to the nearest training dictionary.
//!
//! Run with: cargo run --example authorship_attribution

use fcd::classify::{attribute, TrainingDoc};
use fcd::{extract_dictionary, Dictionary, LanguageRule, TokenSequence};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const SHARED: [&str; 12] = [
    "the", "a", "and", "of", "to", "in", "was", "it", "that", "with", "for", "on",
];

#[rustfmt::skip]
const SIGNATURES: [(&str, [&str; 10]); 3] = [
    ("mariner", ["tide", "harbor", "mast", "gull", "salt", "rope", "deck", "fog", "anchor", "sail"]),
    ("farmer", ["field", "barn", "plough", "seed", "harvest", "fence", "soil", "crow", "hay", "well"]),
    ("clerk", ["ledger", "ink", "desk", "file", "stamp", "notice", "account", "drawer", "form", "clock"]),
];

fn generate(author_ix: usize, seed: u64, tokens: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signature = SIGNATURES[author_ix].1;
    let mut words = Vec::with_capacity(tokens);
    for _ in 0..tokens {
        if rng.random_bool(0.55) {
            words.push(SHARED[rng.random_range(0..SHARED.len())]);
        } else {
            words.push(signature[rng.random_range(0..signature.len())]);
        }
    }
    words.join(" ")
}

fn dictionary(id: &str, text: &str) -> Dictionary {
    extract_dictionary(&TokenSequence::from_text(id, text, LanguageRule::None))
}

fn main() -> fcd::Result<()> {
    let mut training = Vec::new();
    for (author_ix, (author, _)) in SIGNATURES.iter().enumerate() {
        for doc in 0..4 {
            let doc_id = format!("{author}-{doc}");
            let text = generate(author_ix, (author_ix * 10 + doc) as u64, 800);
            training.push(TrainingDoc {
                dictionary: dictionary(&doc_id, &text),
                doc_id,
                author: author.to_string(),
            });
        }
    }

    let mut correct = 0;
    for (author_ix, (author, _)) in SIGNATURES.iter().enumerate() {
        let query_id = format!("unseen-{author}");
        let text = generate(author_ix, 900 + author_ix as u64, 800);
        let result = attribute(&query_id, &dictionary(&query_id, &text), &training)?;
        let mark = if result.predicted_author == *author {
            "ok "
        } else {
            "MISS"
        };
        println!(
            "[{mark}] {query_id}: predicted {} via {} at {:.4}",
            result.predicted_author, result.nearest_doc, result.distance
        );
        if result.predicted_author == *author {
            correct += 1;
        }
        if author_ix == 0 {
            println!("      ranking:");
            for (doc_id, distance) in result.ranking.iter().take(5) {
                println!("        {doc_id}  {distance:.4}");
            }
        }
    }
    println!(
        "\n{correct}/{} queries attributed correctly",
        SIGNATURES.len()
    );
    Ok(())
}
