//! Shared oracles and corpus generators for the integration tests.
//!
//! The oracles re-derive expected values with deliberately different data
//! structures (linear scans, nested loops) so they cannot share a bug with
//! the library's sorted/merged implementations.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Reference dictionary extraction: distinct words up front, then one pass
/// that grows the longest already-known pattern by one word per mismatch,
/// restarting at the mismatch word. Membership is a linear scan over the
/// entry list; the result is sorted for comparison.
pub fn naive_dictionary(tokens: &[&str]) -> Vec<String> {
    let mut entries: Vec<String> = Vec::new();
    for token in tokens {
        if !entries.iter().any(|e| e == token) {
            entries.push(token.to_string());
        }
    }
    let mut i = 0;
    while i < tokens.len() {
        let mut pattern = tokens[i].to_string();
        let mut j = i + 1;
        while j < tokens.len() {
            let extended = format!("{pattern} {}", tokens[j]);
            if entries.contains(&extended) {
                pattern = extended;
                j += 1;
            } else {
                break;
            }
        }
        if j < tokens.len() {
            entries.push(format!("{pattern} {}", tokens[j]));
        }
        i = j;
    }
    entries.sort();
    entries
}

/// Reference intersection: nested loops, no sorting, no binary search.
pub fn naive_intersection(a: &[String], b: &[String]) -> usize {
    a.iter().filter(|x| b.iter().any(|y| y == *x)).count()
}

/// Random token sequence over the alphabet `w0..w{alphabet}`.
pub fn random_tokens(rng: &mut ChaCha8Rng, alphabet: usize, len: usize) -> Vec<String> {
    (0..len)
        .map(|_| format!("w{}", rng.random_range(0..alphabet)))
        .collect()
}

/// Text of `tokens` words drawn rank-weighted (weight 1/rank) from a
/// `vocabulary`-word list, joined by spaces. Common words get short names,
/// so the byte length per token lands near natural text.
pub fn weighted_text(seed: u64, vocabulary: usize, tokens: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cumulative: Vec<f64> = (1..=vocabulary)
        .scan(0.0, |acc, rank| {
            *acc += 1.0 / rank as f64;
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().expect("nonzero vocabulary");
    let mut words = Vec::with_capacity(tokens);
    for _ in 0..tokens {
        let target = rng.random::<f64>() * total;
        let ix = cumulative.partition_point(|&c| c < target);
        words.push(format!("w{}", ix.min(vocabulary - 1)));
    }
    words.join(" ")
}

/// Writes the 90-document speed corpus (about 10,000 tokens each) with its
/// manifest into `dir`, returning the manifest path.
pub fn write_speed_corpus(dir: &std::path::Path) -> std::path::PathBuf {
    let mut manifest = String::from("rule=none\n");
    for i in 0..90u64 {
        let name = format!("doc{i:02}.txt");
        std::fs::write(dir.join(&name), weighted_text(7000 + i, 1000, 10_000)).unwrap();
        manifest.push_str(&format!("{name}\tdoc{i:02}\n"));
    }
    let path = dir.join("manifest.tsv");
    std::fs::write(&path, manifest).unwrap();
    path
}

/// Markov-style author: the same 40-word vocabulary for everyone, but each
/// author chains words with their own transition rule, so authors differ in
/// phrases rather than in words.
pub fn author_text(author: usize, seed: u64, tokens: usize) -> String {
    let profiles = [(1usize, 3usize), (2, 5), (3, 11)];
    let (mult, offset) = profiles[author % profiles.len()];
    let vocabulary = 40;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = rng.random_range(0..vocabulary);
    let mut words = Vec::with_capacity(tokens);
    for _ in 0..tokens {
        words.push(format!("v{current:02}"));
        let jitter = if rng.random_bool(0.3) { 1 } else { 0 };
        current = (current * mult + offset + jitter) % vocabulary;
    }
    words.join(" ")
}
