//! Author verification: is the unknown document closer to the known
//! author's documents than to the language at large?
//!
//! Run with: cargo run --example author_verification

use std::collections::BTreeMap;

use fcd::classify::{verify, VerificationProblem};
use fcd::{extract_dictionary, Dictionary, LanguageRule, TokenSequence};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[rustfmt::skip]
const VOCABULARIES: [(&str, [&str; 8]); 3] = [
    ("poet", ["moon", "ember", "hush", "veil", "amber", "drift", "sorrow", "bloom"]),
    ("critic", ["plot", "pacing", "tone", "scene", "flaw", "prose", "debut", "verdict"]),
    ("reporter", ["mayor", "budget", "council", "vote", "statement", "deadline", "source", "record"]),
];

fn generate(voice: usize, seed: u64) -> String {
    let shared = ["the", "a", "and", "of", "in", "was", "to", "it"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let own = VOCABULARIES[voice].1;
    (0..600)
        .map(|_| {
            if rng.random_bool(0.5) {
                shared[rng.random_range(0..shared.len())]
            } else {
                own[rng.random_range(0..own.len())]
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> fcd::Result<()> {
    // Corpus: two documents per voice, plus one unknown written by the poet.
    let mut dictionaries: BTreeMap<String, Dictionary> = BTreeMap::new();
    let mut pool = Vec::new();
    for (voice, (name, _)) in VOCABULARIES.iter().enumerate() {
        for k in 0..2 {
            let id = format!("{name}-{k}");
            let text = generate(voice, (voice * 7 + k) as u64);
            dictionaries.insert(
                id.clone(),
                extract_dictionary(&TokenSequence::from_text(
                    id.clone(),
                    &text,
                    LanguageRule::None,
                )),
            );
            pool.push(id);
        }
    }
    let unknown_text = generate(0, 99);
    dictionaries.insert(
        "unknown".into(),
        extract_dictionary(&TokenSequence::from_text(
            "unknown",
            &unknown_text,
            LanguageRule::None,
        )),
    );

    for (candidate, _) in VOCABULARIES {
        let problem = VerificationProblem {
            unknown: "unknown".into(),
            known_set: vec![format!("{candidate}-0"), format!("{candidate}-1")],
            language_pool: pool.clone(),
        };
        let result = verify(&problem, &dictionaries)?;
        println!(
            "unknown vs {candidate:<8} -> {:<9} (known mean {:.4}, pool mean {:.4})",
            result.verdict.to_string(),
            result.known_mean,
            result.pool_mean
        );
    }
    println!("\nthe unknown document was generated with the poet's vocabulary");
    Ok(())
}
