//! Extract a word-level dictionary from a text and inspect it.
//!
//! Run with: cargo run --example dictionary_extraction

use fcd::{extract_dictionary, LanguageRule, TokenSequence};

fn main() {
    let text = "TO BE OR NOT TO BE OR NOT TO BE OR WHAT";
    let seq = TokenSequence::from_text("hamlet-ish", text, LanguageRule::None);
    println!("text:   {text}");
    println!("tokens: {:?}", seq.tokens());

    let dictionary = extract_dictionary(&seq);
    println!("\ndictionary of {} entries:", dictionary.len());
    for pattern in dictionary.entries() {
        println!("  {}", pattern.as_str());
    }

    // Every multi-word entry's immediate prefix is itself an entry.
    let closed = dictionary.entries().iter().all(|p| {
        let words: Vec<&str> = p.words().collect();
        words.len() == 1 || dictionary.contains(&words[..words.len() - 1].join(" "))
    });
    println!("\nprefix-closed: {closed}");

    // Language rules fold inflected forms together before extraction.
    let english = TokenSequence::from_text(
        "plurals",
        "the cats chased the cat past other cats",
        LanguageRule::English,
    );
    println!("\nwith the english rule, {:?}", english.tokens());
}
