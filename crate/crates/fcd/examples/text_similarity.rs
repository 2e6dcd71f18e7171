//! Compare two texts with the dictionary distance and with the
//! compression distance.
//!
//! Run with: cargo run --example text_similarity

use fcd::{extract_dictionary, fcd, intersection_count, ncd, LanguageRule, TokenSequence};

fn dictionary(id: &str, text: &str) -> fcd::Dictionary {
    extract_dictionary(&TokenSequence::from_text(id, text, LanguageRule::None))
}

fn main() -> fcd::Result<()> {
    let long = "TO BE OR NOT TO BE OR NOT TO BE OR WHAT";
    let short = "to be or not to be";
    let x = dictionary("long", long);
    let y = dictionary("short", short);

    println!("|D(long)|  = {}", x.len());
    println!("|D(short)| = {}", y.len());
    println!("shared     = {}", intersection_count(&x, &y));

    // The distance is asymmetric: it asks how much of MY dictionary the
    // other text covers. The short text is fully contained in the long one.
    println!("\nfcd(long -> short) = {:.4}", fcd(&x, &y)?);
    println!("fcd(short -> long) = {:.4}", fcd(&y, &x)?);

    let unrelated = dictionary("other", "seven silent moons hum beneath the quantum drive");
    println!("fcd(long -> unrelated) = {:.4}", fcd(&x, &unrelated)?);

    // The compression distance works on raw bytes, no tokenization and no
    // case folding, so compare like with like.
    let a = long.repeat(40);
    let b = "TO BE OR NOT TO BE ".repeat(40);
    let c = "SEVEN SILENT MOONS HUM TONIGHT ".repeat(40);
    println!("\nncd(a, a) = {:.4}", ncd(a.as_bytes(), a.as_bytes())?);
    println!("ncd(a, b) = {:.4}", ncd(a.as_bytes(), b.as_bytes())?);
    println!("ncd(a, c) = {:.4}", ncd(a.as_bytes(), c.as_bytes())?);
    Ok(())
}
