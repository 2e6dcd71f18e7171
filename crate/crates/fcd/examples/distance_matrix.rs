//! Build an on-disk corpus, extract its dictionaries, and compute the full
//! pairwise distance matrix.
//!
//! Run with: cargo run --example distance_matrix

use std::fs;

use fcd::{build_matrix, extract_dictionary, CorpusIndex, Measure, TokenSequence};

const DOCS: [(&str, &str); 4] = [
    (
        "news-1",
        "the market rose today as traders bought the shares they sold yesterday",
    ),
    (
        "news-2",
        "the market fell today as traders sold the shares they bought yesterday",
    ),
    (
        "recipe-1",
        "whisk the eggs with flour and fold in butter until the batter rests",
    ),
    (
        "recipe-2",
        "whisk the eggs with sugar and fold in cream until the batter rests",
    ),
];

fn main() -> fcd::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");

    let mut manifest = String::from("rule=none\n");
    for (doc_id, text) in DOCS {
        fs::write(dir.path().join(format!("{doc_id}.txt")), text).expect("write text");
        manifest.push_str(&format!("{doc_id}.txt\t{doc_id}\n"));
    }
    let manifest_path = dir.path().join("manifest.tsv");
    fs::write(&manifest_path, manifest).expect("write manifest");

    let corpus = CorpusIndex::from_manifest(&manifest_path)?;
    for doc in corpus.documents() {
        let raw = fs::read_to_string(doc.text_path()).expect("read text");
        let seq = TokenSequence::from_text(doc.doc_id(), &raw, corpus.rule());
        extract_dictionary(&seq).save(doc.dictionary_path())?;
    }

    let matrix = build_matrix(&corpus, Measure::Fcd)?;
    print!("{}", matrix.to_csv());

    println!("\nsymmetric: {}", matrix.is_symmetric());
    let symmetric = matrix.symmetrize();
    println!("after symmetrize: {}", symmetric.is_symmetric());
    println!(
        "news-1 vs news-2:  {:.4}\nnews-1 vs recipe-1: {:.4}",
        symmetric.get(0, 1),
        symmetric.get(0, 2)
    );
    Ok(())
}
