//! Cluster documents by average linkage and export the tree.
//!
//! Run with: cargo run --example hierarchical_clustering

use fcd::{cluster, extract_dictionary, fcd_matrix, LanguageRule, TokenSequence};

const DOCS: [(&str, &str); 5] = [
    (
        "sea-1",
        "the tide rolled over the grey rocks and the gulls cried above the foam",
    ),
    (
        "sea-2",
        "the tide pulled back from the grey rocks while gulls cried over the foam",
    ),
    (
        "sea-3",
        "waves broke on the rocks and the cold foam hissed under the crying gulls",
    ),
    (
        "city-1",
        "neon signs hummed over wet asphalt while the late trains rattled below",
    ),
    (
        "city-2",
        "neon signs flickered over the asphalt and the last trains rattled past",
    ),
];

fn main() -> fcd::Result<()> {
    let labels: Vec<String> = DOCS.iter().map(|(id, _)| id.to_string()).collect();
    let dictionaries: Vec<_> = DOCS
        .iter()
        .map(|(id, text)| {
            extract_dictionary(&TokenSequence::from_text(*id, text, LanguageRule::None))
        })
        .collect();

    let matrix = fcd_matrix(labels, &dictionaries)?.symmetrize();
    let tree = cluster(&matrix)?;

    println!("merges (lower-numbered nodes are leaves):");
    for (k, merge) in tree.merges().iter().enumerate() {
        println!(
            "  node {}: {} + {} at height {:.4} ({} leaves)",
            tree.leaf_count() + k,
            merge.left,
            merge.right,
            merge.height,
            merge.size
        );
    }

    println!("\nnewick: {}", tree.to_newick());
    println!("\ndot:\n{}", tree.to_dot());
    Ok(())
}
