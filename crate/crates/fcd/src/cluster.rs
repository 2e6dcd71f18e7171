//! Average-linkage agglomerative clustering over a symmetric distance
//! matrix, with Newick and Graphviz DOT export.
//!
//! Merges are fully deterministic: among the closest cluster pairs, ties go
//! to the pair whose clusters contain the lowest original label indices, and
//! each merge lists its lower-indexed child first.

use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;

/// One agglomerative merge. Node ids: leaves are `0..n`, merge `k` creates
/// node `n + k`; `size` counts the leaves under the merged node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

/// A rooted binary merge tree over labeled leaves, heights non-decreasing
/// toward the root.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    labels: Vec<String>,
    merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.len()
    }

    /// Renders the tree in Newick format with branch lengths, one line,
    /// terminated by `;`. A branch's length is the height difference between
    /// its two ends; leaves sit at height zero.
    pub fn to_newick(&self) -> String {
        let mut out = String::new();
        let root = self.labels.len() + self.merges.len() - 1;
        if self.merges.is_empty() {
            out.push_str(&newick_label(&self.labels[0]));
        } else {
            self.write_newick_node(&mut out, root);
        }
        out.push(';');
        out
    }

    fn node_height(&self, node: usize) -> f64 {
        if node < self.labels.len() {
            0.0
        } else {
            self.merges[node - self.labels.len()].height
        }
    }

    fn write_newick_node(&self, out: &mut String, node: usize) {
        if node < self.labels.len() {
            out.push_str(&newick_label(&self.labels[node]));
            return;
        }
        let merge = &self.merges[node - self.labels.len()];
        out.push('(');
        self.write_newick_node(out, merge.left);
        out.push(':');
        push_length(out, merge.height - self.node_height(merge.left));
        out.push(',');
        self.write_newick_node(out, merge.right);
        out.push(':');
        push_length(out, merge.height - self.node_height(merge.right));
        out.push(')');
    }

    /// Renders the tree as an undirected Graphviz graph; internal nodes are
    /// annotated with their merge heights.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dendrogram {\n  node [shape=box];\n");
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("  l{i} [label=\"{}\"];\n", dot_escape(label)));
        }
        for (k, merge) in self.merges.iter().enumerate() {
            out.push_str(&format!("  m{k} [label=\"{}\"];\n", merge.height));
        }
        let edge_end = |node: usize| {
            if node < self.labels.len() {
                format!("l{node}")
            } else {
                format!("m{}", node - self.labels.len())
            }
        };
        for (k, merge) in self.merges.iter().enumerate() {
            out.push_str(&format!("  m{k} -- {};\n", edge_end(merge.left)));
            out.push_str(&format!("  m{k} -- {};\n", edge_end(merge.right)));
        }
        out.push_str("}\n");
        out
    }
}

fn push_length(out: &mut String, length: f64) {
    use std::fmt::Write as _;
    let _ = write!(out, "{length}");
}

fn newick_label(label: &str) -> String {
    let safe = !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | '|'));
    if safe {
        label.to_string()
    } else {
        format!("'{}'", label.replace('\'', "''"))
    }
}

fn dot_escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Clusters a symmetric zero-diagonal distance matrix by average linkage.
///
/// At each step the two closest clusters merge at their average inter-cluster
/// distance; the running distances follow the weighted average of the merged
/// pair, so heights never decrease toward the root.
pub fn cluster(matrix: &DistanceMatrix) -> Result<Dendrogram> {
    let n = matrix.len();
    if !matrix.is_symmetric() {
        return Err(Error::Precondition(
            "distance matrix is asymmetric; apply symmetrize before clustering".into(),
        ));
    }
    if let Some(i) = (0..n).find(|&i| matrix.get(i, i) != 0.0) {
        return Err(Error::Precondition(format!(
            "distance matrix diagonal must be zero, found {} for {}",
            matrix.get(i, i),
            matrix.labels()[i]
        )));
    }

    // Working state per slot: the dendrogram node, the smallest original
    // leaf index (the tie-break key), and the leaf count. A merged pair
    // collapses into the lower slot; distances live in a full mirror array.
    let mut dist: Vec<f64> = (0..n * n).map(|k| matrix.get(k / n, k % n)).collect();
    let mut node: Vec<usize> = (0..n).collect();
    let mut rep: Vec<usize> = (0..n).collect();
    let mut size: Vec<usize> = vec![1; n];
    let mut alive: Vec<bool> = vec![true; n];
    let mut merges = Vec::with_capacity(n.saturating_sub(1));

    for step in 0..n.saturating_sub(1) {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            for b in a + 1..n {
                if !alive[b] {
                    continue;
                }
                let d = dist[a * n + b];
                let (lo, hi) = if rep[a] < rep[b] {
                    (rep[a], rep[b])
                } else {
                    (rep[b], rep[a])
                };
                let better = match &best {
                    None => true,
                    Some((bd, blo, bhi, _, _)) => match d.total_cmp(bd) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Equal => (lo, hi) < (*blo, *bhi),
                    },
                };
                if better {
                    best = Some((d, lo, hi, a, b));
                }
            }
        }
        let (height, _, _, a, b) = best.expect("at least two clusters remain");
        let (first, second) = if rep[a] < rep[b] { (a, b) } else { (b, a) };
        merges.push(Merge {
            left: node[first],
            right: node[second],
            height,
            size: size[a] + size[b],
        });
        // Fold b into a with the weighted average of the two old distances.
        let (sa, sb) = (size[a] as f64, size[b] as f64);
        for c in 0..n {
            if !alive[c] || c == a || c == b {
                continue;
            }
            let d = (sa * dist[a * n + c] + sb * dist[b * n + c]) / (sa + sb);
            dist[a * n + c] = d;
            dist[c * n + a] = d;
        }
        node[a] = n + step;
        rep[a] = rep[a].min(rep[b]);
        size[a] += size[b];
        alive[b] = false;
    }

    Ok(Dendrogram {
        labels: matrix.labels().to_vec(),
        merges,
    })
}
