//! Distance matrices over a corpus: parallel construction for both measures,
//! max-symmetrization, and the CSV interchange format.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::corpus::CorpusIndex;
use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::similarity::{compress_size, fcd, joint_compress_size, ncd_from_sizes};

/// Which distance backs a matrix or CLI run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Fcd,
    Ncd,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Fcd => "fcd",
            Measure::Ncd => "ncd",
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fcd" => Ok(Measure::Fcd),
            "ncd" => Ok(Measure::Ncd),
            other => Err(format!("unknown measure {other:?}; expected fcd or ncd")),
        }
    }
}

/// A labeled n-by-n matrix of pairwise distances, row-major, possibly
/// asymmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps labels and row-major values; the value count must be the square
    /// of the label count.
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Precondition(
                "a distance matrix needs at least one document".into(),
            ));
        }
        if values.len() != labels.len() * labels.len() {
            return Err(Error::Precondition(format!(
                "{} labels require {} values, found {}",
                labels.len(),
                labels.len() * labels.len(),
                values.len()
            )));
        }
        Ok(DistanceMatrix { labels, values })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.labels.len() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let n = self.labels.len();
        &self.values[row * n..(row + 1) * n]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Symmetric copy: each pair of mirrored entries becomes their maximum,
    /// so two documents are only as close as their worse direction. The
    /// diagonal is untouched.
    pub fn symmetrize(&self) -> DistanceMatrix {
        let n = self.len();
        let mut out = self.clone();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.get(i, j).max(self.get(j, i));
                out.values[i * n + j] = v;
                out.values[j * n + i] = v;
            }
        }
        out
    }

    /// Renders the CSV form: header `id,<labels>`, one row per document,
    /// values with six decimals, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("id");
        for label in &self.labels {
            out.push(',');
            out.push_str(label);
        }
        out.push('\n');
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(label);
            for value in self.row(i) {
                let _ = write!(out, ",{value:.6}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the CSV form produced by [`DistanceMatrix::to_csv`]; `origin`
    /// names the file in errors.
    pub fn from_csv(text: &str, origin: &Path) -> Result<Self> {
        let malformed = |what: &'static str, line: usize, reason: String| Error::Malformed {
            path: origin.to_path_buf(),
            what,
            line,
            reason,
        };
        let mut lines = text.lines().enumerate();
        let Some((_, header)) = lines.next() else {
            return Err(malformed("matrix header", 1, "empty file".to_string()));
        };
        let mut cols = header.split(',');
        if cols.next() != Some("id") {
            return Err(malformed(
                "matrix header",
                1,
                "first column must be named id".to_string(),
            ));
        }
        let labels: Vec<String> = cols.map(str::to_string).collect();
        if labels.is_empty() || labels.iter().any(String::is_empty) {
            return Err(malformed(
                "matrix header",
                1,
                "header must list one non-empty label per document".to_string(),
            ));
        }
        let n = labels.len();
        let mut values = Vec::with_capacity(n * n);
        let mut rows_seen = 0usize;
        for (ix, line) in lines {
            let line_no = ix + 1;
            if line.is_empty() {
                continue;
            }
            if rows_seen == n {
                return Err(malformed(
                    "matrix row",
                    line_no,
                    format!("expected {n} rows, found more"),
                ));
            }
            let mut fields = line.split(',');
            let row_label = fields.next().unwrap_or("");
            if row_label != labels[rows_seen] {
                return Err(malformed(
                    "matrix row",
                    line_no,
                    format!(
                        "row label {row_label:?} does not match header label {:?}",
                        labels[rows_seen]
                    ),
                ));
            }
            let mut row_values = 0usize;
            for field in fields {
                let value: f64 = field.parse().map_err(|_| {
                    malformed(
                        "matrix value",
                        line_no,
                        format!("unparsable number {field:?}"),
                    )
                })?;
                if !value.is_finite() || value < 0.0 {
                    return Err(malformed(
                        "matrix value",
                        line_no,
                        format!("distance {value} out of range"),
                    ));
                }
                values.push(value);
                row_values += 1;
            }
            if row_values != n {
                return Err(malformed(
                    "matrix row",
                    line_no,
                    format!("expected {n} values, found {row_values}"),
                ));
            }
            rows_seen += 1;
        }
        if rows_seen != n {
            return Err(malformed(
                "matrix",
                text.lines().count(),
                format!("expected {n} rows, found {rows_seen}"),
            ));
        }
        DistanceMatrix::new(labels, values)
    }
}

/// Builds the full ordered-pair distance matrix for a corpus.
///
/// FCD reads the prebuilt dictionaries next to each text; NCD reads the raw
/// texts (validated as UTF-8) and compresses pairs directly. Documents are
/// validated up front so failures name the offending document regardless of
/// parallel scheduling, and the resulting values are independent of the
/// thread count.
pub fn build_matrix(corpus: &CorpusIndex, measure: Measure) -> Result<DistanceMatrix> {
    if corpus.is_empty() {
        return Err(Error::Precondition("corpus has no documents".into()));
    }
    let labels: Vec<String> = corpus
        .documents()
        .iter()
        .map(|d| d.doc_id().to_string())
        .collect();
    match measure {
        Measure::Fcd => fcd_matrix(labels, &load_corpus_dictionaries(corpus)?),
        Measure::Ncd => ncd_matrix(labels, &load_corpus_texts(corpus)?),
    }
}

/// Pairwise dictionary distances, one row per label, rows parallelized.
pub fn fcd_matrix(labels: Vec<String>, dictionaries: &[Dictionary]) -> Result<DistanceMatrix> {
    if labels.len() != dictionaries.len() {
        return Err(Error::Precondition(format!(
            "{} labels for {} dictionaries",
            labels.len(),
            dictionaries.len()
        )));
    }
    let n = labels.len();
    let mut values = vec![0.0f64; n * n];
    values
        .par_chunks_mut(n)
        .enumerate()
        .try_for_each(|(i, row)| -> Result<()> {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = fcd(&dictionaries[i], &dictionaries[j])?;
            }
            Ok(())
        })?;
    DistanceMatrix::new(labels, values)
}

/// Pairwise compression distances over raw texts, rows parallelized.
pub fn ncd_matrix(labels: Vec<String>, texts: &[Vec<u8>]) -> Result<DistanceMatrix> {
    if labels.len() != texts.len() {
        return Err(Error::Precondition(format!(
            "{} labels for {} texts",
            labels.len(),
            texts.len()
        )));
    }
    if let Some(i) = texts.iter().position(|t| t.is_empty()) {
        return Err(Error::EmptyText {
            doc_id: labels[i].clone(),
        });
    }
    let n = labels.len();
    let sizes: Vec<usize> = texts.par_iter().map(|t| compress_size(t)).collect();
    let mut values = vec![0.0f64; n * n];
    values.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for (j, slot) in row.iter_mut().enumerate() {
            let joint = joint_compress_size(&texts[i], &texts[j]);
            *slot = ncd_from_sizes(sizes[i], sizes[j], joint);
        }
    });
    DistanceMatrix::new(labels, values)
}

/// Loads every document's dictionary, in manifest order, rejecting empty
/// ones up front.
pub fn load_corpus_dictionaries(corpus: &CorpusIndex) -> Result<Vec<Dictionary>> {
    let loaded: Vec<Result<Dictionary>> = corpus
        .documents()
        .par_iter()
        .map(|doc| {
            let dictionary = Dictionary::load(doc.dictionary_path())?;
            if dictionary.is_empty() {
                return Err(Error::EmptyDictionary {
                    doc_id: doc.doc_id().to_string(),
                });
            }
            Ok(dictionary)
        })
        .collect();
    loaded.into_iter().collect()
}

/// Reads every document's raw text as UTF-8 bytes, in manifest order,
/// rejecting empty documents up front.
pub fn load_corpus_texts(corpus: &CorpusIndex) -> Result<Vec<Vec<u8>>> {
    let loaded: Vec<Result<Vec<u8>>> = corpus
        .documents()
        .par_iter()
        .map(|doc| {
            let bytes =
                std::fs::read(doc.text_path()).map_err(|e| Error::io(doc.text_path(), e))?;
            if std::str::from_utf8(&bytes).is_err() {
                return Err(Error::Encoding {
                    path: doc.text_path().to_path_buf(),
                });
            }
            if bytes.is_empty() {
                return Err(Error::EmptyText {
                    doc_id: doc.doc_id().to_string(),
                });
            }
            Ok(bytes)
        })
        .collect();
    loaded.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::extract_dictionary;
    use crate::normalize::{LanguageRule, TokenSequence};
    use proptest::prelude::*;
    use std::path::PathBuf;

    fn matrix(labels: &[&str], values: &[f64]) -> DistanceMatrix {
        DistanceMatrix::new(
            labels.iter().map(|s| s.to_string()).collect(),
            values.to_vec(),
        )
        .unwrap()
    }

    fn build_corpus(dir: &Path, docs: &[(&str, &str)]) -> CorpusIndex {
        let mut manifest = String::new();
        for (id, text) in docs {
            let file = format!("{id}.txt");
            std::fs::write(dir.join(&file), text).unwrap();
            manifest.push_str(&format!("{file}\t{id}\n"));
        }
        let manifest_path = dir.join("corpus.tsv");
        std::fs::write(&manifest_path, manifest).unwrap();
        let corpus = CorpusIndex::from_manifest(&manifest_path).unwrap();
        for doc in corpus.documents() {
            let text = std::fs::read_to_string(doc.text_path()).unwrap();
            let seq = TokenSequence::from_text(doc.doc_id(), &text, LanguageRule::None);
            extract_dictionary(&seq)
                .save(doc.dictionary_path())
                .unwrap();
        }
        corpus
    }

    #[test]
    fn single_document_fcd_matrix_is_zero() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = build_corpus(dir.path(), &[("solo", "alpha beta alpha")]);
        let m = build_matrix(&corpus, Measure::Fcd).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(0, 0), 0.0);
    }

    #[test]
    fn identical_documents_are_at_distance_zero() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = build_corpus(
            dir.path(),
            &[("one", "to be or not to be"), ("two", "to be or not to be")],
        );
        let m = build_matrix(&corpus, Measure::Fcd).unwrap();
        assert_eq!(m.get(0, 1), 0.0);
        assert_eq!(m.get(1, 0), 0.0);
    }

    #[test]
    fn controlled_vocabularies_give_unit_blocks() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = build_corpus(
            dir.path(),
            &[
                ("d1", "red green red green"),
                ("d2", "red green red green"),
                ("d3", "blue yellow blue yellow"),
            ],
        );
        let m = build_matrix(&corpus, Measure::Fcd).unwrap();
        let expected = [[0.0, 0.0, 1.0], [0.0, 0.0, 1.0], [1.0, 1.0, 0.0]];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), *want, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn matrix_values_match_per_pair_calls() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = build_corpus(
            dir.path(),
            &[
                ("x", "to be or not to be or not to be or what"),
                ("y", "to be or not to be"),
            ],
        );
        let m = build_matrix(&corpus, Measure::Fcd).unwrap();
        let dicts = load_corpus_dictionaries(&corpus).unwrap();
        assert_eq!(m.get(0, 1), fcd(&dicts[0], &dicts[1]).unwrap());
        assert_eq!(m.get(1, 0), fcd(&dicts[1], &dicts[0]).unwrap());
        assert!((m.get(0, 1) - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(m.get(1, 0), 0.0);
    }

    #[test]
    fn ncd_matrix_matches_direct_calls_and_small_diagonal() {
        let dir = tempfile::tempdir().unwrap();
        let long_a = "the quick brown fox jumps over the lazy dog. ".repeat(40);
        let long_b = "pack my box with five dozen liquor jugs today. ".repeat(40);
        let corpus = build_corpus(dir.path(), &[("a", &long_a), ("b", &long_b)]);
        let m = build_matrix(&corpus, Measure::Ncd).unwrap();
        let direct = crate::similarity::ncd(long_a.as_bytes(), long_b.as_bytes()).unwrap();
        assert_eq!(m.get(0, 1), direct);
        assert!(m.get(0, 0) < 0.1);
        assert!(m.get(1, 1) < 0.1);
    }

    #[test]
    fn missing_dictionary_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = build_corpus(dir.path(), &[("a", "alpha beta")]);
        std::fs::remove_file(corpus.documents()[0].dictionary_path()).unwrap();
        assert!(matches!(
            build_matrix(&corpus, Measure::Fcd),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn symmetrize_takes_the_max_and_keeps_diagonal() {
        let m = matrix(&["a", "b"], &[0.0, 1.0 / 3.0, 0.0, 0.0]);
        let s = m.symmetrize();
        assert_eq!(s.get(0, 1), 1.0 / 3.0);
        assert_eq!(s.get(1, 0), 1.0 / 3.0);
        assert_eq!(s.get(0, 0), 0.0);
        assert_eq!(s.get(1, 1), 0.0);
        assert!(s.is_symmetric());
        // A symmetric matrix is a fixed point.
        assert_eq!(s.symmetrize(), s);
    }

    #[test]
    fn csv_round_trips_byte_exactly() {
        let m = matrix(
            &["alpha", "beta", "gamma"],
            &[0.0, 0.25, 1.0, 0.125, 0.0, 0.5, 1.0 / 3.0, 0.75, 0.0],
        );
        let csv = m.to_csv();
        assert!(csv.starts_with("id,alpha,beta,gamma\n"));
        assert!(csv.contains("alpha,0.000000,0.250000,1.000000\n"));
        let back = DistanceMatrix::from_csv(&csv, &PathBuf::from("test.csv")).unwrap();
        assert_eq!(back.labels(), m.labels());
        assert_eq!(back.to_csv(), csv);
    }

    #[test]
    fn csv_rejects_ragged_rows() {
        let text = "id,a,b\na,0.000000,0.100000\nb,0.100000\n";
        match DistanceMatrix::from_csv(text, &PathBuf::from("bad.csv")) {
            Err(Error::Malformed { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected malformed error, got {other:?}"),
        }
    }

    #[test]
    fn csv_rejects_label_mismatch() {
        let text = "id,a,b\nb,0.000000,0.100000\na,0.100000,0.000000\n";
        assert!(matches!(
            DistanceMatrix::from_csv(text, &PathBuf::from("bad.csv")),
            Err(Error::Malformed { line: 2, .. })
        ));
    }

    proptest! {
        #[test]
        fn symmetrize_is_symmetric_and_dominating(
            n in 1usize..6,
            seed in proptest::collection::vec(0.0f64..1.0, 36),
        ) {
            let values: Vec<f64> = (0..n * n)
                .map(|k| if k % (n + 1) == 0 { 0.0 } else { seed[k] })
                .collect();
            let labels: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
            let m = DistanceMatrix::new(labels, values).unwrap();
            let s = m.symmetrize();
            prop_assert!(s.is_symmetric());
            for i in 0..n {
                for j in 0..n {
                    prop_assert!(s.get(i, j) >= m.get(i, j));
                }
            }
        }

        #[test]
        fn csv_round_trip_preserves_six_decimal_values(
            n in 1usize..5,
            seed in proptest::collection::vec(0.0f64..1.0, 25),
        ) {
            let values: Vec<f64> = (0..n * n).map(|k| (seed[k] * 1e6).round() / 1e6).collect();
            let labels: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
            let m = DistanceMatrix::new(labels, values).unwrap();
            let back = DistanceMatrix::from_csv(&m.to_csv(), &PathBuf::from("t.csv")).unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
