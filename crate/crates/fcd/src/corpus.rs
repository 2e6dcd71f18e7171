//! Corpus manifests: a tab-separated listing of documents with ids, author
//! and language labels, plus a key=value default block.
//!
//! Format, one record per line:
//!
//! ```text
//! # comment
//! rule=english
//! texts/emma.txt<TAB>emma<TAB>austen<TAB>english
//! ```
//!
//! Defaults (currently only `rule=`) must precede the records. A record has
//! two to four fields: path and doc id are required, author and language are
//! optional and may be left empty. Paths are resolved relative to the
//! manifest's directory.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::normalize::LanguageRule;

/// One document of a corpus: where its text lives, where its dictionary is
/// expected, and its labels.
#[derive(Debug, Clone)]
pub struct DocumentRecord {
    doc_id: String,
    author: Option<String>,
    language: Option<String>,
    text_path: PathBuf,
    dictionary_path: PathBuf,
}

impl DocumentRecord {
    pub fn doc_id(&self) -> &str {
        &self.doc_id
    }

    pub fn author(&self) -> Option<&str> {
        self.author.as_deref()
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn text_path(&self) -> &Path {
        &self.text_path
    }

    /// The dictionary file paired with the text: the text path with `.fcd`
    /// appended.
    pub fn dictionary_path(&self) -> &Path {
        &self.dictionary_path
    }
}

/// An ordered corpus of documents with a single normalization rule.
#[derive(Debug, Clone)]
pub struct CorpusIndex {
    documents: Vec<DocumentRecord>,
    rule: LanguageRule,
}

impl CorpusIndex {
    /// Parses a manifest file and checks that every text path exists.
    pub fn from_manifest(path: &Path) -> Result<Self> {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let mut rule = LanguageRule::None;
        let mut in_defaults = true;
        let mut documents: Vec<DocumentRecord> = Vec::new();

        for (ix, line) in raw.lines().enumerate() {
            let line_no = ix + 1;
            let malformed = |what: &'static str, reason: String| Error::Malformed {
                path: path.to_path_buf(),
                what,
                line: line_no,
                reason,
            };
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if in_defaults && !trimmed.contains('\t') {
                if let Some((key, value)) = trimmed.split_once('=') {
                    if key != "rule" {
                        return Err(malformed(
                            "manifest default",
                            format!("unknown key {key:?}; only rule= is recognized"),
                        ));
                    }
                    rule = value
                        .parse()
                        .map_err(|e: Error| malformed("manifest default", e.to_string()))?;
                    continue;
                }
            }
            in_defaults = false;

            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() < 2 || fields.len() > 4 {
                return Err(malformed(
                    "manifest record",
                    format!(
                        "expected 2 to 4 tab-separated fields (path, doc id, author, language), found {}",
                        fields.len()
                    ),
                ));
            }
            let rel = fields[0].trim();
            let doc_id = fields[1].trim();
            if rel.is_empty() {
                return Err(malformed("manifest record", "empty path field".to_string()));
            }
            if doc_id.is_empty() {
                return Err(malformed(
                    "manifest record",
                    "empty doc id field".to_string(),
                ));
            }
            if doc_id.contains([',', '\t', '\n', '\r']) {
                return Err(malformed(
                    "manifest record",
                    format!("doc id {doc_id:?} may not contain commas, tabs, or line breaks"),
                ));
            }
            if documents.iter().any(|d| d.doc_id == doc_id) {
                return Err(malformed(
                    "manifest record",
                    format!("duplicate doc id {doc_id:?}"),
                ));
            }
            let optional = |field: Option<&&str>| {
                let value = field.map(|f| f.trim()).unwrap_or("");
                (!value.is_empty()).then(|| value.to_string())
            };
            let text_path = base.join(rel);
            std::fs::metadata(&text_path).map_err(|e| Error::io(&text_path, e))?;
            let mut dictionary = text_path.clone().into_os_string();
            dictionary.push(".fcd");
            documents.push(DocumentRecord {
                doc_id: doc_id.to_string(),
                author: optional(fields.get(2)),
                language: optional(fields.get(3)),
                text_path,
                dictionary_path: PathBuf::from(dictionary),
            });
        }

        if documents.is_empty() {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                what: "manifest",
                line: raw.lines().count(),
                reason: "no document records".to_string(),
            });
        }
        Ok(CorpusIndex { documents, rule })
    }

    pub fn documents(&self) -> &[DocumentRecord] {
        &self.documents
    }

    pub fn rule(&self) -> LanguageRule {
        self.rule
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn get(&self, doc_id: &str) -> Option<&DocumentRecord> {
        self.documents.iter().find(|d| d.doc_id == doc_id)
    }
}
