//! Word-pattern dictionaries extracted by a word-level LZW pass.
//!
//! The scan registers successively longer word sequences: starting from the
//! distinct words of the text, each mismatch appends (longest known pattern +
//! the word that broke the match) to the dictionary, and the scan restarts at
//! that word. The simulated compressor's output codes are discarded; only the
//! dictionary is kept, sorted by canonical form so membership checks are a
//! binary search.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::normalize::{LanguageRule, TokenSequence};

/// Documents shorter than this are flagged by [`Dictionary::length_diagnostic`]:
/// the scan needs enough text to register reoccurring word sequences.
pub const RECOMMENDED_MIN_TOKENS: usize = 1000;

/// Magic + version line of the dictionary file format.
pub const DICTIONARY_MAGIC: &str = "FCD1";

/// An ordered sequence of one or more tokens; a dictionary entry.
///
/// The canonical form is the tokens joined by single spaces. Ordering and
/// equality follow the canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(String);

impl Pattern {
    /// Parses a canonical form, rejecting empty patterns, stray spaces and
    /// separator characters inside words.
    pub fn parse(canonical: &str) -> Result<Self> {
        if canonical.is_empty() {
            return Err(Error::Config("empty pattern".into()));
        }
        for word in canonical.split(' ') {
            if word.is_empty() {
                return Err(Error::Config(format!(
                    "pattern {canonical:?} has a leading, trailing or doubled space"
                )));
            }
            if let Some(c) = word.chars().find(|c| !c.is_alphanumeric()) {
                return Err(Error::Config(format!(
                    "pattern {canonical:?} contains separator character {c:?}"
                )));
            }
        }
        Ok(Pattern(canonical.to_string()))
    }

    pub(crate) fn from_canonical_unchecked(canonical: String) -> Self {
        Pattern(canonical)
    }

    /// The space-joined canonical form.
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.0.split(' ')
    }

    pub fn word_count(&self) -> usize {
        self.words().count()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Outcome of the minimum-length check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthDiagnostic {
    Ok,
    /// The source had fewer than [`RECOMMENDED_MIN_TOKENS`] tokens; distances
    /// against this dictionary are valid but likely unreliable.
    ShortDocument {
        token_count: usize,
    },
}

/// Sorted, deduplicated set of word patterns extracted from one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    source_id: String,
    rule: LanguageRule,
    token_count: usize,
    entries: Vec<Pattern>,
}

impl Dictionary {
    /// Identifier of the source document.
    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    /// Language rule that produced the source tokens.
    pub fn rule(&self) -> LanguageRule {
        self.rule
    }

    /// Number of tokens in the source sequence (duplicates included).
    pub fn token_count(&self) -> usize {
        self.token_count
    }

    /// Entries in strictly ascending canonical order.
    pub fn entries(&self) -> &[Pattern] {
        &self.entries
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Binary search for a pattern by canonical form.
    pub fn contains(&self, canonical: &str) -> bool {
        self.entries
            .binary_search_by(|p| p.as_str().cmp(canonical))
            .is_ok()
    }

    /// Flags dictionaries built from documents below the recommended size.
    pub fn length_diagnostic(&self) -> LengthDiagnostic {
        if self.token_count < RECOMMENDED_MIN_TOKENS {
            LengthDiagnostic::ShortDocument {
                token_count: self.token_count,
            }
        } else {
            LengthDiagnostic::Ok
        }
    }

    /// Writes the canonical file format. Byte-exact for equal dictionaries.
    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "{DICTIONARY_MAGIC}")?;
        writeln!(
            w,
            "source={}\trule={}\ttokens={}\tentries={}",
            self.source_id,
            self.rule,
            self.token_count,
            self.entries.len()
        )?;
        for entry in &self.entries {
            writeln!(w, "{entry}")?;
        }
        Ok(())
    }

    /// Serializes to the canonical byte form.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("write to Vec cannot fail");
        buf
    }

    /// Saves to a file, creating or truncating it.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        if self.source_id.contains(['\t', '\n', '\r']) {
            return Err(Error::Config(format!(
                "source id {:?} contains tab or newline and cannot be persisted",
                self.source_id
            )));
        }
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        self.write_to(&mut w)
            .and_then(|()| w.flush())
            .map_err(|e| Error::io(path, e))
    }

    /// Parses the canonical format, validating magic, header, token
    /// constraints and strict entry ordering.
    pub fn from_bytes(bytes: &[u8], origin: impl AsRef<Path>) -> Result<Self> {
        let origin = origin.as_ref();
        let text = std::str::from_utf8(bytes).map_err(|_| Error::Encoding {
            path: origin.to_path_buf(),
        })?;
        let mut lines = text.lines();

        let magic = lines.next().unwrap_or_default();
        if magic != DICTIONARY_MAGIC {
            return Err(Error::BadMagic {
                path: origin.to_path_buf(),
                found: magic.to_string(),
            });
        }

        let header = lines.next().ok_or_else(|| Error::Malformed {
            path: origin.to_path_buf(),
            what: "dictionary header",
            line: 2,
            reason: "missing header line".into(),
        })?;
        let (source_id, rule, token_count, declared_entries) =
            parse_header(header).map_err(|reason| Error::Malformed {
                path: origin.to_path_buf(),
                what: "dictionary header",
                line: 2,
                reason,
            })?;

        let mut entries: Vec<Pattern> = Vec::with_capacity(declared_entries);
        for (ix, line) in lines.enumerate() {
            let line_no = ix + 3;
            let pattern = Pattern::parse(line).map_err(|e| Error::Malformed {
                path: origin.to_path_buf(),
                what: "dictionary entry",
                line: line_no,
                reason: e.to_string(),
            })?;
            if let Some(last) = entries.last() {
                if *last >= pattern {
                    let reason = if *last == pattern {
                        format!("duplicate entry {pattern:?}")
                    } else {
                        format!("entry {pattern:?} out of order after {last:?}")
                    };
                    return Err(Error::Corrupt {
                        path: origin.to_path_buf(),
                        line: line_no,
                        reason,
                    });
                }
            }
            entries.push(pattern);
        }

        if entries.len() != declared_entries {
            return Err(Error::Corrupt {
                path: origin.to_path_buf(),
                line: 2,
                reason: format!(
                    "header declares {declared_entries} entries but {} found",
                    entries.len()
                ),
            });
        }

        Ok(Dictionary {
            source_id,
            rule,
            token_count,
            entries,
        })
    }

    /// Loads a dictionary file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut bytes = Vec::new();
        File::open(path)
            .and_then(|mut f| f.read_to_end(&mut bytes))
            .map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes, path)
    }
}

fn parse_header(header: &str) -> std::result::Result<(String, LanguageRule, usize, usize), String> {
    let fields: Vec<&str> = header.split('\t').collect();
    if fields.len() != 4 {
        return Err(format!(
            "expected 4 tab-separated fields, found {}",
            fields.len()
        ));
    }
    let take = |ix: usize, key: &str| -> std::result::Result<&str, String> {
        fields[ix]
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| format!("field {} must start with {key}=", ix + 1))
    };
    let source_id = take(0, "source")?.to_string();
    let rule: LanguageRule = take(1, "rule")?.parse().map_err(|e: Error| e.to_string())?;
    let token_count: usize = take(2, "tokens")?
        .parse()
        .map_err(|_| "tokens= is not a number".to_string())?;
    let declared_entries: usize = take(3, "entries")?
        .parse()
        .map_err(|_| "entries= is not a number".to_string())?;
    Ok((source_id, rule, token_count, declared_entries))
}

/// Runs the word-level LZW scan over a token sequence and returns the sorted
/// dictionary: the distinct tokens plus every pattern the scan registered.
///
/// The final pending pattern at end of input emits output but adds no entry.
pub fn extract_dictionary(seq: &TokenSequence) -> Dictionary {
    let tokens = seq.tokens();

    // Intern tokens; single-word phrase ids coincide with word ids.
    let mut word_ids: HashMap<&str, u32> = HashMap::new();
    let mut words: Vec<&str> = Vec::new();
    let ids: Vec<u32> = tokens
        .iter()
        .map(|t| {
            *word_ids.entry(t.as_str()).or_insert_with(|| {
                words.push(t.as_str());
                words.len() as u32 - 1
            })
        })
        .collect();

    // Multi-word phrases as (prefix phrase id, final word id); a phrase is
    // only ever probed as an existing phrase extended by one word, so the
    // transition map doubles as the membership test.
    let word_count = words.len() as u32;
    let mut transitions: HashMap<(u32, u32), u32> = HashMap::new();
    let mut phrases: Vec<(u32, u32)> = Vec::new();

    if let Some((&first, rest)) = ids.split_first() {
        let mut current = first;
        for &word in rest {
            match transitions.get(&(current, word)) {
                Some(&phrase) => current = phrase,
                None => {
                    let id = word_count + phrases.len() as u32;
                    phrases.push((current, word));
                    transitions.insert((current, word), id);
                    current = word;
                }
            }
        }
    }

    let mut canon: Vec<String> = Vec::with_capacity(words.len() + phrases.len());
    canon.extend(words.iter().map(|w| (*w).to_string()));
    for &(prefix, word) in &phrases {
        let prefix = &canon[prefix as usize];
        let word = words[word as usize];
        let mut s = String::with_capacity(prefix.len() + 1 + word.len());
        s.push_str(prefix);
        s.push(' ');
        s.push_str(word);
        canon.push(s);
    }

    canon.sort_unstable();
    debug_assert!(canon.windows(2).all(|w| w[0] < w[1]));

    Dictionary {
        source_id: seq.source_id().to_string(),
        rule: seq.rule(),
        token_count: tokens.len(),
        entries: canon
            .into_iter()
            .map(Pattern::from_canonical_unchecked)
            .collect(),
    }
}
