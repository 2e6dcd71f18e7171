//! Text normalization: raw document text to a canonical token sequence.
//!
//! Tokens are maximal runs of Unicode letters and digits, lowercased; every
//! other character separates tokens. An optional per-language suffix rule is
//! then applied token by token.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Language-specific suffix rule applied to every token after lowercasing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LanguageRule {
    /// Keep tokens as-is.
    #[default]
    None,
    /// Strip one trailing `s` from tokens of three or more characters.
    English,
    /// Strip a final vowel (including accented forms) from tokens of three
    /// or more characters.
    Italian,
}

impl LanguageRule {
    pub const ALL: [LanguageRule; 3] = [
        LanguageRule::None,
        LanguageRule::English,
        LanguageRule::Italian,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LanguageRule::None => "none",
            LanguageRule::English => "english",
            LanguageRule::Italian => "italian",
        }
    }
}

impl fmt::Display for LanguageRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LanguageRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(LanguageRule::None),
            "english" => Ok(LanguageRule::English),
            "italian" => Ok(LanguageRule::Italian),
            other => Err(Error::Config(format!(
                "unknown language rule {other:?} (expected none, english or italian)"
            ))),
        }
    }
}

const ITALIAN_VOWELS: [char; 11] = ['a', 'e', 'i', 'o', 'u', 'à', 'è', 'é', 'ì', 'ò', 'ù'];

/// Applies a language rule to a single lowercased token.
///
/// Never returns an empty string: tokens shorter than three characters are
/// left untouched, so function words like "is" survive the English rule.
pub fn apply_rule(token: &str, rule: LanguageRule) -> &str {
    debug_assert!(!token.is_empty());
    match rule {
        LanguageRule::None => token,
        LanguageRule::English => {
            if token.chars().count() >= 3 && token.ends_with('s') {
                &token[..token.len() - 1]
            } else {
                token
            }
        }
        LanguageRule::Italian => {
            if token.chars().count() >= 3 {
                match token.chars().last() {
                    Some(last) if ITALIAN_VOWELS.contains(&last) => {
                        &token[..token.len() - last.len_utf8()]
                    }
                    _ => token,
                }
            } else {
                token
            }
        }
    }
}

/// Splits raw text into normalized tokens.
///
/// Tokens are maximal alphanumeric runs, lowercased, with the language rule
/// applied per token. Lowercasing can introduce combining marks (e.g. from
/// `İ`); such non-alphanumeric characters are dropped so every character of
/// every token is a letter or digit. Content-free input yields no tokens.
pub fn normalize(raw_text: &str, rule: LanguageRule) -> Vec<String> {
    let mut tokens = Vec::new();
    for run in raw_text.split(|c: char| !c.is_alphanumeric()) {
        if run.is_empty() {
            continue;
        }
        let mut lowered: String = run
            .to_lowercase()
            .chars()
            .filter(|c| c.is_alphanumeric())
            .collect();
        if lowered.is_empty() {
            continue;
        }
        let kept = apply_rule(&lowered, rule).len();
        lowered.truncate(kept);
        tokens.push(lowered);
    }
    tokens
}

/// Normalized, ordered word tokens of one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence {
    source_id: String,
    rule: LanguageRule,
    tokens: Vec<String>,
}

impl TokenSequence {
    /// Tokenizes raw text under the given rule.
    pub fn from_text(source_id: impl Into<String>, raw_text: &str, rule: LanguageRule) -> Self {
        TokenSequence {
            source_id: source_id.into(),
            rule,
            tokens: normalize(raw_text, rule),
        }
    }

    /// Wraps pre-tokenized input, validating the token invariants: every
    /// token non-empty and free of separator characters.
    pub fn new(
        source_id: impl Into<String>,
        rule: LanguageRule,
        tokens: Vec<String>,
    ) -> Result<Self> {
        for token in &tokens {
            if token.is_empty() {
                return Err(Error::Config("empty token in token sequence".into()));
            }
            if let Some(c) = token.chars().find(|c| !c.is_alphanumeric()) {
                return Err(Error::Config(format!(
                    "token {token:?} contains separator character {c:?}"
                )));
            }
        }
        Ok(TokenSequence {
            source_id: source_id.into(),
            rule,
            tokens,
        })
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn rule(&self) -> LanguageRule {
        self.rule
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splits_on_punctuation_and_lowercases() {
        assert_eq!(
            normalize("To be, or not to be!", LanguageRule::None),
            ["to", "be", "or", "not", "to", "be"]
        );
    }

    #[test]
    fn empty_input_yields_no_tokens() {
        assert_eq!(normalize("", LanguageRule::English), Vec::<String>::new());
        assert_eq!(
            normalize("  ... !!", LanguageRule::None),
            Vec::<String>::new()
        );
    }

    #[test]
    fn english_rule_strips_plural_suffix() {
        assert_eq!(
            normalize("The cats' whiskers", LanguageRule::English),
            ["the", "cat", "whisker"]
        );
    }

    #[test]
    fn apply_rule_english() {
        assert_eq!(apply_rule("cats", LanguageRule::English), "cat");
        assert_eq!(apply_rule("is", LanguageRule::English), "is");
        assert_eq!(apply_rule("as", LanguageRule::English), "as");
        assert_eq!(apply_rule("gas", LanguageRule::English), "ga");
    }

    #[test]
    fn apply_rule_italian() {
        assert_eq!(apply_rule("gatto", LanguageRule::Italian), "gatt");
        assert_eq!(apply_rule("per", LanguageRule::Italian), "per");
        assert_eq!(apply_rule("io", LanguageRule::Italian), "io");
        assert_eq!(apply_rule("però", LanguageRule::Italian), "per");
    }

    #[test]
    fn apply_rule_none_is_identity() {
        assert_eq!(apply_rule("cats", LanguageRule::None), "cats");
    }

    #[test]
    fn numerals_are_kept() {
        assert_eq!(
            normalize("Article 42, section 7b", LanguageRule::None),
            ["article", "42", "section", "7b"]
        );
    }

    #[test]
    fn unicode_case_folding_keeps_tokens_alphanumeric() {
        // U+0130 lowercases to 'i' plus a combining dot; the mark is dropped.
        let tokens = normalize("\u{130}stanbul", LanguageRule::None);
        assert_eq!(tokens, ["istanbul"]);
    }

    #[test]
    fn token_sequence_rejects_separators() {
        let err = TokenSequence::new("d", LanguageRule::None, vec!["a b".into()]);
        assert!(err.is_err());
        let err = TokenSequence::new("d", LanguageRule::None, vec![String::new()]);
        assert!(err.is_err());
    }

    #[test]
    fn rule_round_trips_through_str() {
        for rule in LanguageRule::ALL {
            assert_eq!(rule.as_str().parse::<LanguageRule>().unwrap(), rule);
        }
        assert!("french".parse::<LanguageRule>().is_err());
    }

    proptest! {
        #[test]
        fn no_separator_leakage(raw in "\\PC*", rule_ix in 0usize..3) {
            let rule = LanguageRule::ALL[rule_ix];
            for token in normalize(&raw, rule) {
                prop_assert!(!token.is_empty());
                prop_assert!(token.chars().all(|c| c.is_alphanumeric()), "token {token:?}");
            }
        }

        #[test]
        fn normalize_is_idempotent_without_rule(raw in "\\PC*") {
            let once = normalize(&raw, LanguageRule::None);
            let again = normalize(&once.join(" "), LanguageRule::None);
            prop_assert_eq!(once, again);
        }

        #[test]
        fn apply_rule_never_empties(token in "[a-zàèéìòù]{1,12}", rule_ix in 0usize..3) {
            let rule = LanguageRule::ALL[rule_ix];
            prop_assert!(!apply_rule(&token, rule).is_empty());
        }
    }
}
