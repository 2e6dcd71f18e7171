//! Property tests that pit the library against independent reference
//! implementations and check cross-module invariants end to end.

mod common;

use common::{naive_dictionary, naive_intersection};
use fcd::{extract_dictionary, fcd, intersection_count, ncd, LanguageRule, TokenSequence};
use proptest::prelude::*;

fn sequence(id: &str, tokens: &[String]) -> TokenSequence {
    TokenSequence::new(id, LanguageRule::None, tokens.to_vec()).unwrap()
}

fn token_strategy(alphabet: usize, max_len: usize) -> impl Strategy<Value = Vec<String>> {
    proptest::collection::vec((0..alphabet).prop_map(|i| format!("w{i}")), 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn extraction_matches_the_reference_scan(tokens in token_strategy(5, 50)) {
        let dictionary = extract_dictionary(&sequence("doc", &tokens));
        let mine: Vec<String> =
            dictionary.entries().iter().map(|p| p.as_str().to_string()).collect();
        let refs: Vec<&str> = tokens.iter().map(String::as_str).collect();
        prop_assert_eq!(mine, naive_dictionary(&refs));
    }

    #[test]
    fn intersection_matches_the_nested_loop_count(
        a in token_strategy(4, 40),
        b in token_strategy(4, 40),
    ) {
        let da = extract_dictionary(&sequence("a", &a));
        let db = extract_dictionary(&sequence("b", &b));
        let ea: Vec<String> = da.entries().iter().map(|p| p.as_str().to_string()).collect();
        let eb: Vec<String> = db.entries().iter().map(|p| p.as_str().to_string()).collect();
        prop_assert_eq!(intersection_count(&da, &db), naive_intersection(&ea, &eb));
    }

    #[test]
    fn every_multiword_entry_keeps_its_prefix(tokens in token_strategy(4, 50)) {
        let dictionary = extract_dictionary(&sequence("doc", &tokens));
        for pattern in dictionary.entries() {
            let words: Vec<&str> = pattern.words().collect();
            if words.len() > 1 {
                prop_assert!(dictionary.contains(&words[..words.len() - 1].join(" ")));
            }
        }
    }

    #[test]
    fn distance_is_zero_exactly_on_containment(
        a in token_strategy(3, 30).prop_filter("nonempty", |t| !t.is_empty()),
        b in token_strategy(3, 30),
    ) {
        let da = extract_dictionary(&sequence("a", &a));
        let db = extract_dictionary(&sequence("b", &b));
        let d = fcd(&da, &db).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        let contained = da.entries().iter().all(|p| db.contains(p.as_str()));
        prop_assert_eq!(d == 0.0, contained);
        prop_assert_eq!(fcd(&da, &da).unwrap(), 0.0);
    }

    #[test]
    fn compression_distance_stays_in_its_band(
        a in proptest::collection::vec(any::<u8>(), 1..400),
        b in proptest::collection::vec(any::<u8>(), 1..400),
    ) {
        let d = ncd(&a, &b).unwrap();
        prop_assert!((0.0..1.1).contains(&d), "ncd {d}");
        prop_assert_eq!(ncd(&a, &b).unwrap(), d);
    }

    #[test]
    fn tokenizing_twice_changes_nothing(raw in "[a-zA-Z0-9 ,.;!?'\"-]{0,120}") {
        let once = fcd::normalize(&raw, LanguageRule::None);
        let again = fcd::normalize(&once.join(" "), LanguageRule::None);
        prop_assert_eq!(once, again);
    }
}

#[test]
fn reference_scan_agrees_on_the_golden_trace() {
    let tokens: Vec<&str> = "to be or not to be or not to be or what"
        .split(' ')
        .collect();
    let expected = [
        "be",
        "be or",
        "not",
        "not to",
        "or",
        "or not",
        "or not to",
        "to",
        "to be",
        "to be or",
        "to be or what",
        "what",
    ];
    assert_eq!(naive_dictionary(&tokens), expected);
}
