//! Authorship attribution by nearest dictionary and open-set author
//! verification by mean-distance comparison.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::similarity::fcd;

/// A labeled training document for attribution.
#[derive(Debug, Clone)]
pub struct TrainingDoc {
    pub doc_id: String,
    pub author: String,
    pub dictionary: Dictionary,
}

/// Outcome of attributing one query document.
///
/// `ranking` lists every training document by ascending distance; equal
/// distances are ordered by document id, and the first entry is the nearest
/// neighbor that decides the prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct Attribution {
    pub query_id: String,
    pub predicted_author: String,
    pub nearest_doc: String,
    pub distance: f64,
    pub ranking: Vec<(String, f64)>,
}

/// Attributes `query` to the author of its nearest training document.
pub fn attribute(
    query_id: &str,
    query: &Dictionary,
    training: &[TrainingDoc],
) -> Result<Attribution> {
    if training.is_empty() {
        return Err(Error::Precondition(
            "attribution needs at least one training document".into(),
        ));
    }
    let distances: Vec<f64> = training
        .par_iter()
        .map(|doc| fcd(query, &doc.dictionary))
        .collect::<Result<_>>()?;

    let mut order: Vec<usize> = (0..training.len()).collect();
    order.sort_by(|&a, &b| {
        distances[a]
            .total_cmp(&distances[b])
            .then_with(|| training[a].doc_id.cmp(&training[b].doc_id))
    });

    let nearest = &training[order[0]];
    Ok(Attribution {
        query_id: query_id.to_string(),
        predicted_author: nearest.author.clone(),
        nearest_doc: nearest.doc_id.clone(),
        distance: distances[order[0]],
        ranking: order
            .into_iter()
            .map(|i| (training[i].doc_id.clone(), distances[i]))
            .collect(),
    })
}

/// One verification question: does the author of `known_set` match the
/// author of `unknown`?
///
/// `language_pool` holds same-language documents for the baseline mean; it
/// must contain the known set and must not contain the unknown document,
/// whose zero self-distance would drag the baseline down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationProblem {
    pub unknown: String,
    pub known_set: Vec<String>,
    pub language_pool: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    SameAuthor,
    DifferentAuthor,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SameAuthor => "same",
            Verdict::DifferentAuthor => "different",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one verification problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub verdict: Verdict,
    pub known_mean: f64,
    pub pool_mean: f64,
}

/// Answers a verification problem: same author exactly when the unknown
/// document sits strictly closer to the known set, on average, than to the
/// language pool at large. Ties go to `DifferentAuthor`.
pub fn verify(
    problem: &VerificationProblem,
    dictionaries: &BTreeMap<String, Dictionary>,
) -> Result<Verification> {
    if problem.known_set.is_empty() {
        return Err(Error::Precondition(
            "verification known set is empty".into(),
        ));
    }
    if problem.language_pool.is_empty() {
        return Err(Error::Precondition(
            "verification language pool is empty".into(),
        ));
    }
    let known: BTreeSet<&str> = problem.known_set.iter().map(String::as_str).collect();
    let pool: BTreeSet<&str> = problem.language_pool.iter().map(String::as_str).collect();
    if known.len() != problem.known_set.len() {
        return Err(Error::Precondition(
            "verification known set repeats a document".into(),
        ));
    }
    if pool.len() != problem.language_pool.len() {
        return Err(Error::Precondition(
            "verification language pool repeats a document".into(),
        ));
    }
    if known.contains(problem.unknown.as_str()) {
        return Err(Error::Precondition(format!(
            "unknown document {} may not appear in the known set",
            problem.unknown
        )));
    }
    if pool.contains(problem.unknown.as_str()) {
        return Err(Error::Precondition(format!(
            "unknown document {} may not appear in the language pool",
            problem.unknown
        )));
    }
    if let Some(id) = known.iter().find(|id| !pool.contains(*id)) {
        return Err(Error::Precondition(format!(
            "known document {id} is missing from the language pool"
        )));
    }

    let lookup = |id: &str| {
        dictionaries
            .get(id)
            .ok_or_else(|| Error::Config(format!("no dictionary for document {id}")))
    };
    let unknown = lookup(&problem.unknown)?;

    // Distances are summed in sorted order so the verdict and the reported
    // means never depend on how the caller ordered the sets.
    let mean_to = |ids: &[String]| -> Result<f64> {
        let mut distances = ids
            .iter()
            .map(|id| fcd(unknown, lookup(id)?))
            .collect::<Result<Vec<f64>>>()?;
        distances.sort_by(f64::total_cmp);
        Ok(distances.iter().sum::<f64>() / distances.len() as f64)
    };
    let known_mean = mean_to(&problem.known_set)?;
    let pool_mean = mean_to(&problem.language_pool)?;

    let verdict = if known_mean < pool_mean {
        Verdict::SameAuthor
    } else {
        Verdict::DifferentAuthor
    };
    Ok(Verification {
        verdict,
        known_mean,
        pool_mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::extract_dictionary;
    use crate::normalize::{LanguageRule, TokenSequence};

    fn dict(id: &str, text: &str) -> Dictionary {
        extract_dictionary(&TokenSequence::from_text(id, text, LanguageRule::None))
    }

    fn training() -> Vec<TrainingDoc> {
        let mk = |id: &str, author: &str, text: &str| TrainingDoc {
            doc_id: id.to_string(),
            author: author.to_string(),
            dictionary: dict(id, text),
        };
        vec![
            mk(
                "ann-1",
                "ann",
                "red fish blue fish red fish blue fish red fish",
            ),
            mk(
                "ann-2",
                "ann",
                "red bird blue bird red bird blue bird red bird",
            ),
            mk(
                "bob-1",
                "bob",
                "quantum flux drive quantum flux drive quantum flux",
            ),
        ]
    }

    #[test]
    fn query_goes_to_the_author_with_shared_vocabulary() {
        let query = dict("q", "red fish blue fish red fish blue fish");
        let result = attribute("q", &query, &training()).unwrap();
        assert_eq!(result.predicted_author, "ann");
        assert_eq!(result.nearest_doc, "ann-1");
        assert_eq!(result.ranking.len(), 3);
        assert_eq!(result.ranking[0].0, "ann-1");
        assert!(result.ranking.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn distance_ties_pick_the_lowest_doc_id() {
        let text = "one two three one two three one two";
        let twins = vec![
            TrainingDoc {
                doc_id: "zeta".into(),
                author: "z".into(),
                dictionary: dict("zeta", text),
            },
            TrainingDoc {
                doc_id: "alpha".into(),
                author: "a".into(),
                dictionary: dict("alpha", text),
            },
        ];
        let query = dict("q", text);
        let result = attribute("q", &query, &twins).unwrap();
        assert_eq!(result.nearest_doc, "alpha");
        assert_eq!(result.predicted_author, "a");
        assert_eq!(result.distance, 0.0);
    }

    #[test]
    fn empty_training_is_a_precondition_error() {
        let query = dict("q", "a b a b");
        assert!(matches!(
            attribute("q", &query, &[]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn nearest_matches_a_direct_minimum_scan() {
        let training = training();
        let query = dict("q", "quantum flux drive red quantum flux drive");
        let result = attribute("q", &query, &training).unwrap();
        let best = training
            .iter()
            .map(|t| (fcd(&query, &t.dictionary).unwrap(), t.doc_id.clone()))
            .min_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
            .unwrap();
        assert_eq!(result.nearest_doc, best.1);
        assert_eq!(result.distance, best.0);
    }

    fn dictionary_map(entries: &[(&str, &str)]) -> BTreeMap<String, Dictionary> {
        entries
            .iter()
            .map(|(id, text)| (id.to_string(), dict(id, text)))
            .collect()
    }

    #[test]
    fn matching_vocabulary_verifies_as_same_author() {
        let dicts = dictionary_map(&[
            ("u", "red fish blue fish red fish blue fish"),
            ("k1", "red fish blue fish red fish blue fish"),
            ("p1", "quantum flux drive quantum flux drive"),
            ("p2", "seven silent storms seven silent storms"),
        ]);
        let problem = VerificationProblem {
            unknown: "u".into(),
            known_set: vec!["k1".into()],
            language_pool: vec!["k1".into(), "p1".into(), "p2".into()],
        };
        let result = verify(&problem, &dicts).unwrap();
        assert_eq!(result.verdict, Verdict::SameAuthor);
        assert!(result.known_mean < result.pool_mean);
    }

    #[test]
    fn distant_known_set_verifies_as_different_author() {
        let dicts = dictionary_map(&[
            ("u", "red fish blue fish red fish blue fish"),
            ("k1", "quantum flux drive quantum flux drive"),
            ("p1", "red fish blue fish red bird blue bird"),
        ]);
        let problem = VerificationProblem {
            unknown: "u".into(),
            known_set: vec!["k1".into()],
            language_pool: vec!["k1".into(), "p1".into()],
        };
        let result = verify(&problem, &dicts).unwrap();
        assert_eq!(result.verdict, Verdict::DifferentAuthor);
        assert!(result.known_mean > result.pool_mean);
    }

    #[test]
    fn equal_means_resolve_to_different_author() {
        let dicts = dictionary_map(&[
            ("u", "red fish blue fish red fish blue fish"),
            ("k1", "quantum flux drive quantum flux drive"),
            ("k2", "seven silent storms seven silent storms"),
        ]);
        let problem = VerificationProblem {
            unknown: "u".into(),
            known_set: vec!["k1".into(), "k2".into()],
            language_pool: vec!["k1".into(), "k2".into()],
        };
        let result = verify(&problem, &dicts).unwrap();
        assert_eq!(result.known_mean, result.pool_mean);
        assert_eq!(result.verdict, Verdict::DifferentAuthor);
    }

    #[test]
    fn set_order_never_changes_the_outcome() {
        let dicts = dictionary_map(&[
            ("u", "red fish blue fish green fish red fish"),
            ("k1", "red fish blue fish red fish blue fish"),
            ("k2", "green fish red fish green fish red fish"),
            ("p1", "quantum flux drive quantum flux drive"),
            ("p2", "seven silent storms seven silent storms"),
        ]);
        let forward = VerificationProblem {
            unknown: "u".into(),
            known_set: vec!["k1".into(), "k2".into()],
            language_pool: vec!["k1".into(), "k2".into(), "p1".into(), "p2".into()],
        };
        let reversed = VerificationProblem {
            unknown: "u".into(),
            known_set: vec!["k2".into(), "k1".into()],
            language_pool: vec!["p2".into(), "p1".into(), "k2".into(), "k1".into()],
        };
        let a = verify(&forward, &dicts).unwrap();
        let b = verify(&reversed, &dicts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_inside_the_pool_is_rejected() {
        let dicts = dictionary_map(&[("u", "red fish blue fish"), ("k1", "red fish blue fish")]);
        let problem = VerificationProblem {
            unknown: "u".into(),
            known_set: vec!["k1".into()],
            language_pool: vec!["k1".into(), "u".into()],
        };
        match verify(&problem, &dicts) {
            Err(Error::Precondition(reason)) => {
                assert!(reason.contains("language pool"), "{reason}")
            }
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn known_doc_outside_the_pool_is_rejected() {
        let dicts = dictionary_map(&[
            ("u", "red fish blue fish"),
            ("k1", "red fish blue fish"),
            ("p1", "quantum flux drive"),
        ]);
        let problem = VerificationProblem {
            unknown: "u".into(),
            known_set: vec!["k1".into()],
            language_pool: vec!["p1".into()],
        };
        assert!(matches!(
            verify(&problem, &dicts),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn missing_dictionary_is_a_config_error() {
        let dicts = dictionary_map(&[("u", "red fish blue fish")]);
        let problem = VerificationProblem {
            unknown: "u".into(),
            known_set: vec!["ghost".into()],
            language_pool: vec!["ghost".into()],
        };
        match verify(&problem, &dicts) {
            Err(Error::Config(reason)) => assert!(reason.contains("ghost"), "{reason}"),
            other => panic!("expected config error, got {other:?}"),
        }
    }
}
