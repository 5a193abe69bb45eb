//! Relevant-topic selection (ρ) and the δ sentence threshold.

use serde::{Deserialize, Serialize};

use super::{argmax, LdaModel, SentenceScore};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tagger::TagCategory;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct TopicRelevance<F: Real> {
    pub rho: Vec<F>,
    pub relevant_topic: usize,
}

/// ρ from per-topic significant-tag counts; ties go to the lower topic.
pub fn rho_from_counts<F: Real>(counts: &[usize]) -> Result<TopicRelevance<F>> {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return Err(Error::NoSignificantTags);
    }
    let rho: Vec<F> = counts
        .iter()
        .map(|&c| F::from_count(c) / F::from_count(total))
        .collect();
    let relevant_topic = argmax(counts.iter().copied()).unwrap_or(0);
    Ok(TopicRelevance { rho, relevant_topic })
}

/// ρ over the training assignments of STOCK, TICKER, CURRENCY and FIN_ABR tokens.
pub fn compute_rho<F: Real>(model: &LdaModel<F>) -> Result<TopicRelevance<F>> {
    let significant: Vec<bool> = model
        .vocabulary
        .iter()
        .map(|w| w.parse::<TagCategory>().is_ok_and(TagCategory::is_significant))
        .collect();
    let mut counts = vec![0usize; model.num_topics()];
    for (doc, z) in model.docs.iter().zip(&model.assignments) {
        for (&w, &t) in doc.iter().zip(z) {
            if significant[w] {
                counts[t] += 1;
            }
        }
    }
    rho_from_counts(&counts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct Detection<F: Real> {
    /// Index into the scored sentences of the segment.
    pub index: usize,
    /// Relevant-topic score.
    pub score: F,
    pub relevant: bool,
}

/// Candidates are sentences whose relevant-topic score is at least twice
/// every other topic's score. A candidate is relevant when its score reaches
/// `min(delta, mean candidate score)`. Only candidates are returned.
pub fn detect_relevant<F: Real>(
    scores: &[SentenceScore<F>],
    relevance: &TopicRelevance<F>,
    delta: F,
) -> Vec<Detection<F>> {
    let r = relevance.relevant_topic;
    let two = F::lit(2.0);
    let candidates: Vec<(usize, F)> = scores
        .iter()
        .enumerate()
        .filter(|(_, s)| s.topic.is_some())
        .filter(|(_, s)| {
            let own = s.scores[r];
            own > F::zero()
                && s
                    .scores
                    .iter()
                    .enumerate()
                    .all(|(t, &other)| t == r || own >= two * other)
        })
        .map(|(i, s)| (i, s.scores[r]))
        .collect();
    if candidates.is_empty() {
        return Vec::new();
    }
    let mean = candidates.iter().map(|&(_, s)| s).sum::<F>() / F::from_count(candidates.len());
    let threshold = delta.min(mean);
    candidates
        .into_iter()
        .map(|(index, score)| Detection {
            index,
            score,
            relevant: score >= threshold,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn score(r: f64) -> SentenceScore<f64> {
        SentenceScore {
            scores: vec![r, 1.0 - r],
            topic: Some(if r >= 0.5 { 0 } else { 1 }),
        }
    }

    fn rel() -> TopicRelevance<f64> {
        TopicRelevance { rho: vec![0.6, 0.4], relevant_topic: 0 }
    }

    #[test]
    fn test_rho_examples() {
        let r = rho_from_counts::<f64>(&[0, 12]).unwrap();
        assert_eq!((r.rho.clone(), r.relevant_topic), (vec![0.0, 1.0], 1));
        let r = rho_from_counts::<f64>(&[30, 10]).unwrap();
        assert_relative_eq!(r.rho[0], 0.75);
        assert_eq!(r.relevant_topic, 0);
        assert_eq!(rho_from_counts::<f64>(&[5, 5]).unwrap().relevant_topic, 0);
        assert!(matches!(rho_from_counts::<f64>(&[0, 0]), Err(Error::NoSignificantTags)));
    }

    #[test]
    fn test_compute_rho_on_model() {
        let docs = vec![vec!["TICKER", "FIN_ABR", "NUM"], vec!["TICKER_ABR", "rose"]];
        let mut m: LdaModel<f64> =
            super::super::train(&docs, &super::super::LdaConfig { passes: 1, ..Default::default() }).unwrap();
        m.assignments = vec![vec![1, 0, 0], vec![1, 1]];
        m.word_topic = vec![0, 1, 1, 0, 1, 0, 0, 1, 0, 1];
        m.doc_topic = vec![2, 1, 0, 2];
        m.topic_totals = vec![2, 3];
        assert!(m.check_consistency());
        // TICKER in topic 1, FIN_ABR in topic 0; NUM and TICKER_ABR are not significant
        let r = compute_rho(&m).unwrap();
        assert_eq!(r.rho, vec![0.5, 0.5]);
        assert_eq!(r.relevant_topic, 0);
    }

    #[test]
    fn test_threshold_worked_example() {
        let published = [0.847, 0.948, 0.571, 0.825, 0.870, 0.897, 0.934];
        let scores: Vec<_> = published.iter().map(|&s| score(s)).collect();
        let out = detect_relevant(&scores, &rel(), 0.8);
        assert!(!out.iter().any(|d| d.index == 2 && d.relevant));
        for (i, &s) in published.iter().enumerate() {
            if s >= 0.8 {
                assert!(out.iter().any(|d| d.index == i && d.relevant));
            }
        }
    }

    #[test]
    fn test_small_cases() {
        let out = detect_relevant(&[score(0.9)], &rel(), 0.8);
        assert_eq!(out, vec![Detection { index: 0, score: 0.9, relevant: true }]);
        assert!(detect_relevant(&[score(0.3), score(0.6)], &rel(), 0.8).is_empty());
        let empty = SentenceScore { scores: vec![0.0, 0.0], topic: None };
        assert!(detect_relevant(&[empty], &rel(), 0.8).is_empty());
        // mean below delta lowers the threshold
        let out = detect_relevant(&[score(0.7), score(0.75)], &rel(), 0.8);
        assert_eq!(out.iter().filter(|d| d.relevant).count(), 1);
    }

    proptest! {
        #[test]
        fn prop_monotone_in_delta(rs in prop::collection::vec(0.0f64..=1.0, 0..15), d1 in 0.01f64..=1.0, d2 in 0.01f64..=1.0) {
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            let scores: Vec<_> = rs.iter().map(|&r| score(r)).collect();
            let high: Vec<usize> = detect_relevant(&scores, &rel(), hi).into_iter().filter(|d| d.relevant).map(|d| d.index).collect();
            let low: Vec<usize> = detect_relevant(&scores, &rel(), lo).into_iter().filter(|d| d.relevant).map(|d| d.index).collect();
            prop_assert!(high.iter().all(|i| low.contains(i)));
        }

        #[test]
        fn prop_rho_sums_to_one(counts in prop::collection::vec(0usize..100, 2)) {
            prop_assume!(counts.iter().sum::<usize>() > 0);
            let r = rho_from_counts::<f64>(&counts).unwrap();
            prop_assert!((r.rho.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(r.rho[r.relevant_topic] >= r.rho[1 - r.relevant_topic]);
        }
    }
}
