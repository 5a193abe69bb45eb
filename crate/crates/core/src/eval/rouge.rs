//! ROUGE-L over word tokens.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct RougeScore<F: Real> {
    pub precision: F,
    pub recall: F,
    pub f1: F,
}

impl<F: Real> RougeScore<F> {
    pub fn new(precision: F, recall: F) -> Self {
        let sum = precision + recall;
        let f1 = if sum > F::zero() {
            F::lit(2.0) * precision * recall / sum
        } else {
            F::zero()
        };
        RougeScore { precision, recall, f1 }
    }

    /// Component-wise mean; zeros for an empty slice.
    pub fn mean(scores: &[RougeScore<F>]) -> Self {
        if scores.is_empty() {
            return RougeScore::default();
        }
        let n = F::from_count(scores.len());
        let avg = |f: fn(&RougeScore<F>) -> F| scores.iter().map(f).sum::<F>() / n;
        RougeScore {
            precision: avg(|s| s.precision),
            recall: avg(|s| s.recall),
            f1: avg(|s| s.f1),
        }
    }
}

/// Lowercased alphanumeric word tokens.
pub fn rouge_tokens(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_string)
        .collect()
}

/// Length of the longest common subsequence.
pub fn lcs_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut row = vec![0usize; b.len() + 1];
    for x in a {
        let mut diag = 0;
        for (j, y) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[b.len()]
}

pub fn rouge_l<F: Real, T: PartialEq>(candidate: &[T], reference: &[T]) -> RougeScore<F> {
    if candidate.is_empty() || reference.is_empty() {
        return RougeScore::default();
    }
    let l = F::from_count(lcs_len(candidate, reference));
    RougeScore::new(l / F::from_count(candidate.len()), l / F::from_count(reference.len()))
}

/// ROUGE-L between two raw texts using [`rouge_tokens`].
pub fn rouge_l_text<F: Real>(candidate: &str, reference: &str) -> RougeScore<F> {
    rouge_l(&rouge_tokens(candidate), &rouge_tokens(reference))
}
