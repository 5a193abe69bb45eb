//! χ² feature scoring and percentile selection.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// χ² statistic of each non-negative feature against the class labels:
/// observed per-class feature sums against their expectation under
/// independence. Terms with zero expectation contribute nothing.
pub fn chi2_scores<F: Real>(x: &[Vec<F>], y: &[usize]) -> Result<Vec<F>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n_classes = y.iter().max().map_or(0, |m| m + 1);
    let mut class_count = vec![0usize; n_classes];
    for &c in y {
        class_count[c] += 1;
    }
    if class_count.iter().filter(|&&c| c > 0).count() < 2 {
        return Err(Error::SingleClass);
    }
    let d = x.first().map_or(0, Vec::len);
    let mut observed = vec![vec![F::zero(); d]; n_classes];
    for (row, &c) in x.iter().zip(y) {
        if row.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: row.len() });
        }
        for (o, &v) in observed[c].iter_mut().zip(row) {
            *o += v;
        }
    }
    let n = F::from_count(y.len());
    Ok((0..d)
        .map(|j| {
            let total: F = observed.iter().map(|o| o[j]).sum();
            (0..n_classes)
                .map(|c| {
                    let expected = total * F::from_count(class_count[c]) / n;
                    if expected > F::zero() {
                        let diff = observed[c][j] - expected;
                        diff * diff / expected
                    } else {
                        F::zero()
                    }
                })
                .sum()
        })
        .collect())
}

/// Number of features kept at `percentile`: the top `(100 - percentile)`
/// percent, at least one.
pub fn kept_count(n_features: usize, percentile: f64) -> usize {
    let k = (n_features as f64 * (100.0 - percentile) / 100.0).round() as usize;
    k.clamp(1, n_features.max(1)).min(n_features)
}

/// Indices of the highest scores, ties to the lower index, returned sorted.
pub fn select_top<F: Real>(scores: &[F], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    order.truncate(k);
    order.sort_unstable();
    order
}

pub fn chi2_select<F: Real>(x: &[Vec<F>], y: &[usize], percentile: f64) -> Result<Vec<usize>> {
    if !(percentile > 0.0 && percentile <= 100.0) {
        return Err(Error::Config(format!("percentile must lie in (0, 100], got {percentile}")));
    }
    let scores = chi2_scores(x, y)?;
    Ok(select_top(&scores, kept_count(scores.len(), percentile)))
}
