//! Inter-annotator agreement over binary sentence labels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric 2×2 coincidence matrix; index 0 is Relevant, 1 is Context.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct CoincidenceMatrix<F: Real> {
    pub cells: [[F; 2]; 2],
}

fn slot(relevant: bool) -> usize {
    if relevant {
        0
    } else {
        1
    }
}

impl<F: Real> CoincidenceMatrix<F> {
    pub fn new(cells: [[F; 2]; 2]) -> Self {
        CoincidenceMatrix { cells }
    }

    /// Each unit holds the labels its annotators gave (true = Relevant).
    /// Every ordered pair of labels from distinct annotators adds `1/(m-1)`.
    /// Units with fewer than two labels are skipped.
    pub fn from_units<U: AsRef<[bool]>>(units: &[U]) -> Self {
        let mut cells = [[F::zero(); 2]; 2];
        for unit in units {
            let labels = unit.as_ref();
            let m = labels.len();
            if m < 2 {
                continue;
            }
            let w = F::one() / F::from_count(m - 1);
            for (i, &a) in labels.iter().enumerate() {
                for (j, &b) in labels.iter().enumerate() {
                    if i != j {
                        cells[slot(a)][slot(b)] += w;
                    }
                }
            }
        }
        CoincidenceMatrix { cells }
    }

    pub fn total(&self) -> F {
        self.cells.iter().flatten().copied().sum()
    }

    /// Marginal totals (n_R, n_C).
    pub fn marginals(&self) -> (F, F) {
        (
            self.cells[0][0] + self.cells[0][1],
            self.cells[1][0] + self.cells[1][1],
        )
    }
}

/// Nominal binary α = 1 − D_o / D_e.
pub fn krippendorff_alpha<F: Real>(m: &CoincidenceMatrix<F>) -> Result<F> {
    let n = m.total();
    let (nr, nc) = m.marginals();
    if n <= F::one() || nr <= F::zero() || nc <= F::zero() {
        return Err(Error::Degenerate("coincidence matrix has a single category or n <= 1".into()));
    }
    let observed = (m.cells[0][1] + m.cells[1][0]) / n;
    let expected = F::lit(2.0) * nr * nc / (n * (n - F::one()));
    Ok(F::one() - observed / expected)
}

/// Fraction of positions where the two label sequences agree.
pub fn pairwise_accuracy<F: Real, T: PartialEq>(a: &[T], b: &[T]) -> Result<F> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::Degenerate("no units to compare".into()));
    }
    let same = a.iter().zip(b).filter(|(x, y)| x == y).count();
    Ok(F::from_count(same) / F::from_count(a.len()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub annotators: Vec<String>,
    /// Pairwise α; None where undefined or on the diagonal.
    pub alpha: Vec<Vec<Option<f64>>>,
    pub accuracy: Vec<Vec<Option<f64>>>,
    /// α over all annotators jointly.
    pub overall_alpha: Option<f64>,
    pub mean_alpha: Option<f64>,
    pub mean_accuracy: Option<f64>,
    pub coincidence: CoincidenceMatrix<f64>,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let v: Vec<f64> = values.collect();
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

/// `labels[a][u]` is annotator `a`'s label for unit `u`, None when not labelled.
pub fn agreement_report(annotators: &[String], labels: &[Vec<Option<bool>>]) -> AgreementReport {
    let k = annotators.len();
    let units = labels.first().map_or(0, Vec::len);
    let joint: Vec<Vec<bool>> = (0..units)
        .map(|u| labels.iter().filter_map(|l| l[u]).collect())
        .collect();
    let coincidence = CoincidenceMatrix::<f64>::from_units(&joint);
    let mut alpha = vec![vec![None; k]; k];
    let mut accuracy = vec![vec![None; k]; k];
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let pairs: Vec<(bool, bool)> = (0..units)
                .filter_map(|u| Some((labels[a][u]?, labels[b][u]?)))
                .collect();
            let (xa, xb): (Vec<bool>, Vec<bool>) = pairs.iter().copied().unzip();
            accuracy[a][b] = pairwise_accuracy::<f64, _>(&xa, &xb).ok();
            let units: Vec<[bool; 2]> = pairs.iter().map(|&(x, y)| [x, y]).collect();
            alpha[a][b] = krippendorff_alpha(&CoincidenceMatrix::<f64>::from_units(&units)).ok();
        }
    }
    let upper = |m: &Vec<Vec<Option<f64>>>| {
        mean((0..k).flat_map(|a| (a + 1..k).filter_map(move |b| m[a][b])).collect::<Vec<_>>().into_iter())
    };
    AgreementReport {
        annotators: annotators.to_vec(),
        mean_alpha: upper(&alpha),
        mean_accuracy: upper(&accuracy),
        alpha,
        accuracy,
        overall_alpha: krippendorff_alpha(&coincidence).ok(),
        coincidence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn test_reference_matrix() {
        let m = CoincidenceMatrix::<f64>::new([[2752.5, 1561.5], [1561.5, 16584.5]]);
        let a = krippendorff_alpha(&m).unwrap();
        // independent: n = 22460, n_R = 4314, n_C = 18146
        let want = 1.0 - (3123.0 / 22460.0) / (2.0 * 4314.0 * 18146.0 / (22460.0 * 22459.0));
        assert_relative_eq!(a, want, epsilon = 1e-12);
        assert!((a - 0.552).abs() <= 0.005);
    }

    #[test]
    fn test_coincidence_by_hand() {
        let agree = CoincidenceMatrix::<f64>::from_units(&[[true, true]]);
        assert_eq!(agree.cells, [[2.0, 0.0], [0.0, 0.0]]);
        let disagree = CoincidenceMatrix::<f64>::from_units(&[[true, false]]);
        assert_eq!(disagree.cells, [[0.0, 1.0], [1.0, 0.0]]);
        let five = CoincidenceMatrix::<f64>::from_units(&[[true; 5], [false; 5]]);
        assert_eq!(five.cells[0][1], 0.0);
        assert_relative_eq!(five.total(), 10.0);
        let single: [&[bool]; 1] = [&[true]];
        assert_eq!(CoincidenceMatrix::<f64>::from_units(&single).total(), 0.0);
    }

    #[test]
    fn test_alpha_cases() {
        let perfect = CoincidenceMatrix::<f64>::from_units(&[[true, true], [false, false]]);
        assert_relative_eq!(krippendorff_alpha(&perfect).unwrap(), 1.0);
        // 4 units, two annotators always disagree: D_o = 1, D_e = 2*4*4/(8*7)
        let opposite = CoincidenceMatrix::<f64>::from_units(&[[true, false], [false, true], [true, false], [false, true]]);
        let a = krippendorff_alpha(&opposite).unwrap();
        assert_relative_eq!(a, 1.0 - 1.0 / (32.0 / 56.0));
        assert!(a < 0.0);
        let degenerate = CoincidenceMatrix::<f64>::from_units(&[[true, true]]);
        assert!(matches!(krippendorff_alpha(&degenerate), Err(Error::Degenerate(_))));
    }

    #[test]
    fn test_accuracy() {
        assert_eq!(pairwise_accuracy::<f64, _>(&[1, 2], &[1, 2]).unwrap(), 1.0);
        assert_eq!(pairwise_accuracy::<f64, _>(&[true, false], &[false, true]).unwrap(), 0.0);
        let a: Vec<bool> = (0..100).map(|i| i % 2 == 0).collect();
        let b: Vec<bool> = (0..100).map(|i| if i < 14 { i % 2 == 1 } else { i % 2 == 0 }).collect();
        assert_relative_eq!(pairwise_accuracy::<f64, _>(&a, &b).unwrap(), 0.86);
        assert!(pairwise_accuracy::<f64, _>(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn test_report_shape() {
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let labels = vec![
            vec![Some(true), Some(false), Some(true), Some(false)],
            vec![Some(true), Some(false), Some(false), Some(false)],
            vec![None, Some(false), Some(true), Some(true)],
        ];
        let r = agreement_report(&names, &labels);
        assert_eq!(r.accuracy[0][1], Some(0.75));
        assert_eq!(r.accuracy[1][0], Some(0.75));
        assert_eq!(r.accuracy[0][0], None);
        assert_relative_eq!(r.coincidence.total(), 11.0);
        assert!(r.overall_alpha.is_some());
    }

    proptest! {
        #[test]
        fn prop_swap_invariant(units in prop::collection::vec(prop::collection::vec(any::<bool>(), 2..5), 2..30)) {
            let m = CoincidenceMatrix::<f64>::from_units(&units);
            let flipped: Vec<Vec<bool>> = units.iter().map(|u| u.iter().map(|b| !b).collect()).collect();
            let f = CoincidenceMatrix::<f64>::from_units(&flipped);
            match (krippendorff_alpha(&m), krippendorff_alpha(&f)) {
                (Ok(a), Ok(b)) => prop_assert!((a - b).abs() < 1e-12),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "swap changed definedness"),
            }
            let n: usize = units.iter().map(Vec::len).sum();
            prop_assert!((m.total() - n as f64).abs() < 1e-9);
            prop_assert!((m.cells[0][1] - m.cells[1][0]).abs() < 1e-12);
        }

        #[test]
        fn prop_alpha_one_iff_no_disagreement(units in prop::collection::vec(prop::collection::vec(any::<bool>(), 2..4), 2..20)) {
            let m = CoincidenceMatrix::<f64>::from_units(&units);
            if let Ok(a) = krippendorff_alpha(&m) {
                let off = m.cells[0][1] + m.cells[1][0];
                prop_assert_eq!((a - 1.0).abs() < 1e-12, off == 0.0);
            }
        }
    }
}
