//! One-vs-rest linear SVM with L2 regularisation and squared hinge loss,
//! trained by dual coordinate descent.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassWeight {
    Balanced,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SvmConfig {
    pub c: f64,
    pub max_iter: usize,
    pub tol: f64,
    pub class_weight: ClassWeight,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            c: 0.001,
            max_iter: 1500,
            tol: 1e-9,
            class_weight: ClassWeight::Balanced,
            seed: 1,
        }
    }
}

impl SvmConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::Config(format!("C must be positive, got {}", self.c)));
        }
        if self.max_iter == 0 || !(self.tol >= 0.0) {
            return Err(Error::Config("max_iter must be positive and tol non-negative".into()));
        }
        Ok(())
    }
}

/// `n / (k * n_c)` for each class present, zero for absent classes, where
/// `k` counts the classes present.
pub fn balanced_weights<F: Real>(y: &[usize], n_classes: usize) -> Vec<F> {
    let mut counts = vec![0usize; n_classes];
    for &c in y {
        counts[c] += 1;
    }
    let present = counts.iter().filter(|&&c| c > 0).count();
    counts
        .iter()
        .map(|&c| {
            if c == 0 {
                F::zero()
            } else {
                F::from_count(y.len()) / (F::from_count(present) * F::from_count(c))
            }
        })
        .collect()
}

fn dot<F: Real>(w: &[F], x: &[F]) -> F {
    w.iter().zip(x).map(|(&a, &b)| a * b).sum()
}

// w has the bias as its last component; x excludes it.
fn margin<F: Real>(w: &[F], x: &[F]) -> F {
    let d = x.len();
    dot(&w[..d], x) + w[d]
}

/// Primal objective `½‖w‖² + Σ cᵢ max(0, 1 − yᵢ wᵀx̃ᵢ)²` where `x̃` appends a
/// constant 1 (the bias is regularised), `yᵢ ∈ {−1, +1}` and `cᵢ` is the
/// per-sample cost.
pub fn objective<F: Real>(w: &[F], x: &[Vec<F>], y: &[F], cost: &[F]) -> F {
    let reg = dot(w, w) * F::lit(0.5);
    let loss: F = x
        .iter()
        .zip(y)
        .zip(cost)
        .map(|((xi, &yi), &ci)| {
            let slack = (F::one() - yi * margin(w, xi)).max(F::zero());
            ci * slack * slack
        })
        .sum();
    reg + loss
}

/// Gradient of [`objective`].
pub fn gradient<F: Real>(w: &[F], x: &[Vec<F>], y: &[F], cost: &[F]) -> Vec<F> {
    let d = w.len() - 1;
    let mut g = w.to_vec();
    for ((xi, &yi), &ci) in x.iter().zip(y).zip(cost) {
        let slack = F::one() - yi * margin(w, xi);
        if slack > F::zero() {
            let scale = F::lit(-2.0) * ci * yi * slack;
            for (gj, &xj) in g[..d].iter_mut().zip(xi) {
                *gj += scale * xj;
            }
            g[d] += scale;
        }
    }
    g
}

/// Minimises [`objective`] by dual coordinate descent; returns `w` with the
/// bias last.
pub fn train_binary<F: Real>(x: &[Vec<F>], y: &[F], cost: &[F], config: &SvmConfig) -> Vec<F> {
    let n = x.len();
    let d = x.first().map_or(0, Vec::len);
    let mut w = vec![F::zero(); d + 1];
    let mut alpha = vec![F::zero(); n];
    let diag: Vec<F> = cost.iter().map(|&c| F::one() / (F::lit(2.0) * c)).collect();
    let q: Vec<F> = x
        .iter()
        .zip(&diag)
        .map(|(xi, &dii)| dot(xi, xi) + F::one() + dii)
        .collect();
    let mut order: Vec<usize> = (0..n).filter(|&i| cost[i] > F::zero()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let tol = F::lit(config.tol);
    let mut previous = objective(&w, x, y, cost);
    for iter in 0..config.max_iter {
        order.shuffle(&mut rng);
        for &i in &order {
            let g = y[i] * margin(&w, &x[i]) - F::one() + diag[i] * alpha[i];
            let pg = if alpha[i] > F::zero() { g } else { g.min(F::zero()) };
            if pg == F::zero() {
                continue;
            }
            let old = alpha[i];
            alpha[i] = (old - g / q[i]).max(F::zero());
            let step = (alpha[i] - old) * y[i];
            for (wj, &xj) in w[..d].iter_mut().zip(&x[i]) {
                *wj += step * xj;
            }
            w[d] += step;
        }
        let current = objective(&w, x, y, cost);
        if (previous - current).abs() <= tol * previous.abs().max(F::one()) {
            log::trace!("svm converged after {} iterations", iter + 1);
            break;
        }
        previous = current;
    }
    w
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct LinearModel<F: Real> {
    /// One weight vector per class.
    pub weights: Vec<Vec<F>>,
    pub bias: Vec<F>,
}

impl<F: Real> LinearModel<F> {
    pub fn n_features(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    pub fn n_classes(&self) -> usize {
        self.weights.len()
    }

    pub fn decision(&self, x: &[F]) -> Result<Vec<F>> {
        if x.len() != self.n_features() {
            return Err(Error::DimensionMismatch {
                expected: self.n_features(),
                got: x.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(&self.bias)
            .map(|(w, &b)| dot(w, x) + b)
            .collect())
    }

    /// Class with the largest decision value, lowest index on ties.
    pub fn predict(&self, x: &[F]) -> Result<usize> {
        let scores = self.decision(x)?;
        let mut best = 0;
        for (i, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = i;
            }
        }
        Ok(best)
    }
}

/// Trains one binary problem per class in `0..n_classes`.
pub fn train_ovr<F: Real>(x: &[Vec<F>], y: &[usize], n_classes: usize, config: &SvmConfig) -> Result<LinearModel<F>> {
    config.validate()?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if let Some(&bad) = y.iter().find(|&&c| c >= n_classes) {
        return Err(Error::Config(format!("label {bad} out of range for {n_classes} classes")));
    }
    let distinct = {
        let mut seen = vec![false; n_classes];
        y.iter().for_each(|&c| seen[c] = true);
        seen.iter().filter(|&&s| s).count()
    };
    if distinct < 2 {
        return Err(Error::SingleClass);
    }
    let d = x[0].len();
    if let Some(row) = x.iter().find(|r| r.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: row.len() });
    }
    let class_w: Vec<F> = match config.class_weight {
        ClassWeight::Balanced => balanced_weights(y, n_classes),
        ClassWeight::Uniform => vec![F::one(); n_classes],
    };
    let c = F::lit(config.c);
    let cost: Vec<F> = y.iter().map(|&k| c * class_w[k]).collect();
    let mut weights = Vec::with_capacity(n_classes);
    let mut bias = Vec::with_capacity(n_classes);
    for class in 0..n_classes {
        let signs: Vec<F> = y
            .iter()
            .map(|&k| if k == class { F::one() } else { -F::one() })
            .collect();
        let mut w = train_binary(x, &signs, &cost, config);
        bias.push(w.pop().unwrap_or_else(F::zero));
        weights.push(w);
    }
    Ok(LinearModel { weights, bias })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    // Box-Muller standard normal
    fn normal(rng: &mut impl Rng) -> f64 {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    fn blobs(n_per: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<usize>) {
        let centers = [[0.0, 8.0], [8.0, -4.0], [-8.0, -4.0]];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = Vec::new();
        let mut y = Vec::new();
        for (k, c) in centers.iter().enumerate() {
            for _ in 0..n_per {
                x.push(vec![c[0] + normal(&mut rng), c[1] + normal(&mut rng)]);
                y.push(k);
            }
        }
        (x, y)
    }

    fn accuracy(m: &LinearModel<f64>, x: &[Vec<f64>], y: &[usize]) -> f64 {
        let ok = x.iter().zip(y).filter(|(xi, &yi)| m.predict(xi).unwrap() == yi).count();
        ok as f64 / y.len() as f64
    }

    #[test]
    fn test_balanced_weights() {
        let w = balanced_weights::<f64>(&[0, 0, 0, 1], 3);
        assert_eq!(w, vec![4.0 / 6.0, 2.0, 0.0]);
    }

    #[test]
    fn test_blobs_separable() {
        let (x, y) = blobs(100, 3);
        let m = train_ovr(&x, &y, 3, &SvmConfig::default()).unwrap();
        assert!(accuracy(&m, &x, &y) >= 0.99);
        let again = train_ovr(&x, &y, 3, &SvmConfig::default()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn test_gradient_matches_finite_differences() {
        let (x, y) = blobs(10, 5);
        let signs: Vec<f64> = y.iter().map(|&k| if k == 0 { 1.0 } else { -1.0 }).collect();
        let cost = vec![0.7; x.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let w: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.5..0.5)).collect();
            let g = gradient(&w, &x, &signs, &cost);
            for j in 0..3 {
                let h = 1e-6;
                let mut wp = w.clone();
                let mut wm = w.clone();
                wp[j] += h;
                wm[j] -= h;
                let fd = (objective(&wp, &x, &signs, &cost) - objective(&wm, &x, &signs, &cost)) / (2.0 * h);
                assert!((fd - g[j]).abs() <= 1e-4 * g[j].abs().max(1.0), "{fd} vs {}", g[j]);
            }
        }
    }

    #[test]
    fn test_errors_and_predict() {
        let x = vec![vec![1.0f64], vec![2.0]];
        assert!(matches!(train_ovr(&x, &[1, 1], 3, &SvmConfig::default()), Err(Error::SingleClass)));
        let bad = SvmConfig { c: 0.0, ..Default::default() };
        assert!(train_ovr(&x, &[0, 1], 2, &bad).is_err());
        let m = LinearModel { weights: vec![vec![1.0, 0.0], vec![0.0, 1.0]], bias: vec![0.1, 0.3] };
        assert_eq!(m.predict(&[0.0, 0.0]).unwrap(), 1);
        assert!(matches!(m.predict(&[1.0]), Err(Error::DimensionMismatch { expected: 2, got: 1 })));
    }

    proptest! {
        #[test]
        fn prop_balanced_weights_sum(y in prop::collection::vec(0usize..4, 1..60)) {
            let w = balanced_weights::<f64>(&y, 4);
            let total: f64 = y.iter().map(|&c| w[c]).sum();
            prop_assert!((total - y.len() as f64).abs() < 1e-9);
        }
    }
}
