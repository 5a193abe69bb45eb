//! Temporal analysis: verb tense features, textual n-grams and a linear
//! classifier over past / present / future.

mod chi2;
mod clauses;
mod features;
mod svm;
mod textual;
mod verbs;

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tagger::{TaggedSentence, Token};

pub use chi2::{chi2_scores, chi2_select, kept_count, select_top};
pub use clauses::clause_split;
pub use features::{
    dependency_features, is_asset_tag, numerical_features, proximity_features, temporal_features,
    TemporalFeatures,
};
pub use svm::{balanced_weights, gradient, objective, train_binary, train_ovr, ClassWeight, LinearModel, SvmConfig};
pub use textual::{extract as textual_counts, preprocess, TextVectorizer, TextualConfig};
pub use verbs::{detect_tense, has_future_marker, majority, verb_groups, TenseTag, VerbGroup, FUTURE_MARKERS};

pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassifierConfig {
    pub svm: SvmConfig,
    pub chi2_percentile: f64,
    pub textual: TextualConfig,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            svm: SvmConfig::default(),
            chi2_percentile: 80.0,
            textual: TextualConfig::default(),
        }
    }
}

impl ClassifierConfig {
    pub fn validate(&self) -> Result<()> {
        self.svm.validate()?;
        self.textual.validate()?;
        if !(self.chi2_percentile > 0.0 && self.chi2_percentile <= 100.0) {
            return Err(Error::Config(format!(
                "chi2_percentile must lie in (0, 100], got {}",
                self.chi2_percentile
            )));
        }
        Ok(())
    }
}

/// The text classified as one unit: tagged sentences plus the untagged text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemporalUnit {
    pub sentences: Vec<Vec<Token>>,
    pub raw: String,
}

impl TemporalUnit {
    pub fn from_tagged(sentences: &[TaggedSentence]) -> Self {
        TemporalUnit {
            sentences: sentences.iter().map(|s| s.tokens.clone()).collect(),
            raw: sentences
                .iter()
                .map(|s| s.original.as_str())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    /// Text fed to the n-gram features: tags in place of the terms they replaced.
    pub fn tagged_text(&self) -> String {
        self.sentences
            .iter()
            .flatten()
            .map(|t| t.tag.map_or(t.surface.as_str(), |c| c.as_str()))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn features(&self) -> TemporalFeatures {
        temporal_features(&self.sentences, &self.raw)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct TemporalModel<F: Real> {
    pub version: u32,
    pub config: ClassifierConfig,
    pub vectorizer: TextVectorizer,
    /// Indices into the full feature vector kept by χ² selection.
    pub selected: Vec<usize>,
    pub svm: LinearModel<F>,
}

/// Temporal features followed by textual counts.
pub fn full_features<F: Real>(unit: &TemporalUnit, vectorizer: &TextVectorizer) -> Result<Vec<F>> {
    let mut out = unit.features().to_dense::<F>();
    out.resize(TemporalFeatures::DIM + vectorizer.len(), F::zero());
    for (i, c) in vectorizer.transform(&unit.tagged_text())? {
        out[TemporalFeatures::DIM + i] = F::from_count(c);
    }
    Ok(out)
}

fn project<F: Real>(full: &[F], selected: &[usize]) -> Vec<F> {
    selected.iter().map(|&i| full[i]).collect()
}

/// Fits the vectorizer, selects features by χ² and trains the SVM.
pub fn train_temporal<F: Real>(
    units: &[TemporalUnit],
    labels: &[TenseTag],
    config: &ClassifierConfig,
) -> Result<TemporalModel<F>> {
    config.validate()?;
    if units.len() != labels.len() {
        return Err(Error::LengthMismatch(units.len(), labels.len()));
    }
    let texts: Vec<String> = units.iter().map(TemporalUnit::tagged_text).collect();
    let vectorizer = TextVectorizer::fit(&texts, &config.textual)?;
    let x: Vec<Vec<F>> = units
        .par_iter()
        .map(|u| full_features(u, &vectorizer))
        .collect::<Result<_>>()?;
    let y: Vec<usize> = labels.iter().map(|t| t.index()).collect();
    let selected = chi2_select(&x, &y, config.chi2_percentile)?;
    let xs: Vec<Vec<F>> = x.iter().map(|r| project(r, &selected)).collect();
    let svm = train_ovr(&xs, &y, TenseTag::ALL.len(), &config.svm)?;
    log::debug!(
        "temporal model: {} units, {} features, {} selected",
        units.len(),
        x.first().map_or(0, Vec::len),
        selected.len()
    );
    Ok(TemporalModel {
        version: MODEL_VERSION,
        config: config.clone(),
        vectorizer,
        selected,
        svm,
    })
}

impl<F: Real> TemporalModel<F> {
    pub fn predict(&self, unit: &TemporalUnit) -> Result<TenseTag> {
        let full = full_features::<F>(unit, &self.vectorizer)?;
        self.predict_vector(&project(&full, &self.selected))
    }

    /// Prediction for an already selected feature vector.
    pub fn predict_vector(&self, x: &[F]) -> Result<TenseTag> {
        let k = self.svm.predict(x)?;
        Ok(TenseTag::from_index(k).expect("three classes"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut m: TemporalModel<F> = serde_json::from_str(text)?;
        if m.version != MODEL_VERSION {
            return Err(Error::Model(format!("unsupported model version {}", m.version)));
        }
        m.vectorizer.reindex();
        let full_dim = TemporalFeatures::DIM + m.vectorizer.len();
        if m.svm.n_classes() != TenseTag::ALL.len()
            || m.svm.n_features() != m.selected.len()
            || m.selected.iter().any(|&i| i >= full_dim)
        {
            return Err(Error::Model("inconsistent temporal model".into()));
        }
        Ok(m)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

/// One line of a temporal training file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledText {
    pub text: String,
    pub tense: TenseTag,
}

pub fn parse_labeled(text: &str) -> Result<Vec<LabeledText>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn load_labeled(path: impl AsRef<Path>) -> Result<Vec<LabeledText>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_labeled(&text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldReport {
    pub fold: usize,
    pub size: usize,
    /// Macro averages over the classes present in the fold.
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
}

/// Macro precision, recall and F1 plus accuracy; classes absent from both
/// truth and prediction are skipped.
pub fn macro_scores(truth: &[TenseTag], pred: &[TenseTag]) -> (f64, f64, f64, f64) {
    let mut p_sum = 0.0;
    let mut r_sum = 0.0;
    let mut f_sum = 0.0;
    let mut classes = 0;
    for c in TenseTag::ALL {
        let tp = truth.iter().zip(pred).filter(|(t, p)| **t == c && **p == c).count() as f64;
        let predicted = pred.iter().filter(|&&p| p == c).count() as f64;
        let actual = truth.iter().filter(|&&t| t == c).count() as f64;
        if predicted == 0.0 && actual == 0.0 {
            continue;
        }
        let p = if predicted > 0.0 { tp / predicted } else { 0.0 };
        let r = if actual > 0.0 { tp / actual } else { 0.0 };
        p_sum += p;
        r_sum += r;
        f_sum += if p + r > 0.0 { 2.0 * p * r / (p + r) } else { 0.0 };
        classes += 1;
    }
    let k = classes.max(1) as f64;
    let correct = truth.iter().zip(pred).filter(|(t, p)| t == p).count() as f64;
    let acc = if truth.is_empty() { 0.0 } else { correct / truth.len() as f64 };
    (p_sum / k, r_sum / k, f_sum / k, acc)
}

/// k-fold cross-validation over a seeded shuffle. Folds run in parallel.
pub fn cross_validate<F: Real>(
    units: &[TemporalUnit],
    labels: &[TenseTag],
    config: &ClassifierConfig,
    folds: usize,
    seed: u64,
) -> Result<Vec<FoldReport>> {
    if units.len() != labels.len() {
        return Err(Error::LengthMismatch(units.len(), labels.len()));
    }
    if folds < 2 || folds > units.len() {
        return Err(Error::Config(format!(
            "folds must lie in [2, {}], got {folds}",
            units.len()
        )));
    }
    let mut order: Vec<usize> = (0..units.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    (0..folds)
        .into_par_iter()
        .map(|fold| {
            let test: Vec<usize> = order.iter().copied().skip(fold).step_by(folds).collect();
            let train: Vec<usize> = order.iter().copied().filter(|i| !test.contains(i)).collect();
            let tu: Vec<TemporalUnit> = train.iter().map(|&i| units[i].clone()).collect();
            let tl: Vec<TenseTag> = train.iter().map(|&i| labels[i]).collect();
            let model = train_temporal::<F>(&tu, &tl, config)?;
            let pred = test
                .iter()
                .map(|&i| model.predict(&units[i]))
                .collect::<Result<Vec<_>>>()?;
            let truth: Vec<TenseTag> = test.iter().map(|&i| labels[i]).collect();
            let (precision, recall, f1, accuracy) = macro_scores(&truth, &pred);
            Ok(FoldReport {
                fold,
                size: test.len(),
                precision,
                recall,
                f1,
                accuracy,
            })
        })
        .collect()
}
