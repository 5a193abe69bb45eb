//! Two-topic LDA trained by collapsed Gibbs sampling.

mod relevance;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tagger::TaggedSentence;

pub use relevance::{compute_rho, detect_relevant, rho_from_counts, Detection, TopicRelevance};

pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorMode {
    Scalar(f64),
    Symmetric,
    Asymmetric,
}

impl fmt::Display for PriorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PriorMode::Scalar(x) => write!(f, "{x}"),
            PriorMode::Symmetric => f.write_str("symmetric"),
            PriorMode::Asymmetric => f.write_str("asymmetric"),
        }
    }
}

impl FromStr for PriorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "symmetric" => Ok(PriorMode::Symmetric),
            "asymmetric" => Ok(PriorMode::Asymmetric),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite() && *x > 0.0)
                .map(PriorMode::Scalar)
                .ok_or_else(|| Error::Config(format!("invalid prior mode `{s}`"))),
        }
    }
}

impl Serialize for PriorMode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PriorMode::Scalar(x) => s.serialize_f64(*x),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for PriorMode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Name(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(PriorMode::Scalar(x)),
            Raw::Name(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LdaConfig {
    pub num_topics: usize,
    pub passes: usize,
    pub seed: u64,
    pub alpha: PriorMode,
    pub beta: PriorMode,
    pub delta: f64,
    pub fold_in_sweeps: usize,
}

impl Default for LdaConfig {
    fn default() -> Self {
        LdaConfig {
            num_topics: 2,
            passes: 50,
            seed: 1,
            alpha: PriorMode::Symmetric,
            beta: PriorMode::Asymmetric,
            delta: 0.8,
            fold_in_sweeps: 20,
        }
    }
}

impl LdaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_topics != 2 {
            return Err(Error::Config(format!("num_topics must be 2, got {}", self.num_topics)));
        }
        if self.passes == 0 {
            return Err(Error::Config("passes must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::Config(format!("delta must lie in (0, 1], got {}", self.delta)));
        }
        if self.fold_in_sweeps == 0 {
            return Err(Error::Config("fold_in_sweeps must be at least 1".into()));
        }
        for m in [self.alpha, self.beta] {
            if let PriorMode::Scalar(x) = m {
                if !(x.is_finite() && x > 0.0) {
                    return Err(Error::Config(format!("scalar prior must be positive, got {x}")));
                }
            }
        }
        Ok(())
    }
}

/// Prior vector of length `n` for the given mode.
pub fn prior_vector<F: Real>(mode: PriorMode, n: usize, num_topics: usize) -> Vec<F> {
    match mode {
        PriorMode::Scalar(x) => vec![F::lit(x); n],
        PriorMode::Symmetric => vec![F::one() / F::from_count(num_topics); n],
        PriorMode::Asymmetric => {
            let root = F::from_count(n).sqrt();
            let raw: Vec<F> = (0..n).map(|i| F::one() / (F::from_count(i) + root)).collect();
            let total: F = raw.iter().copied().sum();
            raw.into_iter().map(|x| x / total).collect()
        }
    }
}

/// α over topics and β over the vocabulary.
pub fn build_priors<F: Real>(config: &LdaConfig, vocab_size: usize) -> (Vec<F>, Vec<F>) {
    (
        prior_vector(config.alpha, config.num_topics, config.num_topics),
        prior_vector(config.beta, vocab_size, config.num_topics),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct LdaModel<F: Real> {
    pub version: u32,
    pub config: LdaConfig,
    /// Words in order of first appearance.
    pub vocabulary: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
    /// `word_topic[w * K + t]`
    pub word_topic: Vec<usize>,
    /// `doc_topic[d * K + t]`
    pub doc_topic: Vec<usize>,
    pub topic_totals: Vec<usize>,
    pub alpha: Vec<F>,
    pub beta: Vec<F>,
    /// Training documents as word ids (W).
    pub docs: Vec<Vec<usize>>,
    /// Topic assignment of every training token (Z).
    pub assignments: Vec<Vec<usize>>,
}

impl<F: Real> LdaModel<F> {
    pub fn num_topics(&self) -> usize {
        self.topic_totals.len()
    }

    pub fn num_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn word_id(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn word_topic_count(&self, w: usize, t: usize) -> usize {
        self.word_topic[w * self.num_topics() + t]
    }

    pub fn doc_topic_count(&self, d: usize, t: usize) -> usize {
        self.doc_topic[d * self.num_topics() + t]
    }

    fn beta_sum(&self) -> F {
        self.beta.iter().copied().sum()
    }

    /// Majority topic of each training document, lowest index on ties.
    pub fn doc_majority(&self) -> Vec<usize> {
        let k = self.num_topics();
        (0..self.num_docs())
            .map(|d| argmax((0..k).map(|t| self.doc_topic_count(d, t))).unwrap_or(0))
            .collect()
    }

    /// Word-topic columns sum to the topic totals, doc-topic rows to document
    /// lengths, and the tables agree with the assignments.
    pub fn check_consistency(&self) -> bool {
        let k = self.num_topics();
        let v = self.vocabulary.len();
        let mut wt = vec![0usize; v * k];
        let mut dt = vec![0usize; self.num_docs() * k];
        let mut tt = vec![0usize; k];
        for (d, (doc, z)) in self.docs.iter().zip(&self.assignments).enumerate() {
            if doc.len() != z.len() {
                return false;
            }
            for (&w, &t) in doc.iter().zip(z) {
                wt[w * k + t] += 1;
                dt[d * k + t] += 1;
                tt[t] += 1;
            }
        }
        let columns_ok =
            (0..k).all(|t| (0..v).map(|w| self.word_topic[w * k + t]).sum::<usize>() == self.topic_totals[t]);
        let rows_ok = self
            .docs
            .iter()
            .enumerate()
            .all(|(d, doc)| (0..k).map(|t| self.doc_topic[d * k + t]).sum::<usize>() == doc.len());
        columns_ok && rows_ok && wt == self.word_topic && dt == self.doc_topic && tt == self.topic_totals
    }

    /// Unnormalised collapsed conditional for one token of word `word`
    /// (None for an unseen word) given the other tokens' topic counts `doc_counts`.
    pub fn fold_in_conditional(&self, doc_counts: &[usize], word: Option<usize>) -> Vec<F> {
        let k = self.num_topics();
        let beta_sum = self.beta_sum();
        let beta_unseen = beta_sum / F::from_count(self.beta.len().max(1));
        (0..k)
            .map(|t| {
                let (nwt, bw) = match word {
                    Some(w) => (self.word_topic_count(w, t), self.beta[w]),
                    None => (0, beta_unseen),
                };
                (F::from_count(doc_counts[t]) + self.alpha[t]) * (F::from_count(nwt) + bw)
                    / (F::from_count(self.topic_totals[t]) + beta_sum)
            })
            .collect()
    }

    /// Topic proportions of `tokens` by fold-in Gibbs with the trained
    /// word-topic counts held fixed.
    pub fn score_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> SentenceScore<F> {
        let k = self.num_topics();
        if tokens.is_empty() {
            return SentenceScore {
                scores: vec![F::zero(); k],
                topic: None,
            };
        }
        let words: Vec<Option<usize>> = tokens.iter().map(|t| self.word_id(t.as_ref())).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ fnv1a(tokens));
        let mut z: Vec<usize> = words.iter().map(|_| rng.gen_range(0..k)).collect();
        let mut counts = vec![0usize; k];
        for &t in &z {
            counts[t] += 1;
        }
        for _ in 0..self.config.fold_in_sweeps {
            for (i, &w) in words.iter().enumerate() {
                counts[z[i]] -= 1;
                z[i] = sample(&self.fold_in_conditional(&counts, w), &mut rng);
                counts[z[i]] += 1;
            }
        }
        let n = F::from_count(tokens.len());
        let scores: Vec<F> = counts.iter().map(|&c| F::from_count(c) / n).collect();
        let topic = argmax(counts.iter().copied());
        SentenceScore { scores, topic }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut model: LdaModel<F> = serde_json::from_str(text)?;
        if model.version != MODEL_VERSION {
            return Err(Error::Model(format!("unsupported model version {}", model.version)));
        }
        model.index = index_vocabulary(&model.vocabulary);
        let k = model.topic_totals.len();
        let shapes_ok = model.word_topic.len() == model.vocabulary.len() * k
            && model.doc_topic.len() == model.docs.len() * k
            && model.alpha.len() == k
            && model.beta.len() == model.vocabulary.len()
            && model.docs.iter().flatten().all(|&w| w < model.vocabulary.len())
            && model.check_consistency();
        if !shapes_ok {
            return Err(Error::Model("inconsistent model tables".into()));
        }
        Ok(model)
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

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct SentenceScore<F: Real> {
    /// Fraction of tokens assigned to each topic.
    pub scores: Vec<F>,
    /// Majority topic; None for an empty sentence.
    pub topic: Option<usize>,
}

fn index_vocabulary(vocab: &[String]) -> HashMap<String, usize> {
    vocab.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()
}

fn argmax<T: PartialOrd>(values: impl IntoIterator<Item = T>) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (i, v) in values.into_iter().enumerate() {
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

fn sample<F: Real>(weights: &[F], rng: &mut ChaCha8Rng) -> usize {
    let total: F = weights.iter().copied().sum();
    let mut u = F::lit(rng.gen::<f64>()) * total;
    for (t, &w) in weights.iter().enumerate() {
        if u < w {
            return t;
        }
        u -= w;
    }
    weights.len() - 1
}

fn fnv1a<S: AsRef<str>>(tokens: &[S]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for t in tokens {
        for b in t.as_ref().bytes().chain([0xff]) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Trains on `docs` (token lists, stopwords already removed).
pub fn train<F: Real, S: AsRef<str>>(docs: &[Vec<S>], config: &LdaConfig) -> Result<LdaModel<F>> {
    train_with_observer(docs, config, |_, _| {})
}

/// As [`train`], calling `observer(pass, model)` after every sweep.
pub fn train_with_observer<F: Real, S: AsRef<str>>(
    docs: &[Vec<S>],
    config: &LdaConfig,
    mut observer: impl FnMut(usize, &LdaModel<F>),
) -> Result<LdaModel<F>> {
    config.validate()?;
    if docs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut vocabulary = Vec::new();
    let mut index = HashMap::new();
    let ids: Vec<Vec<usize>> = docs
        .iter()
        .map(|doc| {
            doc.iter()
                .map(|w| {
                    let w = w.as_ref();
                    *index.entry(w.to_string()).or_insert_with(|| {
                        vocabulary.push(w.to_string());
                        vocabulary.len() - 1
                    })
                })
                .collect()
        })
        .collect();
    if vocabulary.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let k = config.num_topics;
    let (alpha, beta) = build_priors::<F>(config, vocabulary.len());
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let assignments: Vec<Vec<usize>> = ids
        .iter()
        .map(|doc| doc.iter().map(|_| rng.gen_range(0..k)).collect())
        .collect();
    let mut model = LdaModel {
        version: MODEL_VERSION,
        config: config.clone(),
        word_topic: vec![0; vocabulary.len() * k],
        doc_topic: vec![0; ids.len() * k],
        topic_totals: vec![0; k],
        vocabulary,
        index,
        alpha,
        beta,
        docs: ids,
        assignments,
    };
    for d in 0..model.docs.len() {
        for i in 0..model.docs[d].len() {
            let (w, t) = (model.docs[d][i], model.assignments[d][i]);
            model.word_topic[w * k + t] += 1;
            model.doc_topic[d * k + t] += 1;
            model.topic_totals[t] += 1;
        }
    }
    let beta_sum = model.beta_sum();
    let mut probs = vec![F::zero(); k];
    for pass in 0..config.passes {
        for d in 0..model.docs.len() {
            for i in 0..model.docs[d].len() {
                let w = model.docs[d][i];
                let old = model.assignments[d][i];
                model.word_topic[w * k + old] -= 1;
                model.doc_topic[d * k + old] -= 1;
                model.topic_totals[old] -= 1;
                for (t, p) in probs.iter_mut().enumerate() {
                    *p = (F::from_count(model.doc_topic[d * k + t]) + model.alpha[t])
                        * (F::from_count(model.word_topic[w * k + t]) + model.beta[w])
                        / (F::from_count(model.topic_totals[t]) + beta_sum);
                }
                let new = sample(&probs, &mut rng);
                model.assignments[d][i] = new;
                model.word_topic[w * k + new] += 1;
                model.doc_topic[d * k + new] += 1;
                model.topic_totals[new] += 1;
            }
        }
        observer(pass + 1, &model);
    }
    log::debug!(
        "lda trained: {} docs, {} words, topic totals {:?}",
        model.docs.len(),
        model.vocabulary.len(),
        model.topic_totals
    );
    Ok(model)
}

/// LDA input tokens for a tagged sentence: tags keep their uppercase name,
/// other words are lowercased; stopwords and punctuation are dropped.
pub fn lda_tokens(sentence: &TaggedSentence, stopwords: &HashSet<String>) -> Vec<String> {
    sentence
        .tokens
        .iter()
        .filter_map(|tok| match tok.tag {
            Some(tag) => Some(tag.as_str().to_string()),
            None => {
                let w = tok.surface.to_lowercase();
                (w.chars().any(char::is_alphanumeric) && !stopwords.contains(&w)).then_some(w)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::Rng;

    fn two_vocab_corpus(docs: usize, len: usize, seed: u64) -> (Vec<Vec<String>>, Vec<usize>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        let mut truth = Vec::new();
        for d in 0..docs {
            let side = d % 2;
            truth.push(side);
            out.push(
                (0..len)
                    .map(|_| format!("{}{}", if side == 0 { "a" } else { "b" }, rng.gen_range(0..50)))
                    .collect(),
            );
        }
        (out, truth)
    }

    fn purity(pred: &[usize], truth: &[usize]) -> f64 {
        let agree = pred.iter().zip(truth).filter(|(p, t)| p == t).count();
        agree.max(pred.len() - agree) as f64 / pred.len() as f64
    }

    #[test]
    fn test_priors() {
        let c = LdaConfig::default();
        let (a, _) = build_priors::<f64>(&c, 3);
        assert_eq!(a, vec![0.5, 0.5]);
        let asym = prior_vector::<f64>(PriorMode::Asymmetric, 2, 2);
        // independent: 1/sqrt2 and 1/(1+sqrt2), normalised
        let (x, y) = (1.0 / 2f64.sqrt(), 1.0 / (1.0 + 2f64.sqrt()));
        assert_relative_eq!(asym[0], x / (x + y), epsilon = 1e-12);
        assert_relative_eq!(asym[0], 0.6306, epsilon = 1e-4);
        assert_relative_eq!(asym[1], 0.3694, epsilon = 1e-4);
        assert_eq!(prior_vector::<f32>(PriorMode::Scalar(0.01), 4, 2), vec![0.01f32; 4]);
    }

    #[test]
    fn test_prior_mode_parse() {
        assert_eq!("symmetric".parse::<PriorMode>().unwrap(), PriorMode::Symmetric);
        assert_eq!("0.1".parse::<PriorMode>().unwrap(), PriorMode::Scalar(0.1));
        assert!("-1".parse::<PriorMode>().is_err());
        let c: LdaConfig = toml::from_str("alpha = 0.3\nbeta = \"symmetric\"").unwrap();
        assert_eq!(c.alpha, PriorMode::Scalar(0.3));
        assert_eq!(c.beta, PriorMode::Symmetric);
    }

    #[test]
    fn test_config_errors() {
        let docs = vec![vec!["a"]];
        let c = LdaConfig { passes: 0, ..Default::default() };
        assert!(matches!(train::<f64, _>(&docs, &c), Err(Error::Config(_))));
        let c = LdaConfig { num_topics: 3, ..Default::default() };
        assert!(matches!(train::<f64, _>(&docs, &c), Err(Error::Config(_))));
        let empty: Vec<Vec<&str>> = vec![];
        assert!(matches!(train::<f64, _>(&empty, &LdaConfig::default()), Err(Error::EmptyCorpus)));
        let blank: Vec<Vec<&str>> = vec![vec![], vec![]];
        assert!(matches!(train::<f64, _>(&blank, &LdaConfig::default()), Err(Error::EmptyVocabulary)));
    }

    #[test]
    fn test_recovers_two_vocabularies() {
        let (docs, truth) = two_vocab_corpus(200, 30, 7);
        let mut consistent = true;
        let model: LdaModel<f64> =
            train_with_observer(&docs, &LdaConfig::default(), |_, m| consistent &= m.check_consistency())
                .unwrap();
        assert!(consistent);
        assert!(purity(&model.doc_majority(), &truth) >= 0.95);
    }

    #[test]
    fn test_deterministic() {
        let (docs, _) = two_vocab_corpus(20, 10, 3);
        let c = LdaConfig { passes: 5, ..Default::default() };
        let a: LdaModel<f64> = train(&docs, &c).unwrap();
        let b: LdaModel<f64> = train(&docs, &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.score_tokens(&["a1", "b2", "zz"]), b.score_tokens(&["a1", "b2", "zz"]));
    }

    #[test]
    fn test_json_round_trip() {
        let (docs, _) = two_vocab_corpus(10, 5, 3);
        let c = LdaConfig { passes: 2, ..Default::default() };
        let m: LdaModel<f64> = train(&docs, &c).unwrap();
        let back = LdaModel::<f64>::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.word_id(&m.vocabulary[3]), Some(3));
        let mut bad = m.clone();
        bad.version = 9;
        assert!(LdaModel::<f64>::from_json(&bad.to_json().unwrap()).is_err());
    }

    #[test]
    fn test_fold_in_conditional_by_hand() {
        // vocabulary {x, y}; x always topic 0, y always topic 1
        let docs = vec![vec!["x", "x"], vec!["y"]];
        let c = LdaConfig {
            passes: 1,
            alpha: PriorMode::Scalar(0.5),
            beta: PriorMode::Scalar(0.1),
            ..Default::default()
        };
        let mut m: LdaModel<f64> = train(&docs, &c).unwrap();
        m.assignments = vec![vec![0, 0], vec![1]];
        m.word_topic = vec![2, 0, 0, 1];
        m.doc_topic = vec![2, 0, 0, 1];
        m.topic_totals = vec![2, 1];
        assert!(m.check_consistency());
        // unseen word, empty context: beta_unseen = 0.1, beta_sum = 0.2
        let p = m.fold_in_conditional(&[0, 0], None);
        assert_relative_eq!(p[0], 0.5 * 0.1 / 2.2, epsilon = 1e-12);
        assert_relative_eq!(p[1], 0.5 * 0.1 / 1.2, epsilon = 1e-12);
        let p = m.fold_in_conditional(&[1, 0], Some(0));
        assert_relative_eq!(p[0], 1.5 * 2.1 / 2.2, epsilon = 1e-12);
        assert_relative_eq!(p[1], 0.5 * 0.1 / 1.2, epsilon = 1e-12);
    }

    #[test]
    fn test_score_shapes() {
        let (docs, _) = two_vocab_corpus(40, 20, 5);
        let m: LdaModel<f64> = train(&docs, &LdaConfig::default()).unwrap();
        let empty: [&str; 0] = [];
        let s = m.score_tokens(&empty);
        assert_eq!(s.scores, vec![0.0, 0.0]);
        assert_eq!(s.topic, None);
        let a_topic = m.doc_majority()[0];
        let s = m.score_tokens(&["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"]);
        assert_eq!(s.topic, Some(a_topic));
        assert!(s.scores[a_topic] >= 0.75);
        let s = m.score_tokens(&["unseen1", "unseen2"]);
        assert_relative_eq!(s.scores.iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn test_lda_tokens() {
        use crate::tagger::{TagCategory, Token};
        let s = TaggedSentence {
            news_id: "n".into(),
            segment: 0,
            sentence: 0,
            tokens: vec![
                Token { surface: "Verizon".into(), tag: Some(TagCategory::Ticker) },
                Token { surface: "Rose".into(), tag: None },
                Token { surface: "the".into(), tag: None },
                Token { surface: ",".into(), tag: None },
            ],
            original: String::new(),
            tagged: String::new(),
        };
        let stop: HashSet<String> = ["the".to_string()].into();
        assert_eq!(lda_tokens(&s, &stop), vec!["TICKER", "rose"]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn prop_scores_sum_to_one(words in prop::collection::vec("[ab][0-9]|zz", 1..12), seed in 0u64..50) {
            let (docs, _) = two_vocab_corpus(12, 8, seed);
            let c = LdaConfig { passes: 3, seed, ..Default::default() };
            let m: LdaModel<f64> = train(&docs, &c).unwrap();
            let s = m.score_tokens(&words);
            prop_assert!((s.scores.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(m.check_consistency());
        }

        #[test]
        fn prop_f32_matches_shape(seed in 0u64..20) {
            let (docs, _) = two_vocab_corpus(6, 5, seed);
            let c = LdaConfig { passes: 2, seed, ..Default::default() };
            let m: LdaModel<f32> = train(&docs, &c).unwrap();
            prop_assert!(m.check_consistency());
        }
    }
}
