//! Word tokens, word n-grams and in-word char n-grams with document-frequency
//! filtering.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TextualConfig {
    /// Minimum document frequency as a fraction of documents.
    pub mindf: f64,
    /// Maximum document frequency as a fraction of documents.
    pub maxdf: f64,
    pub ngram_range: (usize, usize),
    pub max_features: usize,
}

impl Default for TextualConfig {
    fn default() -> Self {
        TextualConfig {
            mindf: 0.0,
            maxdf: 0.30,
            ngram_range: (2, 4),
            max_features: 10_000,
        }
    }
}

impl TextualConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.ngram_range;
        if !(0.0..=1.0).contains(&self.mindf) || !(0.0..=1.0).contains(&self.maxdf) || self.mindf > self.maxdf {
            return Err(Error::Config(format!(
                "document-frequency bounds must satisfy 0 <= mindf <= maxdf <= 1, got {} and {}",
                self.mindf, self.maxdf
            )));
        }
        if lo < 1 || lo > hi {
            return Err(Error::Config(format!("invalid ngram range ({lo}, {hi})")));
        }
        if self.max_features == 0 {
            return Err(Error::Config("max_features must be positive".into()));
        }
        Ok(())
    }
}

/// Lowercases, drops non-ASCII characters and replaces punctuation by spaces.
pub fn preprocess(text: &str) -> String {
    text.chars()
        .filter(char::is_ascii)
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                ' '
            }
        })
        .collect()
}

/// Raw feature counts of one document, keyed `w:` (word), `g:` (word
/// n-gram) and `c:` (char n-gram).
pub fn extract(text: &str, config: &TextualConfig) -> BTreeMap<String, usize> {
    let clean = preprocess(text);
    let words: Vec<&str> = clean.split_whitespace().collect();
    let (lo, hi) = config.ngram_range;
    let mut counts = BTreeMap::new();
    for w in &words {
        *counts.entry(format!("w:{w}")).or_insert(0) += 1;
    }
    for n in lo.max(2)..=hi {
        for g in words.windows(n) {
            *counts.entry(format!("g:{}", g.join(" "))).or_insert(0) += 1;
        }
    }
    for w in &words {
        let chars: Vec<char> = w.chars().collect();
        for n in lo..=hi {
            for g in chars.windows(n) {
                *counts.entry(format!("c:{}", g.iter().collect::<String>())).or_insert(0) += 1;
            }
        }
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextVectorizer {
    pub config: TextualConfig,
    /// Sorted feature names; position is the feature index.
    pub vocabulary: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl TextVectorizer {
    pub fn fit<S: AsRef<str>>(docs: &[S], config: &TextualConfig) -> Result<Self> {
        config.validate()?;
        let n = docs.len();
        let mut df: HashMap<String, usize> = HashMap::new();
        let mut tf: HashMap<String, usize> = HashMap::new();
        for d in docs {
            for (f, c) in extract(d.as_ref(), config) {
                *df.entry(f.clone()).or_insert(0) += 1;
                *tf.entry(f).or_insert(0) += c;
            }
        }
        let nf = n as f64;
        let mut kept: Vec<(String, usize)> = tf
            .into_iter()
            .filter(|(f, _)| {
                let frac = df[f] as f64 / nf;
                frac <= config.maxdf && frac >= config.mindf
            })
            .collect();
        kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        kept.truncate(config.max_features);
        let mut vocabulary: Vec<String> = kept.into_iter().map(|(f, _)| f).collect();
        vocabulary.sort();
        Ok(Self::from_parts(config.clone(), vocabulary))
    }

    pub fn from_parts(config: TextualConfig, vocabulary: Vec<String>) -> Self {
        let index = vocabulary.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        TextVectorizer { config, vocabulary, index }
    }

    /// Rebuilds the lookup index after deserialization.
    pub fn reindex(&mut self) {
        self.index = self.vocabulary.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    }

    pub fn len(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocabulary.is_empty()
    }

    /// Sparse (index, count) pairs in index order.
    pub fn transform(&self, text: &str) -> Result<Vec<(usize, usize)>> {
        if self.index.len() != self.vocabulary.len() {
            return Err(Error::NotFitted);
        }
        let mut out: Vec<(usize, usize)> = extract(text, &self.config)
            .into_iter()
            .filter_map(|(f, c)| self.index.get(&f).map(|&i| (i, c)))
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_ab_ab() {
        let c = extract("ab ab", &TextualConfig::default());
        assert_eq!(c["c:ab"], 2);
        assert_eq!(c["w:ab"], 2);
        assert_eq!(c["g:ab ab"], 1);
    }

    #[test]
    fn test_preprocess() {
        assert_eq!(preprocess("TICKER_ABR rose 5%, é!"), "ticker abr rose 5    ");
    }

    #[test]
    fn test_maxdf_drops_common() {
        let docs = ["zz alpha", "zz beta", "zz gamma", "delta"];
        let v = TextVectorizer::fit(&docs, &TextualConfig::default()).unwrap();
        assert!(!v.vocabulary.contains(&"w:zz".to_string()));
        assert!(v.vocabulary.contains(&"w:alpha".to_string()));
    }

    #[test]
    fn test_cap() {
        let docs: Vec<String> = (0..400).map(|i| format!("tok{i} x{} y{}", i * 7, i * 13)).collect();
        let cfg = TextualConfig { max_features: 10_000, ..Default::default() };
        let v = TextVectorizer::fit(&docs, &cfg).unwrap();
        assert!(v.len() <= 10_000);
        let small = TextualConfig { max_features: 50, ..Default::default() };
        assert_eq!(TextVectorizer::fit(&docs, &small).unwrap().len(), 50);
    }

    #[test]
    fn test_unfitted_and_serde() {
        let v = TextVectorizer::fit(&["a b", "c d", "e f", "g h"], &TextualConfig::default()).unwrap();
        assert!(!v.transform("a b").unwrap().is_empty());
        let mut back: TextVectorizer = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert!(matches!(back.transform("a b"), Err(Error::NotFitted)));
        back.reindex();
        assert_eq!(back.transform("a b").unwrap(), v.transform("a b").unwrap());
        let bad = TextualConfig { mindf: 0.5, maxdf: 0.3, ..Default::default() };
        assert!(TextVectorizer::fit(&["a"], &bad).is_err());
    }
}
