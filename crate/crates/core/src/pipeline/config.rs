//! TOML pipeline configuration and the shared read-only resources.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::{load_stopwords, Lexicon};
use crate::error::{Error, Result};
use crate::resolver::ResolverConfig;
use crate::segmenter::TextTilingConfig;
use crate::tagger::{load_gazetteers, Gazetteer};
use crate::temporal::ClassifierConfig;
use crate::topicmodel::LdaConfig;

/// File locations. Relative paths are resolved against the config file's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Paths {
    pub corpus: PathBuf,
    /// Extra unlabelled items used only for LDA training.
    pub lda_corpus: Option<PathBuf>,
    pub lexica: Vec<PathBuf>,
    pub gazetteers: Option<PathBuf>,
    pub stopwords: PathBuf,
    pub annotations: PathBuf,
    pub quotes: Option<PathBuf>,
    pub temporal_train: PathBuf,
    pub lda_model: PathBuf,
    pub temporal_model: PathBuf,
    pub supervised_model: PathBuf,
}

impl Default for Paths {
    fn default() -> Self {
        Paths {
            corpus: "corpus.jsonl".into(),
            lda_corpus: None,
            lexica: ["stocks", "tickers", "currencies", "finabbrev"]
                .iter()
                .map(|n| PathBuf::from(format!("lexicon/{n}.csv")))
                .collect(),
            gazetteers: Some("gazetteers".into()),
            stopwords: "stopwords.txt".into(),
            annotations: "annotations.json".into(),
            quotes: Some("quotes.json".into()),
            temporal_train: "temporal_train.jsonl".into(),
            lda_model: "models/lda.json".into(),
            temporal_model: "models/temporal.json".into(),
            supervised_model: "models/supervised.json".into(),
        }
    }
}

impl Paths {
    fn rebase(&mut self, base: &Path) {
        let join = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        join(&mut self.corpus);
        if let Some(c) = &mut self.lda_corpus {
            join(c);
        }
        self.lexica.iter_mut().for_each(join);
        if let Some(g) = &mut self.gazetteers {
            join(g);
        }
        join(&mut self.stopwords);
        join(&mut self.annotations);
        if let Some(q) = &mut self.quotes {
            join(q);
        }
        join(&mut self.temporal_train);
        join(&mut self.lda_model);
        join(&mut self.temporal_model);
        join(&mut self.supervised_model);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    /// Master seed; copied into every stochastic stage.
    pub seed: u64,
    pub paths: Paths,
    pub texttiling: TextTilingConfig,
    pub resolver: ResolverConfig,
    pub lda: LdaConfig,
    pub classifier: ClassifierConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let mut c = PipelineConfig {
            seed: 1,
            paths: Paths::default(),
            texttiling: TextTilingConfig::default(),
            resolver: ResolverConfig::default(),
            lda: LdaConfig::default(),
            classifier: ClassifierConfig::default(),
        };
        c.propagate_seed();
        c
    }
}

impl PipelineConfig {
    pub fn propagate_seed(&mut self) {
        self.lda.seed = self.seed;
        self.classifier.svm.seed = self.seed;
    }

    pub fn validate(&self) -> Result<()> {
        self.texttiling.validate()?;
        self.resolver.validate()?;
        self.lda.validate()?;
        self.classifier.validate()
    }

    /// Parses TOML; relative paths are taken relative to `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Self> {
        let mut config: PipelineConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.paths.rebase(base);
        config.propagate_seed();
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base).map_err(|e| match e {
            Error::Config(message) => Error::Malformed {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }
}

/// Lexicon, gazetteer and stopwords shared by every item.
#[derive(Debug, Clone, Default)]
pub struct Resources {
    pub lexicon: Lexicon,
    pub gazetteer: Gazetteer,
    pub stopwords: HashSet<String>,
}

impl Resources {
    pub fn load(paths: &Paths) -> Result<Self> {
        let mut lexicon = Lexicon::new();
        for path in &paths.lexica {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            lexicon.extend_csv(&text)?;
        }
        let gazetteer = match &paths.gazetteers {
            Some(dir) => load_gazetteers(dir)?,
            None => Gazetteer::default(),
        };
        Ok(Resources {
            lexicon,
            gazetteer,
            stopwords: load_stopwords(&paths.stopwords)?,
        })
    }
}
