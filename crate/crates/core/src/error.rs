use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Malformed { path: PathBuf, message: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: missing or invalid field `{field}`")]
    Schema { line: usize, field: String },

    #[error("duplicate news id `{0}`")]
    DuplicateId(String),

    #[error("news item `{0}` has an empty body after normalization")]
    EmptyBody(String),

    #[error("unknown lexicon category `{0}`")]
    UnknownCategory(String),

    #[error("annotation for unknown news id `{0}`")]
    UnknownNewsId(String),

    #[error("span [{start}, {end}) out of bounds for `{news_id}` (body length {len})")]
    SpanOutOfBounds {
        news_id: String,
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("overlapping {label} spans in `{news_id}` by annotator `{annotator}`")]
    OverlappingSpans {
        news_id: String,
        annotator: String,
        label: String,
    },

    #[error("prediction span [{start}, {end}) in `{news_id}` by `{annotator}` is not inside a relevant span")]
    PredictionOutsideRelevant {
        news_id: String,
        annotator: String,
        start: usize,
        end: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("empty vocabulary")]
    EmptyVocabulary,

    #[error("no significant tags in the corpus; topic relevance is undefined")]
    NoSignificantTags,

    #[error("training data contains a single class")]
    SingleClass,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vectorizer has not been fitted")]
    NotFitted,

    #[error("label sequences differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("model file: {0}")]
    Model(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
