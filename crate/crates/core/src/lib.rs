//! Detection of relevant text and forecasts in financial news.
//!
//! The pipeline runs, per news item: sentence splitting, TextTiling
//! segmentation, nearest-antecedent co-reference resolution, financial tag
//! homogenisation, two-topic LDA relevance scoring and a linear temporal
//! classifier that marks forecasts inside the relevant text. A rule-based and
//! a supervised baseline plus ROUGE-L / Krippendorff's alpha evaluation are
//! included for comparison.

pub mod baseline;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod pipeline;
pub mod resolver;
pub mod scalar;
pub mod segmenter;
pub mod tagger;
pub mod temporal;
pub mod text;
pub mod topicmodel;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` instantiations used by the pipeline.
pub type LdaModel = topicmodel::LdaModel<f64>;
pub type TemporalModel = temporal::TemporalModel<f64>;
pub type SupervisedModel = baseline::SupervisedModel<f64>;
pub type LinearModel = temporal::LinearModel<f64>;
pub type RougeScore = eval::RougeScore<f64>;
pub type CoincidenceMatrix = eval::CoincidenceMatrix<f64>;
pub type SentenceScore = topicmodel::SentenceScore<f64>;
pub type TopicRelevance = topicmodel::TopicRelevance<f64>;
