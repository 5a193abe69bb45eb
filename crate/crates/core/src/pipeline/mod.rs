//! End-to-end detection: split, segment, resolve, tag, LDA relevance and
//! temporal classification, plus the comparison systems' extractions.

mod config;
mod html;

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baseline::{leave_one_item_out, majority_labels, rule_predictive, rule_relevant, LabeledItem, SupervisedModel};
use crate::corpus::{split_sentences, AnnotationSet, NewsItem, Sentence};
use crate::error::{Error, Result};
use crate::eval::{Extraction, SystemOutput};
use crate::resolver::{detect_mentions, resolve_sentences};
use crate::segmenter::{segment, Segment};
use crate::tagger::{TaggedSentence, Tagger};
use crate::temporal::{train_temporal, LabeledText, TemporalModel, TemporalUnit, TenseTag};
use crate::text::char_slice;
use crate::topicmodel::{compute_rho, detect_relevant, lda_tokens, train, LdaModel, TopicRelevance};

pub use config::{Paths, PipelineConfig, Resources};
pub use html::{render_html, OfflineQuotes, Quote, QuoteProvider};

pub const RESULTS_VERSION: u32 = 1;

/// An item after segmentation, co-reference resolution and tagging.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessedItem {
    pub news_id: String,
    pub sentences: Vec<Sentence>,
    pub segments: Vec<Segment>,
    /// One per sentence, in document order.
    pub tagged: Vec<TaggedSentence>,
}

pub fn process_item(item: &NewsItem, resources: &Resources, config: &PipelineConfig) -> ProcessedItem {
    let sentences = split_sentences(&item.body);
    let segments = segment(item, &sentences, &resources.stopwords, &config.texttiling);
    let tagger = Tagger::new(&resources.lexicon, &resources.gazetteer);
    let mut tagged = Vec::with_capacity(sentences.len());
    for seg in &segments {
        let texts: Vec<&str> = sentences[seg.sentence_range.clone()].iter().map(|s| s.text.as_str()).collect();
        let resolved = resolve_sentences(&texts, &resources.lexicon, &config.resolver);
        for (offset, text) in resolved.iter().enumerate() {
            tagged.push(tagger.tag_sentence(&item.id, seg.index, seg.sentence_range.start + offset, text));
        }
    }
    ProcessedItem {
        news_id: item.id.clone(),
        sentences,
        segments,
        tagged,
    }
}

pub fn process_corpus(corpus: &[NewsItem], resources: &Resources, config: &PipelineConfig) -> Vec<ProcessedItem> {
    corpus.par_iter().map(|item| process_item(item, resources, config)).collect()
}

/// LDA documents: one per segment.
pub fn segment_documents(items: &[ProcessedItem], stopwords: &HashSet<String>) -> Vec<Vec<String>> {
    items
        .iter()
        .flat_map(|item| {
            item.segments.iter().map(|seg| {
                item.tagged[seg.sentence_range.clone()]
                    .iter()
                    .flat_map(|s| lda_tokens(s, stopwords))
                    .collect()
            })
        })
        .collect()
}

pub fn train_lda(items: &[ProcessedItem], resources: &Resources, config: &PipelineConfig) -> Result<LdaModel<f64>> {
    let docs = segment_documents(items, &resources.stopwords);
    if docs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    info!("training LDA on {} segments", docs.len());
    train(&docs, &config.lda)
}

/// Tags each labelled text as one sentence.
pub fn labeled_units(texts: &[LabeledText], resources: &Resources) -> (Vec<TemporalUnit>, Vec<TenseTag>) {
    let tagger = Tagger::new(&resources.lexicon, &resources.gazetteer);
    texts
        .iter()
        .map(|t| (TemporalUnit::from_tagged(&[tagger.tag_sentence("", 0, 0, &t.text)]), t.tense))
        .unzip()
}

pub fn train_temporal_texts(
    texts: &[LabeledText],
    resources: &Resources,
    config: &PipelineConfig,
) -> Result<TemporalModel<f64>> {
    let (units, labels) = labeled_units(texts, resources);
    train_temporal(&units, &labels, &config.classifier)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextSpan {
    /// Char offsets into the item body.
    pub start: usize,
    pub end: usize,
    pub text: String,
}

impl TextSpan {
    fn of(body: &str, start: usize, end: usize) -> Self {
        TextSpan {
            start,
            end,
            text: char_slice(body, start, end).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssetSpan {
    pub start: usize,
    pub end: usize,
    pub text: String,
    pub asset_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentResult {
    pub index: usize,
    pub start: usize,
    pub end: usize,
    pub relevant_sentences: usize,
    /// Temporality of the segment's relevant text; None without relevant text.
    pub temporality: Option<TenseTag>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub segments: usize,
    pub relevant_segments: usize,
    pub relevant_proportion: f64,
    pub predictions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub news_id: String,
    pub relevant: Vec<TextSpan>,
    pub assets: Vec<AssetSpan>,
    pub predictions: Vec<TextSpan>,
    pub segments: Vec<SegmentResult>,
    pub summary: Summary,
}

impl DetectionResult {
    /// Relevant text and prediction text as evaluated against annotators.
    pub fn extraction(&self) -> Extraction {
        let join = |spans: &[TextSpan]| spans.iter().map(|s| s.text.as_str()).collect::<Vec<_>>().join(" ");
        Extraction {
            news_id: self.news_id.clone(),
            relevant: join(&self.relevant),
            prediction: join(&self.predictions),
        }
    }

    /// Checks offsets and texts against the body and prediction containment.
    pub fn validate(&self, body: &str) -> Result<()> {
        let len = body.chars().count();
        let spans = self
            .relevant
            .iter()
            .chain(&self.predictions)
            .map(|s| (s.start, s.end, s.text.as_str()))
            .chain(self.assets.iter().map(|a| (a.start, a.end, a.text.as_str())));
        for (start, end, text) in spans {
            if start > end || end > len || char_slice(body, start, end) != text {
                return Err(Error::SpanOutOfBounds {
                    news_id: self.news_id.clone(),
                    start,
                    end,
                    len,
                });
            }
        }
        for p in &self.predictions {
            if !self.relevant.iter().any(|r| r.start <= p.start && p.end <= r.end) {
                return Err(Error::Degenerate(format!(
                    "prediction [{}, {}) of `{}` outside relevant text",
                    p.start, p.end, self.news_id
                )));
            }
        }
        Ok(())
    }
}

/// Trained models plus the relevant topic derived from the LDA model.
#[derive(Debug, Clone)]
pub struct Models {
    pub lda: LdaModel<f64>,
    pub relevance: TopicRelevance<f64>,
    pub temporal: TemporalModel<f64>,
}

impl Models {
    pub fn new(lda: LdaModel<f64>, temporal: TemporalModel<f64>) -> Result<Self> {
        let relevance = compute_rho(&lda)?;
        Ok(Models { lda, relevance, temporal })
    }

    pub fn load(paths: &Paths) -> Result<Self> {
        Self::new(LdaModel::load(&paths.lda_model)?, TemporalModel::load(&paths.temporal_model)?)
    }
}

fn asset_spans(body: &str, resources: &Resources) -> Vec<AssetSpan> {
    detect_mentions(body, &resources.lexicon)
        .mentions
        .into_iter()
        .filter(|m| m.category.is_asset())
        .map(|m| AssetSpan {
            start: m.position,
            end: m.end,
            text: char_slice(body, m.position, m.end).to_string(),
            asset_id: m.canonical,
        })
        .collect()
}

pub fn detect_item(
    item: &NewsItem,
    processed: &ProcessedItem,
    models: &Models,
    resources: &Resources,
    config: &PipelineConfig,
) -> Result<DetectionResult> {
    let body = &item.body;
    let sentences = &processed.sentences;
    let mut relevant = Vec::new();
    let mut predictions = Vec::new();
    let mut segments = Vec::new();
    for seg in &processed.segments {
        let tagged = &processed.tagged[seg.sentence_range.clone()];
        let scores: Vec<_> = tagged
            .iter()
            .map(|s| models.lda.score_tokens(&lda_tokens(s, &resources.stopwords)))
            .collect();
        let keep: Vec<usize> = detect_relevant(&scores, &models.relevance, config.lda.delta)
            .into_iter()
            .filter(|d| d.relevant)
            .map(|d| d.index)
            .collect();
        let temporality = if keep.is_empty() {
            None
        } else {
            let kept: Vec<TaggedSentence> = keep.iter().map(|&i| tagged[i].clone()).collect();
            Some(models.temporal.predict(&TemporalUnit::from_tagged(&kept))?)
        };
        for &i in &keep {
            let s = &sentences[seg.sentence_range.start + i];
            relevant.push(TextSpan::of(body, s.start, s.end));
            let unit = TemporalUnit::from_tagged(std::slice::from_ref(&tagged[i]));
            if models.temporal.predict(&unit)? == TenseTag::Future {
                predictions.push(TextSpan::of(body, s.start, s.end));
            }
        }
        let first = &sentences[seg.sentence_range.start];
        let last = &sentences[seg.sentence_range.end - 1];
        segments.push(SegmentResult {
            index: seg.index,
            start: first.start,
            end: last.end,
            relevant_sentences: keep.len(),
            temporality,
        });
    }
    let relevant_segments = segments.iter().filter(|s| s.relevant_sentences > 0).count();
    let summary = Summary {
        segments: segments.len(),
        relevant_segments,
        relevant_proportion: if segments.is_empty() {
            0.0
        } else {
            relevant_segments as f64 / segments.len() as f64
        },
        predictions: predictions.len(),
    };
    Ok(DetectionResult {
        news_id: item.id.clone(),
        relevant,
        assets: asset_spans(body, resources),
        predictions,
        segments,
        summary,
    })
}

/// Runs detection over the corpus in parallel; output keeps corpus order.
pub fn run_pipeline(
    corpus: &[NewsItem],
    models: &Models,
    resources: &Resources,
    config: &PipelineConfig,
) -> Result<Vec<DetectionResult>> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    corpus
        .par_iter()
        .map(|item| {
            let processed = process_item(item, resources, config);
            detect_item(item, &processed, models, resources, config)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsFile {
    pub version: u32,
    pub results: Vec<DetectionResult>,
}

pub fn results_to_json(results: &[DetectionResult]) -> Result<String> {
    let file = ResultsFile {
        version: RESULTS_VERSION,
        results: results.to_vec(),
    };
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

pub fn results_from_json(text: &str) -> Result<Vec<DetectionResult>> {
    let file: ResultsFile = serde_json::from_str(text)?;
    if file.version != RESULTS_VERSION {
        return Err(Error::Model(format!("unsupported results version {}", file.version)));
    }
    Ok(file.results)
}

pub fn load_results(path: impl AsRef<Path>) -> Result<Vec<DetectionResult>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    results_from_json(&text)
}

pub fn proposed_system(results: &[DetectionResult]) -> SystemOutput {
    SystemOutput {
        name: "proposed".into(),
        extractions: results.iter().map(DetectionResult::extraction).collect(),
    }
}

/// Sentence-level tagging without segmentation or co-reference, as used by
/// the baselines.
pub fn tag_plain_sentences(item: &NewsItem, resources: &Resources) -> (Vec<Sentence>, Vec<TaggedSentence>) {
    let sentences = split_sentences(&item.body);
    let tagger = Tagger::new(&resources.lexicon, &resources.gazetteer);
    let tagged = sentences
        .iter()
        .enumerate()
        .map(|(i, s)| tagger.tag_sentence(&item.id, 0, i, &s.text))
        .collect();
    (sentences, tagged)
}

fn join_sentences(sentences: &[Sentence], keep: impl Fn(usize) -> bool) -> String {
    sentences
        .iter()
        .enumerate()
        .filter(|&(i, _)| keep(i))
        .map(|(_, s)| s.text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Rule baseline: predictions are relevant sentences whose main verb is future.
pub fn rule_system(corpus: &[NewsItem], resources: &Resources) -> SystemOutput {
    let extractions = corpus
        .par_iter()
        .map(|item| {
            let (sentences, tagged) = tag_plain_sentences(item, resources);
            let relevant: Vec<bool> = tagged.iter().map(rule_relevant).collect();
            let predictive: Vec<bool> = tagged.iter().map(rule_predictive).collect();
            Extraction {
                news_id: item.id.clone(),
                relevant: join_sentences(&sentences, |i| relevant[i]),
                prediction: join_sentences(&sentences, |i| relevant[i] && predictive[i]),
            }
        })
        .collect();
    SystemOutput {
        name: "rule".into(),
        extractions,
    }
}

/// Annotated items with majority sentence labels, in corpus order.
pub fn supervised_items(
    corpus: &[NewsItem],
    annotations: &[AnnotationSet],
    resources: &Resources,
) -> Vec<(LabeledItem, Vec<Sentence>, Vec<TaggedSentence>)> {
    corpus
        .iter()
        .filter_map(|item| {
            let (sentences, tagged) = tag_plain_sentences(item, resources);
            let labels = majority_labels(item, &sentences, annotations)?;
            let texts = tagged.iter().map(|t| t.tagged.clone()).collect();
            Some((
                LabeledItem {
                    news_id: item.id.clone(),
                    texts,
                    labels,
                },
                sentences,
                tagged,
            ))
        })
        .collect()
}

/// Trains the supervised relevance model on every annotated item.
pub fn train_supervised_model(
    corpus: &[NewsItem],
    annotations: &[AnnotationSet],
    resources: &Resources,
    config: &PipelineConfig,
) -> Result<SupervisedModel<f64>> {
    let items = supervised_items(corpus, annotations, resources);
    let texts: Vec<&str> = items.iter().flat_map(|(it, _, _)| it.texts.iter().map(String::as_str)).collect();
    let labels: Vec<bool> = items.iter().flat_map(|(it, _, _)| it.labels.iter().copied()).collect();
    crate::baseline::train_supervised(&texts, &labels, &config.classifier)
}

fn supervised_extraction(
    news_id: &str,
    sentences: &[Sentence],
    tagged: &[TaggedSentence],
    relevant: &[bool],
    temporal: &TemporalModel<f64>,
) -> Result<Extraction> {
    let future = tagged
        .iter()
        .zip(relevant)
        .map(|(t, &r)| {
            if !r {
                return Ok(false);
            }
            let unit = TemporalUnit::from_tagged(std::slice::from_ref(t));
            Ok(temporal.predict(&unit)? == TenseTag::Future)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(Extraction {
        news_id: news_id.to_string(),
        relevant: join_sentences(sentences, |i| relevant[i]),
        prediction: join_sentences(sentences, |i| future[i]),
    })
}

/// Supervised baseline evaluated leave-one-item-out over annotated items;
/// predictions are its relevant sentences the temporal model marks future.
pub fn supervised_system_loo(
    corpus: &[NewsItem],
    annotations: &[AnnotationSet],
    resources: &Resources,
    temporal: &TemporalModel<f64>,
    config: &PipelineConfig,
) -> Result<SystemOutput> {
    let items = supervised_items(corpus, annotations, resources);
    let labeled: Vec<LabeledItem> = items.iter().map(|(it, _, _)| it.clone()).collect();
    let predicted = leave_one_item_out::<f64>(&labeled, &config.classifier)?;
    let extractions = items
        .iter()
        .zip(&predicted)
        .map(|((it, sentences, tagged), rel)| supervised_extraction(&it.news_id, sentences, tagged, rel, temporal))
        .collect::<Result<_>>()?;
    Ok(SystemOutput {
        name: "supervised".into(),
        extractions,
    })
}

/// Supervised baseline applied with an already trained model.
pub fn supervised_system(
    corpus: &[NewsItem],
    model: &SupervisedModel<f64>,
    resources: &Resources,
    temporal: &TemporalModel<f64>,
) -> Result<SystemOutput> {
    let extractions = corpus
        .par_iter()
        .map(|item| {
            let (sentences, tagged) = tag_plain_sentences(item, resources);
            let relevant = tagged
                .iter()
                .map(|t| model.classify(&t.tagged))
                .collect::<Result<Vec<bool>>>()?;
            supervised_extraction(&item.id, &sentences, &tagged, &relevant, temporal)
        })
        .collect::<Result<_>>()?;
    Ok(SystemOutput {
        name: "supervised".into(),
        extractions,
    })
}

/// Tag counts over the corpus, for the `tag` command's summary.
pub fn tag_histogram(items: &[ProcessedItem]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for t in items.iter().flat_map(|i| &i.tagged).flat_map(|s| s.tags()) {
        *counts.entry(t.as_str().to_string()).or_default() += 1;
    }
    counts
}
