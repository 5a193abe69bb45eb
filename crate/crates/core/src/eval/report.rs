//! System comparison against each annotator, laid out per task.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::corpus::{concat_spans, sentence_labels, split_sentences, AnnotationSet, NewsItem, SpanLabel};
use crate::eval::agreement::{agreement_report, AgreementReport};
use crate::eval::rouge::{rouge_l_text, RougeScore};

/// One system's extraction for one news item.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub news_id: String,
    pub relevant: String,
    pub prediction: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemOutput {
    pub name: String,
    pub extractions: Vec<Extraction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskScores {
    /// Aligned with `EvalReport::annotators`; None when the annotator has no
    /// scoreable item for this task.
    pub per_annotator: Vec<Option<RougeScore<f64>>>,
    pub average: RougeScore<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemReport {
    pub name: String,
    pub relevant: TaskScores,
    pub prediction: TaskScores,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub version: u32,
    pub annotators: Vec<String>,
    pub systems: Vec<SystemReport>,
    pub agreement: Option<AgreementReport>,
}

/// Annotators that labelled at least one span, sorted by id.
pub fn active_annotators(annotations: &[AnnotationSet]) -> Vec<String> {
    let mut spans: BTreeMap<&str, usize> = BTreeMap::new();
    for set in annotations {
        *spans.entry(set.annotator_id.as_str()).or_default() += set.spans.len();
    }
    spans
        .into_iter()
        .filter_map(|(id, n)| {
            if n == 0 {
                warn!("annotator {id} has no annotated spans; skipped");
                None
            } else {
                Some(id.to_string())
            }
        })
        .collect()
}

fn task_scores(
    annotators: &[String],
    system: &HashMap<&str, &Extraction>,
    corpus: &HashMap<&str, &NewsItem>,
    annotations: &[AnnotationSet],
    label: SpanLabel,
) -> TaskScores {
    let per_annotator: Vec<Option<RougeScore<f64>>> = annotators
        .iter()
        .map(|annotator| {
            let scores: Vec<RougeScore<f64>> = annotations
                .iter()
                .filter(|set| &set.annotator_id == annotator)
                .filter_map(|set| {
                    let item = corpus.get(set.news_id.as_str())?;
                    let reference = concat_spans(&item.body, set.spans_with(label));
                    let candidate = system.get(set.news_id.as_str()).map_or("", |e| match label {
                        SpanLabel::Prediction => e.prediction.as_str(),
                        _ => e.relevant.as_str(),
                    });
                    if reference.trim().is_empty() && candidate.trim().is_empty() {
                        return None;
                    }
                    Some(rouge_l_text(candidate, &reference))
                })
                .collect();
            (!scores.is_empty()).then(|| RougeScore::mean(&scores))
        })
        .collect();
    let present: Vec<RougeScore<f64>> = per_annotator.iter().flatten().copied().collect();
    TaskScores {
        average: RougeScore::mean(&present),
        per_annotator,
    }
}

/// Sentence-level agreement on Relevant spans. Each annotator labels the
/// sentences of the items they annotated.
pub fn relevance_agreement(annotators: &[String], corpus: &[NewsItem], annotations: &[AnnotationSet]) -> AgreementReport {
    let mut labels: Vec<Vec<Option<bool>>> = vec![Vec::new(); annotators.len()];
    for item in corpus {
        let sentences = split_sentences(&item.body);
        for (a, annotator) in annotators.iter().enumerate() {
            let set = annotations
                .iter()
                .find(|s| s.news_id == item.id && &s.annotator_id == annotator);
            match set {
                Some(set) => labels[a].extend(
                    sentence_labels(&sentences, set.spans_with(SpanLabel::Relevant)).into_iter().map(Some),
                ),
                None => labels[a].extend(std::iter::repeat_n(None, sentences.len())),
            }
        }
    }
    agreement_report(annotators, &labels)
}

pub fn compare_systems(systems: &[SystemOutput], corpus: &[NewsItem], annotations: &[AnnotationSet]) -> EvalReport {
    let annotators = active_annotators(annotations);
    let by_id: HashMap<&str, &NewsItem> = corpus.iter().map(|n| (n.id.as_str(), n)).collect();
    let systems = systems
        .iter()
        .map(|system| {
            let extractions: HashMap<&str, &Extraction> =
                system.extractions.iter().map(|e| (e.news_id.as_str(), e)).collect();
            SystemReport {
                name: system.name.clone(),
                relevant: task_scores(&annotators, &extractions, &by_id, annotations, SpanLabel::Relevant),
                prediction: task_scores(&annotators, &extractions, &by_id, annotations, SpanLabel::Prediction),
            }
        })
        .collect();
    let agreement = (annotators.len() >= 2).then(|| relevance_agreement(&annotators, corpus, annotations));
    EvalReport {
        version: 1,
        annotators,
        systems,
        agreement,
    }
}

fn render_table(
    out: &mut String,
    title: &str,
    report: &EvalReport,
    task: fn(&SystemReport) -> &TaskScores,
    metric: fn(&RougeScore<f64>) -> f64,
) {
    let width = report.systems.iter().map(|s| s.name.len()).max().unwrap_or(0).max(6);
    let _ = writeln!(out, "{title}");
    let _ = write!(out, "{:<width$}", "System");
    for i in 1..=report.annotators.len() {
        let _ = write!(out, " {:>7}", format!("An.{i}"));
    }
    let _ = writeln!(out, " {:>7}", "Avg");
    for system in &report.systems {
        let scores = task(system);
        let _ = write!(out, "{:<width$}", system.name);
        for s in &scores.per_annotator {
            match s {
                Some(s) => {
                    let _ = write!(out, " {:>7.3}", metric(s));
                }
                None => {
                    let _ = write!(out, " {:>7}", "-");
                }
            }
        }
        let _ = writeln!(out, " {:>7.3}", metric(&scores.average));
    }
    out.push('\n');
}

/// Plain-text tables: one per task and metric, F1 first.
pub fn render_report(report: &EvalReport) -> String {
    let mut out = String::new();
    let tasks: [(&str, fn(&SystemReport) -> &TaskScores); 2] = [
        ("Relevant text detection", |s| &s.relevant),
        ("Prediction detection", |s| &s.prediction),
    ];
    let metrics: [(&str, fn(&RougeScore<f64>) -> f64); 3] = [
        ("ROUGE-L F1", |s| s.f1),
        ("ROUGE-L precision", |s| s.precision),
        ("ROUGE-L recall", |s| s.recall),
    ];
    for (task_name, task) in tasks {
        for (metric_name, metric) in metrics {
            render_table(&mut out, &format!("{task_name}: {metric_name}"), report, task, metric);
        }
    }
    let _ = writeln!(out, "Annotators: {}", report.annotators.join(", "));
    if let Some(agreement) = &report.agreement {
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.3}"));
        let _ = writeln!(
            out,
            "Relevance agreement: alpha {} (mean pairwise {}), accuracy {}",
            fmt(agreement.overall_alpha),
            fmt(agreement.mean_alpha),
            fmt(agreement.mean_accuracy)
        );
    }
    out
}
