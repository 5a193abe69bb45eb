//! Manual annotations: char-offset spans over news bodies.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{NewsItem, Sentence};
use crate::error::{Error, Result};
use crate::text::char_slice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpanLabel {
    #[serde(alias = "relevant")]
    Relevant,
    #[serde(alias = "asset")]
    Asset,
    #[serde(alias = "prediction")]
    Prediction,
}

impl fmt::Display for SpanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub label: SpanLabel,
}

impl Span {
    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationSet {
    pub news_id: String,
    pub annotator_id: String,
    pub spans: Vec<Span>,
}

impl AnnotationSet {
    pub fn spans_with(&self, label: SpanLabel) -> impl Iterator<Item = &Span> {
        self.spans.iter().filter(move |s| s.label == label)
    }

    /// Checks bounds, same-label overlap and prediction containment.
    pub fn validate(&self, body_len: usize) -> Result<()> {
        for s in &self.spans {
            if s.start >= s.end || s.end > body_len {
                return Err(Error::SpanOutOfBounds {
                    news_id: self.news_id.clone(),
                    start: s.start,
                    end: s.end,
                    len: body_len,
                });
            }
        }
        for label in [SpanLabel::Relevant, SpanLabel::Asset, SpanLabel::Prediction] {
            let mut spans: Vec<&Span> = self.spans_with(label).collect();
            spans.sort_by_key(|s| (s.start, s.end));
            if spans.windows(2).any(|w| w[1].start < w[0].end) {
                return Err(Error::OverlappingSpans {
                    news_id: self.news_id.clone(),
                    annotator: self.annotator_id.clone(),
                    label: label.to_string(),
                });
            }
        }
        for p in self.spans_with(SpanLabel::Prediction) {
            if !self.spans_with(SpanLabel::Relevant).any(|r| r.contains(p)) {
                return Err(Error::PredictionOutsideRelevant {
                    news_id: self.news_id.clone(),
                    annotator: self.annotator_id.clone(),
                    start: p.start,
                    end: p.end,
                });
            }
        }
        Ok(())
    }
}

/// Parses a JSON array of annotation sets and validates every span against
/// the corpus bodies.
pub fn parse_annotations(json: &str, corpus: &[NewsItem]) -> Result<Vec<AnnotationSet>> {
    let sets: Vec<AnnotationSet> = serde_json::from_str(json)?;
    let lengths: HashMap<&str, usize> = corpus
        .iter()
        .map(|n| (n.id.as_str(), n.body.chars().count()))
        .collect();
    for set in &sets {
        let len = *lengths
            .get(set.news_id.as_str())
            .ok_or_else(|| Error::UnknownNewsId(set.news_id.clone()))?;
        set.validate(len)?;
    }
    Ok(sets)
}

pub fn load_annotations(path: impl AsRef<Path>, corpus: &[NewsItem]) -> Result<Vec<AnnotationSet>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_annotations(&text, corpus)
}

pub fn write_annotations(path: impl AsRef<Path>, sets: &[AnnotationSet]) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(sets)?;
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

/// A sentence is labelled when more than half of its characters lie inside
/// the given spans. Spans are assumed not to overlap each other.
pub fn sentence_labels<'a>(sentences: &[Sentence], spans: impl IntoIterator<Item = &'a Span>) -> Vec<bool> {
    let spans: Vec<&Span> = spans.into_iter().collect();
    sentences
        .iter()
        .map(|s| {
            let covered: usize = spans
                .iter()
                .map(|sp| sp.end.min(s.end).saturating_sub(sp.start.max(s.start)))
                .sum();
            2 * covered > s.end - s.start
        })
        .collect()
}

/// Text of `spans` in document order, joined by single spaces.
pub fn concat_spans<'a>(body: &str, spans: impl IntoIterator<Item = &'a Span>) -> String {
    let mut spans: Vec<&Span> = spans.into_iter().collect();
    spans.sort_by_key(|s| (s.start, s.end));
    spans
        .iter()
        .map(|s| char_slice(body, s.start, s.end))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn corpus() -> Vec<NewsItem> {
        vec![NewsItem {
            id: "n1".into(),
            title: "t".into(),
            body: "VZ will rise. It fell.".into(),
            author: "a".into(),
            source: "s".into(),
            published: NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(),
        }]
    }

    fn json(spans: &str) -> String {
        format!(r#"[{{"news_id":"n1","annotator_id":"A1","spans":[{spans}]}}]"#)
    }

    #[test]
    fn test_valid_annotations() {
        let j = json(r#"{"start":0,"end":13,"label":"Relevant"},{"start":3,"end":12,"label":"Prediction"},{"start":0,"end":2,"label":"Asset"}"#);
        let sets = parse_annotations(&j, &corpus()).unwrap();
        assert_eq!(sets[0].spans.len(), 3);
    }

    #[test]
    fn test_out_of_bounds() {
        let j = json(r#"{"start":10,"end":23,"label":"Relevant"}"#);
        assert!(matches!(
            parse_annotations(&j, &corpus()),
            Err(Error::SpanOutOfBounds { len: 22, .. })
        ));
    }

    #[test]
    fn test_prediction_outside_relevant() {
        let j = json(r#"{"start":0,"end":5,"label":"Relevant"},{"start":3,"end":12,"label":"Prediction"}"#);
        assert!(matches!(
            parse_annotations(&j, &corpus()),
            Err(Error::PredictionOutsideRelevant { .. })
        ));
    }

    #[test]
    fn test_overlap_same_label() {
        let j = json(r#"{"start":0,"end":10,"label":"Relevant"},{"start":5,"end":20,"label":"Relevant"}"#);
        assert!(matches!(
            parse_annotations(&j, &corpus()),
            Err(Error::OverlappingSpans { .. })
        ));
    }

    #[test]
    fn test_unknown_news_id() {
        let j = r#"[{"news_id":"zz","annotator_id":"A1","spans":[]}]"#;
        assert!(matches!(parse_annotations(j, &corpus()), Err(Error::UnknownNewsId(_))));
    }

    #[test]
    fn test_sentence_label_projection() {
        let sentences = vec![
            Sentence { text: "0123456789".into(), start: 0, end: 10 },
            Sentence { text: "abcdefghij".into(), start: 11, end: 21 },
        ];
        let full = Span { start: 0, end: 10, label: SpanLabel::Relevant };
        assert_eq!(sentence_labels(&sentences, [&full]), vec![true, false]);
        let forty = Span { start: 11, end: 15, label: SpanLabel::Relevant };
        assert_eq!(sentence_labels(&sentences, [&forty]), vec![false, false]);
        let sixty = Span { start: 11, end: 17, label: SpanLabel::Relevant };
        assert_eq!(sentence_labels(&sentences, [&sixty]), vec![false, true]);
        assert_eq!(concat_spans("abc def ghi", [&Span { start: 8, end: 11, label: SpanLabel::Asset }, &Span { start: 0, end: 3, label: SpanLabel::Asset }]), "abc ghi");
    }
}
