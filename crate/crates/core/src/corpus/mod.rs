//! News items, normalization and the on-disk corpus format.

mod annotations;
pub(crate) mod lexicon;
mod sentences;

pub use annotations::{
    concat_spans, load_annotations, parse_annotations, sentence_labels, write_annotations, AnnotationSet,
    Span, SpanLabel,
};
pub use lexicon::{load_lexicon, Category, LexMatch, Lexicon, LexiconEntry};
pub use sentences::{split_sentences, Sentence};

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use chrono::NaiveDate;
use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewsItem {
    pub id: String,
    pub title: String,
    pub body: String,
    pub author: String,
    pub source: String,
    /// Kept from ingestion; nothing downstream reads it yet.
    pub published: NaiveDate,
}

fn url_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?i)\b(?:https?://|ftp://|www\.)\S+").unwrap())
}

/// Removes URLs, collapses whitespace runs to one space and trims.
pub fn normalize_text(raw: &str) -> String {
    let stripped = url_regex().replace_all(raw, " ");
    let mut out = String::with_capacity(stripped.len());
    for word in stripped.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

fn required_str(obj: &serde_json::Map<String, Value>, field: &str, line: usize) -> Result<String> {
    match obj.get(field) {
        Some(Value::String(s)) => Ok(s.clone()),
        _ => Err(Error::Schema {
            line,
            field: field.to_string(),
        }),
    }
}

/// Parses one JSON-lines record. `line` is 1-based and only used in errors.
pub fn parse_news_line(text: &str, line: usize) -> Result<NewsItem> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line,
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| Error::Parse {
        line,
        message: "expected a JSON object".into(),
    })?;
    let id = required_str(obj, "id", line)?;
    let title = required_str(obj, "title", line)?;
    let body = required_str(obj, "body", line)?;
    let author = required_str(obj, "author", line)?;
    let source = required_str(obj, "source", line)?;
    let published = required_str(obj, "published", line)?;
    let published =
        NaiveDate::parse_from_str(published.trim(), "%Y-%m-%d").map_err(|_| Error::Schema {
            line,
            field: "published".into(),
        })?;

    let item = NewsItem {
        id: id.trim().to_string(),
        title: normalize_text(&title),
        body: normalize_text(&body),
        author: normalize_text(&author),
        source: normalize_text(&source),
        published,
    };
    if item.body.is_empty() {
        return Err(Error::EmptyBody(item.id));
    }
    Ok(item)
}

/// Parses a whole JSON-lines corpus. Blank lines are ignored.
pub fn parse_corpus(text: &str) -> Result<Vec<NewsItem>> {
    let mut items = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let item = parse_news_line(line, i + 1)?;
        if !seen.insert(item.id.clone()) {
            return Err(Error::DuplicateId(item.id));
        }
        items.push(item);
    }
    Ok(items)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<NewsItem>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&text)
}

/// Serializes items as JSON lines, one per item, in input order.
pub fn write_corpus_string(items: &[NewsItem]) -> Result<String> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn write_corpus(path: impl AsRef<Path>, items: &[NewsItem]) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, write_corpus_string(items)?).map_err(|e| Error::io(path, e))
}

/// id → item lookup.
pub fn index_corpus(items: &[NewsItem]) -> HashMap<&str, &NewsItem> {
    items.iter().map(|n| (n.id.as_str(), n)).collect()
}

/// One lowercase token per line; blank lines and `#` comments are skipped.
pub fn parse_stopwords(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

pub fn load_stopwords(path: impl AsRef<Path>) -> Result<HashSet<String>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_stopwords(&text))
}
