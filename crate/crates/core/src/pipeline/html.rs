//! Static HTML report and the offline quote lookup.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::DetectionResult;
use crate::corpus::NewsItem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quote {
    pub price: f64,
    pub currency: String,
    pub asof: NaiveDate,
}

pub trait QuoteProvider {
    fn quote(&self, asset_id: &str) -> Option<Quote>;
}

/// Quotes read from a local `{asset_id: {price, currency, asof}}` file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OfflineQuotes {
    pub quotes: BTreeMap<String, Quote>,
}

impl OfflineQuotes {
    pub fn parse(text: &str) -> std::result::Result<Self, serde_json::Error> {
        Ok(OfflineQuotes {
            quotes: serde_json::from_str(text)?,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }
}

impl QuoteProvider for OfflineQuotes {
    fn quote(&self, asset_id: &str) -> Option<Quote> {
        self.quotes.get(asset_id).cloned()
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

// Layer order, outermost first.
const LAYERS: [(&str, &str); 3] = [
    ("relevant", "#cfe2ff"),
    ("prediction", "#c8f0c8"),
    ("asset", "#ffc8e6"),
];

/// Body with marks nested relevant > prediction > asset.
fn highlight(body: &str, result: &DetectionResult) -> Result<String> {
    let chars: Vec<char> = body.chars().collect();
    let mut active = vec![[false; 3]; chars.len()];
    let layers: [Vec<(usize, usize)>; 3] = [
        result.relevant.iter().map(|s| (s.start, s.end)).collect(),
        result.predictions.iter().map(|s| (s.start, s.end)).collect(),
        result.assets.iter().map(|s| (s.start, s.end)).collect(),
    ];
    for (layer, spans) in layers.iter().enumerate() {
        for &(start, end) in spans {
            if start > end || end > chars.len() {
                return Err(Error::SpanOutOfBounds {
                    news_id: result.news_id.clone(),
                    start,
                    end,
                    len: chars.len(),
                });
            }
            for a in &mut active[start..end] {
                a[layer] = true;
            }
        }
    }
    let mut out = String::new();
    let mut open = [false; 3];
    let close_all = |out: &mut String, open: &mut [bool; 3]| {
        for o in open.iter_mut().rev().filter(|o| **o) {
            out.push_str("</mark>");
            *o = false;
        }
    };
    for (i, &c) in chars.iter().enumerate() {
        let want = active[i];
        if want != open {
            // reopen from the first layer that changed so nesting stays valid
            let first = (0..3).find(|&l| want[l] != open[l]).unwrap_or(0);
            for l in (first..3).rev() {
                if open[l] {
                    out.push_str("</mark>");
                    open[l] = false;
                }
            }
            for l in first..3 {
                if want[l] {
                    let (class, color) = LAYERS[l];
                    let _ = write!(out, "<mark class=\"{class}\" style=\"background:{color}\">");
                    open[l] = true;
                }
            }
        }
        out.push_str(&escape(&c.to_string()));
    }
    close_all(&mut out, &mut open);
    Ok(out)
}

/// One section per item with a small dashboard above the highlighted body.
pub fn render_html(results: &[DetectionResult], corpus: &[NewsItem], quotes: Option<&dyn QuoteProvider>) -> Result<String> {
    let by_id: HashMap<&str, &NewsItem> = corpus.iter().map(|n| (n.id.as_str(), n)).collect();
    let mut out = String::from(
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Relevant text and forecasts</title>\n\
         <style>body{font-family:sans-serif;max-width:60em;margin:auto}mark{padding:0 1px}\
         .dashboard{font-size:90%;color:#333;margin-bottom:.5em}</style>\n</head>\n<body>\n",
    );
    for result in results {
        let item = by_id
            .get(result.news_id.as_str())
            .ok_or_else(|| Error::UnknownNewsId(result.news_id.clone()))?;
        let _ = writeln!(out, "<section id=\"{}\">", escape(&item.id));
        let _ = writeln!(out, "<h2>{}</h2>", escape(&item.title));
        let _ = writeln!(out, "<div class=\"dashboard\">");
        let _ = writeln!(
            out,
            "<div>Relevant segments: {:.0}%</div>",
            result.summary.relevant_proportion * 100.0
        );
        let _ = writeln!(out, "<div>Predictions: {}</div>", result.summary.predictions);
        if let Some(provider) = quotes {
            let mut seen: Vec<&str> = result.assets.iter().map(|a| a.asset_id.as_str()).collect();
            seen.sort_unstable();
            seen.dedup();
            for id in seen {
                if let Some(q) = provider.quote(id) {
                    let _ = writeln!(
                        out,
                        "<div class=\"quote\">{}: {:.2} {} (as of {})</div>",
                        escape(id),
                        q.price,
                        escape(&q.currency),
                        q.asof
                    );
                }
            }
        }
        let _ = writeln!(out, "</div>");
        let _ = writeln!(out, "<p>{}</p>", highlight(&item.body, result)?);
        let _ = writeln!(out, "</section>");
    }
    out.push_str("</body>\n</html>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{Summary, TextSpan, AssetSpan};
    use super::*;

    fn item(body: &str) -> NewsItem {
        NewsItem {
            id: "n1".into(),
            title: "T".into(),
            body: body.into(),
            author: String::new(),
            source: String::new(),
            published: NaiveDate::from_ymd_opt(2021, 1, 1).unwrap(),
        }
    }

    fn result(relevant: Vec<(usize, usize)>, predictions: Vec<(usize, usize)>, assets: Vec<(usize, usize)>) -> DetectionResult {
        let span = |(start, end): (usize, usize)| TextSpan { start, end, text: String::new() };
        DetectionResult {
            news_id: "n1".into(),
            relevant: relevant.into_iter().map(span).collect(),
            predictions: predictions.into_iter().map(span).collect(),
            assets: assets
                .into_iter()
                .map(|(start, end)| AssetSpan { start, end, text: String::new(), asset_id: "VZ".into() })
                .collect(),
            segments: vec![],
            summary: Summary { segments: 1, relevant_segments: 0, relevant_proportion: 0.0, predictions: 0 },
        }
    }

    #[test]
    fn test_empty_result() {
        let html = render_html(&[result(vec![], vec![], vec![])], &[item("a < b")], None).unwrap();
        assert!(!html.contains("<mark"));
        assert!(html.contains("a &lt; b"));
    }

    #[test]
    fn test_nested_marks() {
        let body = "VZ will rise. Other text.";
        let html = highlight(body, &result(vec![(0, 13)], vec![(0, 13)], vec![(0, 2)])).unwrap();
        assert!(html.starts_with(
            "<mark class=\"relevant\" style=\"background:#cfe2ff\"><mark class=\"prediction\" style=\"background:#c8f0c8\"><mark class=\"asset\""
        ));
        assert_eq!(html.matches("<mark").count(), html.matches("</mark>").count());
        assert!(html.contains("rise.</mark></mark> Other"));
        let err = highlight(body, &result(vec![(0, 99)], vec![], vec![])).unwrap_err();
        assert!(matches!(err, Error::SpanOutOfBounds { .. }));
    }

    #[test]
    fn test_quotes() {
        let q = OfflineQuotes::parse(r#"{"VZ": {"price": 55.1, "currency": "USD", "asof": "2021-03-01"}}"#).unwrap();
        assert_eq!(q.quote("VZ").unwrap().price, 55.1);
        assert!(q.quote("T").is_none());
        let body = "VZ rose.";
        let with = render_html(&[result(vec![], vec![], vec![(0, 2)])], &[item(body)], Some(&q)).unwrap();
        assert!(with.contains("VZ: 55.10 USD (as of 2021-03-01)"));
        let empty = OfflineQuotes::default();
        let without = render_html(&[result(vec![], vec![], vec![(0, 2)])], &[item(body)], Some(&empty)).unwrap();
        assert!(!without.contains("class=\"quote\""));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("quotes.json");
        fs::write(&path, "{not json").unwrap();
        assert!(OfflineQuotes::load(&path).unwrap_err().to_string().contains("quotes.json"));
    }
}
