//! TextTiling topic segmentation.
//!
//! Token-sequence TextTiling with block comparison: the body is cut into
//! pseudo-sentences of `w` tokens, adjacent blocks of `k` pseudo-sentences
//! are compared by cosine similarity, the gap scores are smoothed, and deep
//! valleys become boundaries. Boundaries are snapped forward to the end of
//! the sentence they fall in so a segment never splits a sentence.

use std::collections::{HashMap, HashSet};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::corpus::{NewsItem, Sentence};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TextTilingConfig {
    /// Pseudo-sentence size in tokens.
    pub w: usize,
    /// Block size in pseudo-sentences.
    pub k: usize,
    pub smoothing_width: usize,
    pub smoothing_rounds: usize,
    /// Bodies shorter than this (in chars) are not segmented.
    pub min_chars: usize,
}

impl Default for TextTilingConfig {
    fn default() -> Self {
        TextTilingConfig {
            w: 20,
            k: 10,
            smoothing_width: 2,
            smoothing_rounds: 1,
            min_chars: 500,
        }
    }
}

impl TextTilingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.w == 0 || self.k == 0 {
            return Err(Error::Config("texttiling w and k must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub news_id: String,
    pub index: usize,
    /// Half-open range into the document's sentence list.
    pub sentence_range: Range<usize>,
    pub text: String,
}

/// Lowercase alphanumeric tokens with their char positions, stop-words removed.
pub fn tiling_tokenize(text: &str, stopwords: &HashSet<String>) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (pos, c) in text.chars().enumerate() {
        if c.is_alphanumeric() {
            if current.is_empty() {
                start = pos;
            }
            current.extend(c.to_lowercase());
        } else if !current.is_empty() {
            flush(&mut out, &mut current, start, stopwords);
        }
    }
    if !current.is_empty() {
        flush(&mut out, &mut current, start, stopwords);
    }
    out
}

fn flush(out: &mut Vec<(String, usize)>, cur: &mut String, start: usize, stop: &HashSet<String>) {
    let tok = std::mem::take(cur);
    if !stop.contains(&tok) {
        out.push((tok, start));
    }
}

/// Cosine similarity of two term-frequency vectors; 0 when either is empty.
pub fn block_cosine<F: Real>(left: &HashMap<&str, usize>, right: &HashMap<&str, usize>) -> F {
    let dot: usize = left
        .iter()
        .filter_map(|(t, a)| right.get(t).map(|b| a * b))
        .sum();
    let norm = |m: &HashMap<&str, usize>| m.values().map(|v| v * v).sum::<usize>();
    let (nl, nr) = (norm(left), norm(right));
    if nl == 0 || nr == 0 {
        return F::zero();
    }
    F::from_count(dot) / (F::from_count(nl).sqrt() * F::from_count(nr).sqrt())
}

fn pseudo_sentences<'a>(tokens: &'a [(String, usize)], w: usize) -> Vec<&'a [(String, usize)]> {
    tokens.chunks(w).collect()
}

/// One similarity score per gap between consecutive pseudo-sentences,
/// comparing the `k` pseudo-sentences on each side (truncated at the edges).
pub fn gap_scores<F: Real>(tokens: &[(String, usize)], config: &TextTilingConfig) -> Vec<F> {
    let ps = pseudo_sentences(tokens, config.w.max(1));
    if ps.len() < 2 {
        return Vec::new();
    }
    let k = config.k.max(1);
    let counts: Vec<HashMap<&str, usize>> = ps
        .iter()
        .map(|p| {
            let mut m = HashMap::new();
            for (t, _) in p.iter() {
                *m.entry(t.as_str()).or_insert(0) += 1;
            }
            m
        })
        .collect();
    let block = |range: Range<usize>| {
        let mut m: HashMap<&str, usize> = HashMap::new();
        for c in &counts[range] {
            for (t, n) in c {
                *m.entry(t).or_insert(0) += n;
            }
        }
        m
    };
    (0..ps.len() - 1)
        .map(|gap| {
            let left = block(gap.saturating_sub(k - 1)..gap + 1);
            let right = block(gap + 1..(gap + 1 + k).min(ps.len()));
            block_cosine(&left, &right)
        })
        .collect()
}

/// Moving average over a window of `width + 1` centred values, truncated at
/// the edges, applied `rounds` times.
pub fn smooth<F: Real>(scores: &[F], width: usize, rounds: usize) -> Vec<F> {
    let mut cur = scores.to_vec();
    if width == 0 {
        return cur;
    }
    let before = width / 2;
    let after = width - before;
    for _ in 0..rounds {
        cur = (0..cur.len())
            .map(|i| {
                let lo = i.saturating_sub(before);
                let hi = (i + after + 1).min(cur.len());
                cur[lo..hi].iter().copied().sum::<F>() / F::from_count(hi - lo)
            })
            .collect();
    }
    cur
}

/// Left and right one-sided depths: climb to the nearest peak on each side.
pub fn one_sided_depths<F: Real>(scores: &[F]) -> Vec<(F, F)> {
    (0..scores.len())
        .map(|i| {
            let s = scores[i];
            let mut lpeak = s;
            for &v in scores[..i].iter().rev() {
                if v >= lpeak {
                    lpeak = v;
                } else {
                    break;
                }
            }
            let mut rpeak = s;
            for &v in &scores[i + 1..] {
                if v >= rpeak {
                    rpeak = v;
                } else {
                    break;
                }
            }
            (lpeak - s, rpeak - s)
        })
        .collect()
}

pub fn depth_scores<F: Real>(scores: &[F]) -> Vec<F> {
    one_sided_depths(scores)
        .into_iter()
        .map(|(l, r)| l + r)
        .collect()
}

/// Minimum distance (in gaps) between two kept boundaries.
const MIN_BOUNDARY_DISTANCE: usize = 3;

/// Gap indices that become boundaries.
///
/// A gap qualifies when it is a valley (positive depth on both sides) and
/// its depth exceeds `mean - stddev / 2` of all depths. Among qualifying
/// gaps closer than three pseudo-sentences, the deeper one is kept.
pub fn depth_and_boundaries<F: Real>(scores: &[F]) -> Vec<usize> {
    if scores.is_empty() {
        return Vec::new();
    }
    let sided = one_sided_depths(scores);
    let depths: Vec<F> = sided.iter().map(|&(l, r)| l + r).collect();
    let n = F::from_count(depths.len());
    let mean = depths.iter().copied().sum::<F>() / n;
    let var = depths.iter().map(|&d| (d - mean) * (d - mean)).sum::<F>() / n;
    let cutoff = mean - var.sqrt() / F::lit(2.0);

    let mut candidates: Vec<usize> = (0..depths.len())
        .filter(|&i| {
            let (l, r) = sided[i];
            l > F::zero() && r > F::zero() && depths[i] > cutoff
        })
        .collect();
    candidates.sort_by(|&a, &b| {
        depths[b]
            .partial_cmp(&depths[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::new();
    for c in candidates {
        if kept.iter().all(|&k| k.abs_diff(c) >= MIN_BOUNDARY_DISTANCE) {
            kept.push(c);
        }
    }
    kept.sort_unstable();
    kept
}

/// Segments one news item. `sentences` must come from
/// [`crate::corpus::split_sentences`] on the item body.
pub fn segment(
    news: &NewsItem,
    sentences: &[Sentence],
    stopwords: &HashSet<String>,
    config: &TextTilingConfig,
) -> Vec<Segment> {
    let cuts = if news.body.chars().count() < config.min_chars {
        Vec::new()
    } else {
        sentence_cuts(&news.body, sentences, stopwords, config)
    };
    build_segments(news, sentences, &cuts)
}

/// Sentence indices at which a new segment starts (excluding 0).
pub fn sentence_cuts(
    body: &str,
    sentences: &[Sentence],
    stopwords: &HashSet<String>,
    config: &TextTilingConfig,
) -> Vec<usize> {
    let tokens = tiling_tokenize(body, stopwords);
    let raw: Vec<f64> = gap_scores(&tokens, config);
    let smoothed = smooth(&raw, config.smoothing_width, config.smoothing_rounds);
    let w = config.w.max(1);
    let mut cuts: Vec<usize> = depth_and_boundaries(&smoothed)
        .into_iter()
        .filter_map(|gap| {
            let (tok, pos) = &tokens[(gap + 1) * w - 1];
            let last_char = pos + tok.chars().count() - 1;
            // index of the sentence holding the last token before the gap
            let j = sentences.partition_point(|s| s.start <= last_char);
            (j > 0 && j < sentences.len()).then_some(j)
        })
        .collect();
    cuts.dedup();
    cuts
}

fn build_segments(news: &NewsItem, sentences: &[Sentence], cuts: &[usize]) -> Vec<Segment> {
    if sentences.is_empty() {
        return Vec::new();
    }
    let mut bounds = vec![0];
    bounds.extend(cuts.iter().copied().filter(|&c| c > 0 && c < sentences.len()));
    bounds.push(sentences.len());
    bounds.dedup();
    bounds
        .windows(2)
        .enumerate()
        .map(|(index, w)| {
            let first = &sentences[w[0]];
            let last = &sentences[w[1] - 1];
            Segment {
                news_id: news.id.clone(),
                index,
                sentence_range: w[0]..w[1],
                text: crate::text::char_slice(&news.body, first.start, last.end).to_string(),
            }
        })
        .collect()
}
