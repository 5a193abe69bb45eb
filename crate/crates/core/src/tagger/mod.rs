//! Tag homogenisation: financial terms, proper names, numbers and dates are
//! replaced by category tags before topic modelling.

mod names;
mod numeric;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::corpus::{Category, Lexicon};
use crate::error::{Error, Result};

pub use names::{load_gazetteers, Gazetteer};
pub use numeric::find_numeric_dates;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TagCategory {
    #[serde(rename = "STOCK")]
    Stock,
    #[serde(rename = "TICKER")]
    Ticker,
    #[serde(rename = "TICKER_ABR")]
    TickerAbr,
    #[serde(rename = "CURRENCY")]
    Currency,
    #[serde(rename = "FIN_ABR")]
    FinAbr,
    #[serde(rename = "NUM")]
    Num,
    #[serde(rename = "DATE")]
    Date,
    #[serde(rename = "MONEY")]
    Money,
    #[serde(rename = "PERSON")]
    Person,
    #[serde(rename = "NORP")]
    Norp,
    #[serde(rename = "ORG")]
    Org,
    #[serde(rename = "PRODUCT")]
    Product,
    #[serde(rename = "EVENT")]
    Event,
    #[serde(rename = "WORK_OF_ART")]
    WorkOfArt,
    #[serde(rename = "LOC")]
    Loc,
}

impl TagCategory {
    pub const ALL: [TagCategory; 15] = [
        TagCategory::Stock,
        TagCategory::Ticker,
        TagCategory::TickerAbr,
        TagCategory::Currency,
        TagCategory::FinAbr,
        TagCategory::Num,
        TagCategory::Date,
        TagCategory::Money,
        TagCategory::Person,
        TagCategory::Norp,
        TagCategory::Org,
        TagCategory::Product,
        TagCategory::Event,
        TagCategory::WorkOfArt,
        TagCategory::Loc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TagCategory::Stock => "STOCK",
            TagCategory::Ticker => "TICKER",
            TagCategory::TickerAbr => "TICKER_ABR",
            TagCategory::Currency => "CURRENCY",
            TagCategory::FinAbr => "FIN_ABR",
            TagCategory::Num => "NUM",
            TagCategory::Date => "DATE",
            TagCategory::Money => "MONEY",
            TagCategory::Person => "PERSON",
            TagCategory::Norp => "NORP",
            TagCategory::Org => "ORG",
            TagCategory::Product => "PRODUCT",
            TagCategory::Event => "EVENT",
            TagCategory::WorkOfArt => "WORK_OF_ART",
            TagCategory::Loc => "LOC",
        }
    }

    /// Tags counted by the topic score: STOCK, TICKER, CURRENCY, FIN_ABR.
    pub fn is_significant(self) -> bool {
        matches!(
            self,
            TagCategory::Stock | TagCategory::Ticker | TagCategory::Currency | TagCategory::FinAbr
        )
    }

    /// Tags produced from the financial lexica.
    pub fn is_financial(self) -> bool {
        self.is_significant() || self == TagCategory::TickerAbr
    }
}

impl From<Category> for TagCategory {
    fn from(c: Category) -> Self {
        match c {
            Category::StockMarket => TagCategory::Stock,
            Category::Ticker => TagCategory::Ticker,
            Category::TickerAbbrev => TagCategory::TickerAbr,
            Category::Currency => TagCategory::Currency,
            Category::FinAbbrev => TagCategory::FinAbr,
        }
    }
}

impl fmt::Display for TagCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TagCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TagCategory::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownCategory(s.to_string()))
    }
}

/// Nouns that stand for an asset when preceded by "the".
pub const ASSET_KEYWORDS: [&str; 4] = ["company", "enterprise", "manufacturer", "shareholder"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// Original surface; for tagged tokens this is the text the tag replaced.
    pub surface: String,
    pub tag: Option<TagCategory>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedSentence {
    pub news_id: String,
    pub segment: usize,
    pub sentence: usize,
    pub tokens: Vec<Token>,
    /// Sentence before tagging.
    pub original: String,
    /// Sentence with tags substituted.
    pub tagged: String,
}

impl TaggedSentence {
    pub fn significant_count(&self) -> usize {
        self.tags().filter(|t| t.is_significant()).count()
    }

    pub fn tags(&self) -> impl Iterator<Item = TagCategory> + '_ {
        self.tokens.iter().filter_map(|t| t.tag)
    }

    pub fn count(&self, tag: TagCategory) -> usize {
        self.tags().filter(|&t| t == tag).count()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// A run of untagged text or a single tag with the surface it replaced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Piece {
    Text(String),
    Tag(TagCategory, String),
}

fn tag_word_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        let alts: Vec<&str> = TagCategory::ALL.iter().map(|t| t.as_str()).collect();
        Regex::new(&format!(r"\b(?:{})\b", alts.join("|"))).unwrap()
    })
}

pub(crate) fn parse_pieces(text: &str) -> Vec<Piece> {
    let mut out = Vec::new();
    let mut cursor = 0;
    for m in tag_word_re().find_iter(text) {
        if m.start() > cursor {
            out.push(Piece::Text(text[cursor..m.start()].to_string()));
        }
        let tag: TagCategory = m.as_str().parse().expect("regex only matches tag names");
        out.push(Piece::Tag(tag, m.as_str().to_string()));
        cursor = m.end();
    }
    if cursor < text.len() {
        out.push(Piece::Text(text[cursor..].to_string()));
    }
    out
}

pub(crate) fn render(pieces: &[Piece]) -> String {
    pieces
        .iter()
        .map(|p| match p {
            Piece::Text(s) => s.as_str(),
            Piece::Tag(t, _) => t.as_str(),
        })
        .collect()
}

/// Applies `find` to every text piece and splits out the returned byte ranges
/// as tags. Ranges must be sorted and non-overlapping.
pub(crate) fn rewrite(
    pieces: Vec<Piece>,
    mut find: impl FnMut(&str) -> Vec<(Range<usize>, TagCategory)>,
) -> Vec<Piece> {
    let mut out = Vec::with_capacity(pieces.len());
    for piece in pieces {
        let Piece::Text(text) = piece else {
            out.push(piece);
            continue;
        };
        let mut cursor = 0;
        for (range, tag) in find(&text) {
            debug_assert!(range.start >= cursor && range.start < range.end);
            if range.start > cursor {
                out.push(Piece::Text(text[cursor..range.start].to_string()));
            }
            out.push(Piece::Tag(tag, text[range.clone()].to_string()));
            cursor = range.end;
        }
        if cursor < text.len() {
            out.push(Piece::Text(text[cursor..].to_string()));
        }
    }
    out
}

fn keyword_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(&format!(r"(?i)\bthe\s+(?:{})\b", ASSET_KEYWORDS.join("|"))).unwrap()
    })
}

fn financial_matches(text: &str, lexicon: &Lexicon) -> Vec<(Range<usize>, TagCategory)> {
    let mut hits: Vec<(Range<usize>, TagCategory)> = lexicon
        .find_all(text)
        .into_iter()
        .map(|m| (m.start..m.end, m.category.into()))
        .collect();
    for k in keyword_re().find_iter(text) {
        if !hits.iter().any(|(r, _)| r.start < k.end() && k.start() < r.end) {
            hits.push((k.range(), TagCategory::Ticker));
        }
    }
    hits.sort_by_key(|(r, _)| r.start);
    hits
}

pub(crate) fn financial_pieces(pieces: Vec<Piece>, lexicon: &Lexicon) -> Vec<Piece> {
    rewrite(pieces, |t| financial_matches(t, lexicon))
}

pub(crate) fn numeric_pieces(pieces: Vec<Piece>) -> Vec<Piece> {
    rewrite(pieces, find_numeric_dates)
}

/// Replaces lexicon hits with STOCK / TICKER / TICKER_ABR / CURRENCY /
/// FIN_ABR, and "the company" style asset nouns with TICKER.
pub fn tag_financial(text: &str, lexicon: &Lexicon) -> String {
    render(&financial_pieces(parse_pieces(text), lexicon))
}

/// Replaces numbers, percentages, money amounts with NUM and dates, years
/// and clock times with DATE.
pub fn tag_numeric_dates(text: &str) -> String {
    render(&numeric_pieces(parse_pieces(text)))
}

/// Replaces capitalised names found in the lexicon or a gazetteer.
pub fn tag_proper_names(text: &str, lexicon: &Lexicon, gazetteer: &Gazetteer) -> String {
    render(&names::name_pieces(parse_pieces(text), lexicon, gazetteer))
}

fn token_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[\p{L}\p{N}_]+(?:['’][\p{L}\p{N}_]+)*|[^\s\p{L}\p{N}_]").unwrap())
}

/// Splits untagged text into word and punctuation tokens.
pub fn word_tokens(text: &str) -> impl Iterator<Item = &str> {
    token_re().find_iter(text).map(|m| m.as_str())
}

fn pieces_to_tokens(pieces: &[Piece]) -> Vec<Token> {
    let mut tokens = Vec::new();
    for p in pieces {
        match p {
            Piece::Tag(t, surface) => tokens.push(Token {
                surface: surface.clone(),
                tag: Some(*t),
            }),
            Piece::Text(s) => tokens.extend(word_tokens(s).map(|w| Token {
                surface: w.to_string(),
                tag: None,
            })),
        }
    }
    tokens
}

/// Tokens of already-tagged text; tag names become tagged tokens.
pub fn tokenize_tagged(text: &str) -> Vec<Token> {
    pieces_to_tokens(&parse_pieces(text))
}

/// Shared read-only tagging context.
#[derive(Debug, Clone, Copy)]
pub struct Tagger<'a> {
    pub lexicon: &'a Lexicon,
    pub gazetteer: &'a Gazetteer,
}

impl<'a> Tagger<'a> {
    pub fn new(lexicon: &'a Lexicon, gazetteer: &'a Gazetteer) -> Self {
        Tagger { lexicon, gazetteer }
    }

    /// financial, then proper names, then numbers and dates.
    pub fn tag_text(&self, text: &str) -> String {
        render(&self.pieces(text))
    }

    fn pieces(&self, text: &str) -> Vec<Piece> {
        let p = financial_pieces(parse_pieces(text), self.lexicon);
        let p = names::name_pieces(p, self.lexicon, self.gazetteer);
        numeric_pieces(p)
    }

    pub fn tag_sentence(
        &self,
        news_id: &str,
        segment: usize,
        sentence: usize,
        text: &str,
    ) -> TaggedSentence {
        let pieces = self.pieces(text);
        let tokens = pieces_to_tokens(&pieces);
        TaggedSentence {
            news_id: news_id.to_string(),
            segment,
            sentence,
            tokens,
            original: text.to_string(),
            tagged: render(&pieces),
        }
    }
}
