//! Financial lexica and longest-match lookup.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    StockMarket,
    Ticker,
    TickerAbbrev,
    Currency,
    FinAbbrev,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::StockMarket,
        Category::Ticker,
        Category::TickerAbbrev,
        Category::Currency,
        Category::FinAbbrev,
    ];

    /// Asset-like categories: things a pronoun can refer back to.
    pub fn is_asset(self) -> bool {
        matches!(self, Category::Ticker | Category::TickerAbbrev | Category::Currency)
    }

    pub fn is_organization(self) -> bool {
        matches!(self, Category::Ticker | Category::TickerAbbrev)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Category::StockMarket => "StockMarket",
            Category::Ticker => "Ticker",
            Category::TickerAbbrev => "TickerAbbrev",
            Category::Currency => "Currency",
            Category::FinAbbrev => "FinAbbrev",
        };
        f.write_str(s)
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "stockmarket" | "stock" => Ok(Category::StockMarket),
            "ticker" => Ok(Category::Ticker),
            "tickerabbrev" | "ticker_abr" => Ok(Category::TickerAbbrev),
            "currency" => Ok(Category::Currency),
            "finabbrev" | "fin_abr" => Ok(Category::FinAbbrev),
            _ => Err(Error::UnknownCategory(s.trim().to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub surface: String,
    pub category: Category,
    pub canonical: String,
}

impl LexiconEntry {
    /// Abbreviations (no lowercase letters, or ticker abbreviations) match
    /// case-sensitively; full names match case-insensitively.
    pub fn case_sensitive(&self) -> bool {
        self.category == Category::TickerAbbrev || !self.surface.chars().any(char::is_lowercase)
    }
}

/// A lexicon hit in some text. Offsets are bytes into the searched string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexMatch {
    pub start: usize,
    pub end: usize,
    pub category: Category,
    pub canonical: String,
}

#[derive(Debug, Clone)]
struct Compiled {
    chars: Vec<char>,
    lower: Vec<char>,
    case_sensitive: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    compiled: Vec<Compiled>,
    // first lowercase char -> entry ids, longest surface first
    by_first: HashMap<char, Vec<usize>>,
}

pub(crate) fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lower_char(c: char) -> char {
    c.to_lowercase().next().unwrap_or(c)
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = LexiconEntry>) -> Result<Self> {
        let mut lex = Lexicon::new();
        for e in entries {
            lex.insert(e)?;
        }
        Ok(lex)
    }

    /// Parses `surface,category,canonical` rows. A leading header row and
    /// `#` comment lines are allowed.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lex = Lexicon::new();
        lex.extend_csv(text)?;
        Ok(lex)
    }

    pub fn extend_csv(&mut self, text: &str) -> Result<()> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        for (i, row) in reader.records().enumerate() {
            let row = row.map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            if row.len() == 1 && row[0].is_empty() {
                continue;
            }
            if row.len() != 3 {
                return Err(Error::Parse {
                    line: row.position().map_or(i + 1, |p| p.line() as usize),
                    message: format!("expected 3 columns, found {}", row.len()),
                });
            }
            if i == 0 && row[0].eq_ignore_ascii_case("surface") {
                continue;
            }
            let category: Category = row[1].parse()?;
            self.insert(LexiconEntry {
                surface: row[0].to_string(),
                category,
                canonical: row[2].to_string(),
            })?;
        }
        Ok(())
    }

    pub fn insert(&mut self, entry: LexiconEntry) -> Result<()> {
        if entry.surface.is_empty() {
            return Err(Error::Config("empty lexicon surface".into()));
        }
        if let Some(prev) = self
            .entries
            .iter()
            .find(|e| e.surface == entry.surface && e.category == entry.category)
        {
            if prev.canonical == entry.canonical {
                return Ok(());
            }
            return Err(Error::Config(format!(
                "surface `{}` listed twice under {} with different canonical ids",
                entry.surface, entry.category
            )));
        }
        let chars: Vec<char> = entry.surface.chars().collect();
        let compiled = Compiled {
            lower: chars.iter().map(|&c| lower_char(c)).collect(),
            chars,
            case_sensitive: entry.case_sensitive(),
        };
        let id = self.entries.len();
        let key = compiled.lower[0];
        self.entries.push(entry);
        self.compiled.push(compiled);
        let bucket = self.by_first.entry(key).or_default();
        bucket.push(id);
        let (entries, compiled) = (&self.entries, &self.compiled);
        bucket.sort_by(|&a, &b| {
            compiled[b]
                .chars
                .len()
                .cmp(&compiled[a].chars.len())
                .then(entries[a].category.cmp(&entries[b].category))
                .then(a.cmp(&b))
        });
        Ok(())
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact (case rules applied) lookup of a whole phrase.
    pub fn lookup(&self, phrase: &str) -> Option<&LexiconEntry> {
        let chars: Vec<char> = phrase.chars().collect();
        let first = lower_char(*chars.first()?);
        self.by_first.get(&first)?.iter().find_map(|&id| {
            let c = &self.compiled[id];
            (c.chars.len() == chars.len() && matches_at(c, &chars, 0)).then(|| &self.entries[id])
        })
    }

    /// Non-overlapping, left-to-right, longest-match-first scan of `text`.
    ///
    /// A stock-market hit directly followed by `:` and an uppercase symbol
    /// (`NYSE:VZ`) also yields a ticker-abbreviation hit for the symbol.
    pub fn find_all(&self, text: &str) -> Vec<LexMatch> {
        let indexed: Vec<(usize, char)> = text.char_indices().collect();
        let chars: Vec<char> = indexed.iter().map(|&(_, c)| c).collect();
        let byte_at = |i: usize| indexed.get(i).map_or(text.len(), |&(b, _)| b);
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if i > 0 && is_word_char(chars[i - 1]) && is_word_char(chars[i]) {
                i += 1;
                continue;
            }
            let Some((id, len)) = self.longest_at(&chars, i) else {
                i += 1;
                continue;
            };
            let entry = &self.entries[id];
            out.push(LexMatch {
                start: byte_at(i),
                end: byte_at(i + len),
                category: entry.category,
                canonical: entry.canonical.clone(),
            });
            i += len;
            if entry.category == Category::StockMarket {
                if let Some(sym_len) = exchange_symbol(&chars, i) {
                    out.push(LexMatch {
                        start: byte_at(i + 1),
                        end: byte_at(i + 1 + sym_len),
                        category: Category::TickerAbbrev,
                        canonical: chars[i + 1..i + 1 + sym_len].iter().collect(),
                    });
                    i += 1 + sym_len;
                }
            }
        }
        out
    }

    fn longest_at(&self, chars: &[char], i: usize) -> Option<(usize, usize)> {
        let bucket = self.by_first.get(&lower_char(chars[i]))?;
        bucket.iter().find_map(|&id| {
            let c = &self.compiled[id];
            let len = c.chars.len();
            if i + len > chars.len() || !matches_at(c, chars, i) {
                return None;
            }
            let right_ok = i + len == chars.len()
                || !(is_word_char(c.chars[len - 1]) && is_word_char(chars[i + len]));
            right_ok.then_some((id, len))
        })
    }
}

fn matches_at(c: &Compiled, chars: &[char], i: usize) -> bool {
    if c.case_sensitive {
        c.chars.iter().zip(&chars[i..]).all(|(a, b)| a == b)
    } else {
        c.lower.iter().zip(&chars[i..]).all(|(a, b)| *a == lower_char(*b))
    }
}

// `:SYM` right after an exchange name; returns the symbol length.
fn exchange_symbol(chars: &[char], i: usize) -> Option<usize> {
    if chars.get(i) != Some(&':') {
        return None;
    }
    let mut j = i + 1;
    while j < chars.len() && (chars[j].is_ascii_uppercase() || chars[j] == '.') && j - i <= 6 {
        j += 1;
    }
    let len = j - i - 1;
    let bounded = j == chars.len() || !is_word_char(chars[j]);
    (len >= 1 && bounded && chars[i + 1].is_ascii_uppercase()).then_some(len)
}

pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Lexicon> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Lexicon::parse_csv(&text)
}
