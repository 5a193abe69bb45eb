//! Capitalised proper-name lookup against the lexicon and name gazetteers.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;

use super::{rewrite, Piece, TagCategory};
use crate::corpus::Lexicon;
use crate::error::{Error, Result};

/// Exact-match name lists keyed by surface form.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    names: HashMap<String, TagCategory>,
    max_words: usize,
}

impl Gazetteer {
    pub fn insert(&mut self, name: &str, category: TagCategory) {
        let name = name.split_whitespace().collect::<Vec<_>>().join(" ");
        if name.is_empty() {
            return;
        }
        self.max_words = self.max_words.max(name.split(' ').count());
        self.names.entry(name).or_insert(category);
    }

    pub fn get(&self, name: &str) -> Option<TagCategory> {
        self.names.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Category for a gazetteer file stem such as `names_gpe`.
    pub fn category_for_file(stem: &str) -> Option<TagCategory> {
        let cat = stem.strip_prefix("names_")?;
        Some(match cat {
            "person" => TagCategory::Person,
            "norp" => TagCategory::Norp,
            "org" => TagCategory::Org,
            "product" => TagCategory::Product,
            "event" => TagCategory::Event,
            "work_of_art" => TagCategory::WorkOfArt,
            "money" => TagCategory::Money,
            "loc" | "fac" | "gpe" => TagCategory::Loc,
            _ => return None,
        })
    }

    /// One name per line, first CSV column; `#` comments and a `name` header are skipped.
    pub fn extend_csv(&mut self, text: &str, category: TagCategory) -> Result<()> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        for record in reader.records() {
            let record = record.map_err(|e| Error::Parse {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let Some(name) = record.get(0).map(str::trim) else {
                continue;
            };
            if name.eq_ignore_ascii_case("name") {
                continue;
            }
            self.insert(name, category);
        }
        Ok(())
    }
}

/// Loads every `names_<category>.csv` in `dir`. Unknown categories are an error.
pub fn load_gazetteers(dir: impl AsRef<Path>) -> Result<Gazetteer> {
    let dir = dir.as_ref();
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    files.sort();
    let mut g = Gazetteer::default();
    for path in files {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
        let category = Gazetteer::category_for_file(stem)
            .ok_or_else(|| Error::UnknownCategory(stem.to_string()))?;
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        g.extend_csv(&text, category)?;
    }
    Ok(g)
}

fn cap_word_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"\b\p{Lu}[\p{L}\p{N}&]*(?:['’.\-][\p{L}\p{N}&]+)*").unwrap()
    })
}

fn name_matches(
    text: &str,
    lexicon: &Lexicon,
    gazetteer: &Gazetteer,
) -> Vec<(std::ops::Range<usize>, TagCategory)> {
    // group capitalised words separated only by single spaces
    let mut groups: Vec<Vec<(usize, usize)>> = Vec::new();
    for m in cap_word_re().find_iter(text) {
        match groups.last_mut() {
            Some(g) if &text[g.last().unwrap().1..m.start()] == " " => g.push((m.start(), m.end())),
            _ => groups.push(vec![(m.start(), m.end())]),
        }
    }
    let max_words = gazetteer.max_words.max(6);
    let mut out = Vec::new();
    for words in groups {
        let mut i = 0;
        while i < words.len() {
            let longest = (1..=max_words.min(words.len() - i)).rev().find_map(|len| {
                let range = words[i].0..words[i + len - 1].1;
                let phrase = &text[range.clone()];
                lexicon
                    .lookup(phrase)
                    .map(|e| TagCategory::from(e.category))
                    .or_else(|| gazetteer.get(phrase))
                    .map(|tag| (range, tag, len))
            });
            match longest {
                Some((range, tag, len)) => {
                    out.push((range, tag));
                    i += len;
                }
                None => i += 1,
            }
        }
    }
    out
}

pub(crate) fn name_pieces(pieces: Vec<Piece>, lexicon: &Lexicon, gazetteer: &Gazetteer) -> Vec<Piece> {
    rewrite(pieces, |t| name_matches(t, lexicon, gazetteer))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_file_categories() {
        assert_eq!(Gazetteer::category_for_file("names_gpe"), Some(TagCategory::Loc));
        assert_eq!(Gazetteer::category_for_file("names_fac"), Some(TagCategory::Loc));
        assert_eq!(Gazetteer::category_for_file("names_person"), Some(TagCategory::Person));
        assert_eq!(Gazetteer::category_for_file("people"), None);
    }

    #[test]
    fn test_load_dir() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("names_gpe.csv"), "name\nNew York\n# skip\nTexas\n").unwrap();
        fs::write(dir.path().join("names_person.csv"), "Warren Buffett\n").unwrap();
        let g = load_gazetteers(dir.path()).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.get("Texas"), Some(TagCategory::Loc));
        assert_eq!(g.get("name"), None);

        fs::write(dir.path().join("names_alien.csv"), "Zork\n").unwrap();
        assert!(matches!(load_gazetteers(dir.path()), Err(Error::UnknownCategory(_))));
    }

    #[test]
    fn test_lexicon_before_gazetteer() {
        let lex = Lexicon::parse_csv("Apple,Ticker,AAPL\n").unwrap();
        let mut g = Gazetteer::default();
        g.insert("Apple", TagCategory::Org);
        g.insert("Tim Cook", TagCategory::Person);
        let got = name_matches("Apple CEO Tim Cook spoke", &lex, &g);
        let got: Vec<_> = got.into_iter().map(|(r, t)| (r.start, t)).collect();
        assert_eq!(got, vec![(0, TagCategory::Ticker), (10, TagCategory::Person)]);
    }
}
