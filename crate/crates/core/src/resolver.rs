//! Nearest-antecedent co-reference resolution.
//!
//! Pronouns and alias noun phrases ("the company") are replaced by the
//! closest preceding asset mention in the same segment. Organization-only
//! references ("they", "the firm") are left alone when the closest asset is
//! not a company.

use serde::{Deserialize, Serialize};

use crate::corpus::{lexicon::is_word_char, Category, Lexicon};
use crate::error::{Error, Result};
use crate::text::CharMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    /// Text as written, extended with a trailing "stock" head noun when present.
    pub surface: String,
    pub canonical: String,
    /// Char offset of the mention start.
    pub position: usize,
    /// Char offset one past the surface end.
    pub end: usize,
    pub category: Category,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentionTable {
    pub mentions: Vec<Mention>,
}

impl MentionTable {
    pub fn is_empty(&self) -> bool {
        self.mentions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.mentions.len()
    }

    /// The mention with the greatest position below `pos` accepted by `eligible`.
    pub fn nearest_before(&self, pos: usize, eligible: impl Fn(&Mention) -> bool) -> Option<&Mention> {
        self.mentions
            .iter()
            .take_while(|m| m.position < pos)
            .filter(|m| eligible(m))
            .last()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ResolverConfig {
    pub pronouns: Vec<String>,
    pub alias_nouns: Vec<String>,
}

impl Default for ResolverConfig {
    fn default() -> Self {
        ResolverConfig {
            pronouns: ["it", "its", "they", "their", "them"].map(String::from).to_vec(),
            alias_nouns: [
                "the company",
                "the firm",
                "the stock",
                "the shares",
                "the enterprise",
                "the manufacturer",
            ]
            .map(String::from)
            .to_vec(),
        }
    }
}

impl ResolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pronouns.is_empty() || self.alias_nouns.is_empty() {
            return Err(Error::Config("resolver pronoun and alias sets must be non-empty".into()));
        }
        Ok(())
    }
}

const HEAD_NOUN: &str = " stock";

/// Scans `text` for lexicon mentions, longest match first.
pub fn detect_mentions(text: &str, lexicon: &Lexicon) -> MentionTable {
    let map = CharMap::new(text);
    let mentions = lexicon
        .find_all(text)
        .into_iter()
        .map(|m| {
            let mut end_byte = m.end;
            if m.category.is_organization() {
                let rest = &text[m.end..];
                let follows = rest.len() >= HEAD_NOUN.len()
                    && rest[..HEAD_NOUN.len()].eq_ignore_ascii_case(HEAD_NOUN)
                    && !rest[HEAD_NOUN.len()..].starts_with(is_word_char);
                if follows {
                    end_byte += HEAD_NOUN.len();
                }
            }
            Mention {
                surface: text[m.start..end_byte].to_string(),
                canonical: m.canonical,
                position: map.to_char(m.start),
                end: map.to_char(m.end),
                category: m.category,
            }
        })
        .collect();
    MentionTable { mentions }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RefKind {
    // it / its: any asset antecedent
    Neuter,
    // they / their / them / the company: organizations only
    Organization,
}

struct Reference {
    start: usize,
    end: usize,
    kind: RefKind,
}

fn find_references(chars: &[char], config: &ResolverConfig) -> Vec<Reference> {
    let mut patterns: Vec<(Vec<char>, RefKind)> = config
        .alias_nouns
        .iter()
        .map(|a| (a.to_lowercase().chars().collect(), RefKind::Organization))
        .chain(config.pronouns.iter().map(|p| {
            let p = p.to_lowercase();
            let kind = if p == "it" || p == "its" {
                RefKind::Neuter
            } else {
                RefKind::Organization
            };
            (p.chars().collect(), kind)
        }))
        .collect();
    patterns.sort_by_key(|(p, _)| std::cmp::Reverse(p.len()));

    let lower: Vec<char> = chars
        .iter()
        .map(|c| c.to_lowercase().next().unwrap_or(*c))
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < lower.len() {
        if i > 0 && is_word_char(lower[i - 1]) {
            i += 1;
            continue;
        }
        let hit = patterns.iter().find(|(p, _)| {
            let end = i + p.len();
            end <= lower.len()
                && lower[i..end] == p[..]
                && (end == lower.len() || !is_word_char(lower[end]))
        });
        match hit {
            Some((p, kind)) => {
                out.push(Reference {
                    start: i,
                    end: i + p.len(),
                    kind: *kind,
                });
                i += p.len();
            }
            None => i += 1,
        }
    }
    out
}

/// Replaces every reference that has an eligible antecedent earlier in `text`
/// with that antecedent's surface. Possessive "its X" becomes "<antecedent> X".
pub fn resolve(text: &str, mentions: &MentionTable, config: &ResolverConfig) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for r in find_references(&chars, config) {
        let Some(nearest) = mentions.nearest_before(r.start, |m| m.category.is_asset()) else {
            continue;
        };
        if r.kind == RefKind::Organization && !nearest.category.is_organization() {
            continue;
        }
        out.extend(&chars[cursor..r.start]);
        out.push_str(&nearest.surface);
        cursor = r.end;
    }
    out.extend(&chars[cursor..]);
    out
}

/// Resolves the sentences of one segment together so antecedents carry
/// across sentence boundaries, returning one resolved string per sentence.
pub fn resolve_sentences<S: AsRef<str>>(
    sentences: &[S],
    lexicon: &Lexicon,
    config: &ResolverConfig,
) -> Vec<String> {
    // sentence text never contains '\n' after normalization
    let joined = sentences
        .iter()
        .map(|s| s.as_ref())
        .collect::<Vec<_>>()
        .join("\n");
    let mentions = detect_mentions(&joined, lexicon);
    let resolved = resolve(&joined, &mentions, config);
    let parts: Vec<String> = resolved.split('\n').map(str::to_string).collect();
    debug_assert_eq!(parts.len(), sentences.len().max(1));
    if sentences.is_empty() {
        Vec::new()
    } else {
        parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lexicon() -> Lexicon {
        Lexicon::parse_csv(
            "NYSE,StockMarket,NYSE\n\
             Verizon Communications,Ticker,VZ\n\
             Verizon,Ticker,VZ\n\
             VZ,TickerAbbrev,VZ\n\
             P/E,FinAbbrev,PE\n\
             euro,Currency,EUR\n",
        )
        .unwrap()
    }

    fn run(text: &str) -> String {
        let m = detect_mentions(text, &lexicon());
        resolve(text, &m, &ResolverConfig::default())
    }

    #[test]
    fn test_detect_verizon_header() {
        let t = detect_mentions("Verizon Communications (NYSE:VZ) is proving", &lexicon());
        let got: Vec<(&str, Category)> = t
            .mentions
            .iter()
            .map(|m| (m.surface.as_str(), m.category))
            .collect();
        assert_eq!(
            got,
            vec![
                ("Verizon Communications", Category::Ticker),
                ("NYSE", Category::StockMarket),
                ("VZ", Category::TickerAbbrev),
            ]
        );
        assert_eq!(t.mentions[1].position, 24);
        assert!(detect_mentions("no hits here", &lexicon()).is_empty());
        assert!(detect_mentions("VZVZ", &lexicon()).is_empty());
    }

    #[test]
    fn test_possessive_its() {
        let before = "In fact, VZ stock is worth at least 55% more than its price today using an analysis of its dividend yield, its own P/E ratio history, and a comparison with its peers.";
        let after = "In fact, VZ stock is worth at least 55% more than VZ stock price today using an analysis of VZ stock dividend yield, VZ stock own P/E ratio history, and a comparison with VZ stock peers.";
        assert_eq!(run(before), after);
    }

    #[test]
    fn test_alias_noun() {
        assert_eq!(
            run("Verizon beat estimates. The company reported earnings"),
            "Verizon beat estimates. Verizon reported earnings"
        );
    }

    #[test]
    fn test_no_antecedent_unchanged() {
        let s = "It rallied and they cheered. The company grew.";
        assert_eq!(run(s), s);
    }

    #[test]
    fn test_they_requires_organization() {
        // nearest asset is a currency: "it" resolves, "they" does not
        assert_eq!(
            run("Verizon held euro deposits. It fell and they sold."),
            "Verizon held euro deposits. euro fell and they sold."
        );
    }

    #[test]
    fn test_sentences_carry_antecedent() {
        let out = resolve_sentences(
            &["Verizon said so.", "Its earnings rose."],
            &lexicon(),
            &ResolverConfig::default(),
        );
        assert_eq!(out, vec!["Verizon said so.", "Verizon earnings rose."]);
    }

    #[test]
    fn test_idempotent_on_example() {
        let once = run("VZ stock fell. Its price and their plans. The firm grew.");
        assert_eq!(run(&once), once);
    }

    fn word() -> impl Strategy<Value = &'static str> {
        prop::sample::select(vec![
            "Verizon", "VZ", "NYSE", "euro", "P/E", "it", "its", "they", "their", "them",
            "the company", "the stock", "rose", "fell", "price", "and", "stock", "shares",
        ])
    }

    proptest! {
        #[test]
        fn prop_resolution_idempotent(words in prop::collection::vec(word(), 0..25)) {
            let text = words.join(" ");
            let once = run(&text);
            prop_assert_eq!(run(&once), once);
        }

        #[test]
        fn prop_non_reference_tokens_kept(words in prop::collection::vec(word(), 0..25)) {
            let text = words.join(" ");
            let out = run(&text);
            let kept = |s: &str| {
                s.split_whitespace()
                    .filter(|w| !matches!(*w, "it" | "its" | "they" | "their" | "them" | "the" | "company"
                        | "Verizon" | "VZ" | "euro" | "stock"))
                    .map(str::to_string)
                    .collect::<Vec<_>>()
            };
            prop_assert_eq!(kept(&text), kept(&out));
        }

        #[test]
        fn prop_nearest_antecedent(words in prop::collection::vec(word(), 1..25)) {
            let text = words.join(" ");
            let mentions = detect_mentions(&text, &lexicon());
            let chars: Vec<char> = text.chars().collect();
            for r in find_references(&chars, &ResolverConfig::default()) {
                let want = mentions.mentions.iter().filter(|m| m.position < r.start && m.category.is_asset()).max_by_key(|m| m.position);
                let got = mentions.nearest_before(r.start, |m| m.category.is_asset());
                prop_assert_eq!(got, want);
            }
        }
    }
}
