//! Rule-based verb-group detection and tense estimation.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tagger::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TenseTag {
    Past,
    Present,
    Future,
}

impl TenseTag {
    pub const ALL: [TenseTag; 3] = [TenseTag::Past, TenseTag::Present, TenseTag::Future];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<TenseTag> {
        TenseTag::ALL.get(i).copied()
    }
}

impl fmt::Display for TenseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TenseTag::Past => "past",
            TenseTag::Present => "present",
            TenseTag::Future => "future",
        })
    }
}

impl FromStr for TenseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "past" | "pst" => Ok(TenseTag::Past),
            "present" | "prs" => Ok(TenseTag::Present),
            "future" | "fut" => Ok(TenseTag::Future),
            _ => Err(Error::Config(format!("unknown tense `{s}`"))),
        }
    }
}

/// Majority over (past, present, future) counts. Any tie at the maximum goes
/// to Future; all zeros is Present.
pub fn majority(pst: usize, prs: usize, fut: usize) -> TenseTag {
    let max = pst.max(prs).max(fut);
    if max == 0 {
        return TenseTag::Present;
    }
    let at_max = [pst, prs, fut].iter().filter(|&&c| c == max).count();
    if fut == max || at_max > 1 {
        TenseTag::Future
    } else if pst == max {
        TenseTag::Past
    } else {
        TenseTag::Present
    }
}

const BASE_VERBS: &[&str] = &[
    "add", "adjust", "announce", "anticipate", "appear", "beat", "become", "begin", "believe",
    "boost", "bounce", "buy", "climb", "close", "come", "consider", "continue", "cut", "decline",
    "decrease", "deliver", "dip", "double", "drop", "earn", "end", "estimate", "exceed", "expand",
    "expect", "face", "fall", "finish", "fluctuate", "forecast", "gain", "generate", "get", "give",
    "go", "grow", "hit", "hold", "hover", "improve", "increase", "jump", "keep", "lead", "lift",
    "look", "lose", "make", "miss", "move", "offer", "open", "outperform", "pay", "plan", "plunge",
    "point", "post", "predict", "project", "prove", "provide", "pull", "push", "raise", "rally",
    "reach", "rebound", "recover", "reduce", "remain", "report", "represent", "rise", "say", "see",
    "seem", "sell", "settle", "show", "shrink", "sink", "slide", "slip", "slump", "soar", "spike",
    "stay", "surge", "take", "tell", "think", "top", "trade", "tumble", "underperform", "warn",
    "weaken", "strengthen", "worsen", "yield", "decide", "need", "want", "target",
    "approve", "acquire", "agree", "complete", "downgrade", "invest", "issue", "launch", "lower",
    "recommend", "release", "sign", "suffer", "trim", "upgrade",
];

const IRREGULAR: &[(&str, &str, &str)] = &[
    // base, past, participle
    ("become", "became", "become"),
    ("begin", "began", "begun"),
    ("buy", "bought", "bought"),
    ("come", "came", "come"),
    ("fall", "fell", "fallen"),
    ("get", "got", "gotten"),
    ("give", "gave", "given"),
    ("go", "went", "gone"),
    ("grow", "grew", "grown"),
    ("hold", "held", "held"),
    ("keep", "kept", "kept"),
    ("lead", "led", "led"),
    ("lose", "lost", "lost"),
    ("make", "made", "made"),
    ("pay", "paid", "paid"),
    ("rise", "rose", "risen"),
    ("say", "said", "said"),
    ("see", "saw", "seen"),
    ("sell", "sold", "sold"),
    ("shrink", "shrank", "shrunk"),
    ("sink", "sank", "sunk"),
    ("slide", "slid", "slid"),
    ("take", "took", "taken"),
    ("tell", "told", "told"),
    ("think", "thought", "thought"),
];

const ADVERBS: &[&str] = &[
    "not", "also", "still", "just", "already", "likely", "probably", "never", "only", "even",
    "really", "currently", "now", "further", "again", "possibly", "certainly", "reportedly",
];

const NOUN_CONTEXT: &[&str] = &[
    "a", "an", "the", "its", "their", "his", "her", "our", "your", "my", "of", "per", "every",
    "each", "no", "any", "some",
];

const SUBJECT_PRONOUNS: &[&str] = &["i", "we", "you", "they", "who", "which", "that"];

/// Phrases that place a present-tense clause in the future.
pub const FUTURE_MARKERS: &[&str] = &[
    "next year", "next quarter", "next month", "next week", "next decade", "next fiscal year",
    "tomorrow", "coming year", "coming years", "coming months", "coming quarters", "coming weeks",
    "in the future", "later this year", "later this month", "later this quarter",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Form {
    ModalFuture,
    Modal,
    AuxPresent,
    AuxPast,
    Be,
    Past,
    Participle,
    Gerund,
    ThirdPerson,
    Base,
}

impl Form {
    fn is_auxiliary(self) -> bool {
        matches!(self, Form::ModalFuture | Form::Modal | Form::AuxPresent | Form::AuxPast)
    }
}

struct VerbLexicon {
    base: HashMap<&'static str, ()>,
    past: HashMap<&'static str, &'static str>,
    participle: HashMap<&'static str, &'static str>,
}

fn verbs() -> &'static VerbLexicon {
    static LEX: OnceLock<VerbLexicon> = OnceLock::new();
    LEX.get_or_init(|| VerbLexicon {
        base: BASE_VERBS.iter().map(|&v| (v, ())).collect(),
        past: IRREGULAR.iter().map(|&(b, p, _)| (p, b)).collect(),
        participle: IRREGULAR.iter().map(|&(b, _, pp)| (pp, b)).collect(),
    })
}

fn is_base(word: &str) -> bool {
    verbs().base.contains_key(word)
}

fn strip_ed(w: &str) -> Option<String> {
    let stem = w.strip_suffix("ed")?;
    let candidates = [
        stem.to_string(),
        format!("{stem}e"),
        stem.strip_suffix('i').map(|s| format!("{s}y")).unwrap_or_default(),
        {
            let b = stem.as_bytes();
            if b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] {
                stem[..stem.len() - 1].to_string()
            } else {
                String::new()
            }
        },
    ];
    candidates.into_iter().find(|c| !c.is_empty() && is_base(c))
}

fn strip_ing(w: &str) -> bool {
    let Some(stem) = w.strip_suffix("ing") else {
        return false;
    };
    let b = stem.as_bytes();
    is_base(stem)
        || is_base(&format!("{stem}e"))
        || (b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] && is_base(&stem[..stem.len() - 1]))
}

fn strip_s(w: &str) -> bool {
    w.strip_suffix("es").is_some_and(is_base)
        || w.strip_suffix("ies").is_some_and(|s| is_base(&format!("{s}y")))
        || w.strip_suffix('s').is_some_and(is_base)
}

/// Lowercased word with typographic apostrophes folded.
pub(crate) fn norm(word: &str) -> String {
    word.to_lowercase().replace('’', "'")
}

/// Form of a single word, ignoring context.
pub(crate) fn word_form(w: &str) -> Option<Form> {
    if w.ends_with("'ll") {
        return Some(Form::ModalFuture);
    }
    if let Some(stem) = w.strip_suffix("n't") {
        return match stem {
            "wo" | "sha" => Some(Form::ModalFuture),
            "ca" | "can" | "could" | "should" | "would" | "might" | "must" => Some(Form::Modal),
            other => word_form(other),
        };
    }
    if w.ends_with("'re") || w.ends_with("'ve") {
        return Some(Form::AuxPresent);
    }
    if w.ends_with("'d") {
        return Some(Form::Modal);
    }
    if let Some(stem) = w.strip_suffix("'s") {
        return matches!(stem, "it" | "he" | "she" | "that" | "there" | "what")
            .then_some(Form::AuxPresent);
    }
    let lex = verbs();
    Some(match w {
        "will" | "shall" => Form::ModalFuture,
        "can" | "could" | "may" | "might" | "must" | "should" | "would" => Form::Modal,
        "is" | "are" | "am" | "has" | "have" | "do" | "does" => Form::AuxPresent,
        "was" | "were" | "had" | "did" => Form::AuxPast,
        "be" | "been" | "being" => Form::Be,
        _ if lex.past.contains_key(w) => Form::Past,
        _ if lex.participle.contains_key(w) => Form::Participle,
        _ if is_base(w) => Form::Base,
        _ if w.ends_with("ed") && strip_ed(w).is_some() => Form::Past,
        _ if w.ends_with("ing") && (strip_ing(w) || w == "going") => Form::Gerund,
        _ if w.ends_with('s') && strip_s(w) => Form::ThirdPerson,
        _ => return None,
    })
}

fn noun_context(prev: Option<&str>) -> bool {
    prev.is_some_and(|p| NOUN_CONTEXT.contains(&p) || p.ends_with("'s"))
}

/// A finite verb group: token range into the sentence plus its tense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbGroup {
    pub range: Range<usize>,
    pub words: Vec<String>,
    pub tense: TenseTag,
}

/// Tense of one verb group given as lowercased words.
pub fn detect_tense<S: AsRef<str>>(group: &[S]) -> TenseTag {
    let words: Vec<String> = group.iter().map(|w| norm(w.as_ref())).collect();
    let forms: Vec<Option<Form>> = words.iter().map(|w| word_form(w)).collect();
    if forms.contains(&Some(Form::ModalFuture)) {
        return TenseTag::Future;
    }
    let going_to = words
        .windows(3)
        .any(|w| w[0] == "going" && w[1] == "to" && matches!(word_form(&w[2]), Some(Form::Base | Form::Be)));
    if going_to {
        return TenseTag::Future;
    }
    if forms.contains(&Some(Form::AuxPast)) {
        return TenseTag::Past;
    }
    // with an auxiliary present the auxiliary carries the tense
    if forms.iter().any(|f| f.is_some_and(Form::is_auxiliary)) {
        return TenseTag::Present;
    }
    let head = words.iter().rposition(|w| w != "to" && !ADVERBS.contains(&w.as_str()));
    match head.map(|h| (&words[h], forms[h])) {
        Some((_, Some(Form::Past))) => TenseTag::Past,
        Some((w, _)) if w.ends_with("ed") => TenseTag::Past,
        _ => TenseTag::Present,
    }
}

/// Finds finite verb groups in a tagged sentence. Tagged tokens are nouns.
pub fn verb_groups(tokens: &[Token]) -> Vec<VerbGroup> {
    let words: Vec<String> = tokens.iter().map(|t| norm(&t.surface)).collect();
    let form_at = |i: usize| -> Option<Form> {
        if tokens[i].tag.is_some() {
            None
        } else {
            word_form(&words[i])
        }
    };
    let mut groups = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let prev = i.checked_sub(1).map(|p| words[p].as_str());
        let prev_is_tag = i > 0 && tokens[i - 1].tag.is_some();
        let starts = match form_at(i) {
            Some(f) if f.is_auxiliary() => true,
            Some(Form::Past | Form::ThirdPerson) => !noun_context(prev),
            Some(Form::Base) => {
                !noun_context(prev)
                    && (prev_is_tag
                        || prev.is_some_and(|p| {
                            SUBJECT_PRONOUNS.contains(&p)
                                || (p.ends_with('s') && p.len() > 3 && word_form(p).is_none())
                        }))
            }
            _ => false,
        };
        if !starts {
            i += 1;
            continue;
        }
        let start = i;
        let mut end = i + 1;
        let mut open = form_at(i).is_some_and(Form::is_auxiliary);
        while open && end < tokens.len() {
            let w = words[end].as_str();
            let f = form_at(end);
            let after_going = words[end - 1] == "going";
            if (ADVERBS.contains(&w) && tokens[end].tag.is_none()) || (w == "to" && after_going) {
                end += 1;
            } else if let Some(f) = f {
                end += 1;
                open = matches!(f, Form::Be | Form::AuxPresent | Form::AuxPast | Form::Modal | Form::ModalFuture)
                    || words[end - 1] == "going";
            } else {
                break;
            }
        }
        // drop trailing adverbs and dangling "to"
        while end > start + 1 && (ADVERBS.contains(&words[end - 1].as_str()) || words[end - 1] == "to") {
            end -= 1;
        }
        let group_words = words[start..end].to_vec();
        let tense = detect_tense(&group_words);
        groups.push(VerbGroup {
            range: start..end,
            words: group_words,
            tense,
        });
        i = end;
    }
    groups
}

/// True when the token span contains a future time marker.
pub fn has_future_marker(tokens: &[Token]) -> bool {
    let text = tokens
        .iter()
        .map(|t| norm(&t.surface))
        .collect::<Vec<_>>()
        .join(" ");
    let padded = format!(" {text} ");
    FUTURE_MARKERS.iter().any(|m| padded.contains(&format!(" {m} ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagger::tokenize_tagged;
    use proptest::prelude::*;

    fn groups(s: &str) -> Vec<(String, TenseTag)> {
        verb_groups(&tokenize_tagged(s))
            .into_iter()
            .map(|g| (g.words.join(" "), g.tense))
            .collect()
    }

    #[test]
    fn test_detect_tense_examples() {
        assert_eq!(detect_tense(&["will", "rise"]), TenseTag::Future);
        assert_eq!(detect_tense(&["reported"]), TenseTag::Past);
        assert_eq!(detect_tense(&["is", "proving"]), TenseTag::Present);
        assert_eq!(detect_tense(&["is", "going", "to", "rise"]), TenseTag::Future);
        assert_eq!(detect_tense(&["’ll", "see"]), TenseTag::Future);
        assert_eq!(detect_tense(&["won't", "rise"]), TenseTag::Future);
        assert_eq!(detect_tense(&["had", "been", "rising"]), TenseTag::Past);
        assert_eq!(detect_tense(&["fell"]), TenseTag::Past);
        assert_eq!(detect_tense(&["has", "risen"]), TenseTag::Present);
        assert_eq!(detect_tense(&["trades"]), TenseTag::Present);
        assert_eq!(detect_tense(&["is", "expected"]), TenseTag::Present);
        assert_eq!(detect_tense(&["were", "expected"]), TenseTag::Past);
    }

    #[test]
    fn test_majority_examples() {
        assert_eq!(majority(2, 1, 2), TenseTag::Future);
        assert_eq!(majority(3, 1, 0), TenseTag::Past);
        assert_eq!(majority(0, 0, 0), TenseTag::Present);
        assert_eq!(majority(2, 2, 0), TenseTag::Future);
        assert_eq!(majority(0, 4, 1), TenseTag::Present);
    }

    #[test]
    fn test_groups_in_sentences() {
        assert_eq!(
            groups("TICKER (STOCK:TICKER_ABR) is proving to be a stable but undervalued company."),
            vec![("is proving".to_string(), TenseTag::Present)]
        );
        assert_eq!(
            groups("TICKER reported “boring” earnings, according to Barron’s magazine."),
            vec![("reported".to_string(), TenseTag::Past)]
        );
        assert_eq!(
            groups("TICKER trades for a paltry NUM times this year’s expected earnings."),
            vec![("trades".to_string(), TenseTag::Present)]
        );
        assert_eq!(
            groups("Shares will not rise and analysts expect a drop."),
            vec![
                ("will not rise".to_string(), TenseTag::Future),
                ("expect".to_string(), TenseTag::Present)
            ]
        );
        assert_eq!(groups("This represents a huge increase."), vec![("represents".to_string(), TenseTag::Present)]);
        assert!(groups("A stable market with no verbs.").is_empty());
    }

    #[test]
    fn test_future_marker() {
        assert!(has_future_marker(&tokenize_tagged("just NUM times next year.")));
        assert!(!has_future_marker(&tokenize_tagged("this year’s earnings")));
    }

    proptest! {
        #[test]
        fn prop_majority_tie_rule(p in 0usize..5, r in 0usize..5, f in 0usize..5) {
            let counts = [p, r, f];
            let max = p.max(r).max(f);
            let at_max: Vec<usize> = (0..3).filter(|&i| counts[i] == max).collect();
            let want = if max == 0 {
                TenseTag::Present
            } else if at_max.len() == 1 {
                TenseTag::from_index(at_max[0]).unwrap()
            } else {
                TenseTag::Future
            };
            prop_assert_eq!(majority(p, r, f), want);
        }
    }
}
