//! Dependency, proximity and numerical temporal features of a unit.

use serde::{Deserialize, Serialize};

use super::clauses::clause_split_with;
use super::verbs::{has_future_marker, majority, verb_groups, TenseTag, VerbGroup};
use crate::scalar::Real;
use crate::tagger::{find_numeric_dates, TagCategory, Token};

/// Counts are indexed by [`TenseTag::index`]: past, present, future.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalFeatures {
    pub dep_sub: [usize; 3],
    pub dep_sub_obj: [usize; 3],
    pub prox_sub: [usize; 3],
    pub prox_sub_obj: [usize; 3],
    pub num_count: usize,
    pub pct_count: usize,
}

fn global(c: [usize; 3]) -> TenseTag {
    majority(c[0], c[1], c[2])
}

impl TemporalFeatures {
    /// Length of [`TemporalFeatures::to_dense`].
    pub const DIM: usize = 26;

    pub fn global_dep_sub(&self) -> TenseTag {
        global(self.dep_sub)
    }

    pub fn global_dep_sub_obj(&self) -> TenseTag {
        global(self.dep_sub_obj)
    }

    pub fn global_prox_sub(&self) -> TenseTag {
        global(self.prox_sub)
    }

    pub fn global_prox_sub_obj(&self) -> TenseTag {
        global(self.prox_sub_obj)
    }

    pub fn names() -> Vec<String> {
        let mut out = Vec::with_capacity(Self::DIM);
        for group in ["DepSub", "DepSubObj", "ProxSub", "ProxSubObj"] {
            for t in ["Pst", "Prs", "Fut"] {
                out.push(format!("{t}{group}"));
            }
        }
        for group in ["DepSub", "DepSubObj", "ProxSub", "ProxSubObj"] {
            for t in ["Pst", "Prs", "Fut"] {
                out.push(format!("Global{group}={t}"));
            }
        }
        out.push("num_count".into());
        out.push("pct_count".into());
        out
    }

    /// 12 counts, 4 one-hot globals, then the two numeric counts.
    pub fn to_dense<F: Real>(&self) -> Vec<F> {
        let counts = [self.dep_sub, self.dep_sub_obj, self.prox_sub, self.prox_sub_obj];
        let mut out: Vec<F> = counts.iter().flatten().map(|&c| F::from_count(c)).collect();
        for c in counts {
            let g = global(c).index();
            out.extend((0..3).map(|i| if i == g { F::one() } else { F::zero() }));
        }
        out.push(F::from_count(self.num_count));
        out.push(F::from_count(self.pct_count));
        out
    }
}

/// STOCK, TICKER, TICKER_ABR or CURRENCY.
pub fn is_asset_tag(tag: Option<TagCategory>) -> bool {
    matches!(
        tag,
        Some(TagCategory::Stock | TagCategory::Ticker | TagCategory::TickerAbr | TagCategory::Currency)
    )
}

struct Analysed {
    groups: Vec<VerbGroup>,
    clauses: Vec<std::ops::Range<usize>>,
}

// Verb groups with the clause-level future upgrade applied.
fn analyse(tokens: &[Token]) -> Analysed {
    let mut groups = verb_groups(tokens);
    let clauses = clause_split_with(tokens, &groups);
    for c in &clauses {
        if has_future_marker(&tokens[c.clone()]) {
            for g in groups.iter_mut().filter(|g| c.contains(&g.range.start)) {
                if g.tense == TenseTag::Present {
                    g.tense = TenseTag::Future;
                }
            }
        }
    }
    Analysed { groups, clauses }
}

/// Per clause with an asset: the clause's first finite verb counts once, as
/// subject when an asset precedes it.
pub fn dependency_features(sentences: &[Vec<Token>]) -> ([usize; 3], [usize; 3]) {
    let mut sub = [0; 3];
    let mut sub_obj = [0; 3];
    for tokens in sentences {
        let a = analyse(tokens);
        for c in &a.clauses {
            let assets: Vec<usize> = c.clone().filter(|&i| is_asset_tag(tokens[i].tag)).collect();
            let Some(verb) = a.groups.iter().find(|g| c.contains(&g.range.start)) else {
                continue;
            };
            if assets.is_empty() {
                continue;
            }
            let t = verb.tense.index();
            sub_obj[t] += 1;
            if assets.iter().any(|&i| i < verb.range.start) {
                sub[t] += 1;
            }
        }
    }
    (sub, sub_obj)
}

fn is_word(t: &Token) -> bool {
    t.tag.is_some() || t.surface.chars().any(char::is_alphanumeric)
}

/// Per asset occurrence: the nearest finite verb by intervening words,
/// following verb on ties; subject when the asset precedes it.
pub fn proximity_features(sentences: &[Vec<Token>]) -> ([usize; 3], [usize; 3]) {
    let mut sub = [0; 3];
    let mut sub_obj = [0; 3];
    for tokens in sentences {
        let a = analyse(tokens);
        let between = |lo: usize, hi: usize| tokens[lo..hi].iter().filter(|t| is_word(t)).count();
        for (i, tok) in tokens.iter().enumerate() {
            if !is_asset_tag(tok.tag) {
                continue;
            }
            let nearest = a
                .groups
                .iter()
                .map(|g| {
                    let following = g.range.start > i;
                    let d = if following {
                        between(i + 1, g.range.start)
                    } else {
                        between(g.range.end, i)
                    };
                    (d, !following, g)
                })
                .min_by_key(|&(d, preceding, _)| (d, preceding));
            if let Some((_, preceding, g)) = nearest {
                let t = g.tense.index();
                sub_obj[t] += 1;
                if !preceding {
                    sub[t] += 1;
                }
            }
        }
    }
    (sub, sub_obj)
}

/// (numbers excluding percentages, percentages) in untagged text.
pub fn numerical_features(text: &str) -> (usize, usize) {
    let mut num = 0;
    let mut pct = 0;
    for (r, tag) in find_numeric_dates(text) {
        if tag != TagCategory::Num {
            continue;
        }
        let rest = text[r.end..].trim_start().to_lowercase();
        let is_pct = text[r.clone()].ends_with('%')
            || ["percent", "per cent", "pct"].iter().any(|p| {
                rest.starts_with(p) && !rest[p.len()..].starts_with(|c: char| c.is_alphanumeric())
            });
        if is_pct {
            pct += 1;
        } else {
            num += 1;
        }
    }
    (num, pct)
}

/// All temporal features of a unit: its tagged sentences plus the raw text.
pub fn temporal_features(sentences: &[Vec<Token>], raw: &str) -> TemporalFeatures {
    let (dep_sub, dep_sub_obj) = dependency_features(sentences);
    let (prox_sub, prox_sub_obj) = proximity_features(sentences);
    let (num_count, pct_count) = numerical_features(raw);
    TemporalFeatures {
        dep_sub,
        dep_sub_obj,
        prox_sub,
        prox_sub_obj,
        num_count,
        pct_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagger::tokenize_tagged;
    use proptest::prelude::*;

    fn sents(texts: &[&str]) -> Vec<Vec<Token>> {
        texts.iter().map(|t| tokenize_tagged(t)).collect()
    }

    const FUT: usize = 2;

    #[test]
    fn test_single_clause() {
        let s = sents(&["TICKER will rise"]);
        let (sub, subobj) = dependency_features(&s);
        assert_eq!(sub, [0, 0, 1]);
        assert_eq!(subobj, [0, 0, 1]);
        let f = temporal_features(&s, "Verizon will rise");
        assert_eq!(f.global_dep_sub(), TenseTag::Future);
        assert_eq!(temporal_features(&sents(&["Nothing rose here."]), ""), TemporalFeatures::default());
    }

    #[test]
    fn test_object_position() {
        let (sub, subobj) = dependency_features(&sents(&["Investors bought TICKER ."]));
        assert_eq!(sub, [0, 0, 0]);
        assert_eq!(subobj, [1, 0, 0]);
    }

    #[test]
    fn test_proximity_tie_prefers_following() {
        // one word either side of the asset
        let (_, subobj) = proximity_features(&sents(&["Analysts said yesterday TICKER now will rise"]));
        assert_eq!(subobj, [0, 0, 1]);
        let (sub, subobj) = proximity_features(&sents(&["no verbs TICKER here"]));
        assert_eq!((sub, subobj), ([0; 3], [0; 3]));
    }

    #[test]
    fn test_numerical_examples() {
        assert_eq!(numerical_features("down 5% from $23.6 billion"), (1, 1));
        assert_eq!(numerical_features("no numbers here"), (0, 0));
        assert_eq!(numerical_features("55% and 74.1 percent"), (0, 2));
    }

    #[test]
    fn test_dense_layout() {
        let f = TemporalFeatures {
            dep_sub: [2, 1, 2],
            num_count: 4,
            pct_count: 1,
            ..Default::default()
        };
        let d = f.to_dense::<f64>();
        assert_eq!(d.len(), TemporalFeatures::DIM);
        assert_eq!(TemporalFeatures::names().len(), TemporalFeatures::DIM);
        assert_eq!(&d[..3], &[2.0, 1.0, 2.0]);
        // GlobalDepSub one-hot is Future
        assert_eq!(&d[12..15], &[0.0, 0.0, 1.0]);
        // all-zero groups default to Present
        assert_eq!(&d[15..18], &[0.0, 1.0, 0.0]);
        assert_eq!(&d[24..], &[4.0, 1.0]);
    }

    #[test]
    fn test_table_fixture() {
        let s = sents(&[
            "TICKER (STOCK:TICKER_ABR) is proving to be a stable but undervalued company in the market today.",
            "TICKER trades for a paltry 12.3 times this year’s expected earnings and just 12 times next year.",
        ]);
        assert_eq!(dependency_features(&s).1[FUT], 1);
        assert_eq!(proximity_features(&s).1[FUT], 1);
    }

    fn clause() -> impl Strategy<Value = String> {
        (
            prop::sample::select(vec!["TICKER", "CURRENCY", "STOCK", "TICKER_ABR"]),
            prop::sample::select(vec!["rose", "rises", "will rise", "fell", "is falling", "was rising"]),
            any::<bool>(),
        )
            .prop_map(|(a, v, subject)| if subject { format!("{a} {v}") } else { format!("investors {v} {a}") })
    }

    proptest! {
        #[test]
        fn prop_dependency_matches_proximity(clauses in prop::collection::vec(clause(), 1..6)) {
            // one asset adjacent to the only verb of each sentence
            let s: Vec<Vec<Token>> = clauses.iter().map(|c| tokenize_tagged(&format!("{c}."))).collect();
            prop_assert_eq!(dependency_features(&s), proximity_features(&s));
        }

        #[test]
        fn prop_globals_are_majorities(a in prop::array::uniform3(0usize..4), b in prop::array::uniform3(0usize..4)) {
            let f = TemporalFeatures { dep_sub: a, prox_sub_obj: b, ..Default::default() };
            prop_assert_eq!(f.global_dep_sub(), majority(a[0], a[1], a[2]));
            prop_assert_eq!(f.global_prox_sub_obj(), majority(b[0], b[1], b[2]));
        }
    }
}
