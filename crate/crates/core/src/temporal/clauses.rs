//! Heuristic clause splitting over tagged tokens.

use std::ops::Range;

use super::verbs::{norm, verb_groups, word_form, VerbGroup};
use crate::tagger::Token;

const SUBORDINATORS: &[&str] = &[
    "that", "which", "who", "because", "although", "though", "while", "whereas", "if", "when",
    "since", "unless",
];
const COORDINATORS: &[&str] = &["but", "and", "or", "yet"];

/// Splits a sentence into clause token ranges.
///
/// Fragments start after `, ; :` and at subordinating or coordinating
/// conjunctions ("and"/"or" only when a new subject follows). Fragments
/// without a finite verb are merged into their neighbour.
pub fn clause_split(tokens: &[Token]) -> Vec<Range<usize>> {
    clause_split_with(tokens, &verb_groups(tokens))
}

pub(crate) fn clause_split_with(tokens: &[Token], groups: &[VerbGroup]) -> Vec<Range<usize>> {
    if tokens.is_empty() {
        return Vec::new();
    }
    let mut cuts = vec![0];
    for (i, t) in tokens.iter().enumerate() {
        if t.tag.is_some() {
            continue;
        }
        let w = norm(&t.surface);
        if matches!(w.as_str(), "," | ";" | ":") {
            cuts.push(i + 1);
        } else if SUBORDINATORS.contains(&w.as_str()) || w == "but" || w == "yet" {
            cuts.push(i);
        } else if COORDINATORS.contains(&w.as_str()) {
            let next_is_verb = tokens
                .get(i + 1)
                .is_some_and(|n| n.tag.is_none() && word_form(&norm(&n.surface)).is_some());
            if !next_is_verb {
                cuts.push(i);
            }
        }
    }
    cuts.push(tokens.len());
    cuts.dedup();

    let has_verb = |r: &Range<usize>| groups.iter().any(|g| r.contains(&g.range.start));
    let mut clauses: Vec<Range<usize>> = Vec::new();
    let mut pending: Option<usize> = None;
    for w in cuts.windows(2) {
        let frag = w[0]..w[1];
        if frag.is_empty() {
            continue;
        }
        let start = pending.take().unwrap_or(frag.start);
        let frag = start..frag.end;
        if has_verb(&frag) {
            clauses.push(frag);
        } else if let Some(last) = clauses.last_mut() {
            last.end = frag.end;
        } else {
            pending = Some(frag.start);
        }
    }
    if let Some(start) = pending {
        match clauses.last_mut() {
            Some(last) => last.end = tokens.len(),
            None => clauses.push(start..tokens.len()),
        }
    }
    clauses
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagger::tokenize_tagged;
    use proptest::prelude::*;

    fn clause_texts(s: &str) -> Vec<String> {
        let toks = tokenize_tagged(s);
        clause_split(&toks)
            .into_iter()
            .map(|r| toks[r].iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" "))
            .collect()
    }

    #[test]
    fn test_examples() {
        assert_eq!(
            clause_texts("TICKER rose, but TICKER will fall"),
            vec!["TICKER rose ,", "but TICKER will fall"]
        );
        assert_eq!(clause_texts("TICKER rose sharply today").len(), 1);
        assert_eq!(
            clause_texts("TICKER said that earnings grew"),
            vec!["TICKER said", "that earnings grew"]
        );
        // a verbless fragment joins its neighbour
        assert_eq!(clause_texts("In fact, TICKER rose").len(), 1);
        // "and" followed by a verb does not start a clause
        assert_eq!(clause_texts("TICKER rose and fell").len(), 1);
        assert!(clause_texts("").is_empty());
        assert_eq!(clause_texts("no verbs here, really").len(), 1);
    }

    fn word() -> impl Strategy<Value = &'static str> {
        prop::sample::select(vec![
            "TICKER", "rose", "will", "fall", ",", "but", "that", "and", "earnings", "the", "said",
            "grew", ".", "CURRENCY", "NUM",
        ])
    }

    proptest! {
        #[test]
        fn prop_clauses_partition(words in prop::collection::vec(word(), 0..30)) {
            let toks = tokenize_tagged(&words.join(" "));
            let clauses = clause_split(&toks);
            let mut pos = 0;
            for c in &clauses {
                prop_assert_eq!(c.start, pos);
                prop_assert!(c.end > c.start);
                pos = c.end;
            }
            prop_assert_eq!(pos, toks.len());
        }
    }
}
