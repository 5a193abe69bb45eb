//! Rule-based sentence splitting with char offsets.

use serde::{Deserialize, Serialize};

/// A sentence of a body; `[start, end)` are char offsets into the body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

// Tokens ending in '.' that never close a sentence.
const ABBREVIATIONS: &[&str] = &[
    "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "mt.", "inc.", "corp.", "co.",
    "ltd.", "plc.", "llc.", "bros.", "l.p.", "u.s.", "u.k.", "u.n.", "e.u.", "e.g.", "i.e.",
    "vs.", "no.", "nos.", "approx.", "est.", "gov.", "sen.", "rep.", "gen.", "jan.", "feb.",
    "mar.", "apr.", "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec.", "fig.",
];

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | '”' | '’' | ')' | ']' | '»')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '“' | '‘' | '(' | '[' | '«')
}

fn guarded(chars: &[char], dot: usize) -> bool {
    let mut start = dot;
    while start > 0 && !chars[start - 1].is_whitespace() {
        start -= 1;
    }
    while start < dot && is_opener(chars[start]) {
        start += 1;
    }
    let word: String = chars[start..=dot].iter().collect::<String>().to_lowercase();
    if ABBREVIATIONS.contains(&word.as_str()) {
        return true;
    }
    // single-letter initials such as "J."
    dot - start == 1 && chars[start].is_uppercase()
}

/// Splits `body` after `.`, `!` or `?` (plus closing quotes/brackets) when the
/// next non-space char starts with an uppercase letter or digit. Tokens in
/// the abbreviation list never end a sentence.
pub fn split_sentences(body: &str) -> Vec<Sentence> {
    let chars: Vec<char> = body.chars().collect();
    let n = chars.len();
    let mut out = Vec::new();
    let mut start = 0;
    while start < n && chars[start].is_whitespace() {
        start += 1;
    }
    let mut i = start;
    while i < n {
        let c = chars[i];
        if matches!(c, '.' | '!' | '?') {
            let mut end = i + 1;
            while end < n && (matches!(chars[end], '.' | '!' | '?') || is_closer(chars[end])) {
                end += 1;
            }
            let mut next = end;
            while next < n && chars[next].is_whitespace() {
                next += 1;
            }
            let mut probe = next;
            while probe < n && is_opener(chars[probe]) {
                probe += 1;
            }
            let splits = next > end
                && probe < n
                && (chars[probe].is_uppercase() || chars[probe].is_ascii_digit())
                && !(c == '.' && end == i + 1 && guarded(&chars, i));
            if splits {
                push(&mut out, &chars, start, end);
                start = next;
                i = next;
                continue;
            }
            i = end;
            continue;
        }
        i += 1;
    }
    if start < n {
        let mut end = n;
        while end > start && chars[end - 1].is_whitespace() {
            end -= 1;
        }
        push(&mut out, &chars, start, end);
    }
    out
}

fn push(out: &mut Vec<Sentence>, chars: &[char], start: usize, end: usize) {
    out.push(Sentence {
        text: chars[start..end].iter().collect(),
        start,
        end,
    });
}
