//! Regex recognisers for NUM and DATE. The patterns are listed in docs/tagging.md.

use std::ops::Range;
use std::sync::OnceLock;

use regex::Regex;

use super::TagCategory;

const MONTH: &str = r"(?:Jan(?:uary|\.)?|Feb(?:ruary|\.)?|Mar(?:ch|\.)?|Apr(?:il|\.)?|May|June?|July?|Aug(?:ust|\.)?|Sep(?:t(?:ember|\.)?|\.)?|Oct(?:ober|\.)?|Nov(?:ember|\.)?|Dec(?:ember|\.)?)";
const FULL_MONTH: &str =
    r"(?:January|February|March|April|May|June|July|August|September|October|November|December)";

fn date_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        let patterns = [
            // July 24 / July 24, 2020 / Jul. 24th
            format!(r"{MONTH}\s+\d{{1,2}}(?:st|nd|rd|th)?(?:,?\s+\d{{4}})?"),
            // 24 July / 24th of July 2020
            format!(r"\d{{1,2}}(?:st|nd|rd|th)?\s+(?:of\s+)?{FULL_MONTH}(?:,?\s+\d{{4}})?"),
            // July 2020
            format!(r"{FULL_MONTH}\s+\d{{4}}"),
            // 2020-07-24, 07/24/2020
            r"\d{4}-\d{2}-\d{2}".to_string(),
            r"\d{1,2}/\d{1,2}/\d{2,4}".to_string(),
            // 10:30, 10:30 a.m., 9 pm
            r"\d{1,2}:\d{2}(?:\s*[ap]\.?m\.?)?".to_string(),
            r"\d{1,2}\s*[ap]\.m\.".to_string(),
            // years
            r"(?:1[89]|20)\d{2}s?".to_string(),
        ];
        Regex::new(&patterns.map(|p| format!("(?:{p})")).join("|")).unwrap()
    })
}

fn num_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"(?:US)?[$€£¥]?\d+(?:[.,]\d+)*(?:\s?%|[kKmMbB]n?|x)?").unwrap()
    })
}

fn is_word(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn bounded(text: &str, r: &Range<usize>) -> bool {
    let before = text[..r.start].chars().next_back();
    let after = text[r.end..].chars().next();
    let first = text[r.start..].chars().next();
    let last = text[..r.end].chars().next_back();
    let left_ok = !(before.is_some_and(is_word) && first.is_some_and(is_word));
    let right_ok = !(after.is_some_and(is_word) && last.is_some_and(is_word));
    left_ok && right_ok
}

fn continues_number(text: &str, end: usize) -> bool {
    let rest = &text[end..];
    let mut it = rest.chars();
    match it.next() {
        Some('%') => true,
        Some('.' | ',') => it.next().is_some_and(|c| c.is_ascii_digit()),
        _ => false,
    }
}

/// Byte ranges of dates (DATE) and numeric quantities (NUM), sorted and
/// non-overlapping. Dates take precedence.
pub fn find_numeric_dates(text: &str) -> Vec<(Range<usize>, TagCategory)> {
    let mut out: Vec<(Range<usize>, TagCategory)> = Vec::new();
    for m in date_re().find_iter(text) {
        let r = m.range();
        let preceded_by_currency = text[..r.start]
            .chars()
            .next_back()
            .is_some_and(|c| matches!(c, '$' | '€' | '£' | '¥' | '.' | ','));
        if bounded(text, &r) && !continues_number(text, r.end) && !preceded_by_currency {
            out.push((r, TagCategory::Date));
        }
    }
    let taken = out.clone();
    for m in num_re().find_iter(text) {
        let r = m.range();
        if !bounded(text, &r) || taken.iter().any(|(d, _)| d.start < r.end && r.start < d.end) {
            continue;
        }
        out.push((r, TagCategory::Num));
    }
    out.sort_by_key(|(r, _)| r.start);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags(text: &str) -> Vec<(&str, TagCategory)> {
        find_numeric_dates(text)
            .into_iter()
            .map(|(r, t)| (&text[r], t))
            .collect()
    }

    use TagCategory::{Date, Num};

    #[test]
    fn test_numbers() {
        assert_eq!(tags("up 55% on 1,200 units"), vec![("55%", Num), ("1,200", Num)]);
        assert_eq!(tags("$23.6 billion"), vec![("$23.6", Num)]);
        assert_eq!(tags("74.1 percent"), vec![("74.1", Num)]);
        assert_eq!(tags("a 3 % drop"), vec![("3 %", Num)]);
        assert_eq!(tags("Q2 and FY21 and COVID19"), vec![]);
    }

    #[test]
    fn test_dates() {
        assert_eq!(tags("on July 24."), vec![("July 24", Date)]);
        assert_eq!(tags("first-half of 2019."), vec![("2019", Date)]);
        assert_eq!(tags("at 10:30 a.m. on 2020-07-24"), vec![("10:30 a.m.", Date), ("2020-07-24", Date)]);
        assert_eq!(tags("24th of March 2021"), vec![("24th of March 2021", Date)]);
        // price-like numbers are not years
        assert_eq!(tags("$2020 and 2020.5 and 2020%"), vec![("$2020", Num), ("2020.5", Num), ("2020%", Num)]);
        // May the modal verb is not a date
        assert_eq!(tags("It may 5 times"), vec![("5", Num)]);
    }
}
