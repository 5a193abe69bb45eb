//! Character-offset helpers.
//!
//! Every span exchanged with the outside world (annotations, results) is
//! measured in Unicode scalar values, not bytes.

/// Number of chars in `s`.
pub fn char_len(s: &str) -> usize {
    s.chars().count()
}

/// Converts a byte offset (on a char boundary) to a char offset.
pub fn byte_to_char(s: &str, byte: usize) -> usize {
    s[..byte].chars().count()
}

/// Converts a char offset to a byte offset. Offsets past the end clamp to `s.len()`.
pub fn char_to_byte(s: &str, ch: usize) -> usize {
    s.char_indices().nth(ch).map(|(b, _)| b).unwrap_or(s.len())
}

/// Slices `s` by char offsets `[start, end)`.
pub fn char_slice(s: &str, start: usize, end: usize) -> &str {
    let b0 = char_to_byte(s, start);
    let b1 = char_to_byte(s, end);
    &s[b0..b1]
}

/// Precomputed byte→char mapping for repeated conversions over one string.
#[derive(Debug, Clone)]
pub struct CharMap {
    // byte offset of every char start, plus the total length
    starts: Vec<usize>,
}

impl CharMap {
    pub fn new(s: &str) -> Self {
        let mut starts: Vec<usize> = s.char_indices().map(|(b, _)| b).collect();
        starts.push(s.len());
        CharMap { starts }
    }

    pub fn to_char(&self, byte: usize) -> usize {
        match self.starts.binary_search(&byte) {
            Ok(i) => i,
            Err(i) => i,
        }
    }

    pub fn to_byte(&self, ch: usize) -> usize {
        self.starts[ch.min(self.starts.len() - 1)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_offsets_with_multibyte() {
        let s = "Barron’s magazine";
        assert_eq!(char_len(s), 17);
        let b = s.find("magazine").unwrap();
        assert_eq!(byte_to_char(s, b), 9);
        assert_eq!(char_slice(s, 9, 17), "magazine");
        let map = CharMap::new(s);
        assert_eq!(map.to_char(b), 9);
        assert_eq!(map.to_byte(9), b);
        assert_eq!(map.to_byte(17), s.len());
    }
}
