//! Alphabets and words.
//!
//! Symbols are single characters. An [`Alphabet`] keeps its declaration
//! order, and that order is the tie-break for every enumeration in the crate:
//! words are listed by length first, then lexicographically by symbol
//! position in the alphabet.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Token used for the empty word in every text format.
pub const EMPTY_WORD_TOKEN: &str = "_";

const RESERVED: &[char] = &['_', '#', '|', '*', '(', ')', ',', '~', '∅', '{', '}', '<', '>', ';', '=', ':'];

/// Returns true for characters that may not be used as alphabet symbols.
pub fn is_reserved(c: char) -> bool {
    c.is_whitespace() || RESERVED.contains(&c)
}

/// A finite, ordered set of single-character symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in symbols {
            if is_reserved(c) {
                return Err(Error::ReservedSymbol(c));
            }
            if !seen.insert(c) {
                return Err(Error::DuplicateSymbol(c));
            }
            out.push(c);
        }
        Ok(Self { symbols: out })
    }

    /// Builds the alphabet from a string of symbols, e.g. `"ab"`.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }

    /// Alphabet of the distinct symbols occurring in `words`, sorted.
    pub fn spanning<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Result<Self> {
        let set: BTreeSet<char> = words.into_iter().flat_map(|w| w.iter().copied()).collect();
        Self::new(set)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.contains(&c)
    }

    pub fn symbol(&self, idx: usize) -> char {
        self.symbols[idx]
    }

    pub fn contains_word(&self, w: &[char]) -> bool {
        w.iter().all(|&c| self.contains(c))
    }

    /// Checks that every symbol of `w` belongs to this alphabet.
    pub fn check_word(&self, w: &[char]) -> Result<()> {
        match w.iter().find(|&&c| !self.contains(c)) {
            Some(&symbol) => Err(Error::UnknownSymbol { symbol, alphabet: self.to_string() }),
            None => Ok(()),
        }
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.symbols.iter().all(|&c| other.contains(c))
    }

    /// Same symbols, regardless of declaration order.
    pub fn same_symbols(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }

    /// Length-then-lexicographic comparison using the declaration order.
    pub fn cmp_words(&self, a: &[char], b: &[char]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                if x != y {
                    let rank = |c: &char| self.index_of(*c).unwrap_or(usize::MAX);
                    return rank(x).cmp(&rank(y)).then_with(|| x.cmp(y));
                }
            }
            Ordering::Equal
        })
    }

    pub fn sort_words(&self, words: &mut [Word]) {
        words.sort_by(|a, b| self.cmp_words(a, b));
    }

    /// All words of length exactly `k`, in enumeration order.
    pub fn words_of_length(&self, k: usize) -> Vec<Word> {
        let mut layer = vec![Word::empty()];
        for _ in 0..k {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for &c in &self.symbols {
                    next.push(w.pushed(c));
                }
            }
            layer = next;
        }
        layer
    }

    /// All words of length at most `n`, in enumeration order.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|k| self.words_of_length(k)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// A finite sequence of symbols; the empty sequence is λ.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<char>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_chars(chars: Vec<char>) -> Self {
        Word(chars)
    }

    /// Parses a word token, where `_` stands for λ.
    pub fn parse(token: &str) -> Result<Self> {
        let token = token.trim();
        if token == EMPTY_WORD_TOKEN {
            return Ok(Word::empty());
        }
        if let Some(c) = token.chars().find(|&c| is_reserved(c)) {
            return Err(Error::ReservedSymbol(c));
        }
        Ok(Word(token.chars().collect()))
    }

    /// `c` repeated `n` times.
    pub fn repeat(c: char, n: usize) -> Self {
        Word(vec![c; n])
    }

    pub fn chars(&self) -> &[char] {
        &self.0
    }

    pub fn into_chars(self) -> Vec<char> {
        self.0
    }

    pub fn pushed(&self, c: char) -> Self {
        let mut v = self.0.clone();
        v.push(c);
        Word(v)
    }

    pub fn concat(parts: &[&[char]]) -> Self {
        Word(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.slice(0, n)
    }

    pub fn suffix(&self, n: usize) -> Word {
        self.slice(self.len() - n, self.len())
    }

    /// Number of occurrences of `c`.
    pub fn count(&self, c: char) -> usize {
        self.0.iter().filter(|&&x| x == c).count()
    }
}

impl Deref for Word {
    type Target = [char];

    fn deref(&self) -> &[char] {
        &self.0
    }
}

impl From<&str> for Word {
    /// Literal conversion; `"_"` is *not* interpreted here, use [`Word::parse`].
    fn from(s: &str) -> Self {
        Word(s.chars().collect())
    }
}

impl From<&[char]> for Word {
    fn from(s: &[char]) -> Self {
        Word(s.to_vec())
    }
}

impl From<Vec<char>> for Word {
    fn from(v: Vec<char>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EMPTY_WORD_TOKEN);
        }
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Renders a set of words as `{w1,w2}` (`{}` when empty).
pub fn format_word_set<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> String {
    let parts: Vec<String> = words.into_iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_and_reserved_rejected() {
        assert_eq!(Alphabet::from_chars("aba"), Err(Error::DuplicateSymbol('a')));
        assert_eq!(Alphabet::from_chars("a_"), Err(Error::ReservedSymbol('_')));
    }

    #[test]
    fn shortlex_follows_declaration_order() {
        let v = Alphabet::from_chars("ba").unwrap();
        let mut ws: Vec<Word> = ["a", "b", "ab", "ba", ""].into_iter().map(Word::from).collect();
        v.sort_words(&mut ws);
        let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["_", "b", "a", "ba", "ab"]);
    }

    #[test]
    fn empty_word_token() {
        assert_eq!(Word::parse("_").unwrap(), Word::empty());
        assert_eq!(Word::empty().to_string(), "_");
        assert_eq!(Word::parse("abc").unwrap(), Word::from("abc"));
    }

    #[test]
    fn words_of_length_counts() {
        let v = Alphabet::from_chars("abc").unwrap();
        assert_eq!(v.words_of_length(3).len(), 27);
        assert_eq!(v.words_up_to(2).len(), 13);
        assert_eq!(v.words_of_length(2)[1], Word::from("ab"));
    }
}
