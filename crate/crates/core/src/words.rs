//! Word combinatorics over an ordered alphabet: lexicographic comparison,
//! Lyndon tests, and the costandard/canonical factorizations.

use crate::root_system::OrderedAlphabet;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

/// A letter of the cyclic alphabet `{0, …, n}`.
pub type Letter = u8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("operation requires a nonempty word")]
    Empty,
    #[error("operation requires a word of length >= 2")]
    TooShort,
    #[error("word is not Lyndon")]
    NotLyndon,
    #[error("letter {0} is outside the alphabet of rank {1}")]
    LetterOutOfRange(Letter, usize),
}

/// A finite sequence of letters. Values are plain integers, never digit
/// strings, so ranks above 9 stay unambiguous.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// `self` repeated `times` times (empty for `times == 0`).
    pub fn repeat(&self, times: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// Display form: adjacent digits for rank <= 9, dot-joined otherwise.
    pub fn compact(&self, rank: usize) -> String {
        if rank <= 9 {
            self.0.iter().map(|l| l.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (t, l) in self.0.iter().enumerate() {
            if t > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl<const N: usize> From<[Letter; N]> for Word {
    fn from(letters: [Letter; N]) -> Self {
        Word(letters.to_vec())
    }
}

/// Lexicographic comparison under the alphabet order: the first differing
/// letter decides, and a proper prefix is smaller than its extension.
pub fn compare(u: &Word, v: &Word, a: &OrderedAlphabet) -> Ordering {
    for (x, y) in u.letters().iter().zip(v.letters()) {
        match a.cmp_letters(*x, *y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    u.len().cmp(&v.len())
}

/// Duval's factorization: the unique decomposition of `w` into a
/// nonincreasing sequence of Lyndon words.
pub fn canonical_factorization(w: &Word, a: &OrderedAlphabet) -> Result<Vec<Word>, WordError> {
    if w.is_empty() {
        return Err(WordError::Empty);
    }
    let s = w.letters();
    let n = s.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && a.cmp_letters(s[k], s[j]) != Ordering::Greater {
            if a.cmp_letters(s[k], s[j]) == Ordering::Less {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push(Word(s[i..i + j - k].to_vec()));
            i += j - k;
        }
    }
    Ok(factors)
}

/// A word is Lyndon iff it is strictly smaller than all of its proper
/// suffixes; equivalently its Duval factorization has a single factor.
pub fn is_lyndon(w: &Word, a: &OrderedAlphabet) -> bool {
    if w.is_empty() {
        return false;
    }
    match canonical_factorization(w, a) {
        Ok(factors) => factors.len() == 1,
        Err(_) => false,
    }
}

/// Splits a Lyndon word `l = l1 l2` where `l2` is the longest proper suffix
/// of `l` that is itself Lyndon. Both parts are Lyndon and `l1 < l2`.
pub fn costandard_factorization(
    w: &Word,
    a: &OrderedAlphabet,
) -> Result<(Word, Word), WordError> {
    if w.len() < 2 {
        return Err(WordError::TooShort);
    }
    if !is_lyndon(w, a) {
        return Err(WordError::NotLyndon);
    }
    for start in 1..w.len() {
        let right = w.suffix_from(start);
        if is_lyndon(&right, a) {
            return Ok((w.prefix(start), right));
        }
    }
    unreachable!("the final letter of a word is always Lyndon");
}

/// Degree of a word as a coefficient vector over the simple roots: the
/// count of each letter `0..=rank`.
pub fn degree(w: &Word, rank: usize) -> Result<Vec<usize>, WordError> {
    let mut counts = vec![0usize; rank + 1];
    for &l in w.letters() {
        if l as usize > rank {
            return Err(WordError::LetterOutOfRange(l, rank));
        }
        counts[l as usize] += 1;
    }
    Ok(counts)
}
