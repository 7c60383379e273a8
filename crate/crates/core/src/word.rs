//! Words over a graded alphabet.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::Basis;

/// A letter is a printable basis element of positive degree.
pub trait Letter: Basis + fmt::Display {
    /// Separator placed between letters when a word is printed.
    fn separator(_letters: &[Self]) -> &'static str {
        ""
    }
}

/// A word `a₁a₂⋯a_k`; the empty word is the unit `𝟙`.
///
/// Words are ordered graded-lexicographically: first by total degree, then
/// letter by letter.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word<L> {
    letters: Vec<L>,
}

impl<L> Word<L> {
    pub fn empty() -> Self {
        Self { letters: Vec::new() }
    }

    pub fn new(letters: Vec<L>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<L> {
        self.letters
    }

    /// Number of letters `#(ω)`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl<L: Clone> Word<L> {
    pub fn single(letter: L) -> Self {
        Self { letters: vec![letter] }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn reversed(&self) -> Self {
        Self { letters: self.letters.iter().rev().cloned().collect() }
    }

    pub fn prefix(&self, i: usize) -> Self {
        Self { letters: self.letters[..i].to_vec() }
    }

    pub fn suffix(&self, i: usize) -> Self {
        Self { letters: self.letters[i..].to_vec() }
    }

    /// Split off the last letter: `ω = ω' a`.
    pub fn split_last(&self) -> Option<(Self, &L)> {
        let (last, rest) = self.letters.split_last()?;
        Some((Self { letters: rest.to_vec() }, last))
    }
}

impl<L: Letter> Basis for Word<L> {
    fn degree(&self) -> usize {
        self.letters.iter().map(Basis::degree).sum()
    }
}

impl<L: Letter> PartialOrd for Word<L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: Letter> Ord for Word<L> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl<L> FromIterator<L> for Word<L> {
    fn from_iter<I: IntoIterator<Item = L>>(iter: I) -> Self {
        Self { letters: iter.into_iter().collect() }
    }
}

/// A graded alphabet that can list its letters degree by degree.
pub trait Alphabet {
    type Letter: Letter;

    /// All letters of degree `d ≥ 1`, in ascending order.
    fn letters_of_degree(&self, d: usize) -> Vec<Self::Letter>;

    /// All words of degree `0..=n`, grouped by degree, each group sorted.
    fn words_up_to(&self, n: usize) -> Vec<Vec<Word<Self::Letter>>> {
        let letters: Vec<Vec<Self::Letter>> = (0..=n).map(|d| if d == 0 { Vec::new() } else { self.letters_of_degree(d) }).collect();
        words_from_letter_table(&letters, n)
    }

    fn words_of_degree(&self, n: usize) -> Vec<Word<Self::Letter>> {
        self.words_up_to(n).pop().unwrap_or_default()
    }
}

/// Words of each degree `0..=n` from letters grouped by degree (`letters[0]` ignored).
pub(crate) fn words_from_letter_table<L: Letter>(letters: &[Vec<L>], n: usize) -> Vec<Vec<Word<L>>> {
    let mut table: Vec<Vec<Word<L>>> = vec![vec![Word::empty()]];
    for m in 1..=n {
        let mut words = Vec::new();
        for d in 1..=m {
            for a in letters.get(d).map(Vec::as_slice).unwrap_or(&[]) {
                for rest in &table[m - d] {
                    let mut v = Vec::with_capacity(rest.len() + 1);
                    v.push(a.clone());
                    v.extend_from_slice(rest.letters());
                    words.push(Word::new(v));
                }
            }
        }
        words.sort();
        table.push(words);
    }
    table
}

/// A named letter with a positive grading.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedLetter {
    degree: usize,
    name: String,
}

impl GradedLetter {
    pub fn name(&self) -> &str {
        &self.name
    }
}

impl Basis for GradedLetter {
    fn degree(&self) -> usize {
        self.degree
    }
}

impl fmt::Display for GradedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for GradedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Letter for GradedLetter {
    fn separator(letters: &[Self]) -> &'static str {
        if letters.iter().all(|l| l.name.chars().count() == 1) {
            ""
        } else {
            "."
        }
    }
}

/// A finite alphabet of named letters with gradings `|a| ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterAlphabet {
    letters: Vec<GradedLetter>,
}

impl LetterAlphabet {
    /// Letters given as `(name, degree)`; names must be unique, non-empty and
    /// free of `.`, whitespace and brackets.
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out: Vec<GradedLetter> = Vec::new();
        for (name, degree) in letters {
            let name = name.into();
            if degree == 0 {
                return Err(Error::InvalidColors(format!("letter `{name}` has degree 0")));
            }
            if name.is_empty() || name == "1" || name.chars().any(|c| c == '.' || c.is_whitespace() || "[]".contains(c)) {
                return Err(Error::InvalidColors(format!("bad letter name `{name}`")));
            }
            if out.iter().any(|l| l.name == name) {
                return Err(Error::InvalidColors(format!("duplicate letter `{name}`")));
            }
            out.push(GradedLetter { degree, name });
        }
        Ok(Self { letters: out })
    }

    /// Single-character letters of degree 1, e.g. `"abc"`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(|c| (c.to_string(), 1)))
    }

    pub fn letter(&self, name: &str) -> Result<GradedLetter> {
        self.letters.iter().find(|l| l.name == name).cloned().ok_or_else(|| Error::UnknownColor(name.to_string()))
    }

    pub fn letters(&self) -> &[GradedLetter] {
        &self.letters
    }

    /// Parse `abc` (single-character letters) or `a.bb.c`; `""` and `"1"` are the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word<GradedLetter>> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        if text.contains('.') {
            text.split('.').map(|t| self.letter(t.trim())).collect()
        } else {
            text.chars().map(|c| self.letter(&c.to_string())).collect()
        }
    }
}

impl Alphabet for LetterAlphabet {
    type Letter = GradedLetter;

    fn letters_of_degree(&self, d: usize) -> Vec<GradedLetter> {
        let mut v: Vec<_> = self.letters.iter().filter(|l| l.degree == d).cloned().collect();
        v.sort();
        v
    }
}

impl<L: Letter> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = L::separator(&self.letters);
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl<L: Letter> fmt::Debug for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            f.write_str("1")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}
