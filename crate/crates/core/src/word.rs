//! Letters, words and free reduction over a symmetric generating alphabet.
//!
//! Generators are serialized as lowercase ASCII letters (`a`, `b`, ...) and
//! their inverses as the matching uppercase letter. The empty word is written
//! `1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest rank that fits the one-character-per-letter serialization.
pub const MAX_RANK: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("character {0:?} is not a generator letter")]
    BadCharacter(char),
    #[error("rank {0} outside 1..={MAX_RANK}")]
    BadRank(usize),
}

/// A signed generator. The code `2 * generator + inverse` realizes the fixed
/// letter order `x1 < x1^-1 < x2 < x2^-1 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        assert!(generator < MAX_RANK, "generator index {generator} too large");
        Letter((2 * generator + inverse as usize) as u8)
    }

    pub fn gen(generator: usize) -> Letter {
        Letter::new(generator, false)
    }

    pub fn inv_gen(generator: usize) -> Letter {
        Letter::new(generator, true)
    }

    pub fn from_code(code: usize) -> Letter {
        assert!(code < 2 * MAX_RANK);
        Letter(code as u8)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// +1 for a generator, -1 for an inverse generator.
    pub fn exponent(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    /// Same sign, generator index moved by `delta`.
    pub fn shifted(self, delta: isize) -> Letter {
        let g = self.generator() as isize + delta;
        assert!(g >= 0, "negative generator index after shift");
        Letter::new(g as usize, self.is_inverse())
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + self.generator() as u8) as char
    }

    pub fn from_char(c: char) -> Result<Letter, WordError> {
        match c {
            'a'..='z' => Ok(Letter::gen(c as usize - 'a' as usize)),
            'A'..='Z' => Ok(Letter::inv_gen(c as usize - 'A' as usize)),
            _ => Err(WordError::BadCharacter(c)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// The symmetric alphabet `{x1, x1^-1, ..., xk, xk^-1}` in its fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorAlphabet {
    rank: usize,
}

impl GeneratorAlphabet {
    pub fn new(rank: usize) -> Result<GeneratorAlphabet, WordError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(WordError::BadRank(rank));
        }
        Ok(GeneratorAlphabet { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of letters, `2 * rank`.
    pub fn size(&self) -> usize {
        2 * self.rank
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + Clone {
        (0..self.size()).map(Letter::from_code)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.generator() < self.rank
    }

    /// The generator characters, e.g. `"ab"` for rank 2.
    pub fn generator_chars(&self) -> String {
        (0..self.rank).map(|g| Letter::gen(g).to_char()).collect()
    }
}

/// A finite sequence of letters, compared in shortlex order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Letter-wise inverse: reversed order, each letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn power(letter: Letter, exponent: i64) -> Word {
        let l = if exponent < 0 { letter.inverse() } else { letter };
        Word(vec![l; exponent.unsigned_abs() as usize])
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Word, WordError> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.chars().map(Letter::from_char).collect::<Result<_, _>>().map(Word)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Cancels adjacent letter/inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word(stack)
}
