//! Group models with a decidable canonical form: free groups, free abelian
//! groups, the Klein bottle group `<a, b | a b a^-1 = b^-1>` and direct
//! products of these.
//!
//! Every model fixes a symmetric generating set. For products the generating
//! set is the disjoint union of the factor sets: the first factor owns
//! generators `0..k1`, the second `k1..k1+k2`. All canonical forms produced
//! here are geodesic words, so the word length of an element is the length
//! of its canonical word.

mod ball;
mod descriptor;

pub use ball::{Ball, EnumConfig, Traversal, DEFAULT_CAP};
pub use descriptor::GroupDescriptor;

use std::fmt;

use thiserror::Error;

use crate::word::{free_reduce, GeneratorAlphabet, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("letter {letter} is outside the alphabet of {model}")]
    UnknownLetter { letter: char, model: String },
    #[error("element {element} is not a canonical element of {model}")]
    ModelMismatch { element: String, model: String },
    #[error("enumeration estimate {estimate} exceeds the cap {cap}")]
    CapExceeded { estimate: u128, cap: u64 },
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Free(usize),
    FreeAbelian(usize),
    KleinBottle,
    DirectProduct(Box<GroupModel>, Box<GroupModel>),
}

/// Selects one factor of a direct product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    First,
    Second,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::First => Factor::Second,
            Factor::Second => Factor::First,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupModel {
    kind: GroupKind,
    alphabet: GeneratorAlphabet,
}

/// A group element, stored as its canonical word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(Word);

impl Element {
    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Word length; canonical forms are geodesic in every model.
    pub fn norm(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl GroupModel {
    pub fn free(rank: usize) -> GroupModel {
        GroupModel::build(GroupKind::Free(rank), rank)
    }

    pub fn free_abelian(rank: usize) -> GroupModel {
        GroupModel::build(GroupKind::FreeAbelian(rank), rank)
    }

    pub fn klein_bottle() -> GroupModel {
        GroupModel::build(GroupKind::KleinBottle, 2)
    }

    pub fn direct_product(first: GroupModel, second: GroupModel) -> GroupModel {
        let rank = first.rank() + second.rank();
        GroupModel::build(GroupKind::DirectProduct(Box::new(first), Box::new(second)), rank)
    }

    fn build(kind: GroupKind, rank: usize) -> GroupModel {
        let alphabet = GeneratorAlphabet::new(rank).expect("group rank out of range");
        GroupModel { kind, alphabet }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn alphabet(&self) -> GeneratorAlphabet {
        self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn is_free(&self) -> bool {
        matches!(self.kind, GroupKind::Free(_))
    }

    pub fn factors(&self) -> Option<(&GroupModel, &GroupModel)> {
        match &self.kind {
            GroupKind::DirectProduct(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn factor(&self, which: Factor) -> Option<&GroupModel> {
        self.factors().map(|(a, b)| match which {
            Factor::First => a,
            Factor::Second => b,
        })
    }

    pub fn identity(&self) -> Element {
        Element(Word::empty())
    }

    /// The element represented by a single generator letter.
    pub fn letter(&self, letter: Letter) -> Element {
        Element(self.canonical_letters(vec![letter]))
    }

    pub fn generators(&self) -> Vec<Element> {
        self.alphabet.letters().map(|l| self.letter(l)).collect()
    }

    pub fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        match w.letters().iter().find(|l| !self.alphabet.contains(**l)) {
            Some(l) => Err(GroupError::UnknownLetter {
                letter: l.to_char(),
                model: self.to_string(),
            }),
            None => Ok(()),
        }
    }

    pub fn normal_form(&self, w: &Word) -> Result<Element, GroupError> {
        self.check_word(w)?;
        Ok(Element(self.canonical_letters(w.letters().to_vec())))
    }

    pub fn parse_element(&self, s: &str) -> Result<Element, GroupError> {
        let w: Word = s.parse()?;
        self.normal_form(&w)
    }

    /// Errors unless `g` is already a canonical element of this model.
    pub fn check_element(&self, g: &Element) -> Result<(), GroupError> {
        let mismatch = || GroupError::ModelMismatch {
            element: g.to_string(),
            model: self.to_string(),
        };
        self.check_word(&g.0).map_err(|_| mismatch())?;
        if self.canonical_letters(g.0.letters().to_vec()) != g.0 {
            return Err(mismatch());
        }
        Ok(())
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Result<Element, GroupError> {
        self.check_element(g)?;
        self.check_element(h)?;
        Ok(self.mul(g, h))
    }

    /// Unchecked product of two elements of this model.
    pub fn mul(&self, g: &Element, h: &Element) -> Element {
        Element(self.canonical_letters(g.0.concat(&h.0).into_letters()))
    }

    pub fn mul_letter(&self, g: &Element, x: Letter) -> Element {
        let mut letters = g.0.letters().to_vec();
        letters.push(x);
        Element(self.canonical_letters(letters))
    }

    pub fn invert(&self, g: &Element) -> Element {
        Element(self.canonical_letters(g.0.inverse().into_letters()))
    }

    /// `g^-1 h`.
    pub fn quotient(&self, g: &Element, h: &Element) -> Element {
        Element(self.canonical_letters(g.0.inverse().concat(&h.0).into_letters()))
    }

    pub fn power(&self, g: &Element, exponent: i64) -> Element {
        let base = if exponent < 0 { self.invert(g) } else { g.clone() };
        let mut letters = Vec::new();
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(base.word().letters());
        }
        Element(self.canonical_letters(letters))
    }

    /// Word-metric distance `|g^-1 h|`, read off the geodesic canonical form.
    pub fn distance(&self, g: &Element, h: &Element) -> usize {
        self.quotient(g, h).norm()
    }

    /// Projection of a product element to one factor, in that factor's own
    /// letters.
    pub fn project(&self, g: &Element, which: Factor) -> Option<Element> {
        let (a, b) = self.factors()?;
        let split = a.rank();
        let letters = g.0.letters().iter().copied();
        let word: Word = match which {
            Factor::First => letters.filter(|l| l.generator() < split).collect(),
            Factor::Second => letters
                .filter(|l| l.generator() >= split)
                .map(|l| l.shifted(-(split as isize)))
                .collect(),
        };
        let factor = if which == Factor::First { a } else { b };
        Some(Element(factor.canonical_letters(word.into_letters())))
    }

    /// Builds a product element from factor elements.
    pub fn pair(&self, first: &Element, second: &Element) -> Option<Element> {
        let (a, _) = self.factors()?;
        let shift = a.rank() as isize;
        let mut letters = first.0.letters().to_vec();
        letters.extend(second.0.letters().iter().map(|l| l.shifted(shift)));
        Some(Element(Word::from_letters(letters)))
    }

    /// Embeds a factor element into the product.
    pub fn embed(&self, g: &Element, which: Factor) -> Option<Element> {
        let (a, b) = self.factors()?;
        match which {
            Factor::First => self.pair(g, &b.identity()),
            Factor::Second => self.pair(&a.identity(), g),
        }
    }

    /// Exponent vector of a free abelian element.
    pub fn exponents(&self, g: &Element) -> Option<Vec<i64>> {
        match self.kind {
            GroupKind::FreeAbelian(n) => Some(exponent_vector(g.0.letters(), n)),
            _ => None,
        }
    }

    pub fn from_exponents(&self, v: &[i64]) -> Option<Element> {
        match self.kind {
            GroupKind::FreeAbelian(n) if v.len() == n => Some(Element(render_exponents(v))),
            _ => None,
        }
    }

    /// Coordinates `(n, m)` of a Klein bottle element `b^n a^m`.
    pub fn klein_coordinates(&self, g: &Element) -> Option<(i64, i64)> {
        match self.kind {
            GroupKind::KleinBottle => Some(klein_fold(g.0.letters())),
            _ => None,
        }
    }

    fn canonical_letters(&self, letters: Vec<Letter>) -> Word {
        match &self.kind {
            GroupKind::Free(_) => free_reduce(&Word::from_letters(letters)),
            GroupKind::FreeAbelian(n) => render_exponents(&exponent_vector(&letters, *n)),
            GroupKind::KleinBottle => {
                let (n, m) = klein_fold(&letters);
                Word::power(Letter::gen(1), n).concat(&Word::power(Letter::gen(0), m))
            }
            GroupKind::DirectProduct(a, b) => {
                let split = a.rank();
                let (first, second): (Vec<Letter>, Vec<Letter>) =
                    letters.into_iter().partition(|l| l.generator() < split);
                let second = second.into_iter().map(|l| l.shifted(-(split as isize))).collect();
                let mut out = a.canonical_letters(first).into_letters();
                out.extend(
                    b.canonical_letters(second)
                        .letters()
                        .iter()
                        .map(|l| l.shifted(split as isize)),
                );
                Word::from_letters(out)
            }
        }
    }
}

fn exponent_vector(letters: &[Letter], n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for l in letters {
        v[l.generator()] += l.exponent();
    }
    v
}

fn render_exponents(v: &[i64]) -> Word {
    let mut out = Vec::new();
    for (g, &e) in v.iter().enumerate() {
        out.extend_from_slice(Word::power(Letter::gen(g), e).letters());
    }
    Word::from_letters(out)
}

/// Reads a word as the element `b^n a^m`, using `a^m b^e = b^((-1)^m e) a^m`.
fn klein_fold(letters: &[Letter]) -> (i64, i64) {
    let (mut n, mut m) = (0i64, 0i64);
    for l in letters {
        if l.generator() == 0 {
            m += l.exponent();
        } else {
            let e = if m.rem_euclid(2) == 0 { l.exponent() } else { -l.exponent() };
            n += e;
        }
    }
    (n, m)
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::Free(k) => write!(f, "F{k}"),
            GroupKind::FreeAbelian(n) => write!(f, "Z^{n}"),
            GroupKind::KleinBottle => write!(f, "K"),
            GroupKind::DirectProduct(a, b) => write!(f, "({a} x {b})"),
        }
    }
}
