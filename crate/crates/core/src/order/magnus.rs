//! Truncated Magnus expansion of free group words and the induced bi-order.
//!
//! `x_i -> 1 + X_i`, `x_i^-1 -> 1 - X_i + X_i^2 - ...` in the ring of
//! noncommutative integer power series. Monomials are compared by degree,
//! then lexicographically on variable indices.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::{OrderError, Sign};
use crate::word::{free_reduce, Word};

/// A noncommutative monomial `X_{i1} X_{i2} ... X_{id}`, by variable index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for v in &self.0 {
            write!(f, "X{}", v + 1)?;
        }
        Ok(())
    }
}

/// A power series truncated at `degree`; zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusSeries {
    degree: usize,
    coefficients: BTreeMap<Monomial, i128>,
}

impl MagnusSeries {
    pub fn one(degree: usize) -> MagnusSeries {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(Monomial::default(), 1);
        MagnusSeries { degree, coefficients }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, m: &Monomial) -> i128 {
        self.coefficients.get(m).copied().unwrap_or(0)
    }

    /// Nonzero terms in deglex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i128)> {
        self.coefficients.iter().map(|(m, c)| (m, *c))
    }

    pub fn is_one(&self) -> bool {
        self.coefficients.len() == 1 && self.coefficient(&Monomial::default()) == 1
    }

    /// The deglex-least term of positive degree.
    pub fn leading_term(&self) -> Option<(&Monomial, i128)> {
        self.terms().find(|(m, _)| m.degree() > 0)
    }

    /// Right multiplication by the series of one letter.
    fn push_letter(&mut self, var: u8, inverse: bool) {
        let mut next: BTreeMap<Monomial, i128> = BTreeMap::new();
        for (mono, &c) in &self.coefficients {
            let room = self.degree - mono.degree();
            let max_power = if inverse { room } else { room.min(1) };
            let mut m = mono.clone();
            for j in 0..=max_power {
                let coef = if inverse && j % 2 == 1 { -c } else { c };
                let slot = next.entry(m.clone()).or_insert(0);
                *slot = slot.checked_add(coef).expect("Magnus coefficient overflow");
                m.0.push(var);
            }
        }
        next.retain(|_, c| *c != 0);
        self.coefficients = next;
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let abs = c.unsigned_abs();
            if !first {
                write!(f, " ")?;
            }
            match (m.degree(), abs) {
                (0, _) => write!(f, "{sign}{abs}")?,
                (_, 1) => write!(f, "{sign}{m}")?,
                _ => write!(f, "{sign}{abs}{m}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Expands a reduced word up to `degree`. Longer words are rejected because
/// truncation below the word length can collapse distinct elements.
pub fn magnus_expand(w: &Word, degree: usize) -> Result<MagnusSeries, OrderError> {
    if w.len() > degree {
        return Err(OrderError::DegreeTooSmall {
            word_len: w.len(),
            degree,
        });
    }
    Ok(expand_truncated(w, degree))
}

fn expand_truncated(w: &Word, degree: usize) -> MagnusSeries {
    let mut s = MagnusSeries::one(degree);
    for l in w.letters() {
        s.push_letter(l.generator() as u8, l.is_inverse());
    }
    s
}

/// Sign of a free group element in the Magnus order.
///
/// Low-degree coefficients do not depend on the truncation degree, so the
/// expansion is computed at degree 1, 2, ... and stops at the first degree
/// with a nonzero term; the answer is the one at degree `max(|w|, 1)`.
pub fn magnus_sign(w: &Word) -> Sign {
    let w = free_reduce(w);
    if w.is_empty() {
        return Sign::Identity;
    }
    for d in 1..=w.len() {
        let s = expand_truncated(&w, d);
        if let Some((_, c)) = s.leading_term() {
            return if c > 0 { Sign::Positive } else { Sign::Negative };
        }
    }
    unreachable!("Magnus expansion of the nontrivial reduced word {w} is 1")
}
