//! Half-space cones on `Z^n` with exact weights in `Z[sqrt 2]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{OrderError, Sign};

/// The real number `rational + radical * sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Surd {
    pub rational: i64,
    pub radical: i64,
}

impl From<[i64; 2]> for Surd {
    fn from([rational, radical]: [i64; 2]) -> Surd {
        Surd { rational, radical }
    }
}

impl From<Surd> for [i64; 2] {
    fn from(s: Surd) -> [i64; 2] {
        [s.rational, s.radical]
    }
}

impl Surd {
    pub const fn new(rational: i64, radical: i64) -> Surd {
        Surd { rational, radical }
    }

    pub const fn integer(n: i64) -> Surd {
        Surd::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.rational == 0 && self.radical == 0
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational, self.radical) {
            (p, 0) => write!(f, "{p}"),
            (0, q) => write!(f, "{q}*sqrt2"),
            (p, q) => write!(f, "{p}{q:+}*sqrt2"),
        }
    }
}

/// Sign of `p + q sqrt 2`, decided with integer comparisons only.
pub fn surd_signum(p: i128, q: i128) -> Ordering {
    let zero = Ordering::Equal;
    match (p.cmp(&0), q.cmp(&0)) {
        (Ordering::Equal, Ordering::Equal) => zero,
        (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => Ordering::Greater,
        (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Less,
        // opposite signs: compare p^2 with 2 q^2; equality forces p = q = 0
        (Ordering::Greater, Ordering::Less) => (p * p).cmp(&(2 * q * q)),
        (Ordering::Less, Ordering::Greater) => (2 * q * q).cmp(&(p * p)),
    }
}

/// Lexicographic sign of a vector: the sign of its first nonzero entry.
pub fn lex_sign(v: &[i64]) -> Sign {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x > 0 => Sign::Positive,
        Some(_) => Sign::Negative,
        None => Sign::Identity,
    }
}

/// Sign of `v` in the cone `{<v, w> > 0}`, points on the hyperplane ordered
/// lexicographically.
pub fn hyperplane_sign(v: &[i64], weights: &[Surd]) -> Result<Sign, OrderError> {
    if weights.iter().all(Surd::is_zero) {
        return Err(OrderError::AllZeroWeights);
    }
    if v.len() != weights.len() {
        return Err(OrderError::DimensionMismatch {
            expected: weights.len(),
            found: v.len(),
        });
    }
    let (p, q) = pairing(v, weights);
    Ok(match surd_signum(p, q) {
        Ordering::Greater => Sign::Positive,
        Ordering::Less => Sign::Negative,
        Ordering::Equal => lex_sign(v),
    })
}

/// `<v, w>` as the pair `(p, q)` meaning `p + q sqrt 2`.
pub fn pairing(v: &[i64], weights: &[Surd]) -> (i128, i128) {
    v.iter().zip(weights).fold((0i128, 0i128), |(p, q), (&x, w)| {
        (p + x as i128 * w.rational as i128, q + x as i128 * w.radical as i128)
    })
}
