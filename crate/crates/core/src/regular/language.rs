use std::collections::{BTreeMap, HashSet};

use super::{ConeDfa, RegularError};
use crate::group::{Element, EnumConfig, GroupError, GroupModel};
use crate::word::{Letter, Word};

pub(crate) fn check_alphabet(d: &ConeDfa, m: &GroupModel) -> Result<(), RegularError> {
    if d.alphabet().rank() != m.rank() {
        return Err(RegularError::AlphabetMismatch {
            automaton: d.alphabet().generator_chars(),
            group: m.alphabet().generator_chars(),
        });
    }
    Ok(())
}

/// All accepted words of length at most `max_length`, in shortlex order,
/// with their evaluations.
#[derive(Debug, Clone)]
pub struct LanguageSample {
    pub max_length: usize,
    pub words: Vec<Word>,
    pub evaluations: BTreeMap<Element, Vec<Word>>,
}

impl LanguageSample {
    pub fn enumerate(
        d: &ConeDfa,
        m: &GroupModel,
        max_length: usize,
        config: &EnumConfig,
    ) -> Result<LanguageSample, RegularError> {
        check_alphabet(d, m)?;
        config.check(d.alphabet().size(), max_length)?;
        let live = d.live_states();
        let mut words = Vec::new();
        let mut evaluations: BTreeMap<Element, Vec<Word>> = BTreeMap::new();
        let mut layer = vec![(Word::empty(), d.initial(), m.identity())];
        for len in 0..=max_length {
            let mut next = Vec::new();
            for (w, s, g) in layer {
                if d.is_accepting(s) {
                    words.push(w.clone());
                    evaluations.entry(g.clone()).or_default().push(w.clone());
                }
                if len == max_length {
                    continue;
                }
                for letter in d.alphabet().letters() {
                    let t = d.step(s, letter);
                    if live[t] {
                        let mut v = w.clone();
                        v.push(letter);
                        next.push((v, t, m.mul_letter(&g, letter)));
                    }
                }
            }
            layer = next;
        }
        Ok(LanguageSample {
            max_length,
            words,
            evaluations,
        })
    }
}

/// Elements of `B(1, R)` that are evaluations of accepted words.
#[derive(Debug, Clone)]
pub struct Membership {
    pub radius: usize,
    pub max_length: usize,
    /// Whether absence from `inside` proves non-membership.
    pub exact: bool,
    /// Members with a shortest witnessing word when one was found by
    /// enumeration.
    inside: BTreeMap<Element, Option<Word>>,
}

impl Membership {
    /// Searches pairs (element, state) breadth first over accepted-word
    /// prefixes of length at most `max_length`. A prefix of length `l`
    /// evaluating to `g` can only end in the ball when
    /// `|g| <= R + max_length - l`, which bounds the search. The cap applies
    /// to the number of visited pairs.
    pub fn bounded(
        d: &ConeDfa,
        m: &GroupModel,
        radius: usize,
        max_length: usize,
        config: &EnumConfig,
    ) -> Result<Membership, RegularError> {
        check_alphabet(d, m)?;
        let live = d.live_states();

        let mut nodes: Vec<Node> = Vec::new();
        let mut seen: HashSet<(Element, usize)> = HashSet::new();
        let mut inside: BTreeMap<Element, Option<Word>> = BTreeMap::new();
        if live[d.initial()] {
            nodes.push((m.identity(), d.initial(), None));
            seen.insert((m.identity(), d.initial()));
        }
        let mut layer: Vec<usize> = (0..nodes.len()).collect();
        for len in 0..=max_length {
            let mut next = Vec::new();
            for &i in &layer {
                let (g, s) = (nodes[i].0.clone(), nodes[i].1);
                if d.is_accepting(s) && g.norm() <= radius && !inside.contains_key(&g) {
                    inside.insert(g.clone(), Some(word_of(&nodes, i)));
                }
                if len == max_length {
                    continue;
                }
                for letter in d.alphabet().letters() {
                    let t = d.step(s, letter);
                    if !live[t] {
                        continue;
                    }
                    let h = m.mul_letter(&g, letter);
                    if h.norm() + len + 1 > radius + max_length {
                        continue;
                    }
                    if seen.insert((h.clone(), t)) {
                        if nodes.len() as u64 >= config.cap {
                            return Err(GroupError::CapExceeded {
                                estimate: nodes.len() as u128 + 1,
                                cap: config.cap,
                            }
                            .into());
                        }
                        nodes.push((h, t, Some((i, letter))));
                        next.push(nodes.len() - 1);
                    }
                }
            }
            layer = next;
        }

        let exact = matches!(d.longest_accepted(), Some(n) if n <= max_length);
        Ok(Membership {
            radius,
            max_length,
            exact,
            inside,
        })
    }

    /// Bounded search, then, for free groups, exact decisions for every
    /// element of the ball the search did not reach.
    pub fn decide(
        d: &ConeDfa,
        m: &GroupModel,
        ball: impl Iterator<Item = Element>,
        radius: usize,
        max_length: usize,
        config: &EnumConfig,
    ) -> Result<Membership, RegularError> {
        let mut membership = Membership::bounded(d, m, radius, max_length, config)?;
        if !membership.exact && m.is_free() {
            let saturation = Saturation::new(d);
            for g in ball {
                if !membership.inside.contains_key(&g) && saturation.accepts(d, g.word()) {
                    membership.inside.insert(g, None);
                }
            }
            membership.exact = true;
        }
        Ok(membership)
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.inside.contains_key(g)
    }

    pub fn witness(&self, g: &Element) -> Option<&Word> {
        self.inside.get(g).and_then(Option::as_ref)
    }

    /// Members in shortlex order.
    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.inside.keys()
    }

    pub fn len(&self) -> usize {
        self.inside.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inside.is_empty()
    }
}

/// Search node: element, state, parent node and the letter read from it.
type Node = (Element, usize, Option<(usize, Letter)>);

fn word_of(nodes: &[Node], mut i: usize) -> Word {
    let mut letters = Vec::new();
    while let Some((parent, letter)) = nodes[i].2 {
        letters.push(letter);
        i = parent;
    }
    letters.reverse();
    Word::from_letters(letters)
}

/// The automaton with empty moves added across every cancelling pair
/// `x x^-1`. It accepts the free reduction of every accepted word, so a
/// reduced word is accepted exactly when its element lies in the evaluated
/// language.
struct Saturation {
    /// `empty[p][q]`: `q` is reachable from `p` by empty moves.
    empty: Vec<Vec<bool>>,
}

impl Saturation {
    #[allow(clippy::needless_range_loop)]
    fn new(d: &ConeDfa) -> Saturation {
        let n = d.len();
        let mut empty = vec![vec![false; n]; n];
        for (p, row) in empty.iter_mut().enumerate() {
            row[p] = true;
        }
        loop {
            let mut changed = false;
            for p in 0..n {
                for p1 in 0..n {
                    if !empty[p][p1] {
                        continue;
                    }
                    for x in d.alphabet().letters() {
                        let q = d.step(p1, x);
                        for q1 in 0..n {
                            if !empty[q][q1] {
                                continue;
                            }
                            let r = d.step(q1, x.inverse());
                            for t in 0..n {
                                if empty[r][t] && !empty[p][t] {
                                    empty[p][t] = true;
                                    changed = true;
                                }
                            }
                        }
                    }
                    for t in 0..n {
                        if empty[p1][t] && !empty[p][t] {
                            empty[p][t] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return Saturation { empty };
            }
        }
    }

    fn close(&self, states: &[bool]) -> Vec<bool> {
        let mut out = vec![false; states.len()];
        for (p, _) in states.iter().enumerate().filter(|(_, on)| **on) {
            for (t, o) in out.iter_mut().enumerate() {
                *o |= self.empty[p][t];
            }
        }
        out
    }

    fn accepts(&self, d: &ConeDfa, w: &Word) -> bool {
        let mut current = vec![false; d.len()];
        current[d.initial()] = true;
        current = self.close(&current);
        for &letter in w.letters() {
            let mut next = vec![false; d.len()];
            for (s, _) in current.iter().enumerate().filter(|(_, on)| **on) {
                next[d.step(s, letter)] = true;
            }
            current = self.close(&next);
        }
        current.iter().enumerate().any(|(s, on)| *on && d.is_accepting(s))
    }
}

/// Whether `g` is the evaluation of an accepted word, decided exactly for
/// free groups. `None` for other models.
pub fn exact_membership(d: &ConeDfa, m: &GroupModel, g: &Element) -> Result<Option<bool>, RegularError> {
    check_alphabet(d, m)?;
    m.check_element(g)?;
    if !m.is_free() {
        return Ok(None);
    }
    Ok(Some(Saturation::new(d).accepts(d, g.word())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Ball;
    use crate::regular::{dfa_run, klein_cone_dfa, random_dfa, z2_lex_dfa};
    use rand::SeedableRng;

    fn brute_force_words(d: &ConeDfa, max_length: usize) -> Vec<Word> {
        let size = d.alphabet().size();
        let mut out = Vec::new();
        for len in 0..=max_length {
            for mut code in 0..size.pow(len as u32) {
                let mut letters = vec![Letter::gen(0); len];
                for slot in letters.iter_mut().rev() {
                    *slot = Letter::from_code(code % size);
                    code /= size;
                }
                let w = Word::from_letters(letters);
                if dfa_run(d, &w).unwrap().1 {
                    out.push(w);
                }
            }
        }
        out
    }

    #[test]
    fn sample_matches_brute_force_scan() {
        let cfg = EnumConfig::default();
        let f2 = GroupModel::free(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut dfas = vec![z2_lex_dfa(), klein_cone_dfa()];
        dfas.extend((0..20).map(|_| random_dfa(2, 4, &mut rng)));
        for d in dfas {
            let sample = LanguageSample::enumerate(&d, &f2, 5, &cfg).unwrap();
            assert_eq!(sample.words, brute_force_words(&d, 5));
            let total: usize = sample.evaluations.values().map(Vec::len).sum();
            assert_eq!(total, sample.words.len());
        }
    }

    #[test]
    fn bounded_membership_matches_the_sample() {
        let cfg = EnumConfig::default();
        let models = [GroupModel::free(2), GroupModel::free_abelian(2), GroupModel::klein_bottle()];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for m in &models {
            for _ in 0..10 {
                let d = random_dfa(2, 4, &mut rng);
                let (radius, lmax) = (2, 6);
                let sample = LanguageSample::enumerate(&d, m, lmax, &cfg).unwrap();
                let membership = Membership::bounded(&d, m, radius, lmax, &cfg).unwrap();
                let expected: Vec<&Element> = sample.evaluations.keys().filter(|g| g.norm() <= radius).collect();
                assert_eq!(membership.elements().collect::<Vec<_>>(), expected);
                for g in membership.elements() {
                    let w = membership.witness(g).unwrap();
                    assert!(dfa_run(&d, w).unwrap().1);
                    assert_eq!(&m.normal_form(w).unwrap(), g);
                    assert_eq!(w.len(), sample.evaluations[g].iter().map(Word::len).min().unwrap());
                }
            }
        }
    }

    #[test]
    fn exact_membership_contains_every_bounded_member() {
        let cfg = EnumConfig::default();
        let f2 = GroupModel::free(2);
        let ball = Ball::enumerate(&f2, 3, &cfg).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let d = random_dfa(2, 4, &mut rng);
            let bounded = Membership::bounded(&d, &f2, 3, 10, &cfg).unwrap();
            for g in ball.elements() {
                let exact = exact_membership(&d, &f2, g).unwrap().unwrap();
                if bounded.contains(g) {
                    assert!(exact, "{g}");
                }
                if bounded.exact {
                    assert_eq!(exact, bounded.contains(g), "{g}");
                }
            }
        }
    }

    #[test]
    fn exact_membership_sees_past_the_length_bound() {
        // words a^k A^j b with k >= 6: the element b needs 13 letters
        let k = 6;
        let (count, sink) = (k + 3, k + 2);
        let mut table = vec![vec![sink; 4]; count];
        for (s, row) in table.iter_mut().enumerate().take(k) {
            row[Letter::gen(0).code()] = s + 1;
        }
        table[k][Letter::gen(0).code()] = k;
        table[k][Letter::inv_gen(0).code()] = k;
        table[k][Letter::gen(1).code()] = k + 1;
        let mut accepting = vec![false; count];
        accepting[k + 1] = true;
        let d = ConeDfa::from_table(2, 0, accepting, table).unwrap();
        let f2 = GroupModel::free(2);
        let b = f2.parse_element("b").unwrap();
        let cfg = EnumConfig::default();
        assert!(!Membership::bounded(&d, &f2, 1, 12, &cfg).unwrap().contains(&b));
        assert!(Membership::bounded(&d, &f2, 1, 13, &cfg).unwrap().contains(&b));
        assert_eq!(exact_membership(&d, &f2, &b).unwrap(), Some(true));
        assert_eq!(exact_membership(&d, &f2, &f2.parse_element("ba").unwrap()).unwrap(), Some(false));
        let decided = Membership::decide(&d, &f2, [b.clone()].into_iter(), 1, 12, &cfg).unwrap();
        assert!(decided.exact && decided.contains(&b) && decided.witness(&b).is_none());
    }

    #[test]
    fn rejects_mismatched_alphabets() {
        let d = z2_lex_dfa();
        let m = GroupModel::free(3);
        assert!(matches!(
            Membership::bounded(&d, &m, 1, 1, &EnumConfig::default()),
            Err(RegularError::AlphabetMismatch { .. })
        ));
    }
}
