//! Deterministic automata over the generator alphabet and the positive
//! cones they describe.

mod language;
mod shipped;
mod verify;

pub use language::{exact_membership, LanguageSample, Membership};
pub use shipped::{all_accepting, backtracking, klein_cone_dfa, random_dfa, z2_lex_dfa};
pub use verify::{
    quasigeodesic_check, regular_interpolation, verify_cone_dfa, ConeDfaReport, DfaVerdict, QuasigeodesicReport,
    QuasigeodesicViolation,
};

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::GroupError;
use crate::word::{GeneratorAlphabet, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularError {
    #[error("letter {letter} is not in the automaton alphabet {alphabet}")]
    UnknownLetter { letter: char, alphabet: String },
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("duplicate state {0}")]
    DuplicateState(String),
    #[error("automaton has no states")]
    NoStates,
    #[error("no transition from {state} on {letter}")]
    MissingTransition { state: String, letter: char },
    #[error("alphabet must be the first generator letters in order, got {0:?}")]
    BadAlphabet(String),
    #[error("automaton alphabet {automaton} does not match the group alphabet {group}")]
    AlphabetMismatch { automaton: String, group: String },
    #[error("word {0} is not accepted")]
    NotAccepted(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid automaton file: {0}")]
    Json(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A complete deterministic automaton over the letters of a generator
/// alphabet. States are indices into `states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDfa {
    states: Vec<String>,
    initial: usize,
    accepting: Vec<bool>,
    alphabet: GeneratorAlphabet,
    /// `transitions[state][letter code]`.
    transitions: Vec<Vec<usize>>,
}

/// On-disk layout. Transition keys are letters, uppercase for inverses.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaFile {
    states: Vec<String>,
    initial: String,
    accepting: Vec<String>,
    alphabet: String,
    transitions: BTreeMap<String, BTreeMap<String, String>>,
}

impl ConeDfa {
    /// Builds an automaton from `(from, letter, to)` triples. Every state must
    /// have exactly one transition per letter.
    pub fn new(
        states: &[&str],
        initial: &str,
        accepting: &[&str],
        rank: usize,
        transitions: &[(&str, char, &str)],
    ) -> Result<ConeDfa, RegularError> {
        let mut table: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (from, letter, to) in transitions {
            table
                .entry(from.to_string())
                .or_default()
                .insert(letter.to_string(), to.to_string());
        }
        let alphabet = GeneratorAlphabet::new(rank)?;
        ConeDfa::from_file(DfaFile {
            states: states.iter().map(|s| s.to_string()).collect(),
            initial: initial.to_string(),
            accepting: accepting.iter().map(|s| s.to_string()).collect(),
            alphabet: alphabet.generator_chars(),
            transitions: table,
        })
    }

    /// Builds an automaton from index tables, as produced by generators.
    pub fn from_table(
        rank: usize,
        initial: usize,
        accepting: Vec<bool>,
        transitions: Vec<Vec<usize>>,
    ) -> Result<ConeDfa, RegularError> {
        let alphabet = GeneratorAlphabet::new(rank)?;
        let n = transitions.len();
        if n == 0 {
            return Err(RegularError::NoStates);
        }
        let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
        if initial >= n || accepting.len() != n {
            return Err(RegularError::UnknownState(format!("s{initial}")));
        }
        for (s, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.size() {
                let missing = Letter::from_code(row.len().min(alphabet.size() - 1));
                return Err(RegularError::MissingTransition {
                    state: states[s].clone(),
                    letter: missing.to_char(),
                });
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(RegularError::UnknownState(format!("s{t}")));
            }
        }
        Ok(ConeDfa {
            states,
            initial,
            accepting,
            alphabet,
            transitions,
        })
    }

    pub fn from_json(text: &str) -> Result<ConeDfa, RegularError> {
        let file: DfaFile = serde_json::from_str(text).map_err(|e| RegularError::Json(e.to_string()))?;
        ConeDfa::from_file(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("automaton serializes")
    }

    fn from_file(file: DfaFile) -> Result<ConeDfa, RegularError> {
        if file.states.is_empty() {
            return Err(RegularError::NoStates);
        }
        let rank = file.alphabet.chars().count();
        let alphabet = GeneratorAlphabet::new(rank)?;
        if alphabet.generator_chars() != file.alphabet {
            return Err(RegularError::BadAlphabet(file.alphabet));
        }
        let mut index = HashMap::new();
        for (i, s) in file.states.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(RegularError::DuplicateState(s.clone()));
            }
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| RegularError::UnknownState(s.to_string()));
        let initial = lookup(&file.initial)?;
        let mut accepting = vec![false; file.states.len()];
        for s in &file.accepting {
            accepting[lookup(s)?] = true;
        }
        for from in file.transitions.keys() {
            lookup(from)?;
        }
        let mut transitions = Vec::with_capacity(file.states.len());
        for state in &file.states {
            let row = file.transitions.get(state);
            if let Some(row) = row {
                for key in row.keys() {
                    let mut chars = key.chars();
                    let letter = match (chars.next(), chars.next()) {
                        (Some(c), None) => Letter::from_char(c)?,
                        _ => return Err(RegularError::Json(format!("transition key {key:?} is not a letter"))),
                    };
                    if !alphabet.contains(letter) {
                        return Err(RegularError::UnknownLetter {
                            letter: letter.to_char(),
                            alphabet: file.alphabet.clone(),
                        });
                    }
                }
            }
            let mut targets = Vec::with_capacity(alphabet.size());
            for letter in alphabet.letters() {
                let to = row
                    .and_then(|r| r.get(&letter.to_char().to_string()))
                    .ok_or_else(|| RegularError::MissingTransition {
                        state: state.clone(),
                        letter: letter.to_char(),
                    })?;
                targets.push(lookup(to)?);
            }
            transitions.push(targets);
        }
        Ok(ConeDfa {
            states: file.states,
            initial,
            accepting,
            alphabet,
            transitions,
        })
    }

    fn to_file(&self) -> DfaFile {
        DfaFile {
            states: self.states.clone(),
            initial: self.states[self.initial].clone(),
            accepting: (0..self.len())
                .filter(|&s| self.accepting[s])
                .map(|s| self.states[s].clone())
                .collect(),
            alphabet: self.alphabet.generator_chars(),
            transitions: (0..self.len())
                .map(|s| {
                    let row = self
                        .alphabet
                        .letters()
                        .map(|l| (l.to_char().to_string(), self.states[self.step(s, l)].clone()))
                        .collect();
                    (self.states[s].clone(), row)
                })
                .collect(),
        }
    }

    /// Number of states.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn alphabet(&self) -> GeneratorAlphabet {
        self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    /// Transition on a letter of the alphabet.
    pub fn step(&self, s: usize, letter: Letter) -> usize {
        self.transitions[s][letter.code()]
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let mut live = self.accepting.clone();
        loop {
            let mut changed = false;
            for s in 0..self.len() {
                if !live[s] && self.transitions[s].iter().any(|&t| live[t]) {
                    live[s] = true;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    /// Length of the longest accepted word, or `None` when the language is
    /// infinite. An empty language has longest length `Some(0)`.
    pub fn longest_accepted(&self) -> Option<usize> {
        let live = self.live_states();
        // longest path over live states reachable from the initial state; a
        // cycle among them makes the language infinite
        let mut memo: Vec<Option<usize>> = vec![None; self.len()];
        let mut on_stack = vec![false; self.len()];
        fn longest(d: &ConeDfa, s: usize, live: &[bool], memo: &mut [Option<usize>], on_stack: &mut [bool]) -> Option<usize> {
            if let Some(v) = memo[s] {
                return Some(v);
            }
            if on_stack[s] {
                return None;
            }
            on_stack[s] = true;
            let mut best = 0;
            for &t in &d.transitions[s] {
                if live[t] {
                    best = best.max(1 + longest(d, t, live, memo, on_stack)?);
                }
            }
            on_stack[s] = false;
            memo[s] = Some(best);
            Some(best)
        }
        if !live[self.initial] {
            return Some(0);
        }
        longest(self, self.initial, &live, &mut memo, &mut on_stack)
    }
}

/// Runs the automaton on `w` from the initial state.
pub fn dfa_run(d: &ConeDfa, w: &Word) -> Result<(usize, bool), RegularError> {
    let mut s = d.initial;
    for &letter in w.letters() {
        if !d.alphabet.contains(letter) {
            return Err(RegularError::UnknownLetter {
                letter: letter.to_char(),
                alphabet: d.alphabet.generator_chars(),
            });
        }
        s = d.step(s, letter);
    }
    Ok((s, d.accepting[s]))
}

/// A shortest word leading from `s` to an accepting state. Among shortest
/// words the first in letter order at each step is returned.
pub fn prefix_completion(d: &ConeDfa, s: usize) -> Option<Word> {
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; d.len()];
    let mut seen = vec![false; d.len()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(q) = queue.pop_front() {
        if d.accepting[q] {
            let mut letters = Vec::new();
            let mut cur = q;
            while let Some((prev, letter)) = parent[cur] {
                letters.push(letter);
                cur = prev;
            }
            letters.reverse();
            assert!(letters.len() < d.len(), "completion longer than the state count");
            return Some(Word::from_letters(letters));
        }
        for letter in d.alphabet.letters() {
            let t = d.step(q, letter);
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((q, letter));
                queue.push_back(t);
            }
        }
    }
    None
}

/// Width at which the evaluated language is connected: `2 |states| + 1`.
pub fn connectivity_radius(d: &ConeDfa) -> usize {
    2 * d.len() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn runs_the_lex_automaton() {
        let d = z2_lex_dfa();
        assert_eq!(dfa_run(&d, &Word::empty()).unwrap(), (d.initial(), false));
        assert!(dfa_run(&d, &word("a")).unwrap().1);
        let (s, accepted) = dfa_run(&d, &word("A")).unwrap();
        assert!(!accepted);
        assert_eq!(d.state_name(s), "sink");
        assert!(dfa_run(&d, &word("aabBB")).is_ok());
        assert!(!dfa_run(&d, &word("aabB")).unwrap().1);
        assert!(dfa_run(&d, &word("aaBB")).unwrap().1);
        assert!(matches!(dfa_run(&d, &word("c")), Err(RegularError::UnknownLetter { letter: 'c', .. })));
    }

    #[test]
    fn completions() {
        let d = z2_lex_dfa();
        assert_eq!(prefix_completion(&d, d.initial()).unwrap().to_string(), "a");
        let sx = d.state_index("sx").unwrap();
        assert!(prefix_completion(&d, sx).unwrap().is_empty());
        assert_eq!(prefix_completion(&d, d.state_index("sink").unwrap()), None);
        for d in [z2_lex_dfa(), klein_cone_dfa(), backtracking()] {
            for s in 0..d.len() {
                if let Some(w) = prefix_completion(&d, s) {
                    assert!(w.len() < d.len());
                    let mut t = s;
                    for &l in w.letters() {
                        t = d.step(t, l);
                    }
                    assert!(d.is_accepting(t));
                }
            }
        }
    }

    #[test]
    fn radii() {
        assert_eq!(connectivity_radius(&z2_lex_dfa()), 11);
        assert_eq!(connectivity_radius(&klein_cone_dfa()), 11);
        assert_eq!(connectivity_radius(&all_accepting(2)), 3);
    }

    #[test]
    fn json_round_trip() {
        for d in [z2_lex_dfa(), klein_cone_dfa(), all_accepting(3)] {
            let text = d.to_json();
            assert_eq!(ConeDfa::from_json(&text).unwrap(), d);
        }
    }

    #[test]
    fn json_errors() {
        let ok = r#"{"states":["s"],"initial":"s","accepting":["s"],"alphabet":"a","transitions":{"s":{"a":"s","A":"s"}}}"#;
        assert!(ConeDfa::from_json(ok).is_ok());
        let missing = ok.replace(r#","A":"s""#, "");
        assert!(matches!(ConeDfa::from_json(&missing), Err(RegularError::MissingTransition { letter: 'A', .. })));
        let stray = ok.replace(r#""A":"s""#, r#""A":"s","b":"s""#);
        assert!(matches!(ConeDfa::from_json(&stray), Err(RegularError::UnknownLetter { letter: 'b', .. })));
        let unknown = ok.replace(r#""initial":"s""#, r#""initial":"t""#);
        assert_eq!(ConeDfa::from_json(&unknown), Err(RegularError::UnknownState("t".into())));
        let alphabet = ok.replace(r#""alphabet":"a""#, r#""alphabet":"b""#);
        assert!(matches!(ConeDfa::from_json(&alphabet), Err(RegularError::BadAlphabet(_))));
        let extra = ok.replace(r#""initial""#, r#""start":1,"initial""#);
        assert!(matches!(ConeDfa::from_json(&extra), Err(RegularError::Json(_))));
        let dup = ok.replace(r#""states":["s"]"#, r#""states":["s","s"]"#);
        assert_eq!(ConeDfa::from_json(&dup), Err(RegularError::DuplicateState("s".into())));
    }

    #[test]
    fn language_size() {
        assert_eq!(z2_lex_dfa().longest_accepted(), None);
        let finite = ConeDfa::new(
            &["s0", "s1", "dead"],
            "s0",
            &["s1"],
            1,
            &[("s0", 'a', "s1"), ("s0", 'A', "dead"), ("s1", 'a', "dead"), ("s1", 'A', "dead"), ("dead", 'a', "dead"), ("dead", 'A', "dead")],
        )
        .unwrap();
        assert_eq!(finite.longest_accepted(), Some(1));
        let empty = ConeDfa::from_table(1, 0, vec![false], vec![vec![0, 0]]).unwrap();
        assert_eq!(empty.longest_accepted(), Some(0));
    }
}
