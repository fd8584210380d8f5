use rand::Rng;

use super::ConeDfa;

/// Cone `{(x, y) : x > 0, or x = 0 and y > 0}` of `Z^2` written as
/// `a^k b^j` with `k >= 1`, or `b^j` with `j >= 1`.
pub fn z2_lex_dfa() -> ConeDfa {
    ConeDfa::new(
        &["s0", "sx", "sy+", "sy-", "sink"],
        "s0",
        &["sx", "sy+", "sy-"],
        2,
        &[
            ("s0", 'a', "sx"),
            ("s0", 'A', "sink"),
            ("s0", 'b', "sy+"),
            ("s0", 'B', "sink"),
            ("sx", 'a', "sx"),
            ("sx", 'A', "sink"),
            ("sx", 'b', "sy+"),
            ("sx", 'B', "sy-"),
            ("sy+", 'a', "sink"),
            ("sy+", 'A', "sink"),
            ("sy+", 'b', "sy+"),
            ("sy+", 'B', "sink"),
            ("sy-", 'a', "sink"),
            ("sy-", 'A', "sink"),
            ("sy-", 'b', "sink"),
            ("sy-", 'B', "sy-"),
            ("sink", 'a', "sink"),
            ("sink", 'A', "sink"),
            ("sink", 'b', "sink"),
            ("sink", 'B', "sink"),
        ],
    )
    .expect("well-formed table")
}

/// Cone of the Klein bottle group in normal forms `b^n a^m`: all `m >= 1`,
/// or `m = 0` and `n >= 1`.
pub fn klein_cone_dfa() -> ConeDfa {
    ConeDfa::new(
        &["s0", "sb+", "sb-", "sa", "sink"],
        "s0",
        &["sb+", "sa"],
        2,
        &[
            ("s0", 'a', "sa"),
            ("s0", 'A', "sink"),
            ("s0", 'b', "sb+"),
            ("s0", 'B', "sb-"),
            ("sb+", 'a', "sa"),
            ("sb+", 'A', "sink"),
            ("sb+", 'b', "sb+"),
            ("sb+", 'B', "sink"),
            ("sb-", 'a', "sa"),
            ("sb-", 'A', "sink"),
            ("sb-", 'b', "sink"),
            ("sb-", 'B', "sb-"),
            ("sa", 'a', "sa"),
            ("sa", 'A', "sink"),
            ("sa", 'b', "sink"),
            ("sa", 'B', "sink"),
            ("sink", 'a', "sink"),
            ("sink", 'A', "sink"),
            ("sink", 'b', "sink"),
            ("sink", 'B', "sink"),
        ],
    )
    .expect("well-formed table")
}

/// One accepting state looping on every letter.
pub fn all_accepting(rank: usize) -> ConeDfa {
    ConeDfa::from_table(rank, 0, vec![true], vec![vec![0; 2 * rank]]).expect("well-formed table")
}

/// The words `(a a^-1)^k a` over two generators: every accepted word but
/// the first backtracks.
pub fn backtracking() -> ConeDfa {
    let mut table: Vec<(&str, char, &str)> = Vec::new();
    for state in ["p0", "p1", "sink"] {
        for letter in ['a', 'A', 'b', 'B'] {
            let to = match (state, letter) {
                ("p0", 'a') => "p1",
                ("p1", 'A') => "p0",
                _ => "sink",
            };
            table.push((state, letter, to));
        }
    }
    ConeDfa::new(&["p0", "p1", "sink"], "p0", &["p1"], 2, &table).expect("well-formed table")
}

/// Uniform random automaton with `1..=max_states` states, uniform
/// transitions and each state accepting with probability 1/2.
pub fn random_dfa<R: Rng + ?Sized>(rank: usize, max_states: usize, rng: &mut R) -> ConeDfa {
    let n = rng.gen_range(1..=max_states);
    let transitions = (0..n)
        .map(|_| (0..2 * rank).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    ConeDfa::from_table(rank, 0, accepting, transitions).expect("well-formed table")
}
