use serde::{Serialize, Serializer};

use super::language::check_alphabet;
use super::{connectivity_radius, dfa_run, prefix_completion, ConeDfa, LanguageSample, Membership, RegularError};
use crate::geometry::RPath;
use crate::group::{Ball, Element, EnumConfig, GroupModel};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum DfaVerdict {
    Pass,
    Fail,
    Unknown,
}

fn words<S: Serializer>(elements: &[Element], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(elements.iter().map(|g| g.to_string()))
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeDfaReport {
    pub model: String,
    pub radius: usize,
    pub max_length: usize,
    /// `exact` when non-membership is proved, `bounded` when it only means
    /// "not reached by words of length at most `max_length`".
    pub membership: &'static str,
    pub verdict: DfaVerdict,
    pub counterexample: Option<String>,
    /// Members of the ball that are evaluations of accepted words.
    #[serde(serialize_with = "words")]
    pub in_set: Vec<Element>,
    /// Elements `g` for which neither `g` nor `g^-1` was reached.
    #[serde(serialize_with = "words")]
    pub unknown: Vec<Element>,
    pub closure_pairs: usize,
}

/// Checks on `B(1, R)` that the evaluated language is a positive cone: it
/// misses the identity, contains exactly one of `g`, `g^-1` for every other
/// `g`, and is closed under products that stay in the ball. Membership is
/// searched with words of length at most `max_length`, and decided exactly
/// for free groups and for finite languages within that length.
pub fn verify_cone_dfa(
    d: &ConeDfa,
    m: &GroupModel,
    radius: usize,
    max_length: usize,
    config: &EnumConfig,
) -> Result<ConeDfaReport, RegularError> {
    check_alphabet(d, m)?;
    let ball = Ball::enumerate(m, radius, config)?;
    let inside = Membership::decide(d, m, ball.elements().cloned(), radius, max_length, config)?;
    let witness = |g: &Element| match inside.witness(g) {
        Some(w) => format!(" (accepted word {w})"),
        None => String::new(),
    };

    let mut counterexample = None;
    let mut unknown = Vec::new();
    let identity = m.identity();
    if inside.contains(&identity) {
        counterexample = Some(format!("identity is accepted{}", witness(&identity)));
    }
    for g in ball.elements().filter(|g| !g.is_identity()) {
        if counterexample.is_some() {
            break;
        }
        let gi = m.invert(g);
        match (inside.contains(g), inside.contains(&gi)) {
            (true, true) => {
                counterexample = Some(format!("{g}{} and {gi}{} are both accepted", witness(g), witness(&gi)));
            }
            (false, false) if inside.exact => {
                counterexample = Some(format!("neither {g} nor {gi} is accepted"));
            }
            (false, false) => unknown.push(g.clone()),
            _ => {}
        }
    }

    let members: Vec<Element> = inside.elements().cloned().collect();
    let mut closure_pairs = 0;
    if counterexample.is_none() && unknown.is_empty() {
        'outer: for g in &members {
            for h in &members {
                if g.norm() + h.norm() > 2 * radius {
                    continue;
                }
                let gh = m.mul(g, h);
                if !ball.contains(&gh) {
                    continue;
                }
                closure_pairs += 1;
                if !inside.contains(&gh) {
                    counterexample = Some(format!("{g} and {h} are accepted but their product {gh} is not"));
                    break 'outer;
                }
            }
        }
    }

    let verdict = match (&counterexample, unknown.is_empty()) {
        (Some(_), _) => DfaVerdict::Fail,
        (None, false) => DfaVerdict::Unknown,
        (None, true) => DfaVerdict::Pass,
    };
    Ok(ConeDfaReport {
        model: m.to_string(),
        radius,
        max_length,
        membership: if inside.exact { "exact" } else { "bounded" },
        verdict,
        counterexample,
        in_set: members,
        unknown,
        closure_pairs,
    })
}

/// Path from the identity to the evaluation of an accepted word `w`: each
/// prefix is completed by a shortest word to an accepted word, and the
/// evaluations of the completed prefixes are visited in order. Consecutive
/// points are at most `2 |states| + 1` apart.
pub fn regular_interpolation(d: &ConeDfa, m: &GroupModel, w: &Word) -> Result<RPath, RegularError> {
    check_alphabet(d, m)?;
    if !dfa_run(d, w)?.1 {
        return Err(RegularError::NotAccepted(w.to_string()));
    }
    let r = connectivity_radius(d);
    let mut points = vec![m.identity()];
    for i in 0..=w.len() {
        let prefix = w.prefix(i);
        let (state, _) = dfa_run(d, &prefix)?;
        let completion = prefix_completion(d, state).expect("prefix of an accepted word");
        let completed = prefix.concat(&completion);
        assert!(dfa_run(d, &completed)?.1, "completed prefix {completed} is not accepted");
        points.push(m.normal_form(&completed)?);
    }
    let path = RPath::new(r, points);
    assert!(path.is_valid(m), "gap above {r} in {:?}", path.words());
    Ok(path)
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasigeodesicViolation {
    pub word: String,
    pub i: usize,
    pub j: usize,
    pub distance: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasigeodesicReport {
    pub lambda: f64,
    pub c: f64,
    pub max_length: usize,
    pub words_checked: usize,
    pub verdict: DfaVerdict,
    pub violation: Option<QuasigeodesicViolation>,
}

/// Checks `d(w_i, w_j) >= (j - i) / lambda - c` for all prefixes `w_i`, `w_j`
/// of every accepted word of length at most `max_length`, words in shortlex
/// order. Stops at the first violation.
pub fn quasigeodesic_check(
    d: &ConeDfa,
    m: &GroupModel,
    lambda: f64,
    c: f64,
    max_length: usize,
    config: &EnumConfig,
) -> Result<QuasigeodesicReport, RegularError> {
    if !(lambda >= 1.0 && c >= 0.0 && lambda.is_finite() && c.is_finite()) {
        return Err(RegularError::InvalidArgument(format!("need lambda >= 1 and c >= 0, got {lambda} and {c}")));
    }
    let sample = LanguageSample::enumerate(d, m, max_length, config)?;
    let mut words_checked = 0;
    for w in &sample.words {
        words_checked += 1;
        let mut prefixes = vec![m.identity()];
        for &x in w.letters() {
            let next = m.mul_letter(prefixes.last().expect("nonempty"), x);
            prefixes.push(next);
        }
        for i in 0..prefixes.len() {
            for j in i + 1..prefixes.len() {
                let distance = m.distance(&prefixes[i], &prefixes[j]);
                // distance >= (j - i) / lambda - c, multiplied through by lambda
                if lambda * (distance as f64 + c) < (j - i) as f64 {
                    return Ok(QuasigeodesicReport {
                        lambda,
                        c,
                        max_length,
                        words_checked,
                        verdict: DfaVerdict::Fail,
                        violation: Some(QuasigeodesicViolation {
                            word: w.to_string(),
                            i,
                            j,
                            distance,
                        }),
                    });
                }
            }
        }
    }
    Ok(QuasigeodesicReport {
        lambda,
        c,
        max_length,
        words_checked,
        verdict: DfaVerdict::Pass,
        violation: None,
    })
}
