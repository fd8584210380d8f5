//! Negative swamps: sets of negative elements whose removal r-disconnects
//! two positive elements.
//!
//! In a free group the Cayley graph is a tree and the swamp is the ball of
//! radius `r` around `c = g_(r+1)^-1`. Any r-path between two branches at `c`
//! whose points all stay farther than `r` from `c` would need a step between
//! branches, and such a step has length at least `2r + 2`. So every such
//! path meets the swamp.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use serde::Serialize;

use super::{max_of_ball, GeometryError, RPath};
use crate::group::{Ball, Element, EnumConfig, GroupKind, GroupModel};
use crate::order::{OrderOracle, Sign};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeparationVerdict {
    /// Structural proof in a tree.
    CertifiedTree,
    /// The search around the witness stayed strictly inside the ball and
    /// never reached the other witness.
    CertifiedExhaustive,
    /// No avoiding path inside the ball, but the search touched its boundary.
    Evidence,
    /// An avoiding r-path exists.
    NotSeparating,
}

impl SeparationVerdict {
    pub fn tag(self) -> &'static str {
        match self {
            SeparationVerdict::CertifiedTree => "certified-tree",
            SeparationVerdict::CertifiedExhaustive => "certified-exhaustive",
            SeparationVerdict::Evidence => "evidence",
            SeparationVerdict::NotSeparating => "not-separating",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SwampCertificate {
    pub r: usize,
    pub center: Element,
    /// `center * B(1, r)`, sorted shortlex.
    pub swamp: Vec<Element>,
    pub witnesses: (Element, Element),
    pub verdict: SeparationVerdict,
    /// One positive element per branch at the center that had one, with the
    /// branch's first letter.
    pub branch_witnesses: Vec<(Letter, Element)>,
}

#[derive(Serialize)]
struct CertificateJson {
    r: usize,
    center: String,
    swamp: Vec<String>,
    witnesses: [String; 2],
    verdict: SeparationVerdict,
}

impl Serialize for SwampCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CertificateJson {
            r: self.r,
            center: self.center.to_string(),
            swamp: self.swamp.iter().map(|g| g.to_string()).collect(),
            witnesses: [self.witnesses.0.to_string(), self.witnesses.1.to_string()],
            verdict: self.verdict,
        }
        .serialize(serializer)
    }
}

/// Center and swamp `S = c B(1, r)` with `c = (max B(1, r + 1))^-1`, after
/// checking that `S` is negative.
fn ray_swamp(o: &OrderOracle, r: usize, config: &EnumConfig) -> Result<(Element, Vec<Element>), GeometryError> {
    let model = o.model();
    let center = model.invert(&max_of_ball(o, r + 1, config)?);
    let mut swamp: Vec<Element> = Ball::around(model, &center, r, config)?.elements().cloned().collect();
    swamp.sort();
    if let Some(bad) = swamp.iter().find(|s| o.sign(s) != Sign::Negative) {
        return Err(GeometryError::SwampNotNegative(bad.to_string()));
    }
    Ok((center, swamp))
}

/// First letter of the canonical word of `c^-1 g`: in a tree this is the
/// branch at `c` containing `g`.
fn branch_of(model: &GroupModel, center: &Element, g: &Element) -> Option<Letter> {
    model.quotient(center, g).word().letters().first().copied()
}

/// Negative swamp of width `r` for a free group, with positive witnesses in
/// two different branches at the center, each farther than `r` from it.
/// Every branch is searched up to distance `search_radius` from the center.
pub fn tree_swamp_certificate(
    o: &OrderOracle,
    r: usize,
    search_radius: usize,
    config: &EnumConfig,
) -> Result<SwampCertificate, GeometryError> {
    let model = o.model();
    let k = match model.kind() {
        GroupKind::Free(k) if *k >= 2 => *k,
        _ => return Err(GeometryError::NotFreeGroup(model.to_string())),
    };
    if search_radius <= r + 1 {
        return Err(GeometryError::InvalidArgument(format!(
            "search radius {search_radius} must exceed r + 1 = {}",
            r + 1
        )));
    }
    let (center, swamp) = ray_swamp(o, r, config)?;

    let mut branch_witnesses = Vec::new();
    for x in model.alphabet().letters() {
        let w = branch_witness(o, &center, x, r, search_radius, 2 * k - 1, config)?.ok_or(
            GeometryError::WitnessNotFound {
                search_radius,
                branch: x.to_char(),
            },
        )?;
        branch_witnesses.push((x, w));
    }
    Ok(SwampCertificate {
        r,
        witnesses: (branch_witnesses[0].1.clone(), branch_witnesses[1].1.clone()),
        center,
        swamp,
        verdict: SeparationVerdict::CertifiedTree,
        branch_witnesses,
    })
}

/// Shortlex-least positive element `c w` at the smallest depth `|w| > r`,
/// `w` reduced and starting with `x`.
fn branch_witness(
    o: &OrderOracle,
    center: &Element,
    x: Letter,
    r: usize,
    search_radius: usize,
    branching: usize,
    config: &EnumConfig,
) -> Result<Option<Element>, GeometryError> {
    let model = o.model();
    let mut frontier = vec![Word::from_letters(vec![x])];
    for depth in 1..=search_radius {
        if depth > r {
            for w in &frontier {
                let g = model.mul(center, &model.normal_form(w)?);
                if o.sign(&g).is_positive() {
                    return Ok(Some(g));
                }
            }
        }
        if depth == search_radius {
            break;
        }
        config.check(branching, depth)?;
        let letters: Vec<Letter> = model.alphabet().letters().collect();
        frontier = frontier
            .iter()
            .flat_map(|w| {
                let last = *w.letters().last().expect("nonempty");
                letters
                    .iter()
                    .filter(move |y| **y != last.inverse())
                    .map(move |y| {
                        let mut next = w.clone();
                        next.push(*y);
                        next
                    })
            })
            .collect();
    }
    Ok(None)
}

/// Candidate swamp from the maxima ray for any model: `c`, `S` as in the
/// tree case, witnesses taken from the first two branches at `c` (by first
/// letter of `c^-1 g`) holding a positive element of `B(1, R)` at distance
/// more than `r` from `c`. The verdict comes from [`verify_separation`].
pub fn ray_swamp_candidate(
    o: &OrderOracle,
    r: usize,
    radius: usize,
    config: &EnumConfig,
) -> Result<SwampCertificate, GeometryError> {
    let model = o.model();
    let (center, swamp) = ray_swamp(o, r, config)?;
    let ball = Ball::enumerate(model, radius, config)?;
    let mut branch_witnesses: Vec<(Letter, Element)> = Vec::new();
    let mut candidates: Vec<(usize, &Element)> = ball
        .elements()
        .filter(|g| o.sign(g).is_positive())
        .map(|g| (model.distance(&center, g), g))
        .filter(|(d, _)| *d > r)
        .collect();
    candidates.sort();
    for (_, g) in candidates {
        let b = branch_of(model, &center, g).expect("distinct from center");
        if !branch_witnesses.iter().any(|(l, _)| *l == b) {
            branch_witnesses.push((b, g.clone()));
        }
    }
    branch_witnesses.sort_by_key(|(l, _)| *l);
    if branch_witnesses.len() < 2 {
        return Err(GeometryError::WitnessNotFound {
            search_radius: radius,
            branch: branch_witnesses.first().map_or('?', |(l, _)| l.to_char()),
        });
    }
    let mut cert = SwampCertificate {
        r,
        witnesses: (branch_witnesses[0].1.clone(), branch_witnesses[1].1.clone()),
        center,
        swamp,
        verdict: SeparationVerdict::Evidence,
        branch_witnesses,
    };
    cert.verdict = verify_separation(&cert, model, radius, config)?.verdict;
    Ok(cert)
}

#[derive(Debug, Clone)]
pub struct SeparationOutcome {
    pub verdict: SeparationVerdict,
    /// An r-path between the witnesses avoiding the swamp, when one was found.
    pub path: Option<RPath>,
}

/// Decides whether the swamp separates the witnesses. Free groups get the
/// tree argument when its hypotheses hold; otherwise r-paths avoiding the
/// swamp are searched inside `B(1, radius)`.
pub fn verify_separation(
    cert: &SwampCertificate,
    model: &GroupModel,
    radius: usize,
    config: &EnumConfig,
) -> Result<SeparationOutcome, GeometryError> {
    if model.is_free() && tree_argument_applies(cert, model, config)? {
        return Ok(SeparationOutcome {
            verdict: SeparationVerdict::CertifiedTree,
            path: None,
        });
    }

    let r = cert.r;
    let (u, v) = &cert.witnesses;
    let ball = Ball::enumerate(model, radius, config)?;
    for w in [u, v] {
        if !ball.contains(w) {
            return Err(GeometryError::InvalidArgument(format!("witness {w} lies outside B(1, {radius})")));
        }
    }
    let swamp: HashSet<&Element> = cert.swamp.iter().collect();
    if swamp.contains(u) || swamp.contains(v) {
        return Ok(SeparationOutcome {
            verdict: SeparationVerdict::NotSeparating,
            path: None,
        });
    }
    let mut steps: Vec<Element> = Ball::enumerate(model, r, config)?
        .elements()
        .filter(|s| !s.is_identity())
        .cloned()
        .collect();
    steps.sort();

    let mut parent: HashMap<Element, Option<Element>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(u.clone(), None);
    queue.push_back(u.clone());
    let mut touched_boundary = false;
    while let Some(p) = queue.pop_front() {
        if p == *v {
            let mut points = vec![p.clone()];
            let mut cur = p;
            while let Some(Some(prev)) = parent.get(&cur) {
                points.push(prev.clone());
                cur = prev.clone();
            }
            points.reverse();
            return Ok(SeparationOutcome {
                verdict: SeparationVerdict::NotSeparating,
                path: Some(RPath::new(r, points)),
            });
        }
        if p.norm() + r > radius {
            touched_boundary = true;
        }
        for s in &steps {
            let q = model.mul(&p, s);
            if q.norm() <= radius && !swamp.contains(&q) && !parent.contains_key(&q) {
                parent.insert(q.clone(), Some(p.clone()));
                queue.push_back(q);
            }
        }
    }
    let verdict = if touched_boundary {
        SeparationVerdict::Evidence
    } else {
        SeparationVerdict::CertifiedExhaustive
    };
    Ok(SeparationOutcome { verdict, path: None })
}

/// Witnesses in different branches at the center, both farther than `r`
/// from it, and the swamp is exactly the closed `r`-ball at the center.
fn tree_argument_applies(cert: &SwampCertificate, model: &GroupModel, config: &EnumConfig) -> Result<bool, GeometryError> {
    let (u, v) = &cert.witnesses;
    let c = &cert.center;
    if model.distance(c, u) <= cert.r || model.distance(c, v) <= cert.r {
        return Ok(false);
    }
    if branch_of(model, c, u) == branch_of(model, c, v) {
        return Ok(false);
    }
    let mut expected: Vec<Element> = Ball::around(model, c, cert.r, config)?.elements().cloned().collect();
    expected.sort();
    Ok(expected == cert.swamp)
}

/// Random r-path in a free group from `from` to `to` through up to three
/// random waypoints of `B(center, radius)`, moving along geodesics in
/// random steps of length `1..=r`. Tree balls are convex, so the path stays
/// in `B(center, radius)` when its endpoints do.
pub fn sample_r_path<R: Rng + ?Sized>(
    model: &GroupModel,
    from: &Element,
    to: &Element,
    r: usize,
    center: &Element,
    radius: usize,
    rng: &mut R,
) -> RPath {
    assert!(model.is_free(), "path sampler walks tree geodesics");
    assert!(r >= 1);
    let letters: Vec<Letter> = model.alphabet().letters().collect();
    let mut stops = vec![from.clone()];
    for _ in 0..rng.gen_range(0..=3) {
        let len = rng.gen_range(0..=radius);
        let mut w = Word::empty();
        while w.len() < len {
            let y = letters[rng.gen_range(0..letters.len())];
            if w.letters().last() != Some(&y.inverse()) {
                w.push(y);
            }
        }
        stops.push(model.mul(center, &model.normal_form(&w).expect("alphabet letters")));
    }
    stops.push(to.clone());

    let mut points = vec![from.clone()];
    for leg in stops.windows(2) {
        let (p, q) = (&leg[0], &leg[1]);
        let route = model.quotient(p, q);
        let n = route.norm();
        let mut i = 0;
        while i < n {
            i = (i + rng.gen_range(1..=r)).min(n);
            let prefix = model.normal_form(&route.word().prefix(i)).expect("alphabet letters");
            points.push(model.mul(p, &prefix));
        }
    }
    RPath::new(r, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Factor;
    use crate::order::Surd;
    use rand::SeedableRng;

    fn magnus() -> OrderOracle {
        OrderOracle::magnus(&GroupModel::free(2)).unwrap()
    }

    #[test]
    fn tree_certificates_have_ball_sized_swamps() {
        let cfg = EnumConfig::default();
        let o = magnus();
        for (r, size) in [(0, 1), (1, 5), (2, 17), (3, 53)] {
            let cert = tree_swamp_certificate(&o, r, r + 8, &cfg).unwrap();
            assert_eq!(cert.swamp.len(), size);
            assert_eq!(cert.verdict, SeparationVerdict::CertifiedTree);
            assert_eq!(cert.branch_witnesses.len(), 4);
            let m = o.model();
            let (u, v) = &cert.witnesses;
            assert!(o.sign(u).is_positive() && o.sign(v).is_positive());
            assert!(m.distance(&cert.center, u) > r && m.distance(&cert.center, v) > r);
            assert_ne!(branch_of(m, &cert.center, u), branch_of(m, &cert.center, v));
            let outcome = verify_separation(&cert, m, 0, &cfg).unwrap();
            assert_eq!(outcome.verdict, SeparationVerdict::CertifiedTree);
        }
    }

    #[test]
    fn larger_search_radius_gives_the_same_certificate() {
        let cfg = EnumConfig::default();
        let a = tree_swamp_certificate(&magnus(), 3, 12, &cfg).unwrap();
        let b = tree_swamp_certificate(&magnus(), 3, 11, &cfg).unwrap();
        assert_eq!(a.swamp.len(), 53);
        assert_eq!(a.witnesses, b.witnesses);
    }

    #[test]
    fn sampled_paths_meet_the_swamp() {
        let cfg = EnumConfig::default();
        let o = magnus();
        let m = o.model();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for r in 1..=3 {
            let search = r + 8;
            let cert = tree_swamp_certificate(&o, r, search, &cfg).unwrap();
            let swamp: HashSet<&Element> = cert.swamp.iter().collect();
            for _ in 0..100 {
                let path = sample_r_path(m, &cert.witnesses.0, &cert.witnesses.1, r, &cert.center, search, &mut rng);
                assert!(path.is_valid(m));
                assert!(path.points.iter().all(|p| m.distance(&cert.center, p) <= search));
                assert!(path.points.iter().any(|p| swamp.contains(p)));
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let cfg = EnumConfig::default();
        assert!(matches!(
            tree_swamp_certificate(&magnus(), 2, 3, &cfg),
            Err(GeometryError::InvalidArgument(_))
        ));
        let z2 = GroupModel::free_abelian(2);
        let o = OrderOracle::hyperplane(&z2, vec![Surd::integer(1), Surd::new(0, 1)]).unwrap();
        assert!(matches!(
            tree_swamp_certificate(&o, 1, 9, &cfg),
            Err(GeometryError::NotFreeGroup(_))
        ));
    }

    #[test]
    fn tiny_horizon_misses_witnesses() {
        let cfg = EnumConfig::default();
        let err = tree_swamp_certificate(&magnus(), 1, 3, &cfg).unwrap_err();
        assert!(matches!(err, GeometryError::WitnessNotFound { search_radius: 3, .. }), "{err:?}");
    }

    #[test]
    fn abelian_point_does_not_separate() {
        let cfg = EnumConfig::default();
        let z2 = GroupModel::free_abelian(2);
        let el = |s: &str| z2.parse_element(s).unwrap();
        let cert = SwampCertificate {
            r: 1,
            center: el("a"),
            swamp: vec![el("a")],
            witnesses: (el("b"), el("aa")),
            verdict: SeparationVerdict::Evidence,
            branch_witnesses: vec![],
        };
        let outcome = verify_separation(&cert, &z2, 3, &cfg).unwrap();
        assert_eq!(outcome.verdict, SeparationVerdict::NotSeparating);
        let path = outcome.path.unwrap();
        assert!(path.is_valid(&z2));
        assert_eq!(path.points.first(), Some(&el("b")));
        assert_eq!(path.points.last(), Some(&el("aa")));
        assert!(!path.points.contains(&el("a")));
    }

    #[test]
    fn enclosed_witness_is_certified_exhaustively() {
        // in Z, the pair {a^-1, a} around the identity separates 1 from a^5
        let cfg = EnumConfig::default();
        let z = GroupModel::free_abelian(1);
        let el = |s: &str| z.parse_element(s).unwrap();
        let mut cert = SwampCertificate {
            r: 1,
            center: el("1"),
            swamp: vec![el("A"), el("a")],
            witnesses: (el("1"), el("aaaaa")),
            verdict: SeparationVerdict::Evidence,
            branch_witnesses: vec![],
        };
        let outcome = verify_separation(&cert, &z, 6, &cfg).unwrap();
        assert_eq!(outcome.verdict, SeparationVerdict::CertifiedExhaustive);
        // the other side reaches the boundary
        cert.witnesses = (el("aaaaa"), el("1"));
        let outcome = verify_separation(&cert, &z, 6, &cfg).unwrap();
        assert_eq!(outcome.verdict, SeparationVerdict::Evidence);
    }

    #[test]
    fn product_candidate_swamp_is_bypassed() {
        let cfg = EnumConfig::default();
        let f2 = GroupModel::free(2);
        let z1 = GroupModel::free_abelian(1);
        let p = GroupModel::direct_product(f2.clone(), z1.clone());
        let z = OrderOracle::hyperplane(&z1, vec![Surd::integer(1)]).unwrap();
        let o = OrderOracle::lex_pair(&p, OrderOracle::magnus(&f2).unwrap(), z, Factor::First).unwrap();
        let cert = ray_swamp_candidate(&o, 1, 5, &cfg).unwrap();
        assert_eq!(cert.swamp.len(), 7);
        assert!(cert.swamp.iter().all(|s| o.sign(s) == Sign::Negative));
        // the Z direction walks around c B(1, 1)
        assert_eq!(cert.verdict, SeparationVerdict::NotSeparating);
        let outcome = verify_separation(&cert, &p, 5, &cfg).unwrap();
        let path = outcome.path.unwrap();
        assert!(path.is_valid(&p));
        assert!(path.points.iter().all(|q| !cert.swamp.contains(q)));
    }
}
