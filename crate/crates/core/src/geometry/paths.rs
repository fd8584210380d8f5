//! Positive paths built from the structure of the order: translation by a
//! central cofinal element, and the leg-by-leg route through a lexicographic
//! product.

use std::collections::{HashMap, VecDeque};

use super::{r_components, GeometryError, RPath};
use crate::group::{Ball, Element, EnumConfig, Factor, GroupModel};
use crate::order::{OrderKind, OrderOracle, Sign};

/// The 1-path from `g` to `h` through the prefixes of the canonical word of
/// `g^-1 h`.
fn geodesic_points(model: &GroupModel, g: &Element, h: &Element) -> Vec<Element> {
    let mut p = g.clone();
    let mut points = vec![p.clone()];
    for &x in model.quotient(g, h).word().letters() {
        p = model.mul_letter(&p, x);
        points.push(p.clone());
    }
    points
}

fn require_positive(o: &OrderOracle, g: &Element) -> Result<(), GeometryError> {
    o.model().check_element(g)?;
    if o.sign(g).is_positive() {
        Ok(())
    } else {
        Err(GeometryError::NotPositive(g.to_string()))
    }
}

/// Positive 1-path between positive `g` and `h` for an order with a declared
/// central cofinal generator `z`. A geodesic from `g` to `h` is pushed into the
/// cone by `z^k` for the least `k` that makes every point positive; the ends
/// are joined to `g` and `h` along powers of `z`.
pub fn cofinal_positive_path(
    o: &OrderOracle,
    g: &Element,
    h: &Element,
    config: &EnumConfig,
) -> Result<RPath, GeometryError> {
    let z = o.cofinal_central().ok_or(GeometryError::NoDeclaredCofinalCenter)?;
    require_positive(o, g)?;
    require_positive(o, h)?;
    let model = o.model();
    let mut base = geodesic_points(model, g, h);
    // translating by z^k costs k on each side, so k is bounded through the cap
    let limit = usize::try_from(config.cap).unwrap_or(usize::MAX);
    let mut k = 0;
    while !base.iter().all(|p| o.sign(p).is_positive()) {
        k += 1;
        if k > limit {
            return Err(GeometryError::PathNotFound(format!(
                "no power of {z} up to {limit} pushes the path from {g} to {h} into the cone"
            )));
        }
        base = base.iter().map(|p| model.mul(z, p)).collect();
    }

    let mut up = vec![g.clone()];
    for _ in 0..k {
        let next = model.mul(z, up.last().expect("nonempty"));
        up.push(next);
    }
    let mut down = vec![h.clone()];
    for _ in 0..k {
        let next = model.mul(z, down.last().expect("nonempty"));
        down.push(next);
    }
    down.reverse();
    let points = up.into_iter().chain(base).chain(down);
    Ok(RPath::new(1, points))
}

/// The order restricted to one factor of a product: `sign(g)` is the sign of
/// `g` embedded in the product.
pub fn restricted_cone(o: &OrderOracle, which: Factor) -> Result<OrderOracle, GeometryError> {
    let model = o.model();
    let factor = model
        .factor(which)
        .ok_or_else(|| GeometryError::NotAProduct(model.to_string()))?
        .clone();
    let parent = o.clone();
    let name = format!("{}|{}", o.name(), if which == Factor::First { 0 } else { 1 });
    Ok(OrderOracle::custom(&name, &factor, move |m, g| {
        let lifted = parent.model().embed(g, which).expect("product model");
        debug_assert_eq!(m, parent.model().factor(which).expect("product model"));
        parent.sign(&lifted)
    }))
}

/// Positive `r0`-path between positive `g` and `h` in a lexicographic
/// product. Both restricted cones are first checked to form a single
/// `r0`-component in the factor ball of radius `working_radius`. The path
/// moves the leading coordinate inside the leading cone with the trailing
/// coordinate fixed, then walks the trailing coordinate along a geodesic.
/// A leading coordinate equal to 1 is first stepped to the least positive
/// generator of the leading factor.
pub fn product_positive_path(
    o: &OrderOracle,
    g: &Element,
    h: &Element,
    r0: usize,
    working_radius: usize,
    config: &EnumConfig,
) -> Result<RPath, GeometryError> {
    let model = o.model();
    let lead = match o.kind() {
        OrderKind::LexPair { leading_factor, .. } => *leading_factor,
        _ => return Err(GeometryError::InvalidArgument(format!("{} is not a lexicographic product order", o.name()))),
    };
    if r0 == 0 {
        return Err(GeometryError::InvalidArgument("r0 must be positive".into()));
    }
    require_positive(o, g)?;
    require_positive(o, h)?;

    for which in [Factor::First, Factor::Second] {
        let cone = restricted_cone(o, which)?;
        if r_components(&cone, r0, working_radius, config)?.count() != 1 {
            return Err(GeometryError::FactorNotConnectedAtScale {
                factor: if which == Factor::First { 0 } else { 1 },
                r0,
                radius: working_radius,
            });
        }
    }
    if g == h {
        return Ok(RPath::new(r0, [g.clone()]));
    }

    let lead_cone = restricted_cone(o, lead)?;
    let lead_model = lead_cone.model().clone();
    let coords = |e: &Element| {
        (
            model.project(e, lead).expect("product model"),
            model.project(e, lead.other()).expect("product model"),
        )
    };
    let assemble = |a: &Element, b: &Element| match lead {
        Factor::First => model.pair(a, b).expect("product model"),
        Factor::Second => model.pair(b, a).expect("product model"),
    };
    let step_in = lead_model
        .generators()
        .into_iter()
        .flat_map(|x| [lead_model.invert(&x), x])
        .filter(|x| lead_cone.sign(x).is_positive())
        .min()
        .expect("one of x, x^-1 is positive");

    let (g_lead, g_trail) = coords(g);
    let (h_lead, h_trail) = coords(h);
    let start = if g_lead.is_identity() { step_in.clone() } else { g_lead.clone() };
    let end = if h_lead.is_identity() { step_in.clone() } else { h_lead.clone() };

    let mut points = vec![g.clone()];
    for a in cone_path(&lead_cone, &start, &end, r0, working_radius, config)? {
        points.push(assemble(&a, &g_trail));
    }
    for b in geodesic_points(model.factor(lead.other()).expect("product model"), &g_trail, &h_trail) {
        points.push(assemble(&end, &b));
    }
    points.push(h.clone());
    Ok(RPath::new(r0, points))
}

/// Breadth-first `r0`-path between positive elements through positive
/// elements of the ball of radius `radius`.
fn cone_path(
    o: &OrderOracle,
    from: &Element,
    to: &Element,
    r0: usize,
    radius: usize,
    config: &EnumConfig,
) -> Result<Vec<Element>, GeometryError> {
    let model = o.model();
    let ball = Ball::enumerate(model, radius, config)?;
    let steps: Vec<Element> = Ball::enumerate(model, r0, config)?
        .elements()
        .filter(|s| !s.is_identity())
        .cloned()
        .collect();
    let mut parent: HashMap<Element, Option<Element>> = HashMap::new();
    parent.insert(from.clone(), None);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(p) = queue.pop_front() {
        if p == *to {
            let mut path = vec![p.clone()];
            while let Some(Some(prev)) = parent.get(path.last().expect("nonempty")) {
                path.push(prev.clone());
            }
            path.reverse();
            return Ok(path);
        }
        for s in &steps {
            let q = model.mul(&p, s);
            if ball.contains(&q) && !parent.contains_key(&q) && o.sign(&q) == Sign::Positive {
                parent.insert(q.clone(), Some(p.clone()));
                queue.push_back(q);
            }
        }
    }
    Err(GeometryError::PathNotFound(format!(
        "{from} and {to} are not {r0}-connected in the cone within radius {radius}"
    )))
}
