use std::collections::HashMap;

use serde::Serialize;

use super::{GeometryError, UnionFind};
use crate::group::{Ball, Element, EnumConfig, Traversal};
use crate::order::OrderOracle;

/// Positive elements of `B(1, R)` split into classes joined by steps of
/// length at most `r`. Paths may only use positive elements of the ball.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub order: String,
    pub r: usize,
    pub radius: usize,
    pub positives: usize,
    /// Each class sorted shortlex; classes ordered by their least element.
    pub components: Vec<Vec<Element>>,
    index: HashMap<Element, usize>,
}

impl ComponentReport {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn representatives(&self) -> Vec<&Element> {
        self.components.iter().map(|c| &c[0]).collect()
    }

    pub fn component_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }
}

#[derive(Serialize)]
struct ComponentSummary<'a> {
    order: &'a str,
    r: usize,
    radius: usize,
    positives: usize,
    count: usize,
    representatives: Vec<String>,
    sizes: Vec<usize>,
}

impl Serialize for ComponentReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComponentSummary {
            order: &self.order,
            r: self.r,
            radius: self.radius,
            positives: self.positives,
            count: self.count(),
            representatives: self.representatives().iter().map(|g| g.to_string()).collect(),
            sizes: self.components.iter().map(Vec::len).collect(),
        }
        .serialize(serializer)
    }
}

pub fn r_components(o: &OrderOracle, r: usize, radius: usize, config: &EnumConfig) -> Result<ComponentReport, GeometryError> {
    if r > radius {
        return Err(GeometryError::InvalidArgument(format!("width {r} exceeds radius {radius}")));
    }
    let model = o.model();
    let ball = Ball::enumerate(model, radius, config)?;
    let steps: Vec<Element> = Ball::enumerate(model, r, config)?
        .elements()
        .filter(|s| !s.is_identity())
        .cloned()
        .collect();

    let positives: Vec<&Element> = ball.elements().filter(|g| o.sign(g).is_positive()).collect();
    let slot: HashMap<&Element, usize> = positives.iter().enumerate().map(|(i, g)| (*g, i)).collect();

    let mut uf = UnionFind::new(positives.len());
    let mut order: Vec<usize> = (0..positives.len()).collect();
    if config.traversal == Traversal::Reversed {
        order.reverse();
    }
    for i in order {
        let p = positives[i];
        for s in &steps {
            if p.norm() + s.norm() > 2 * radius {
                continue;
            }
            let q = model.mul(p, s);
            if let Some(&j) = slot.get(&q) {
                uf.union(i, j);
            }
        }
    }

    let components: Vec<Vec<Element>> = uf
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(|i| positives[i].clone()).collect())
        .collect();
    let index = components
        .iter()
        .enumerate()
        .flat_map(|(k, c)| c.iter().map(move |g| (g.clone(), k)))
        .collect();
    Ok(ComponentReport {
        order: o.name().to_string(),
        r,
        radius,
        positives: positives.len(),
        components,
        index,
    })
}
