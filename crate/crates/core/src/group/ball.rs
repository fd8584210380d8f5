use std::collections::{HashMap, VecDeque};

use super::{Element, GroupError, GroupModel};
use crate::word::Letter;

/// Default bound on the `letters^R` node estimate of a ball enumeration.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Order in which BFS tries the letters. Results never depend on it; it
/// exists so that callers can check exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Traversal {
    #[default]
    Forward,
    Reversed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    pub cap: u64,
    pub traversal: Traversal,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            cap: DEFAULT_CAP,
            traversal: Traversal::Forward,
        }
    }
}

impl EnumConfig {
    pub fn with_cap(cap: u64) -> EnumConfig {
        EnumConfig {
            cap,
            ..EnumConfig::default()
        }
    }

    pub fn reversed(self) -> EnumConfig {
        EnumConfig {
            traversal: Traversal::Reversed,
            ..self
        }
    }

    /// Errors when `letters^radius` exceeds the cap.
    pub fn check(&self, letters: usize, radius: usize) -> Result<(), GroupError> {
        let estimate = (letters as u128).saturating_pow(radius as u32);
        if estimate > self.cap as u128 {
            return Err(GroupError::CapExceeded {
                estimate,
                cap: self.cap,
            });
        }
        Ok(())
    }

    pub(crate) fn letters(&self, model: &GroupModel) -> Vec<Letter> {
        let letters = model.alphabet().letters();
        match self.traversal {
            Traversal::Forward => letters.collect(),
            Traversal::Reversed => letters.rev().collect(),
        }
    }
}

/// The ball `B(center, radius)` with exact distances from the center.
/// Members are stored in shortlex order of their canonical words.
#[derive(Debug, Clone)]
pub struct Ball {
    center: Element,
    radius: usize,
    members: Vec<(Element, usize)>,
    index: HashMap<Element, usize>,
}

impl Ball {
    /// BFS from the identity over one-letter right multiplications.
    pub fn enumerate(model: &GroupModel, radius: usize, config: &EnumConfig) -> Result<Ball, GroupError> {
        config.check(model.alphabet().size(), radius)?;
        let letters = config.letters(model);
        let mut dist: HashMap<Element, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(model.identity(), 0);
        queue.push_back(model.identity());
        while let Some(g) = queue.pop_front() {
            let d = dist[&g];
            if d == radius {
                continue;
            }
            for &x in &letters {
                let h = model.mul_letter(&g, x);
                if !dist.contains_key(&h) {
                    dist.insert(h.clone(), d + 1);
                    queue.push_back(h);
                }
            }
        }
        Ok(Ball::from_distances(model.identity(), radius, dist))
    }

    /// `B(center, radius) = center * B(1, radius)`.
    pub fn around(
        model: &GroupModel,
        center: &Element,
        radius: usize,
        config: &EnumConfig,
    ) -> Result<Ball, GroupError> {
        let unit = Ball::enumerate(model, radius, config)?;
        Ok(unit.translate(model, center))
    }

    pub fn translate(&self, model: &GroupModel, by: &Element) -> Ball {
        let center = model.mul(by, &self.center);
        let dist = self
            .members
            .iter()
            .map(|(g, d)| (model.mul(by, g), *d))
            .collect();
        Ball::from_distances(center, self.radius, dist)
    }

    fn from_distances(center: Element, radius: usize, dist: HashMap<Element, usize>) -> Ball {
        let mut members: Vec<(Element, usize)> = dist.into_iter().collect();
        members.sort();
        let index = members
            .iter()
            .enumerate()
            .map(|(i, (g, _))| (g.clone(), i))
            .collect();
        Ball {
            center,
            radius,
            members,
            index,
        }
    }

    pub fn center(&self) -> &Element {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.index.contains_key(g)
    }

    pub fn distance_from_center(&self, g: &Element) -> Option<usize> {
        self.index.get(g).map(|&i| self.members[i].1)
    }

    /// Position of `g` in shortlex order.
    pub fn position(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.members[i].0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, usize)> {
        self.members.iter().map(|(g, d)| (g, *d))
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.members.iter().map(|(g, _)| g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_ball_size(k: u64, r: u32) -> u64 {
        // 1 + 2k((2k-1)^r - 1)/(2k-2)
        1 + 2 * k * ((2 * k - 1).pow(r) - 1) / (2 * k - 2)
    }

    #[test]
    fn small_ball_sizes() {
        let cfg = EnumConfig::default();
        assert_eq!(Ball::enumerate(&GroupModel::free(2), 1, &cfg).unwrap().len(), 5);
        assert_eq!(Ball::enumerate(&GroupModel::free(2), 2, &cfg).unwrap().len(), 17);
        assert_eq!(Ball::enumerate(&GroupModel::free_abelian(2), 2, &cfg).unwrap().len(), 13);
        assert_eq!(Ball::enumerate(&GroupModel::free(2), 0, &cfg).unwrap().len(), 1);
    }

    #[test]
    fn free_ball_closed_form() {
        for k in 2..=3u64 {
            for r in 0..=6u32 {
                let ball = Ball::enumerate(&GroupModel::free(k as usize), r as usize, &EnumConfig::default()).unwrap();
                assert_eq!(ball.len() as u64, free_ball_size(k, r), "k={k} r={r}");
            }
        }
        for r in 0..=6usize {
            let ball = Ball::enumerate(&GroupModel::free(1), r, &EnumConfig::default()).unwrap();
            assert_eq!(ball.len(), 2 * r + 1);
        }
    }

    #[test]
    fn traversal_order_does_not_change_the_ball() {
        let models = [
            GroupModel::free(2),
            GroupModel::free_abelian(3),
            GroupModel::klein_bottle(),
            GroupModel::direct_product(GroupModel::free(2), GroupModel::free_abelian(1)),
        ];
        for m in &models {
            let mut prev = 0;
            for r in 0..=4 {
                let fwd = Ball::enumerate(m, r, &EnumConfig::default()).unwrap();
                let rev = Ball::enumerate(m, r, &EnumConfig::default().reversed()).unwrap();
                assert_eq!(fwd.members, rev.members, "{m} r={r}");
                assert!(fwd.len() > prev);
                prev = fwd.len();
            }
        }
    }

    #[test]
    fn bfs_depth_equals_canonical_length() {
        let models = [
            GroupModel::free(2),
            GroupModel::free_abelian(2),
            GroupModel::klein_bottle(),
            GroupModel::direct_product(GroupModel::klein_bottle(), GroupModel::free_abelian(1)),
        ];
        for m in &models {
            let ball = Ball::enumerate(m, 5, &EnumConfig::default()).unwrap();
            for (g, d) in ball.iter() {
                assert_eq!(g.norm(), d, "{m}: {g}");
            }
        }
    }

    #[test]
    fn metric_axioms_on_ball_three() {
        let m = GroupModel::klein_bottle();
        let ball = Ball::enumerate(&m, 3, &EnumConfig::default()).unwrap();
        let elems: Vec<_> = ball.elements().cloned().collect();
        for g in &elems {
            assert_eq!(m.distance(g, g), 0);
            for h in &elems {
                let dgh = m.distance(g, h);
                assert_eq!(dgh, m.distance(h, g));
                for k in &elems {
                    assert!(m.distance(g, k) <= dgh + m.distance(h, k));
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = Ball::enumerate(&GroupModel::free(2), 12, &EnumConfig::default()).unwrap_err();
        assert!(matches!(err, GroupError::CapExceeded { estimate: 16777216, .. }));
        assert!(Ball::enumerate(&GroupModel::free(2), 3, &EnumConfig::with_cap(10)).is_err());
    }

    #[test]
    fn ball_around_center() {
        let m = GroupModel::free(2);
        let c = m.parse_element("AA").unwrap();
        let ball = Ball::around(&m, &c, 1, &EnumConfig::default()).unwrap();
        assert_eq!(ball.len(), 5);
        assert_eq!(ball.distance_from_center(&c), Some(0));
        assert_eq!(ball.distance_from_center(&m.parse_element("A").unwrap()), Some(1));
        for (g, d) in ball.iter() {
            assert_eq!(m.distance(&c, g), d);
        }
    }
}
