use std::cmp::Ordering;

use serde::Serialize;

use super::GeometryError;
use crate::group::{Ball, Element, EnumConfig};
use crate::order::{OrderOracle, Sign};

/// The maximum of `candidates` under the order, with a totality check.
fn maximum(o: &OrderOracle, candidates: &[&Element]) -> Result<Element, GeometryError> {
    let mut best: Option<&Element> = None;
    for &g in candidates {
        best = match best {
            Some(b) if o.compare(b, g) != Ordering::Less => Some(b),
            _ => Some(g),
        };
    }
    let best = best.expect("balls are nonempty");
    for &g in candidates {
        if g != best && o.compare(g, best) != Ordering::Less {
            return Err(GeometryError::NotTotal(g.to_string(), best.to_string()));
        }
    }
    Ok(best.clone())
}

/// The maximum of `B(1, n)`, found by pairwise comparison.
pub fn max_of_ball(o: &OrderOracle, n: usize, config: &EnumConfig) -> Result<Element, GeometryError> {
    let ball = Ball::enumerate(o.model(), n, config)?;
    maximum(o, &ball.elements().collect::<Vec<_>>())
}

/// Checks on the maxima `g_n = max B(1, n)` for `n <= N`.
#[derive(Debug, Clone, Serialize)]
pub struct RayReport {
    pub order: String,
    pub max_radius: usize,
    /// `g_0, ..., g_N`.
    pub maxima: Vec<String>,
    /// `|g_n| = n`.
    pub lengths_ok: bool,
    /// `g_n = x g_(n-1)` for a generator letter `x`.
    pub steps_ok: bool,
    /// `d(g_n^-1, g_m^-1) = |n - m|`.
    pub geodesic_ok: bool,
    /// `B(g_n^-1, n - 1)` consists of negative elements.
    pub negative_balls_ok: bool,
    pub violations: Vec<String>,
}

impl RayReport {
    pub fn pass(&self) -> bool {
        self.lengths_ok && self.steps_ok && self.geodesic_ok && self.negative_balls_ok
    }
}

pub fn verify_maxima_ray(o: &OrderOracle, max_radius: usize, config: &EnumConfig) -> Result<RayReport, GeometryError> {
    let model = o.model();
    let ball = Ball::enumerate(model, max_radius, config)?;

    // B(1, n) = B(1, n - 1) plus the sphere of radius n
    let mut maxima = vec![model.identity()];
    for n in 1..=max_radius {
        let sphere: Vec<&Element> = ball.elements().filter(|g| g.norm() == n).collect();
        let sphere_max = maximum(o, &sphere)?;
        let prev = &maxima[n - 1];
        let next = if o.compare(prev, &sphere_max) == Ordering::Less {
            sphere_max
        } else {
            prev.clone()
        };
        maxima.push(next);
    }

    let mut violations = Vec::new();
    let mut lengths_ok = true;
    let mut steps_ok = true;
    for (n, g) in maxima.iter().enumerate() {
        if g.norm() != n {
            lengths_ok = false;
            violations.push(format!("|g_{n}| = |{g}| = {} != {n}", g.norm()));
        }
        if n > 0 {
            let step = model.mul(g, &model.invert(&maxima[n - 1]));
            if step.norm() != 1 {
                steps_ok = false;
                violations.push(format!("g_{n} g_{}^-1 = {step} is not a generator", n - 1));
            }
        }
    }

    let inverses: Vec<Element> = maxima.iter().map(|g| model.invert(g)).collect();
    let mut geodesic_ok = true;
    for n in 0..inverses.len() {
        for m in n + 1..inverses.len() {
            let d = model.distance(&inverses[n], &inverses[m]);
            if d != m - n {
                geodesic_ok = false;
                violations.push(format!("d(g_{n}^-1, g_{m}^-1) = {d} != {}", m - n));
            }
        }
    }

    let mut negative_balls_ok = true;
    for (n, c) in inverses.iter().enumerate().skip(1) {
        for b in ball.elements().filter(|b| b.norm() < n) {
            let x = model.mul(c, b);
            if o.sign(&x) != Sign::Negative {
                negative_balls_ok = false;
                violations.push(format!("{x} in B(g_{n}^-1, {}) is not negative", n - 1));
            }
        }
    }

    Ok(RayReport {
        order: o.name().to_string(),
        max_radius,
        maxima: maxima.iter().map(|g| g.to_string()).collect(),
        lengths_ok,
        steps_ok,
        geodesic_ok,
        negative_balls_ok,
        violations,
    })
}
