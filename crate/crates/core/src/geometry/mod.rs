//! Coarse geometry of positive cones inside Cayley graphs.
//!
//! Infinite statements are only approximated on finite balls. Verdicts are
//! graded: a tree certificate is a proof, an exhaustive verdict is a proof
//! about a finite search that provably did not escape its ball, and
//! everything else is evidence.

mod components;
mod paths;
mod ray;
mod survey;
mod swamp;
mod union_find;

pub use components::{r_components, ComponentReport};
pub use paths::{cofinal_positive_path, product_positive_path, restricted_cone};
pub use ray::{max_of_ball, verify_maxima_ray, RayReport};
pub use survey::{connectivity_survey, SurveyReport, SurveyVerdict};
pub use swamp::{
    ray_swamp_candidate, sample_r_path, tree_swamp_certificate, verify_separation, SeparationOutcome,
    SeparationVerdict, SwampCertificate,
};
pub use union_find::UnionFind;

use serde::Serialize;
use thiserror::Error;

use crate::group::{Element, GroupError, GroupModel};
use crate::order::OrderError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("no positive witness in branch {branch} within distance {search_radius} of the center")]
    WitnessNotFound { search_radius: usize, branch: char },
    #[error("swamp element {0} is not negative")]
    SwampNotNegative(String),
    #[error("order is not total on the ball: {0} and {1} are incomparable or both maximal")]
    NotTotal(String, String),
    #[error("operation needs a free group of rank at least 2, got {0}")]
    NotFreeGroup(String),
    #[error("operation needs a direct product, got {0}")]
    NotAProduct(String),
    #[error("order has no declared central cofinal subgroup")]
    NoDeclaredCofinalCenter,
    #[error("{0} is not positive")]
    NotPositive(String),
    #[error("no path found: {0}")]
    PathNotFound(String),
    #[error("cone restricted to factor {factor} is not {r0}-connected in the ball of radius {radius}")]
    FactorNotConnectedAtScale { factor: usize, r0: usize, radius: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// A sequence of elements with consecutive distances at most `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPath {
    pub r: usize,
    pub points: Vec<Element>,
}

impl RPath {
    /// Builds a path, dropping consecutive repeats.
    pub fn new(r: usize, points: impl IntoIterator<Item = Element>) -> RPath {
        let mut out: Vec<Element> = Vec::new();
        for p in points {
            if out.last() != Some(&p) {
                out.push(p);
            }
        }
        RPath { r, points: out }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn gaps(&self, model: &GroupModel) -> Vec<usize> {
        self.points.windows(2).map(|w| model.distance(&w[0], &w[1])).collect()
    }

    pub fn max_gap(&self, model: &GroupModel) -> usize {
        self.gaps(model).into_iter().max().unwrap_or(0)
    }

    pub fn is_valid(&self, model: &GroupModel) -> bool {
        self.max_gap(model) <= self.r
    }

    pub fn words(&self) -> Vec<String> {
        self.points.iter().map(|p| p.to_string()).collect()
    }
}

impl Serialize for RPath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("RPath", 2)?;
        s.serialize_field("r", &self.r)?;
        s.serialize_field("points", &self.words())?;
        s.end()
    }
}
