//! Exact experiments with positive cones of left-invariant orders on finitely
//! generated groups.
//!
//! * [`group`]: canonical forms, word metric and Cayley balls.
//! * [`order`]: computable left orders (sign functions) and an axiom checker.
//! * [`geometry`]: maxima rays, r-components, negative swamps and positive
//!   path constructions.
//! * [`regular`]: finite state automata describing candidate cones.
//! * [`cli`]: the config-driven experiment runner behind the binary.

pub mod cli;
pub mod geometry;
pub mod group;
pub mod order;
pub mod regular;
pub mod word;

pub use group::{Ball, Element, EnumConfig, GroupModel};
pub use word::{Letter, Word};
