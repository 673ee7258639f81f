//! Exact strict-dominance and rationalizability analysis for finite
//! two-player games, built on a small exact convex-geometry kernel.
//!
//! Every decision is made over exact rationals: a strictly dominated action
//! comes with a dominating mixture that re-verifies with zero tolerance, and
//! a never-best-response comes with an open half-space cover of the belief
//! simplex.

pub mod cli;
pub mod dominance;
pub mod error;
pub mod game;
pub mod geometry;
pub mod instances;
pub mod lp;
pub mod oracle;
pub mod point;
pub mod rational;
pub mod rationalizability;
pub mod report;
pub mod subgame;

pub use error::{Error, Result};
pub use game::{Game, MixedStrategy, Player};
pub use point::Point;
pub use rational::Rational;
