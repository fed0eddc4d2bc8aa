//! Multi-agent circumnavigation of a moving circular target.
//!
//! One sensing agent estimates the target's centre and radius from its
//! range measurements through state-variable filters; every agent uses the
//! broadcast estimates to reach the boundary and spread out evenly while
//! circling counterclockwise.

pub mod controller;
pub mod estimator;
pub mod formation;
pub mod geometry;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod rng;
pub mod sim;
pub mod target;
pub mod verify;

pub use geometry::{Angle, Vec2};
