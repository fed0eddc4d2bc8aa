//! Ground-truth target: a circle whose centre drifts and whose radius
//! varies, plus the satellite's one-shot noisy fix used for initialization.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::geometry::Vec2;
use crate::rng::RandomStream;

/// Current centre and radius together with the velocity applied over the
/// step that produced this state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetState {
    pub c: Vec2,
    pub r: f64,
    pub c_dot: Vec2,
    pub r_dot: f64,
}

impl TargetState {
    pub fn at_rest(c: Vec2, r: f64) -> Self {
        Self { c, r, c_dot: Vec2::ZERO, r_dot: 0.0 }
    }

    /// Position along the current step, `tau` seconds after its start,
    /// assuming the velocity is held over the step.
    pub fn advanced(&self, c_dot: Vec2, r_dot: f64, tau: f64) -> (Vec2, f64) {
        (self.c + c_dot * tau, self.r + r_dot * tau)
    }
}

/// Speed caps and radius floor applied to every script.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetLimits {
    /// Cap on `‖ċ‖`.
    #[serde(default = "default_speed_cap")]
    pub speed_cap: f64,
    /// Cap on `|ṙ|`.
    #[serde(default = "default_radius_rate_cap")]
    pub radius_rate_cap: f64,
    #[serde(default = "default_radius_floor")]
    pub radius_floor: f64,
}

fn default_speed_cap() -> f64 {
    2.0
}
fn default_radius_rate_cap() -> f64 {
    1.5
}
fn default_radius_floor() -> f64 {
    0.5
}

impl Default for TargetLimits {
    fn default() -> Self {
        Self {
            speed_cap: default_speed_cap(),
            radius_rate_cap: default_radius_rate_cap(),
            radius_floor: default_radius_floor(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Waypoint {
    pub t: f64,
    pub centre: Vec2,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetScript {
    Stationary,
    /// `ẋ = drift.x + noise·α1`, `ẏ = drift.y + noise·α2`, `ṙ = radius_noise·α3`
    /// with fresh standard normal `α` on every step.
    PaperRandomWalk {
        #[serde(default = "default_drift")]
        drift: Vec2,
        #[serde(default = "one")]
        noise: f64,
        #[serde(default = "one")]
        radius_noise: f64,
    },
    /// Centre travels around a circle of `path_radius`; the pivot is placed
    /// so the path passes through the initial centre at `phase`.
    CircularPath {
        path_radius: f64,
        angular_rate: f64,
        #[serde(default)]
        phase: f64,
    },
    /// Piecewise-linear interpolation between waypoints, held after the last.
    Piecewise { waypoints: Vec<Waypoint> },
}

fn default_drift() -> Vec2 {
    Vec2::new(0.5, 0.5)
}
fn one() -> f64 {
    1.0
}

impl TargetScript {
    pub fn is_stationary(&self) -> bool {
        matches!(self, TargetScript::Stationary)
    }
}

/// Outcome of one target step, with flags for any silent correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetStep {
    pub state: TargetState,
    pub speed_clipped: bool,
    pub rate_clipped: bool,
    pub radius_floored: bool,
}

/// Advances the target by `dt` from time `t`.
///
/// The velocity is drawn (or computed from the script) once and held over
/// the whole step; `initial` is the state at `t = 0`, needed by the
/// deterministic scripts to place their path.
pub fn step_target(
    s: &TargetState,
    initial: &TargetState,
    script: &TargetScript,
    limits: &TargetLimits,
    t: f64,
    dt: f64,
    rng: &mut RandomStream,
) -> TargetStep {
    let (mut c_dot, mut r_dot) = match script {
        TargetScript::Stationary => (Vec2::ZERO, 0.0),
        TargetScript::PaperRandomWalk { drift, noise, radius_noise } => {
            let a1: f64 = rng.sample(StandardNormal);
            let a2: f64 = rng.sample(StandardNormal);
            let a3: f64 = rng.sample(StandardNormal);
            (*drift + Vec2::new(a1, a2) * *noise, a3 * radius_noise)
        }
        TargetScript::CircularPath { path_radius, angular_rate, phase } => {
            let pivot = initial.c - Vec2::from_polar(*path_radius, *phase);
            let next = pivot + Vec2::from_polar(*path_radius, phase + angular_rate * (t + dt));
            ((next - s.c) * (1.0 / dt), 0.0)
        }
        TargetScript::Piecewise { waypoints } => {
            let (c_next, r_next) = interpolate(waypoints, t + dt).unwrap_or((s.c, s.r));
            ((c_next - s.c) * (1.0 / dt), (r_next - s.r) / dt)
        }
    };

    let mut speed_clipped = false;
    let speed = c_dot.norm();
    if speed > limits.speed_cap {
        c_dot = c_dot * (limits.speed_cap / speed);
        speed_clipped = true;
    }
    let mut rate_clipped = false;
    if r_dot.abs() > limits.radius_rate_cap {
        r_dot = r_dot.signum() * limits.radius_rate_cap;
        rate_clipped = true;
    }
    let mut radius_floored = false;
    if s.r + r_dot * dt < limits.radius_floor {
        r_dot = (limits.radius_floor - s.r) / dt;
        radius_floored = true;
    }

    let state = TargetState {
        c: s.c + c_dot * dt,
        r: (s.r + r_dot * dt).max(limits.radius_floor),
        c_dot,
        r_dot,
    };
    TargetStep { state, speed_clipped, rate_clipped, radius_floored }
}

fn interpolate(waypoints: &[Waypoint], t: f64) -> Option<(Vec2, f64)> {
    let first = waypoints.first()?;
    if t <= first.t {
        return Some((first.centre, first.radius));
    }
    for pair in waypoints.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if t <= b.t {
            let w = (t - a.t) / (b.t - a.t);
            return Some((a.centre + (b.centre - a.centre) * w, a.radius + (b.radius - a.radius) * w));
        }
    }
    let last = waypoints.last()?;
    Some((last.centre, last.radius))
}

/// The satellite's initial estimate of the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SatelliteEstimate {
    pub c_hat0: Vec2,
    pub r_hat0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum SatelliteModel {
    /// The fix is given verbatim (used to reproduce a known initial estimate).
    Fixed { centre: Vec2, radius: f64 },
    Gaussian { centre_sigma: f64, radius_sigma: f64 },
}

/// Smallest radius the satellite may report.
pub const SATELLITE_RADIUS_FLOOR: f64 = 0.1;

impl SatelliteModel {
    pub fn observe(&self, s: &TargetState, rng: &mut RandomStream) -> SatelliteEstimate {
        match *self {
            SatelliteModel::Fixed { centre, radius } => SatelliteEstimate { c_hat0: centre, r_hat0: radius },
            SatelliteModel::Gaussian { centre_sigma, radius_sigma } => {
                satellite_observe(s, centre_sigma, radius_sigma, rng)
            }
        }
    }
}

/// Gaussian fix: isotropic noise on the centre, scalar noise on the radius.
pub fn satellite_observe(
    s: &TargetState,
    noise_c: f64,
    noise_r: f64,
    rng: &mut RandomStream,
) -> SatelliteEstimate {
    let gx: f64 = rng.sample(StandardNormal);
    let gy: f64 = rng.sample(StandardNormal);
    let gr: f64 = rng.sample(StandardNormal);
    SatelliteEstimate {
        c_hat0: s.c + Vec2::new(gx, gy) * noise_c,
        r_hat0: (s.r + gr * noise_r).max(SATELLITE_RADIUS_FLOOR),
    }
}
