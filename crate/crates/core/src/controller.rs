//! Per-agent control law: close in on the estimated boundary while sweeping
//! counterclockwise at a rate set by the gap to the next agent, then limit
//! the command to what the vehicle can fly.

use serde::{Deserialize, Serialize};

use crate::geometry::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActuationMode {
    /// `U = δu`
    Scale,
    /// `U = u`, rescaled to norm `u_max` when longer.
    Saturate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerParams {
    pub mode: ActuationMode,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_u_max")]
    pub u_max: f64,
}

fn default_delta() -> f64 {
    1.0
}
fn default_u_max() -> f64 {
    1.5
}

impl ControllerParams {
    pub fn scale(delta: f64) -> Self {
        Self { mode: ActuationMode::Scale, delta, u_max: default_u_max() }
    }

    pub fn saturate(u_max: f64) -> Self {
        Self { mode: ActuationMode::Saturate, delta: default_delta(), u_max }
    }
}

/// Raw law output and the command actually applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlCommand {
    pub u: Vec2,
    pub applied: Vec2,
}

/// `u = ĉ̇ + ((D̂ − r̂) − ṙ̂)ψ + β·D̂·Eψ`
pub fn control_law(c_hat_dot: Vec2, r_hat_dot: f64, dc_hat: f64, r_hat: f64, beta: f64, psi: Vec2) -> Vec2 {
    let radial = psi * ((dc_hat - r_hat) - r_hat_dot);
    let tangential = psi.rot90() * (beta * dc_hat);
    c_hat_dot + radial + tangential
}

pub fn apply_actuation(u: Vec2, params: &ControllerParams) -> Vec2 {
    match params.mode {
        ActuationMode::Scale => u * params.delta,
        ActuationMode::Saturate => {
            let norm = u.norm();
            if norm > params.u_max {
                u * (params.u_max / norm)
            } else {
                u
            }
        }
    }
}

pub fn command(u: Vec2, params: &ControllerParams) -> ControlCommand {
    ControlCommand { u, applied: apply_actuation(u, params) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn on_boundary_is_purely_tangential() {
        let u = control_law(Vec2::ZERO, 0.0, 10.0, 10.0, FRAC_PI_2, Vec2::new(-1.0, 0.0));
        assert_eq!(u.x, 0.0);
        assert!((u.y - 5.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn zero_gap_is_pure_approach() {
        let u = control_law(Vec2::ZERO, 0.0, 20.0, 10.0, 0.0, Vec2::new(-1.0, 0.0));
        assert_eq!(u, Vec2::new(-10.0, 0.0));
    }

    #[test]
    fn feed_forward_adds_verbatim() {
        let ff = Vec2::new(0.5, 0.5);
        let psi = Vec2::new(-1.0, 0.0);
        for (d, r, b) in [(10.0, 10.0, FRAC_PI_2), (20.0, 10.0, 0.0)] {
            let with = control_law(ff, 0.0, d, r, b, psi);
            let without = control_law(Vec2::ZERO, 0.0, d, r, b, psi);
            assert!((with - without - ff).norm() < 1e-12);
        }
    }

    #[test]
    fn actuation_examples() {
        let sat = ControllerParams::saturate(1.5);
        assert_eq!(apply_actuation(Vec2::new(3.0, 0.0), &sat), Vec2::new(1.5, 0.0));
        assert_eq!(apply_actuation(Vec2::new(1.0, 0.0), &sat), Vec2::new(1.0, 0.0));
        assert_eq!(apply_actuation(Vec2::new(2.0, -4.0), &ControllerParams::scale(0.5)), Vec2::new(1.0, -2.0));
    }

    proptest! {
        #[test]
        fn saturation_keeps_direction(x in -100.0f64..100.0, y in -100.0f64..100.0, u_max in 0.1f64..10.0) {
            let u = Vec2::new(x, y);
            let cmd = command(u, &ControllerParams::saturate(u_max));
            prop_assert!(cmd.applied.norm() <= u_max * (1.0 + 1e-12));
            prop_assert!(cmd.applied.cross(u).abs() <= 1e-9 * u.norm_squared().max(1.0));
            prop_assert!(cmd.applied.dot(u) >= 0.0);
        }

        #[test]
        fn scale_mode_radial_sign(d in 0.1f64..50.0, r in 0.1f64..50.0, rd in -5.0f64..5.0,
                                  beta in 0.0f64..6.28, delta in 0.01f64..5.0, th in 0.0f64..6.28) {
            let psi = Vec2::from_polar(1.0, th);
            let u = apply_actuation(control_law(Vec2::ZERO, rd, d, r, beta, psi), &ControllerParams::scale(delta));
            let radial = u.dot(psi);
            let expected = d - r - rd;
            prop_assume!(expected.abs() > 1e-6);
            prop_assert_eq!(radial.signum(), expected.signum());
        }
    }
}
