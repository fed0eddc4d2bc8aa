//! Adaptive estimation of the target circle from the sensing agent's range
//! measurements.
//!
//! The estimator never differentiates a measured signal. Each quantity that
//! the update laws need as a time derivative (of `½(Db)²`, `½(Dc)²`, `Dc`,
//! `½‖p1‖²` and `p1`) is produced as the state derivative of a first-order
//! filter `ż = −αz + input`, i.e. `s/(s+α)` applied to the input.
//!
//! Positions enter the centre law relative to a fixed `origin` (the
//! satellite's initial centre). With primed filters the update is invariant
//! to this choice; with zero-initialized filters it keeps the start-up
//! transient proportional to the satellite error instead of to the absolute
//! coordinates.

use serde::{Deserialize, Serialize};

use crate::geometry::Vec2;
use crate::sim::rk4_step;

/// Smallest admissible radius estimate; below it the estimate is clipped.
pub const R_HAT_FLOOR: f64 = 0.1;

/// Number of scalars in a flattened [`EstimatorState`].
pub const STATE_LEN: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterBank {
    pub z1: f64,
    pub z2: f64,
    pub z3: f64,
    pub z4: f64,
    pub z5: Vec2,
    pub alpha: f64,
}

/// How the filter states are seeded at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterInit {
    /// All filter states start at zero.
    Zero,
    /// Each filter starts at the equilibrium of its first measurement,
    /// `z = input/α`, so every derived signal starts at zero.
    #[default]
    Primed,
}

impl FilterBank {
    pub fn zeroed(alpha: f64) -> Self {
        Self { z1: 0.0, z2: 0.0, z3: 0.0, z4: 0.0, z5: Vec2::ZERO, alpha }
    }

    pub fn primed(alpha: f64, m: &Measurement) -> Self {
        let inv = 1.0 / alpha;
        Self {
            z1: 0.5 * m.db * m.db * inv,
            z2: 0.5 * m.dc * m.dc * inv,
            z3: m.dc * inv,
            z4: 0.5 * m.p1.norm_squared() * inv,
            z5: m.p1 * inv,
            alpha,
        }
    }
}

/// One reading by the sensing agent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    /// Distance to the target centre.
    pub dc: f64,
    /// Distance to the target boundary.
    pub db: f64,
    /// Sensing agent position.
    pub p1: Vec2,
}

/// Filter derivatives and the signals built from them.
///
/// `eta2` is the same signal as `m_sig` (both are `ż2`); it is carried
/// under both names because it plays a different role in each law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterOutputs {
    pub dz1: f64,
    pub dz2: f64,
    pub dz3: f64,
    pub dz4: f64,
    pub dz5: Vec2,
    pub eta: f64,
    pub m_sig: f64,
    pub v: f64,
    pub eta2: f64,
    pub m2: f64,
    pub v2: Vec2,
}

pub fn filter_rhs(f: &FilterBank, m: &Measurement) -> FilterOutputs {
    let a = f.alpha;
    let dz1 = -a * f.z1 + 0.5 * m.db * m.db;
    let dz2 = -a * f.z2 + 0.5 * m.dc * m.dc;
    let dz3 = -a * f.z3 + m.dc;
    // the scalar ½‖p1‖², so that m2 can enter the scalar bracket of the centre law
    let dz4 = -a * f.z4 + 0.5 * m.p1.norm_squared();
    let dz5 = -(f.z5 * a) + m.p1;
    FilterOutputs {
        dz1,
        dz2,
        dz3,
        dz4,
        dz5,
        eta: dz1,
        m_sig: dz2,
        v: dz3,
        eta2: dz2,
        m2: dz4,
        v2: dz5,
    }
}

/// `ṙ̂ = −γ V (η − m + V r̂)`
pub fn radius_estimator_rhs(v: f64, eta: f64, m_sig: f64, r_hat: f64, gamma: f64) -> f64 {
    -gamma * v * (eta - m_sig + v * r_hat)
}

/// `ĉ̇ = −γ V2 (η2 − m2 + V2ᵀĉ)`
pub fn center_estimator_rhs(v2: Vec2, eta2: f64, m2: f64, c_hat: Vec2, gamma: f64) -> Vec2 {
    v2 * (-gamma * (eta2 - m2 + v2.dot(c_hat)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorState {
    pub filters: FilterBank,
    pub r_hat: f64,
    /// Centre estimate in world coordinates.
    pub c_hat: Vec2,
    pub gamma: f64,
    /// Reference point for positions fed to the centre law.
    pub origin: Vec2,
}

/// Time derivatives of the full estimator state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorRates {
    pub filters: FilterOutputs,
    pub r_hat_dot: f64,
    pub c_hat_dot: Vec2,
}

impl EstimatorState {
    /// Starts from the satellite fix; `first` seeds primed filters.
    pub fn new(
        c_hat0: Vec2,
        r_hat0: f64,
        alpha: f64,
        gamma: f64,
        init: FilterInit,
        first: &Measurement,
    ) -> Self {
        let origin = c_hat0;
        let filters = match init {
            FilterInit::Zero => FilterBank::zeroed(alpha),
            FilterInit::Primed => FilterBank::primed(alpha, &Self::relative(origin, first)),
        };
        Self { filters, r_hat: r_hat0, c_hat: c_hat0, gamma, origin }
    }

    fn relative(origin: Vec2, m: &Measurement) -> Measurement {
        Measurement { p1: m.p1 - origin, ..*m }
    }

    pub fn rates(&self, m: &Measurement) -> EstimatorRates {
        let f = filter_rhs(&self.filters, &Self::relative(self.origin, m));
        let r_hat_dot = radius_estimator_rhs(f.v, f.eta, f.m_sig, self.r_hat, self.gamma);
        let c_hat_dot = center_estimator_rhs(f.v2, f.eta2, f.m2, self.c_hat - self.origin, self.gamma);
        EstimatorRates { filters: f, r_hat_dot, c_hat_dot }
    }

    /// Flattened as `[z1, z2, z3, z4, z5x, z5y, r̂, ĉx, ĉy]`.
    pub fn write_to(&self, out: &mut [f64]) {
        let f = &self.filters;
        out[..STATE_LEN].copy_from_slice(&[
            f.z1, f.z2, f.z3, f.z4, f.z5.x, f.z5.y, self.r_hat, self.c_hat.x, self.c_hat.y,
        ]);
    }

    pub fn read_from(&mut self, x: &[f64]) {
        let f = &mut self.filters;
        f.z1 = x[0];
        f.z2 = x[1];
        f.z3 = x[2];
        f.z4 = x[3];
        f.z5 = Vec2::new(x[4], x[5]);
        self.r_hat = x[6];
        self.c_hat = Vec2::new(x[7], x[8]);
    }

    pub fn with_state(&self, x: &[f64]) -> Self {
        let mut e = *self;
        e.read_from(x);
        e
    }
}

impl EstimatorRates {
    pub fn write_to(&self, out: &mut [f64]) {
        let f = &self.filters;
        out[..STATE_LEN].copy_from_slice(&[
            f.dz1,
            f.dz2,
            f.dz3,
            f.dz4,
            f.dz5.x,
            f.dz5.y,
            self.r_hat_dot,
            self.c_hat_dot.x,
            self.c_hat_dot.y,
        ]);
    }
}

/// Result of a standalone estimator step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorStep {
    pub state: EstimatorState,
    pub r_hat_dot: f64,
    pub c_hat_dot: Vec2,
    /// The radius estimate fell below [`R_HAT_FLOOR`] and was clipped.
    pub clipped: bool,
}

/// Advances filters and estimates by one RK4 step with the measurement held
/// over the step, and reports the estimate rates at the new state.
pub fn estimator_step(e: &EstimatorState, m: &Measurement, dt: f64) -> EstimatorStep {
    let mut x = [0.0; STATE_LEN];
    e.write_to(&mut x);
    let next = rk4_step(&x, dt, |y, dy| e.with_state(y).rates(m).write_to(dy));
    let mut state = e.with_state(&next);
    let clipped = state.r_hat < R_HAT_FLOOR;
    if clipped {
        state.r_hat = R_HAT_FLOOR;
    }
    let rates = state.rates(m);
    EstimatorStep { state, r_hat_dot: rates.r_hat_dot, c_hat_dot: rates.c_hat_dot, clipped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::distances;
    use proptest::prelude::*;

    fn meas(dc: f64, db: f64, p1: Vec2) -> Measurement {
        Measurement { dc, db, p1 }
    }

    #[test]
    fn filter_rhs_examples() {
        let f = FilterBank::zeroed(1.0);
        let out = filter_rhs(&f, &meas(0.0, 0.0, Vec2::ZERO));
        assert_eq!(out.dz1, 0.0);
        assert_eq!(out.eta, 0.0);

        let f = FilterBank { z3: 1.0, ..FilterBank::zeroed(1.0) };
        let out = filter_rhs(&f, &meas(3.0, 0.0, Vec2::ZERO));
        assert_eq!(out.dz3, 2.0);
        assert_eq!(out.v, 2.0);
    }

    #[test]
    fn filter_outputs_alias_their_derivatives() {
        let f = FilterBank { z1: 0.3, z2: -1.0, z3: 2.0, z4: 5.0, z5: Vec2::new(1.0, -2.0), alpha: 0.7 };
        let out = filter_rhs(&f, &meas(4.0, 1.5, Vec2::new(2.0, 3.0)));
        assert_eq!(out.eta, out.dz1);
        assert_eq!(out.m_sig, out.dz2);
        assert_eq!(out.eta2, out.dz2);
        assert_eq!(out.v, out.dz3);
        assert_eq!(out.m2, out.dz4);
        assert_eq!(out.v2, out.dz5);
        assert_eq!(out.dz4, -0.7 * 5.0 + 0.5 * 13.0);
    }

    #[test]
    fn derivative_filter_settles_under_constant_input() {
        // ż3 = −αz3 + d from z3 = 0 has V(t) = d·e^{−αt}
        let (alpha, d, dt) = (1.0, 3.0, 0.01);
        let m = meas(d, 0.0, Vec2::ZERO);
        let mut e = EstimatorState::new(Vec2::ZERO, 1.0, alpha, 1.0, FilterInit::Zero, &m);
        for _ in 0..2000 {
            e = estimator_step(&e, &m, dt).state;
        }
        let v = filter_rhs(&e.filters, &m).v;
        assert!((v - d * (-20.0f64).exp()).abs() < 1e-12);
        assert!((e.filters.z3 - d / alpha).abs() < 1e-7);
    }

    #[test]
    fn primed_filters_start_with_zero_outputs() {
        let m = meas(12.0, 2.0, Vec2::new(30.0, 40.0));
        let e = EstimatorState::new(Vec2::new(1.0, 2.0), 20.0, 1.0, 0.1, FilterInit::Primed, &m);
        let r = e.rates(&m);
        assert!(r.filters.v.abs() < 1e-12);
        assert!(r.filters.v2.norm() < 1e-12);
        assert!(r.r_hat_dot.abs() < 1e-12);
        assert!(r.c_hat_dot.norm() < 1e-12);
    }

    #[test]
    fn radius_rhs_examples() {
        assert_eq!(radius_estimator_rhs(0.0, 5.0, -3.0, 7.0, 2.0), 0.0);
        assert_eq!(radius_estimator_rhs(1.0, 0.0, 0.0, 2.0, 1.0), -2.0);
    }

    #[test]
    fn center_rhs_examples() {
        assert_eq!(center_estimator_rhs(Vec2::ZERO, 1.0, 2.0, Vec2::new(3.0, 5.0), 1.0), Vec2::ZERO);
        assert_eq!(
            center_estimator_rhs(Vec2::new(1.0, 0.0), 0.0, 0.0, Vec2::new(3.0, 5.0), 1.0),
            Vec2::new(-3.0, 0.0)
        );
    }

    #[test]
    fn zero_input_leaves_state_unchanged() {
        let m = meas(0.0, 0.0, Vec2::ZERO);
        let e = EstimatorState::new(Vec2::ZERO, 4.0, 1.0, 1.0, FilterInit::Zero, &m);
        let step = estimator_step(&e, &m, 0.01);
        assert_eq!(step.state, e);
        assert_eq!(step.r_hat_dot, 0.0);
        assert_eq!(step.c_hat_dot, Vec2::ZERO);
    }

    #[test]
    fn radius_clip_is_reported() {
        let m = meas(10.0, 0.0, Vec2::new(10.0, 0.0));
        let e = EstimatorState::new(Vec2::ZERO, 0.05, 1.0, 1.0, FilterInit::Primed, &m);
        let step = estimator_step(&e, &m, 0.01);
        assert!(step.clipped);
        assert_eq!(step.state.r_hat, R_HAT_FLOOR);
    }

    /// Feeds the estimator an off-centre circular sensing path around a
    /// stationary target; both range rate and velocity are exciting.
    fn converge_on_scripted_path(init: FilterInit) -> (f64, f64) {
        let (c, r) = (Vec2::new(25.0, 25.0), 10.0);
        let path_centre = c + Vec2::new(3.0, -2.0);
        let path = |t: f64| path_centre + Vec2::from_polar(14.0, 0.8 * t);
        let measure = |p: Vec2| {
            let (dc, db) = distances(c, r, p);
            meas(dc, db, p)
        };
        let dt = 0.01;
        let mut e = EstimatorState::new(c + Vec2::new(2.0, 1.0), 16.0, 1.0, 0.1, init, &measure(path(0.0)));
        for k in 0..20_000 {
            // midpoint sample keeps the held measurement second-order accurate
            let m = measure(path((k as f64 + 0.5) * dt));
            e = estimator_step(&e, &m, dt).state;
        }
        ((e.r_hat - r).abs(), (e.c_hat - c).norm())
    }

    #[test]
    fn estimates_converge_on_exciting_path() {
        let (er, ec) = converge_on_scripted_path(FilterInit::Primed);
        assert!(er < 1e-2, "radius error {er}");
        assert!(ec < 1e-2, "centre error {ec}");
    }

    #[test]
    fn zero_initialized_filters_also_converge_on_exciting_path() {
        let (er, ec) = converge_on_scripted_path(FilterInit::Zero);
        assert!(er < 1e-2, "radius error {er}");
        assert!(ec < 1e-2, "centre error {ec}");
    }

    proptest! {
        #[test]
        fn doubling_gain_keeps_sign(v in -10.0f64..10.0, eta in -50.0f64..50.0, m in -50.0f64..50.0,
                                    r in 0.1f64..40.0, g in 0.01f64..20.0) {
            let a = radius_estimator_rhs(v, eta, m, r, g);
            let b = radius_estimator_rhs(v, eta, m, r, 2.0 * g);
            prop_assert_eq!(a.signum() * (a != 0.0) as i32 as f64, b.signum() * (b != 0.0) as i32 as f64);
            prop_assert!((b - 2.0 * a).abs() <= 1e-9 * a.abs().max(1.0));
        }
    }
}
