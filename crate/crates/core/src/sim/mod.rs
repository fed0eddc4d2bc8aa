//! Fixed-step closed-loop simulation.
//!
//! Each step runs the sensing/estimation/broadcast/control loop: the
//! sensing agent measures its ranges to the true target, updates the
//! estimates, every agent receives them and applies the control law. Agent
//! positions, filter states and estimates form one flat ODE state advanced
//! by a single RK4 call, so every stage sees synchronized values. The target
//! moves with a velocity held over the step.

mod pe;
mod rk4;

use std::collections::VecDeque;
use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::controller::{apply_actuation, control_law, ControllerParams};
use crate::estimator::{self, EstimatorState, FilterInit, Measurement, R_HAT_FLOOR};
use crate::formation::{order_agents, RingOrder};
use crate::geometry::{bearing, ccw_angle, distances, GeometryError, Vec2};
use crate::rng::{stream, StreamId};
use crate::target::{step_target, SatelliteEstimate, SatelliteModel, TargetLimits, TargetScript, TargetState};

pub use pe::{finite_difference, min_eigenvalue_sym2, pe_check, PeError, PeParams, PeResult, PeWindowStat, Signal};
pub use rk4::{rk4_step, try_rk4_step};

/// Tolerance on `Σβ = 2π` at every logged step.
pub const BETA_SUM_TOL: f64 = 1e-6;
/// Smallest admissible gap.
pub const BETA_MIN: f64 = -1e-9;
/// Tolerance on `‖ψ‖ = 1`.
pub const BEARING_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("step {step}: {source}")]
    Geometry {
        step: usize,
        #[source]
        source: GeometryError,
    },
    #[error("invariant violated: {0}")]
    InvariantViolation(Violation),
    #[error("state became non-finite at step {step}")]
    NonFiniteState { step: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantKind {
    BetaSum,
    BetaNegative,
    RingOrder,
    RadiusEstimate,
    BearingNorm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub step: usize,
    pub t: f64,
    pub kind: InvariantKind,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} at step {} (t = {}): {}", self.kind, self.step, self.t, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub centre: Vec2,
    pub radius: f64,
    pub script: TargetScript,
    #[serde(default)]
    pub limits: TargetLimits,
}

/// Where the agents' target estimates come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateSource {
    /// The sensing agent's adaptive estimator.
    #[default]
    Adaptive,
    /// Ground truth injected directly (estimator bypassed for control).
    Truth,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimatorConfig {
    /// Filter pole `α`.
    pub alpha: f64,
    /// Adaptation gain `γ`.
    pub gamma: f64,
    #[serde(default)]
    pub filter_init: FilterInit,
    #[serde(default)]
    pub source: EstimateSource,
    /// Standard deviation of additive range noise; 0 disables it.
    #[serde(default)]
    pub measurement_noise: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n_agents: usize,
    pub dt: f64,
    pub horizon: f64,
    pub seed: u64,
    /// Abort on the first invariant violation instead of logging it.
    #[serde(default)]
    pub strict: bool,
    pub target: TargetConfig,
    pub satellite: SatelliteModel,
    pub estimator: EstimatorConfig,
    pub controller: ControllerParams,
    /// Initial agent positions, indexed by agent id.
    pub agents: Vec<Vec2>,
    #[serde(default)]
    pub sensing_agent: usize,
    /// Overrides the sensing agent's control with a constant velocity.
    #[serde(default)]
    pub scripted_sensing_velocity: Option<Vec2>,
    /// Steps by which the broadcast estimates lag the estimator.
    #[serde(default)]
    pub broadcast_staleness: usize,
    #[serde(default)]
    pub pe: PeParams,
    /// Fraction of the horizon treated as transient by the summaries.
    #[serde(default = "default_transient_fraction")]
    pub transient_fraction: f64,
}

fn default_transient_fraction() -> f64 {
    0.3
}

impl SimConfig {
    pub fn steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    pub fn transient_cutoff(&self) -> f64 {
        self.transient_fraction * self.horizon
    }

    /// Checks everything that does not depend on random draws.
    pub fn validate(&self) -> Result<(), SimError> {
        let fail = |msg: String| Err(SimError::Validation(msg));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return fail(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return fail(format!("horizon must be positive, got {}", self.horizon));
        }
        let steps = self.steps();
        if steps == 0 || (steps as f64 * self.dt - self.horizon).abs() > 1e-9 * self.horizon {
            return fail(format!("horizon {} is not a whole number of {} s steps", self.horizon, self.dt));
        }
        if self.n_agents < 2 {
            return fail(format!("need at least 2 agents, got {}", self.n_agents));
        }
        if self.agents.len() != self.n_agents {
            return fail(format!("n_agents = {} but {} positions given", self.n_agents, self.agents.len()));
        }
        if let Some(p) = self.agents.iter().find(|p| !p.is_finite()) {
            return fail(format!("non-finite agent position {p}"));
        }
        if self.sensing_agent >= self.n_agents {
            return fail(format!("sensing_agent {} out of range", self.sensing_agent));
        }
        if !(self.target.radius > 0.0) || !self.target.centre.is_finite() {
            return fail("target radius must be positive and centre finite".into());
        }
        let l = &self.target.limits;
        if !(l.speed_cap >= 0.0 && l.radius_rate_cap >= 0.0 && l.radius_floor > 0.0) {
            return fail("target limits must be non-negative with a positive radius floor".into());
        }
        if self.target.radius < l.radius_floor {
            return fail("target radius is below its floor".into());
        }
        let e = &self.estimator;
        if !(e.alpha > 0.0) || !(e.gamma > 0.0) {
            return fail(format!("estimator gains must be positive (alpha {}, gamma {})", e.alpha, e.gamma));
        }
        if !(e.measurement_noise >= 0.0) {
            return fail("measurement_noise must be non-negative".into());
        }
        let c = &self.controller;
        if !(c.delta > 0.0) || !(c.u_max > 0.0) {
            return fail("controller delta and u_max must be positive".into());
        }
        match self.satellite {
            SatelliteModel::Fixed { centre, radius } => {
                if self.estimator.source == EstimateSource::Adaptive {
                    check_initial_estimate(&self.agents, centre, radius)?;
                }
            }
            SatelliteModel::Gaussian { centre_sigma, radius_sigma } => {
                if !(centre_sigma >= 0.0 && radius_sigma >= 0.0) {
                    return fail("satellite noise must be non-negative".into());
                }
            }
        }
        if !(0.0..1.0).contains(&self.transient_fraction) {
            return fail("transient_fraction must lie in [0, 1)".into());
        }
        if !(self.pe.window > 0.0) || !(self.pe.threshold >= 0.0) {
            return fail("pe window must be positive and threshold non-negative".into());
        }
        Ok(())
    }
}

/// Every agent must start outside the estimated circle: `D̂(0) > r̂(0) > 0`.
pub fn check_initial_estimate(agents: &[Vec2], c_hat: Vec2, r_hat: f64) -> Result<(), SimError> {
    if !(r_hat > 0.0) {
        return Err(SimError::Validation(format!("initial radius estimate must be positive, got {r_hat}")));
    }
    for (i, &p) in agents.iter().enumerate() {
        let d = (p - c_hat).norm();
        if !(d > r_hat) {
            return Err(SimError::Validation(format!(
                "agent {i} starts {d} from the estimated centre, not outside the estimated radius {r_hat}"
            )));
        }
    }
    Ok(())
}

/// One logged sample. Per-agent vectors are indexed by agent id; `beta` is
/// indexed by ring position (`beta[0]` is the gap after the sensing agent).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub t: f64,
    pub c: Vec2,
    pub r: f64,
    pub c_hat: Vec2,
    pub r_hat: f64,
    pub c_hat_dot: Vec2,
    pub r_hat_dot: f64,
    pub positions: Vec<Vec2>,
    pub beta: Vec<f64>,
    pub dc: Vec<f64>,
    pub db: Vec<f64>,
    pub u_raw: Vec<Vec2>,
    pub u: Vec<Vec2>,
    /// Largest `|‖ψ_i‖ − 1|` over the agents.
    pub bearing_norm_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EventCounts {
    pub target_speed_clips: usize,
    pub target_rate_clips: usize,
    pub target_radius_floors: usize,
    pub r_hat_clips: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PeOutcome {
    Evaluated(PeResult),
    InsufficientData { detail: String },
}

impl PeOutcome {
    pub fn verdict(&self) -> Option<bool> {
        match self {
            PeOutcome::Evaluated(r) => Some(r.verdict),
            PeOutcome::InsufficientData { .. } => None,
        }
    }

    fn from_result(r: Result<PeResult, PeError>) -> Self {
        match r {
            Ok(r) => PeOutcome::Evaluated(r),
            Err(e) => PeOutcome::InsufficientData { detail: e.to_string() },
        }
    }
}

/// Excitation of the sensing agent's velocity and range rate after the
/// transient cutoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeReport {
    pub from_t: f64,
    pub velocity: PeOutcome,
    pub range_rate: PeOutcome,
}

impl PeReport {
    pub fn verdict(&self) -> Option<bool> {
        Some(self.velocity.verdict()? && self.range_rate.verdict()?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: SimConfig,
    pub satellite: SatelliteEstimate,
    pub order: RingOrder,
    pub rows: Vec<Row>,
    pub violations: Vec<Violation>,
    pub events: EventCounts,
    pub pe: PeReport,
}

impl RunRecord {
    pub fn n_agents(&self) -> usize {
        self.order.len()
    }

    pub fn sensing(&self) -> usize {
        self.order.sensing()
    }

    /// `W_i = D̂_i − r̂` over the run.
    pub fn boundary_gap(&self, agent: usize) -> Vec<f64> {
        self.rows.iter().map(|r| (r.c_hat - r.positions[agent]).norm() - r.r_hat).collect()
    }

    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.t).collect()
    }
}

/// Estimates as received by the agents.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Broadcast {
    c_hat: Vec2,
    r_hat: f64,
    c_hat_dot: Vec2,
    r_hat_dot: f64,
}

/// Everything the right-hand side needs that is fixed over one step.
struct StepInputs<'a> {
    truth: &'a TargetState,
    c_dot: Vec2,
    r_dot: f64,
    range_noise: (f64, f64),
    stale: Option<Broadcast>,
}

struct Evaluation {
    dx: Vec<f64>,
    broadcast: Broadcast,
    centre_used: Vec2,
    beta: Vec<f64>,
    dc: Vec<f64>,
    db: Vec<f64>,
    u_raw: Vec<Vec2>,
    u: Vec<Vec2>,
    bearing_norm_error: f64,
}

struct Loop<'a> {
    cfg: &'a SimConfig,
    n: usize,
    order: RingOrder,
    estimator: EstimatorState,
}

impl Loop<'_> {
    fn positions(&self, x: &[f64]) -> Vec<Vec2> {
        (0..self.n).map(|i| Vec2::new(x[2 * i], x[2 * i + 1])).collect()
    }

    fn evaluate(&self, x: &[f64], tau: f64, inp: &StepInputs<'_>) -> Result<Evaluation, GeometryError> {
        let n = self.n;
        let positions = self.positions(x);
        let (c, r) = inp.truth.advanced(inp.c_dot, inp.r_dot, tau);
        let s = self.cfg.sensing_agent;

        let (dc_true, db_true) = distances(c, r, positions[s]);
        let m = Measurement {
            dc: dc_true + inp.range_noise.0,
            db: (db_true + inp.range_noise.1).max(0.0),
            p1: positions[s],
        };
        let est = self.estimator.with_state(&x[2 * n..]);
        let rates = est.rates(&m);

        let live = match self.cfg.estimator.source {
            EstimateSource::Adaptive => Broadcast {
                c_hat: est.c_hat,
                r_hat: est.r_hat,
                c_hat_dot: rates.c_hat_dot,
                r_hat_dot: rates.r_hat_dot,
            },
            EstimateSource::Truth => Broadcast { c_hat: c, r_hat: r, c_hat_dot: inp.c_dot, r_hat_dot: inp.r_dot },
        };
        let bc = inp.stale.unwrap_or(live);

        let mut dx = vec![0.0; x.len()];
        let mut beta = vec![0.0; n];
        let mut u_raw = vec![Vec2::ZERO; n];
        let mut u = vec![Vec2::ZERO; n];
        let mut bearing_norm_error: f64 = 0.0;
        for k in 0..n {
            let id = self.order.perm[k];
            let next = self.order.perm[(k + 1) % n];
            let rel = positions[id] - bc.c_hat;
            beta[k] = ccw_angle(rel, positions[next] - bc.c_hat)?.radians();
            let psi = bearing(bc.c_hat, positions[id])?;
            bearing_norm_error = bearing_norm_error.max((psi.norm() - 1.0).abs());
            let raw = control_law(bc.c_hat_dot, bc.r_hat_dot, rel.norm(), bc.r_hat, beta[k], psi);
            let applied = match self.cfg.scripted_sensing_velocity {
                Some(v) if id == s => v,
                _ => apply_actuation(raw, &self.cfg.controller),
            };
            u_raw[id] = raw;
            u[id] = applied;
            dx[2 * id] = applied.x;
            dx[2 * id + 1] = applied.y;
        }
        match self.cfg.estimator.source {
            EstimateSource::Adaptive => rates.write_to(&mut dx[2 * n..]),
            EstimateSource::Truth => {
                let mut est_rates = rates;
                est_rates.r_hat_dot = inp.r_dot;
                est_rates.c_hat_dot = inp.c_dot;
                est_rates.write_to(&mut dx[2 * n..]);
            }
        }

        let (dc, db): (Vec<f64>, Vec<f64>) = positions.iter().map(|&p| distances(c, r, p)).unzip();
        Ok(Evaluation { dx, broadcast: live, centre_used: bc.c_hat, beta, dc, db, u_raw, u, bearing_norm_error })
    }

    fn check(&self, step: usize, t: f64, x: &[f64], eval: &Evaluation) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut flag = |kind, detail: String| out.push(Violation { step, t, kind, detail });
        let sum: f64 = eval.beta.iter().sum();
        if (sum - TAU).abs() > BETA_SUM_TOL {
            flag(InvariantKind::BetaSum, format!("sum of gaps {sum}"));
        }
        if let Some(b) = eval.beta.iter().find(|&&b| b < BETA_MIN) {
            flag(InvariantKind::BetaNegative, format!("gap {b}"));
        }
        match order_agents(&self.positions(x), eval.centre_used, self.cfg.sensing_agent) {
            Ok(o) if o == self.order => {}
            Ok(o) => flag(InvariantKind::RingOrder, format!("order {:?} != {:?}", o.perm, self.order.perm)),
            Err(e) => flag(InvariantKind::RingOrder, e.to_string()),
        }
        let r_hat = x[2 * self.n + 6];
        if !(r_hat > 0.0) {
            flag(InvariantKind::RadiusEstimate, format!("r_hat = {r_hat}"));
        }
        if eval.bearing_norm_error > BEARING_NORM_TOL {
            flag(InvariantKind::BearingNorm, format!("|‖ψ‖ − 1| = {:e}", eval.bearing_norm_error));
        }
        out
    }
}

/// Runs one closed-loop simulation.
pub fn run(config: &SimConfig) -> Result<RunRecord, SimError> {
    config.validate()?;
    let n = config.n_agents;
    let dt = config.dt;
    let steps = config.steps();
    let s = config.sensing_agent;

    let mut target_rng = stream(config.seed, StreamId::Target);
    let mut satellite_rng = stream(config.seed, StreamId::Satellite);
    let mut noise_rng = stream(config.seed, StreamId::Measurement);

    let initial = TargetState::at_rest(config.target.centre, config.target.radius);
    let satellite = config.satellite.observe(&initial, &mut satellite_rng);
    if config.estimator.source == EstimateSource::Adaptive {
        check_initial_estimate(&config.agents, satellite.c_hat0, satellite.r_hat0)?;
    }
    let (c_hat0, r_hat0) = match config.estimator.source {
        EstimateSource::Adaptive => (satellite.c_hat0, satellite.r_hat0),
        EstimateSource::Truth => (initial.c, initial.r),
    };

    let order = order_agents(&config.agents, c_hat0, s).map_err(|source| SimError::Geometry { step: 0, source })?;
    let (dc0, db0) = distances(initial.c, initial.r, config.agents[s]);
    let first = Measurement { dc: dc0, db: db0, p1: config.agents[s] };
    let estimator = EstimatorState::new(
        c_hat0,
        r_hat0,
        config.estimator.alpha,
        config.estimator.gamma,
        config.estimator.filter_init,
        &first,
    );

    let mut x = vec![0.0; 2 * n + estimator::STATE_LEN];
    for (i, p) in config.agents.iter().enumerate() {
        x[2 * i] = p.x;
        x[2 * i + 1] = p.y;
    }
    estimator.write_to(&mut x[2 * n..]);

    let sim = Loop { cfg: config, n, order: order.clone(), estimator };
    let mut truth = initial;
    let mut rows = Vec::with_capacity(steps + 1);
    let mut violations = Vec::new();
    let mut events = EventCounts::default();
    let mut history: VecDeque<Broadcast> = VecDeque::new();

    let sigma = config.estimator.measurement_noise;
    let record_step = |step: usize,
                           x: &[f64],
                           inp: &StepInputs<'_>,
                           rows: &mut Vec<Row>,
                           violations: &mut Vec<Violation>|
     -> Result<Broadcast, SimError> {
        let t = step as f64 * dt;
        let eval = sim.evaluate(x, 0.0, inp).map_err(|source| SimError::Geometry { step, source })?;
        for v in sim.check(step, t, x, &eval) {
            if config.strict {
                return Err(SimError::InvariantViolation(v));
            }
            violations.push(v);
        }
        let b = eval.broadcast;
        rows.push(Row {
            t,
            c: inp.truth.c,
            r: inp.truth.r,
            c_hat: b.c_hat,
            r_hat: b.r_hat,
            c_hat_dot: b.c_hat_dot,
            r_hat_dot: b.r_hat_dot,
            positions: sim.positions(x),
            beta: eval.beta,
            dc: eval.dc,
            db: eval.db,
            u_raw: eval.u_raw,
            u: eval.u,
            bearing_norm_error: eval.bearing_norm_error,
        });
        Ok(b)
    };

    for step in 0..=steps {
        let t = step as f64 * dt;
        let next = (step < steps).then(|| {
            step_target(&truth, &initial, &config.target.script, &config.target.limits, t, dt, &mut target_rng)
        });
        let (c_dot, r_dot) = next.map_or((Vec2::ZERO, 0.0), |n| (n.state.c_dot, n.state.r_dot));
        let range_noise = if sigma > 0.0 {
            let a: f64 = noise_rng.sample(StandardNormal);
            let b: f64 = noise_rng.sample(StandardNormal);
            (sigma * a, sigma * b)
        } else {
            (0.0, 0.0)
        };
        let stale = match config.broadcast_staleness {
            0 => None,
            k if history.len() > k => history.get(history.len() - 1 - k).copied(),
            _ => history.front().copied(),
        };
        let inputs = StepInputs { truth: &truth, c_dot, r_dot, range_noise, stale };

        let live = record_step(step, &x, &inputs, &mut rows, &mut violations)?;
        if config.broadcast_staleness > 0 {
            history.push_back(live);
            if history.len() > config.broadcast_staleness + 1 {
                history.pop_front();
            }
        }
        let Some(next) = next else { break };

        // the last slot carries the stage time so the held target velocity is
        // applied at each RK4 stage
        let m = x.len();
        let mut ext = x.clone();
        ext.push(0.0);
        let ext = try_rk4_step(&ext, dt, |y, dy| {
            let eval = sim.evaluate(&y[..m], y[m], &inputs)?;
            dy[..m].copy_from_slice(&eval.dx);
            dy[m] = 1.0;
            Ok(())
        })
        .map_err(|source| SimError::Geometry { step, source })?;
        x.copy_from_slice(&ext[..m]);
        if x.iter().any(|v| !v.is_finite()) {
            return Err(SimError::NonFiniteState { step: step + 1 });
        }

        events.target_speed_clips += next.speed_clipped as usize;
        events.target_rate_clips += next.rate_clipped as usize;
        events.target_radius_floors += next.radius_floored as usize;
        truth = next.state;

        let r_idx = 2 * n + 6;
        match config.estimator.source {
            EstimateSource::Adaptive => {
                if x[r_idx] <= 0.0 {
                    let v = Violation {
                        step: step + 1,
                        t: t + dt,
                        kind: InvariantKind::RadiusEstimate,
                        detail: format!("r_hat = {}", x[r_idx]),
                    };
                    if config.strict {
                        return Err(SimError::InvariantViolation(v));
                    }
                    violations.push(v);
                }
                if x[r_idx] < R_HAT_FLOOR {
                    x[r_idx] = R_HAT_FLOOR;
                    events.r_hat_clips += 1;
                }
            }
            EstimateSource::Truth => {
                x[r_idx] = truth.r;
                x[r_idx + 1] = truth.c.x;
                x[r_idx + 2] = truth.c.y;
            }
        }
    }

    let pe = pe_report(config, &rows);
    Ok(RunRecord { config: config.clone(), satellite, order, rows, violations, events, pe })
}

fn pe_report(config: &SimConfig, rows: &[Row]) -> PeReport {
    let s = config.sensing_agent;
    let cutoff = config.transient_cutoff();
    let start = rows.iter().position(|r| r.t >= cutoff - 1e-9).unwrap_or(rows.len());
    let tail = &rows[start..];
    let from_t = tail.first().map_or(cutoff, |r| r.t);
    let velocity: Vec<Vec2> = tail.iter().map(|r| r.u[s]).collect();
    let range: Vec<f64> = tail.iter().map(|r| r.dc[s]).collect();
    let range_rate = finite_difference(&range, config.dt);
    PeReport {
        from_t,
        velocity: PeOutcome::from_result(pe_check(Signal::Planar(&velocity), from_t, config.dt, &config.pe)),
        range_rate: PeOutcome::from_result(pe_check(Signal::Scalar(&range_rate), from_t, config.dt, &config.pe)),
    }
}

/// Runs independent simulations on a pool of `threads` workers; results
/// keep the input order.
pub fn run_many(configs: &[SimConfig], threads: usize) -> Vec<Result<RunRecord, SimError>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build();
    match pool {
        Ok(pool) => pool.install(|| configs.par_iter().map(run).collect()),
        Err(_) => configs.iter().map(run).collect(),
    }
}
