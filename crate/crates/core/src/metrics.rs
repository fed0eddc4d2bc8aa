//! Error envelopes computed from a finished run: tracking, estimation,
//! spacing and actuation, all taken over the samples after a transient
//! cutoff.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::controller::ActuationMode;
use crate::sim::RunRecord;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("no samples at or after t = {cutoff} (run ends at {end})")]
pub struct EmptyWindow {
    pub cutoff: f64,
    pub end: f64,
}

/// Slack on the actuation bound so that a command rescaled to exactly
/// `u_max` is not counted.
const CONTROL_BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    pub transient_cutoff: f64,
    pub samples: usize,
    /// `max |D^b_i|` per agent id.
    pub max_boundary_error: Vec<f64>,
    pub max_centre_error: f64,
    pub max_radius_error: f64,
    /// `max_k |β_k − 2π/n|`
    pub max_spacing_error: f64,
    /// `max |β_1 − 2π/n|`, the gap ahead of the sensing agent.
    pub max_sensing_gap_error: f64,
    /// Largest applied control component, in absolute value.
    pub max_control_component: f64,
    /// Applied components outside `[−u_max, u_max]`. Only Saturate mode has
    /// a bound, so this is always 0 in Scale mode.
    pub control_bound_violations: usize,
    /// The same quantities at the last logged step.
    pub final_errors: FinalErrors,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalErrors {
    pub t: f64,
    pub boundary_error: Vec<f64>,
    pub centre_error: f64,
    pub radius_error: f64,
    pub spacing_error: f64,
}

fn spacing_error(beta: &[f64]) -> f64 {
    let target = TAU / beta.len() as f64;
    beta.iter().map(|b| (b - target).abs()).fold(0.0, f64::max)
}

pub fn summarize(record: &RunRecord, transient_cutoff: f64) -> Result<ErrorSummary, EmptyWindow> {
    let end = record.rows.last().map_or(0.0, |r| r.t);
    // a hair of slack so a cutoff on the grid includes that sample
    let start = record.rows.iter().position(|r| r.t >= transient_cutoff - 1e-9);
    let Some(start) = start else {
        return Err(EmptyWindow { cutoff: transient_cutoff, end });
    };
    let tail = &record.rows[start..];
    let n = record.n_agents();
    let bounded = record.config.controller.mode == ActuationMode::Saturate;
    let u_max = record.config.controller.u_max;
    let target_gap = TAU / n as f64;

    let mut max_db = vec![0.0f64; n];
    let mut s = ErrorSummary {
        transient_cutoff,
        samples: tail.len(),
        max_boundary_error: Vec::new(),
        max_centre_error: 0.0,
        max_radius_error: 0.0,
        max_spacing_error: 0.0,
        max_sensing_gap_error: 0.0,
        max_control_component: 0.0,
        control_bound_violations: 0,
        final_errors: FinalErrors {
            t: 0.0,
            boundary_error: Vec::new(),
            centre_error: 0.0,
            radius_error: 0.0,
            spacing_error: 0.0,
        },
    };
    for row in tail {
        for (m, &db) in max_db.iter_mut().zip(&row.db) {
            *m = m.max(db);
        }
        s.max_centre_error = s.max_centre_error.max((row.c_hat - row.c).norm());
        s.max_radius_error = s.max_radius_error.max((row.r_hat - row.r).abs());
        s.max_spacing_error = s.max_spacing_error.max(spacing_error(&row.beta));
        s.max_sensing_gap_error = s.max_sensing_gap_error.max((row.beta[0] - target_gap).abs());
        for u in &row.u {
            for comp in [u.x.abs(), u.y.abs()] {
                s.max_control_component = s.max_control_component.max(comp);
                if bounded && comp > u_max + CONTROL_BOUND_SLACK {
                    s.control_bound_violations += 1;
                }
            }
        }
    }
    s.max_boundary_error = max_db;
    let last = &tail[tail.len() - 1];
    s.final_errors = FinalErrors {
        t: last.t,
        boundary_error: last.db.clone(),
        centre_error: (last.c_hat - last.c).norm(),
        radius_error: (last.r_hat - last.r).abs(),
        spacing_error: spacing_error(&last.beta),
    };
    Ok(s)
}

/// `max_t |W(t) − W(0)e^{−δt}|` for a series sampled at `times`.
pub fn decay_fit(times: &[f64], series: &[f64], delta: f64) -> f64 {
    let (Some(&t0), Some(&w0)) = (times.first(), series.first()) else {
        return 0.0;
    };
    times
        .iter()
        .zip(series)
        .map(|(&t, &w)| (w - crate::oracle::exp_decay(w0, delta, t - t0)).abs())
        .fold(0.0, f64::max)
}
