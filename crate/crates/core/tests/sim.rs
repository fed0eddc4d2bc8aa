use std::f64::consts::{FRAC_PI_2, TAU};

use circumnav::controller::ControllerParams;
use circumnav::geometry::Vec2;
use circumnav::io::preset;
use circumnav::metrics::summarize;
use circumnav::sim::{run, run_many, EstimateSource, SimConfig, SimError};
use proptest::prelude::*;

fn short(name: &str, horizon: f64) -> SimConfig {
    let mut cfg = preset(name).unwrap();
    cfg.horizon = horizon;
    cfg
}

#[test]
fn equilibrium_stays_on_the_manifold() {
    let rec = run(&preset("equilibrium").unwrap()).unwrap();
    assert!(rec.violations.is_empty());
    for row in &rec.rows {
        assert!(row.db.iter().all(|&d| d < 1e-7), "t = {}: {:?}", row.t, row.db);
        assert!(row.beta.iter().all(|&b| (b - FRAC_PI_2).abs() < 1e-9), "t = {}: {:?}", row.t, row.beta);
    }
    let s = summarize(&rec, 0.0).unwrap();
    assert_eq!(s.max_centre_error, 0.0);
    assert_eq!(s.max_radius_error, 0.0);
}

#[test]
fn one_row_per_step_on_a_uniform_grid() {
    let cfg = short("stationary", 2.0);
    let rec = run(&cfg).unwrap();
    assert_eq!(rec.rows.len(), cfg.steps() + 1);
    for (k, row) in rec.rows.iter().enumerate() {
        assert_eq!(row.t, k as f64 * cfg.dt);
    }
}

#[test]
fn moving_target_scenario_respects_the_actuation_bound_and_target_caps() {
    let cfg = preset("paper-fig3").unwrap();
    let rec = run(&cfg).unwrap();
    for row in &rec.rows {
        for u in &row.u {
            assert!(u.norm() <= cfg.controller.u_max * (1.0 + 1e-12));
        }
    }
    for w in rec.rows.windows(2) {
        let speed = (w[1].c - w[0].c).norm() / cfg.dt;
        assert!(speed <= cfg.target.limits.speed_cap * (1.0 + 1e-9));
        assert!(w[1].r >= cfg.target.limits.radius_floor);
    }
    // the unit-variance walk exceeds the caps now and then
    assert!(rec.events.target_speed_clips > 0);
}

#[test]
fn estimate_starts_at_the_satellite_fix() {
    let rec = run(&short("paper-fig3", 1.0)).unwrap();
    assert_eq!(rec.rows[0].c_hat, Vec2::new(25.0, 25.0));
    assert_eq!(rec.rows[0].r_hat, 20.0);
    // the radius estimate moves towards the truth in the opening transient
    let r10 = run(&short("paper-fig3", 10.0)).unwrap();
    assert!(r10.rows.last().unwrap().r_hat < 20.0);
}

#[test]
fn straight_line_sensing_is_not_exciting() {
    let rec = run(&preset("pe-negative").unwrap()).unwrap();
    assert_eq!(rec.pe.velocity.verdict(), Some(false));
    assert_eq!(rec.pe.verdict(), Some(false));
}

#[test]
fn too_short_a_run_reports_insufficient_data() {
    let rec = run(&short("stationary", 5.0)).unwrap();
    assert_eq!(rec.pe.verdict(), None);
}

#[test]
fn run_many_matches_sequential_runs() {
    let configs: Vec<SimConfig> = (1..=4)
        .map(|seed| {
            let mut c = short("paper-fig3", 3.0);
            c.seed = seed;
            c
        })
        .collect();
    let parallel = run_many(&configs, 3);
    for (cfg, res) in configs.iter().zip(parallel) {
        assert_eq!(res.unwrap(), run(cfg).unwrap());
    }
}

#[test]
fn seeds_change_the_random_walk() {
    let mut a = short("paper-fig3", 2.0);
    let mut b = a.clone();
    a.seed = 1;
    b.seed = 2;
    assert_ne!(run(&a).unwrap().rows.last().unwrap().c, run(&b).unwrap().rows.last().unwrap().c);
}

#[test]
fn stale_broadcast_changes_the_run_but_not_the_invariants() {
    let fresh = short("stationary", 10.0);
    let mut stale = fresh.clone();
    stale.broadcast_staleness = 5;
    stale.strict = true;
    let a = run(&fresh).unwrap();
    let b = run(&stale).unwrap();
    assert_ne!(a.rows.last().unwrap().positions, b.rows.last().unwrap().positions);
}

#[test]
fn measurement_noise_is_seeded() {
    let mut cfg = short("stationary", 3.0);
    cfg.estimator.measurement_noise = 0.05;
    assert_eq!(run(&cfg).unwrap(), run(&cfg).unwrap());
    let clean = run(&short("stationary", 3.0)).unwrap();
    assert_ne!(run(&cfg).unwrap().rows.last().unwrap().r_hat, clean.rows.last().unwrap().r_hat);
}

#[test]
fn invalid_configs_are_rejected() {
    let base = short("stationary", 1.0);
    let mut bad = vec![];
    let mut c = base.clone();
    c.dt = -0.01;
    bad.push(c);
    let mut c = base.clone();
    c.horizon = 1.005;
    bad.push(c);
    let mut c = base.clone();
    c.n_agents = 3;
    bad.push(c);
    let mut c = base.clone();
    c.sensing_agent = 9;
    bad.push(c);
    let mut c = base.clone();
    c.estimator.gamma = 0.0;
    bad.push(c);
    let mut c = base.clone();
    c.agents[2] = Vec2::new(27.0, 25.0);
    bad.push(c);
    for c in bad {
        assert!(matches!(run(&c), Err(SimError::Validation(_))), "{c:?}");
    }
}

#[test]
fn truth_source_in_scale_mode_decays_at_the_gain() {
    let mut cfg = short("stationary", 5.0);
    cfg.estimator.source = EstimateSource::Truth;
    cfg.controller = ControllerParams::scale(1.5);
    let rec = run(&cfg).unwrap();
    let w0 = rec.boundary_gap(2)[0];
    let w_end = *rec.boundary_gap(2).last().unwrap();
    assert!((w_end - w0 * (-1.5f64 * 5.0).exp()).abs() < 1e-6);
}

#[test]
fn summary_is_pure_and_monotone_in_the_cutoff() {
    let rec = run(&short("paper-fig3", 20.0)).unwrap();
    assert_eq!(summarize(&rec, 5.0).unwrap(), summarize(&rec, 5.0).unwrap());
    let cutoffs = [0.0, 2.5, 5.0, 10.0, 15.0, 19.99];
    let sums: Vec<_> = cutoffs.iter().map(|&c| summarize(&rec, c).unwrap()).collect();
    for w in sums.windows(2) {
        assert!(w[1].max_centre_error <= w[0].max_centre_error);
        assert!(w[1].max_radius_error <= w[0].max_radius_error);
        assert!(w[1].max_spacing_error <= w[0].max_spacing_error);
        for (a, b) in w[1].max_boundary_error.iter().zip(&w[0].max_boundary_error) {
            assert!(a <= b);
        }
    }
    assert!(summarize(&rec, 20.5).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generic_starts_keep_every_invariant(
        radii in prop::collection::vec(21.0f64..45.0, 4),
        jitter in prop::collection::vec(-0.6f64..0.6, 4),
        sensing in 0usize..4,
    ) {
        let mut cfg = short("stationary", 8.0);
        cfg.strict = true;
        cfg.sensing_agent = sensing;
        let centre = Vec2::new(27.0, 23.0);
        cfg.agents = (0..4)
            .map(|k| centre + Vec2::from_polar(radii[k], k as f64 * TAU / 4.0 + jitter[k]))
            .collect();
        let rec = run(&cfg).unwrap();
        for row in &rec.rows {
            prop_assert!((row.beta.iter().sum::<f64>() - TAU).abs() < 1e-6);
            prop_assert!(row.beta.iter().all(|&b| b >= -1e-9));
            prop_assert!(row.r_hat > 0.0);
            prop_assert!(row.bearing_norm_error <= 1e-12);
        }
        prop_assert_eq!(rec.order.sensing(), sensing);
    }
}
