//! Ring ordering of the agents around the estimated centre, the angular
//! gaps between ring neighbours, and the consensus dynamics those gaps obey
//! under the control law.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::geometry::{ccw_angle, Angle, GeometryError, Vec2};

/// Agent ids in ring order: `perm[k]` is the agent in position `k + 1`.
/// The sensing agent is always at `perm[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingOrder {
    pub perm: Vec<usize>,
}

impl RingOrder {
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn sensing(&self) -> usize {
        self.perm[0]
    }

    /// Ring position (0-based) of every agent id.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.perm.len()];
        for (k, &id) in self.perm.iter().enumerate() {
            pos[id] = k;
        }
        pos
    }
}

/// Places the sensing agent first and the rest by increasing
/// counterclockwise angle from it about `c_hat`. Equal angles are broken by
/// agent id.
pub fn order_agents(positions: &[Vec2], c_hat: Vec2, sensing: usize) -> Result<RingOrder, GeometryError> {
    let anchor = positions[sensing] - c_hat;
    let mut keyed = Vec::with_capacity(positions.len() - 1);
    for (id, &p) in positions.iter().enumerate() {
        if id != sensing {
            keyed.push((ccw_angle(anchor, p - c_hat)?.radians(), id));
        }
    }
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut perm = Vec::with_capacity(positions.len());
    perm.push(sensing);
    perm.extend(keyed.into_iter().map(|(_, id)| id));
    Ok(RingOrder { perm })
}

/// Gaps `β_k` from ring position `k` to `k + 1`, wrapping at the end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaVector {
    pub beta: Vec<Angle>,
}

impl BetaVector {
    pub fn radians(&self) -> Vec<f64> {
        self.beta.iter().map(|b| b.radians()).collect()
    }

    pub fn sum(&self) -> f64 {
        self.beta.iter().map(|b| b.radians()).sum()
    }

    /// `‖β − (2π/n)𝟙‖∞`
    pub fn consensus_error(&self) -> f64 {
        let target = TAU / self.beta.len() as f64;
        self.beta.iter().map(|b| (b.radians() - target).abs()).fold(0.0, f64::max)
    }
}

pub fn compute_betas(order: &RingOrder, positions: &[Vec2], c_hat: Vec2) -> Result<BetaVector, GeometryError> {
    let n = order.len();
    let beta = (0..n)
        .map(|k| {
            let here = positions[order.perm[k]] - c_hat;
            let next = positions[order.perm[(k + 1) % n]] - c_hat;
            ccw_angle(here, next)
        })
        .collect::<Result<_, _>>()?;
    Ok(BetaVector { beta })
}

/// Signed node-by-edge incidence matrix of the directed ring
/// `1 → 2 → … → n → 1`: edge `j` leaves node `j` (+1) and enters node
/// `j + 1` (−1).
#[derive(Debug, Clone, PartialEq)]
pub struct RingIncidence {
    pub b: Vec<Vec<f64>>,
}

impl RingIncidence {
    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// `Bᵀx`
    pub fn transpose_mul(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|j| (0..n).map(|i| self.b[i][j] * x[i]).sum()).collect()
    }
}

pub fn ring_incidence(n: usize) -> RingIncidence {
    assert!(n >= 2, "a ring needs at least two nodes");
    let mut b = vec![vec![0.0; n]; n];
    for j in 0..n {
        b[j][j] = 1.0;
        b[(j + 1) % n][j] = -1.0;
    }
    RingIncidence { b }
}

/// `β̇ = −δBᵀβ`, i.e. `β̇_k = δ(β_{k+1} − β_k)` around the ring.
pub fn beta_reference_rhs(beta: &[f64], delta: f64) -> Vec<f64> {
    let n = beta.len();
    (0..n).map(|k| delta * (beta[(k + 1) % n] - beta[k])).collect()
}
