//! Closed-form reference solutions used to check the integrator and the
//! closed loop. Nothing here calls into the simulation code paths.

use std::f64::consts::TAU;

/// Exact solution of `β̇_k = δ(β_{k+1} − β_k)` on an `n`-ring at time `t`.
///
/// The system matrix is circulant, so it diagonalizes in the Fourier basis:
/// mode `m` evolves as `exp(δ(e^{2πim/n} − 1)t)`.
pub fn ring_consensus(beta0: &[f64], delta: f64, t: f64) -> Vec<f64> {
    let n = beta0.len();
    let nf = n as f64;
    // forward DFT coefficients, c_m = (1/n) Σ_j β_j e^{−2πijm/n}
    let coeffs: Vec<(f64, f64)> = (0..n)
        .map(|m| {
            beta0.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, &b)| {
                let th = -TAU * (j * m) as f64 / nf;
                (re + b * th.cos() / nf, im + b * th.sin() / nf)
            })
        })
        .collect();
    (0..n)
        .map(|k| {
            coeffs
                .iter()
                .enumerate()
                .map(|(m, &(cr, ci))| {
                    let th = TAU * m as f64 / nf;
                    let growth = (delta * (th.cos() - 1.0) * t).exp();
                    let phase = delta * th.sin() * t + TAU * (k * m) as f64 / nf;
                    growth * (cr * phase.cos() - ci * phase.sin())
                })
                .sum()
        })
        .collect()
}

/// `W(t) = W(0)e^{−δt}`
pub fn exp_decay(w0: f64, delta: f64, t: f64) -> f64 {
    w0 * (-delta * t).exp()
}

/// Response of `ż = −αz + u` with constant `u` from `z(0) = z0`:
/// returns `(z(t), ż(t))`.
pub fn first_order_response(alpha: f64, u: f64, z0: f64, t: f64) -> (f64, f64) {
    let zs = u / alpha;
    let decay = (-alpha * t).exp();
    (zs + (z0 - zs) * decay, -alpha * (z0 - zs) * decay)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_consensus_at_zero_is_identity() {
        let b = [0.5, 1.0, 2.0, TAU - 3.5];
        for (a, e) in ring_consensus(&b, 1.3, 0.0).iter().zip(b) {
            assert!((a - e).abs() < 1e-14);
        }
    }

    #[test]
    fn ring_consensus_two_nodes_by_hand() {
        // n = 2: mean is fixed, difference decays at 2δ
        let (b1, b2, d, t) = (1.0, 3.0, 0.5, 0.8);
        let out = ring_consensus(&[b1, b2], d, t);
        let diff = (b1 - b2) * (-2.0 * d * t).exp();
        assert!((out[0] - (2.0 + diff / 2.0)).abs() < 1e-14);
        assert!((out[1] - (2.0 - diff / 2.0)).abs() < 1e-14);
    }

    #[test]
    fn first_order_response_limits() {
        assert_eq!(first_order_response(2.0, 4.0, 0.0, 0.0), (0.0, 4.0));
        let (z, dz) = first_order_response(2.0, 4.0, 0.0, 50.0);
        assert!((z - 2.0).abs() < 1e-15 && dz.abs() < 1e-15);
    }
}
