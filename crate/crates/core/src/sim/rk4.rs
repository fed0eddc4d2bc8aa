//! Classical fourth-order Runge–Kutta on a flat state vector.

/// One RK4 step of `ẋ = f(x)`; `f` writes the derivative into its second
/// argument.
pub fn rk4_step<F>(x: &[f64], dt: f64, mut f: F) -> Vec<f64>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let infallible: Result<_, std::convert::Infallible> = try_rk4_step(x, dt, |y, dy| {
        f(y, dy);
        Ok(())
    });
    match infallible {
        Ok(v) => v,
        Err(never) => match never {},
    }
}

/// RK4 step with a fallible right-hand side.
pub fn try_rk4_step<F, E>(x: &[f64], dt: f64, mut f: F) -> Result<Vec<f64>, E>
where
    F: FnMut(&[f64], &mut [f64]) -> Result<(), E>,
{
    let n = x.len();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    f(x, &mut k1)?;
    for i in 0..n {
        tmp[i] = x[i] + 0.5 * dt * k1[i];
    }
    f(&tmp, &mut k2)?;
    for i in 0..n {
        tmp[i] = x[i] + 0.5 * dt * k2[i];
    }
    f(&tmp, &mut k3)?;
    for i in 0..n {
        tmp[i] = x[i] + dt * k3[i];
    }
    f(&tmp, &mut k4)?;
    for i in 0..n {
        tmp[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(tmp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formation::ring_incidence;
    use crate::oracle;

    #[test]
    fn zero_field_is_identity() {
        let x = vec![1.0, -2.0, 3.5];
        assert_eq!(rk4_step(&x, 0.1, |_, dx| dx.fill(0.0)), x);
    }

    #[test]
    fn exponential_decay() {
        let mut x = vec![1.0];
        for _ in 0..100 {
            x = rk4_step(&x, 0.01, |y, dy| dy[0] = -y[0]);
        }
        assert!((x[0] - (-1.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn ring_laplacian_matches_closed_form() {
        let b = ring_incidence(3);
        let x0 = vec![0.4, 2.0, std::f64::consts::TAU - 2.4];
        let mut x = x0.clone();
        for _ in 0..100 {
            x = rk4_step(&x, 0.01, |y, dy| {
                for (d, v) in dy.iter_mut().zip(b.transpose_mul(y)) {
                    *d = -v;
                }
            });
        }
        for (a, e) in x.iter().zip(oracle::ring_consensus(&x0, 1.0, 1.0)) {
            assert!((a - e).abs() < 1e-8);
        }
    }

    #[test]
    fn error_short_circuits() {
        let r: Result<Vec<f64>, &str> = try_rk4_step(&[1.0], 0.1, |_, _| Err("boom"));
        assert_eq!(r, Err("boom"));
    }
}
