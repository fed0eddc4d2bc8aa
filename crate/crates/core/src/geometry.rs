//! Planar vector primitives, the quarter-turn operator, counterclockwise
//! angles and target-relative distances.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Norm below which a vector is treated as zero when a direction is needed.
pub const EPS_MIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeometryError {
    #[error("zero-length vector (norm {norm:e}) has no direction")]
    ZeroVector { norm: f64 },
    #[error("bearing undefined: agent is {distance:e} from the estimated centre")]
    SingularBearing { distance: f64 },
}

/// A point or displacement in the plane, in world units.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product `self × other`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Applies `E = [[0, 1], [-1, 0]]`, a clockwise quarter turn.
    ///
    /// For a bearing pointing at the centre, `rot90` gives the
    /// counterclockwise tangent of the orbit.
    pub fn rot90(self) -> Vec2 {
        Vec2::new(self.y, -self.x)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self::new(x, y)
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, rhs: Vec2) {
        self.x -= rhs.x;
        self.y -= rhs.y;
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// An angle in radians, normalized to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Self {
        let mut a = radians.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU for tiny negative inputs
        if a >= TAU {
            a = 0.0;
        }
        Angle(a)
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Counterclockwise angle swept from `v1` to `v2`, in `[0, 2π)`.
///
/// Computed as `atan2(v1×v2, v1·v2)`. The half-angle form
/// `2·atan2(v1×v2, ‖v1‖‖v2‖ + v1·v2)` is equivalent in exact arithmetic but
/// degenerates to `atan2(0, 0) = 0` for antiparallel inputs.
pub fn ccw_angle(v1: Vec2, v2: Vec2) -> Result<Angle, GeometryError> {
    let (n1, n2) = (v1.norm(), v2.norm());
    if n1 < EPS_MIN || n2 < EPS_MIN {
        return Err(GeometryError::ZeroVector { norm: n1.min(n2) });
    }
    Ok(Angle::new(v1.cross(v2).atan2(v1.dot(v2))))
}

/// Distance to the centre and to the boundary of the circle `(c, r)`.
pub fn distances(c: Vec2, r: f64, p: Vec2) -> (f64, f64) {
    let dc = (c - p).norm();
    (dc, (r - dc).abs())
}

/// Unit vector from `p` towards the estimated centre `c_hat`.
pub fn bearing(c_hat: Vec2, p: Vec2) -> Result<Vec2, GeometryError> {
    let d = c_hat - p;
    let dist = d.norm();
    if dist < EPS_MIN {
        return Err(GeometryError::SingularBearing { distance: dist });
    }
    Ok(d * (1.0 / dist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    #[test]
    fn rot90_examples() {
        assert_eq!(Vec2::new(1.0, 0.0).rot90(), Vec2::new(0.0, -1.0));
        assert_eq!(Vec2::ZERO.rot90(), Vec2::ZERO);
        let v = Vec2::new(3.0, 4.0).rot90();
        assert_eq!(v, Vec2::new(4.0, -3.0));
        assert_eq!(v.norm(), 5.0);
    }

    #[test]
    fn ccw_angle_examples() {
        let a = ccw_angle(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap();
        assert!((a.radians() - FRAC_PI_2).abs() < 1e-15);
        let a = ccw_angle(Vec2::new(1.0, 0.0), Vec2::new(0.0, -1.0)).unwrap();
        assert!((a.radians() - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert_eq!(ccw_angle(Vec2::new(2.0, 5.0), Vec2::new(2.0, 5.0)).unwrap().radians(), 0.0);
    }

    #[test]
    fn ccw_angle_matches_rotation_oracle() {
        // rotate v1 = (1,1) by π/2 counterclockwise with the standard matrix
        let v1 = Vec2::new(1.0, 1.0);
        let (s, c) = FRAC_PI_2.sin_cos();
        let rotated = Vec2::new(c * v1.x - s * v1.y, s * v1.x + c * v1.y);
        let v2 = Vec2::new(-1.0, 1.0);
        assert!((rotated - v2).norm() < 1e-15);
        let a = ccw_angle(v1, v2).unwrap();
        assert!((a.radians() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn ccw_angle_rejects_zero() {
        assert!(matches!(
            ccw_angle(Vec2::ZERO, Vec2::new(1.0, 0.0)),
            Err(GeometryError::ZeroVector { .. })
        ));
        assert!(ccw_angle(Vec2::new(1.0, 0.0), Vec2::new(1e-12, 0.0)).is_err());
    }

    #[test]
    fn ccw_angle_near_pi_is_continuous() {
        let below = ccw_angle(Vec2::new(1.0, 0.0), Vec2::new(-1.0, 1e-9)).unwrap();
        let above = ccw_angle(Vec2::new(1.0, 0.0), Vec2::new(-1.0, -1e-9)).unwrap();
        assert!((below.radians() - PI).abs() < 1e-8);
        assert!((above.radians() - PI).abs() < 1e-8);
        let exact = ccw_angle(Vec2::new(2.0, 0.0), Vec2::new(-3.0, 0.0)).unwrap();
        assert_eq!(exact.radians(), PI);
    }

    #[test]
    fn distances_examples() {
        assert_eq!(distances(Vec2::ZERO, 2.0, Vec2::new(2.0, 0.0)), (2.0, 0.0));
        assert_eq!(distances(Vec2::ZERO, 2.0, Vec2::new(5.0, 0.0)), (5.0, 3.0));
        assert_eq!(
            distances(Vec2::new(25.0, 25.0), 10.0, Vec2::new(25.0, 45.0)),
            (20.0, 10.0)
        );
    }

    #[test]
    fn bearing_examples() {
        assert_eq!(bearing(Vec2::ZERO, Vec2::new(1.0, 0.0)).unwrap(), Vec2::new(-1.0, 0.0));
        assert_eq!(
            bearing(Vec2::new(25.0, 25.0), Vec2::new(25.0, 45.0)).unwrap(),
            Vec2::new(0.0, -1.0)
        );
        let b = bearing(Vec2::new(1.0, 1.0), Vec2::ZERO).unwrap();
        assert!((b - Vec2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!(matches!(
            bearing(Vec2::new(3.0, 3.0), Vec2::new(3.0, 3.0)),
            Err(GeometryError::SingularBearing { .. })
        ));
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(Angle::new(-1e-300).radians(), 0.0);
        assert!((Angle::new(-FRAC_PI_2).radians() - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert!(Angle::new(TAU).radians() < 1e-15);
    }

    fn finite_vec() -> impl Strategy<Value = Vec2> {
        (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(x, y)| Vec2::new(x, y))
    }

    fn nonzero_vec() -> impl Strategy<Value = Vec2> {
        finite_vec().prop_filter("away from origin", |v| v.norm() > 1e-3)
    }

    proptest! {
        #[test]
        fn rot90_is_isometry(v in finite_vec()) {
            prop_assert!((v.rot90().norm() - v.norm()).abs() <= 1e-12 * v.norm().max(1.0));
            prop_assert_eq!(v.rot90().rot90().rot90().rot90(), v);
        }

        #[test]
        fn ccw_angles_complement(a in nonzero_vec(), b in nonzero_vec()) {
            let s = ccw_angle(a, b).unwrap().radians() + ccw_angle(b, a).unwrap().radians();
            prop_assert!(s.abs() < 1e-9 || (s - TAU).abs() < 1e-9, "sum {}", s);
        }

        #[test]
        fn ccw_angles_around_centre_sum_to_full_turn(
            centre in finite_vec(),
            mut angles in prop::collection::vec(0.0f64..TAU, 3..12),
            radii in prop::collection::vec(0.5f64..50.0, 12),
        ) {
            angles.sort_by(f64::total_cmp);
            angles.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
            prop_assume!(angles.len() >= 2);
            let pts: Vec<Vec2> = angles
                .iter()
                .zip(&radii)
                .map(|(&a, &r)| centre + Vec2::from_polar(r, a))
                .collect();
            let n = pts.len();
            let total: f64 = (0..n)
                .map(|i| ccw_angle(pts[i] - centre, pts[(i + 1) % n] - centre).unwrap().radians())
                .sum();
            prop_assert!((total - TAU).abs() < 1e-9, "total {}", total);
        }

        #[test]
        fn bearing_is_unit(c in finite_vec(), p in finite_vec()) {
            prop_assume!((c - p).norm() > 1e-6);
            let b = bearing(c, p).unwrap();
            prop_assert!((b.norm() - 1.0).abs() < 1e-12);
        }
    }
}
