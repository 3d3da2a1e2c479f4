use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Tolerance for accepting a frame as orthonormal and right-handed.
pub const FRAME_TOL: f64 = 1e-12;

/// Orthonormal (T, N, B) triad.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrame {
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
}

impl FrenetFrame {
    pub fn new(t: Vec3, n: Vec3, b: Vec3) -> Self {
        Self { t, n, b }
    }

    pub fn identity() -> Self {
        Self::new(Vec3::x(), Vec3::y(), Vec3::z())
    }

    /// Builds B = T × N after Gram–Schmidt on (T, N).
    pub fn from_tangent_normal(t: Vec3, n: Vec3) -> Result<Self> {
        let tn = t.norm();
        if !(tn > 1e-300) || !tn.is_finite() {
            return Err(Error::Frame("zero tangent".into()));
        }
        let t = t / tn;
        let n = n - t * t.dot(&n);
        let nn = n.norm();
        if !(nn > 1e-12) || !nn.is_finite() {
            return Err(Error::Frame("normal parallel to tangent".into()));
        }
        let n = n / nn;
        Ok(Self::new(t, n, t.cross(&n)))
    }

    /// Validates orthonormality and handedness to [`FRAME_TOL`].
    pub fn checked(t: Vec3, n: Vec3, b: Vec3) -> Result<Self> {
        let f = Self::new(t, n, b);
        let d = f.orthonormality_defect();
        if !(d <= FRAME_TOL) {
            return Err(Error::Frame(format!("orthonormality defect {d:e}")));
        }
        Ok(f)
    }

    /// Largest deviation from unit norms, orthogonality and B = T × N.
    pub fn orthonormality_defect(&self) -> f64 {
        let norms = [self.t.norm(), self.n.norm(), self.b.norm()].map(|v| (v - 1.0).abs());
        let dots = [self.t.dot(&self.n), self.t.dot(&self.b), self.n.dot(&self.b)].map(f64::abs);
        let hand = (self.t.cross(&self.n) - self.b).amax();
        norms.into_iter().chain(dots).fold(hand, f64::max)
    }

    /// Gram–Schmidt keeping T, projecting N, and B = T × N.
    pub fn reorthonormalized(&self) -> Self {
        let t = self.t.normalize();
        let n = (self.n - t * t.dot(&self.n)).normalize();
        Self::new(t, n, t.cross(&n))
    }

    /// Frame of the same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        Self::new(-self.t, self.n, -self.b)
    }

    /// Frame of the mirror image under y -> -y (B recomputed to stay
    /// right-handed).
    pub fn mirrored_y(&self) -> Self {
        let t = mirror_y(&self.t);
        let n = mirror_y(&self.n);
        Self::new(t, n, t.cross(&n))
    }

    pub fn is_finite(&self) -> bool {
        self.t.iter().chain(self.n.iter()).chain(self.b.iter()).all(|v| v.is_finite())
    }
}

pub fn mirror_y(v: &Vec3) -> Vec3 {
    Vec3::new(v.x, -v.y, v.z)
}
