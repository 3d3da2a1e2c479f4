//! Cubic Hermite interpolation: monotone (Fritsch–Carlson) slopes for
//! tabulated intrinsic data, and Hermite segments with supplied derivatives
//! for resampling curves.

use std::ops::{Add, Mul};

use crate::{Error, Result};

/// Cubic Hermite basis on one segment, `u` in [0, 1], width `h`.
pub fn hermite<V>(p0: V, d0: V, p1: V, d1: V, u: f64, h: f64) -> V
where
    V: Copy + Add<Output = V> + Mul<f64, Output = V>,
{
    let u2 = u * u;
    let u3 = u2 * u;
    let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    let h10 = u3 - 2.0 * u2 + u;
    let h01 = -2.0 * u3 + 3.0 * u2;
    let h11 = u3 - u2;
    p0 * h00 + d0 * (h10 * h) + p1 * h01 + d1 * (h11 * h)
}

/// Index `i` such that `xs[i] <= x <= xs[i + 1]`, clamped to valid segments.
pub fn segment_index(xs: &[f64], x: f64) -> usize {
    match xs.binary_search_by(|v| v.partial_cmp(&x).expect("finite abscissae")) {
        Ok(i) => i.min(xs.len() - 2),
        Err(i) => i.saturating_sub(1).min(xs.len() - 2),
    }
}

/// Shape-preserving piecewise cubic through `(x_i, y_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::invalid("abscissae and ordinates differ in length"));
        }
        if xs.len() < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: xs.len() });
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite tabulated value"));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("tabulated abscissae must be strictly increasing"));
        }
        let slopes = fritsch_carlson(&xs, &ys);
        Ok(Self { xs, ys, slopes })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn contains(&self, x: f64) -> bool {
        let (a, b) = self.domain();
        x >= a && x <= b
    }

    /// Evaluates the interpolant; `x` must lie in the table's domain.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            let (a, b) = self.domain();
            return Err(Error::domain(format!("{x} outside tabulated range [{a}, {b}]")));
        }
        let i = segment_index(&self.xs, x);
        let h = self.xs[i + 1] - self.xs[i];
        let u = (x - self.xs[i]) / h;
        Ok(hermite(self.ys[i], self.slopes[i], self.ys[i + 1], self.slopes[i + 1], u, h))
    }
}

fn fritsch_carlson(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (ys[k + 1] - ys[k]) / h[k]).collect();
    if n == 2 {
        return vec![delta[0]; 2];
    }
    let mut m = vec![0.0; n];
    // three-point (second order) slopes, one-sided at the ends
    for k in 1..n - 1 {
        m[k] = (h[k] * delta[k - 1] + h[k - 1] * delta[k]) / (h[k - 1] + h[k]);
    }
    m[0] = ((2.0 * h[0] + h[1]) * delta[0] - h[0] * delta[1]) / (h[0] + h[1]);
    m[n - 1] = ((2.0 * h[n - 2] + h[n - 3]) * delta[n - 2] - h[n - 2] * delta[n - 3]) / (h[n - 2] + h[n - 3]);
    if m[0] * delta[0] <= 0.0 {
        m[0] = 0.0;
    }
    if m[n - 1] * delta[n - 2] <= 0.0 {
        m[n - 1] = 0.0;
    }
    for k in 1..n - 1 {
        if delta[k - 1] * delta[k] <= 0.0 {
            m[k] = 0.0;
        }
    }
    for k in 0..n - 1 {
        if delta[k] == 0.0 {
            m[k] = 0.0;
            m[k + 1] = 0.0;
            continue;
        }
        let a = m[k] / delta[k];
        let b = m[k + 1] / delta[k];
        let r = a * a + b * b;
        if r > 9.0 {
            let s = 3.0 / r.sqrt();
            m[k] = s * a * delta[k];
            m[k + 1] = s * b * delta[k];
        }
    }
    m
}
