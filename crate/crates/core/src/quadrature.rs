//! Adaptive composite Simpson quadrature.
//!
//! Used for the cumulative turn of tabulated curvature and for the nested
//! integrals of the natural and parametric position routes. The integrand may
//! be scalar or vector valued.

use std::ops::{Add, Mul, Sub};

use nalgebra::Vector3;

use crate::exec::Execution;
use crate::{Error, Result};

/// Values an adaptive rule can integrate.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync {
    fn magnitude(&self) -> f64;
    fn zero() -> Self;
}

impl Integrand for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn zero() -> Self {
        0.0
    }
}

impl Integrand for Vector3<f64> {
    fn magnitude(&self) -> f64 {
        self.amax()
    }
    fn zero() -> Self {
        Vector3::zeros()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance over the whole integration range.
    pub abs_tol: f64,
    /// Maximum bisection depth; 20 caps the rule at 2^20 panels.
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-10, max_depth: 20 }
    }
}

/// Integrates `f` over `[a, b]` (either orientation).
pub fn integrate<V, F>(f: F, a: f64, b: f64, config: QuadratureConfig) -> Result<V>
where
    V: Integrand,
    F: Fn(f64) -> V,
{
    if a == b {
        return Ok(V::zero());
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(&f, a, b, fa, fm, fb, whole, config.abs_tol, config.max_depth, config.abs_tol)
}

fn simpson<V: Integrand>(a: f64, b: f64, fa: V, fm: V, fb: V) -> V {
    (fa + fm * 4.0 + fb) * ((b - a) / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn recurse<V, F>(f: &F, a: f64, b: f64, fa: V, fm: V, fb: V, whole: V, tol: f64, depth: u32, total_tol: f64) -> Result<V>
where
    V: Integrand,
    F: Fn(f64) -> V,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.magnitude() <= 15.0 * tol {
        return Ok(left + right + delta * (1.0 / 15.0));
    }
    if depth == 0 || m == a || m == b {
        return Err(Error::Quadrature { a, b, tolerance: total_tol });
    }
    let l = recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, total_tol)?;
    let r = recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, total_tol)?;
    Ok(l + r)
}

/// Running integral of `f` over `grid`, starting from zero at `grid[0]`.
///
/// Each panel `[grid[i], grid[i+1]]` is integrated independently (in parallel
/// when requested) with a share of the tolerance proportional to its width,
/// then a single sequential prefix pass accumulates them.
pub fn cumulative<V, F>(f: F, grid: &[f64], config: QuadratureConfig, exec: Execution) -> Result<Vec<V>>
where
    V: Integrand,
    F: Fn(f64) -> V + Sync + Send,
{
    cumulative_panels(|a, b, cfg| integrate(&f, a, b, cfg), grid, config, exec)
}

/// Prefix sums of per-panel integrals computed by `panel(a, b, config)`.
pub fn cumulative_panels<V, P>(panel: P, grid: &[f64], config: QuadratureConfig, exec: Execution) -> Result<Vec<V>>
where
    V: Integrand,
    P: Fn(f64, f64, QuadratureConfig) -> Result<V> + Sync + Send,
{
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    let span = (grid[grid.len() - 1] - grid[0]).abs();
    let panels = exec.try_map_range(grid.len() - 1, |i| {
        let (a, b) = (grid[i], grid[i + 1]);
        let share = if span > 0.0 { ((b - a).abs() / span).max(1e-6) } else { 1.0 };
        panel(a, b, QuadratureConfig { abs_tol: config.abs_tol * share, ..config })
    })?;
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = V::zero();
    out.push(acc);
    for p in panels {
        acc = acc + p;
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v: f64 = integrate(|x| x * x * x - x, 0.0, 2.0, QuadratureConfig::default()).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let cfg = QuadratureConfig::default();
        let a: f64 = integrate(f64::cos, 0.0, 1.3, cfg).unwrap();
        let b: f64 = integrate(f64::cos, 1.3, 0.0, cfg).unwrap();
        assert!((a + b).abs() < 1e-14);
        assert!((a - 1.3f64.sin()).abs() < 1e-10);
    }

    #[test]
    fn vector_integrand() {
        let v: Vector3<f64> =
            integrate(|x| Vector3::new(x.cos(), x.sin(), 1.0), 0.0, 1.0, QuadratureConfig::default()).unwrap();
        assert!((v - Vector3::new(1f64.sin(), 1.0 - 1f64.cos(), 1.0)).amax() < 1e-10);
    }

    #[test]
    fn unreachable_tolerance_errors() {
        // 1/sqrt(x) near 0 cannot reach 1e-14 within depth 5
        let r: Result<f64> = integrate(|x| 1.0 / x.sqrt(), 1e-12, 1.0, QuadratureConfig { abs_tol: 1e-14, max_depth: 5 });
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn cumulative_matches_antiderivative() {
        let grid: Vec<f64> = (0..=200).map(|i| -1.0 + i as f64 * 0.01).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let c: Vec<f64> = cumulative(f64::exp, &grid, QuadratureConfig::default(), exec).unwrap();
            for (x, v) in grid.iter().zip(&c) {
                assert!((v - (x.exp() - (-1f64).exp())).abs() < 1e-10);
            }
        }
    }
}
