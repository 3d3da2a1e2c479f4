//! Slant-helix position vectors from intrinsic equations.
//!
//! Coordinates are canonical: the axis is e3 and the principal normal is
//! `N = ((n/m) cos t, (n/m) sin t, n)` with `t = arcsin(mθ)/n` (or arccos).
//! The unit tangent is the antiderivative of N in θ whose integration
//! constant makes it unit length; all printed closed forms use that choice.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::curve::{CurveSample, Generator, SampleParameter, SampledCurve};
use crate::exec::Execution;
use crate::frame::{mirror_y, FrenetFrame, Vec3};
use crate::profiles::{f_of_theta, f_prime_of_theta, Branch, CurvatureSpec, IntrinsicProfile, SlantParameters};
use crate::quadrature::{cumulative, cumulative_panels, integrate, QuadratureConfig};
use crate::stencil::Stencil;
use crate::{Error, Result};

/// `t` for a given θ on the parameters' branch.
pub fn t_of_theta(params: &SlantParameters, theta: f64) -> Result<f64> {
    let x = params.check_closed(theta)?;
    Ok(match params.branch() {
        Branch::Arcsin => x.asin() / params.n(),
        Branch::Arccos => x.acos() / params.n(),
    })
}

/// Inverse of [`t_of_theta`] on its principal range.
pub fn theta_of_t(params: &SlantParameters, t: f64) -> Result<f64> {
    let nt = params.n() * t;
    match params.branch() {
        Branch::Arcsin if nt.abs() <= FRAC_PI_2 => Ok(nt.sin() / params.m()),
        Branch::Arccos if (0.0..=PI).contains(&nt) => Ok(nt.cos() / params.m()),
        _ => Err(Error::domain(format!("t = {t} outside the principal range of the {:?} branch", params.branch()))),
    }
}

/// dθ/dt on the parameters' branch.
fn dtheta_dt(params: &SlantParameters, t: f64) -> f64 {
    let (n, m) = (params.n(), params.m());
    match params.branch() {
        Branch::Arcsin => n / m * (n * t).cos(),
        Branch::Arccos => -n / m * (n * t).sin(),
    }
}

pub fn normal_at_t(params: &SlantParameters, t: f64) -> Vec3 {
    let r = params.n() / params.m();
    Vec3::new(r * t.cos(), r * t.sin(), params.n())
}

/// Unit tangent with dT/dθ = N, as a function of t.
pub fn tangent_at_t(params: &SlantParameters, t: f64) -> Vec3 {
    let (n, m) = (params.n(), params.m());
    let c = 0.5 * (1.0 - n * n);
    let (p, q) = (1.0 + n, 1.0 - n);
    match params.branch() {
        Branch::Arcsin => Vec3::new(
            c * ((p * t).sin() / p + (q * t).sin() / q),
            -c * ((p * t).cos() / p + (q * t).cos() / q),
            n / m * (n * t).sin(),
        ),
        Branch::Arccos => Vec3::new(
            c * ((p * t).cos() / p - (q * t).cos() / q),
            c * ((p * t).sin() / p - (q * t).sin() / q),
            n / m * (n * t).cos(),
        ),
    }
}

/// Frame oriented along increasing θ.
pub fn frame_at_t(params: &SlantParameters, t: f64) -> FrenetFrame {
    let tan = tangent_at_t(params, t);
    let nor = normal_at_t(params, t);
    FrenetFrame::new(tan, nor, tan.cross(&nor))
}

/// Principal normal N(θ) of the canonical slant helix.
pub fn normal_vector(params: &SlantParameters, theta: f64) -> Result<Vec3> {
    Ok(normal_at_t(params, t_of_theta(params, theta)?))
}

pub fn tangent_vector(params: &SlantParameters, theta: f64) -> Result<Vec3> {
    Ok(tangent_at_t(params, t_of_theta(params, theta)?))
}

/// The fixed axis `d = nθ T + n N ± (n/m)√(1 − m²θ²) B` expressed through a
/// θ-oriented frame; constant along a slant helix whose torsion sign matches
/// `params`.
pub fn axis_vector(params: &SlantParameters, frame: &FrenetFrame, theta: f64) -> Result<Vec3> {
    let x = params.check_closed(theta)?;
    let defect = frame.orthonormality_defect();
    if !(defect <= 1e-9) {
        return Err(Error::Frame(format!("frame is not orthonormal (defect {defect:e})")));
    }
    let n = params.n();
    let b = params.sign().factor() * n / params.m() * (1.0 - x * x).max(0.0).sqrt();
    Ok(frame.t * (n * theta) + frame.n * n + frame.b * b)
}

/// Binormal from a θ-stencil of normals: `B = (N'' + (1 + f²) N) / f'`.
///
/// `normals` holds N at `theta + k h` for a centred 5- or 7-point stencil.
pub fn binormal_from_normal(params: &SlantParameters, theta: f64, normals: &[Vec3], h: f64) -> Result<Vec3> {
    let stencil = match normals.len() {
        5 => Stencil::D2_5,
        7 => Stencil::D2_7,
        k => return Err(Error::invalid(format!("stencil needs 5 or 7 normals, got {k}"))),
    };
    if !(h > 0.0) {
        return Err(Error::invalid("stencil spacing must be positive"));
    }
    let f = f_of_theta(params, theta)?;
    let fp = f_prime_of_theta(params, theta)?;
    let second = stencil.at(normals, normals.len() / 2, h);
    let centre = normals[normals.len() / 2];
    Ok((second + centre * (1.0 + f * f)) / fp)
}

fn check_not_half(params: &SlantParameters) -> Result<()> {
    if (2.0 * params.n() - 1.0).abs() < 1e-12 {
        return Err(Error::SingularParameter(
            "n = 1/2 makes the closed form singular (division by 2n - 1)".into(),
        ));
    }
    Ok(())
}

/// Closed-form Salkowski curve (κ = 1), arcsin branch, as printed.
pub fn salkowski_curve(params: &SlantParameters, t: f64) -> Result<Vec3> {
    check_not_half(params)?;
    let (n, m) = (params.n(), params.m());
    let a = n / (4.0 * m);
    let (p, q) = (2.0 * n + 1.0, 2.0 * n - 1.0);
    Ok(Vec3::new(
        a * ((n - 1.0) / p * (p * t).cos() + (n + 1.0) / q * (q * t).cos() - 2.0 * t.cos()),
        a * ((n - 1.0) / p * (p * t).sin() - (n + 1.0) / q * (q * t).sin() - 2.0 * t.sin()),
        -n / (4.0 * m * m) * (2.0 * n * t).cos(),
    ))
}

/// Closed-form anti-Salkowski curve (τ = 1) without the κ > 0 guard.
pub fn anti_salkowski_formula(params: &SlantParameters, t: f64) -> Result<Vec3> {
    check_not_half(params)?;
    let (n, m) = (params.n(), params.m());
    let a = n / (4.0 * m);
    let (p, q) = (2.0 * n + 1.0, 2.0 * n - 1.0);
    Ok(Vec3::new(
        a * ((n - 1.0) / p * (p * t).sin() + (n + 1.0) / q * (q * t).sin() - 2.0 * n * t.sin()),
        a * ((1.0 - n) / p * (p * t).cos() - (1.0 + n) / (1.0 - 2.0 * n) * ((1.0 - 2.0 * n) * t).cos()
            + 2.0 * n * t.cos()),
        n / (4.0 * m * m) * (2.0 * n * t - (2.0 * n * t).sin()),
    ))
}

/// Closed-form anti-Salkowski curve; requires κ = cot(nt) > 0.
pub fn anti_salkowski_curve(params: &SlantParameters, t: f64) -> Result<Vec3> {
    check_not_half(params)?;
    let k = 1.0 / (params.n() * t).tan();
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::domain(format!("curvature cot(nt) = {k} is not positive at t = {t}")));
    }
    anti_salkowski_formula(params, t)
}

/// Closed-form curve of constant precession in arc length.
pub fn constant_precession_curve(mu: f64, params: &SlantParameters, s: f64) -> Result<Vec3> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::invalid(format!("mu must be > 0, got {mu}")));
    }
    let (n, m) = (params.n(), params.m());
    let c = m * m / (n * mu);
    let (a, b) = (mu * s, mu * s / n);
    Ok(Vec3::new(
        -c * ((1.0 + n * n) * a.cos() * b.cos() + 2.0 * n * a.sin() * b.sin()),
        -c * ((1.0 + n * n) * a.cos() * b.sin() - 2.0 * n * a.sin() * b.cos()),
        -n / (m * mu) * a.cos(),
    ))
}

fn require_arcsin(params: &SlantParameters, what: &str) -> Result<()> {
    if params.branch() != Branch::Arcsin {
        return Err(Error::invalid(format!("{what} is an arcsin-branch closed form; use the parametric route")));
    }
    Ok(())
}

fn apply_orientation(params: &SlantParameters, samples: &mut [CurveSample]) {
    if params.needs_mirror() {
        for s in samples {
            s.position = mirror_y(&s.position);
            s.frame = s.frame.map(|f| f.mirrored_y());
        }
    }
}

/// Samples [`salkowski_curve`] on a t-grid inside |nt| < π/2.
pub fn salkowski_sampled(params: &SlantParameters, t_grid: &[f64]) -> Result<SampledCurve> {
    check_not_half(params)?;
    require_arcsin(params, "the Salkowski curve")?;
    let (n, m) = (params.n(), params.m());
    let mut samples = Execution::default().try_map_range(t_grid.len(), |i| {
        let t = t_grid[i];
        if !((n * t).abs() < FRAC_PI_2) {
            return Err(Error::domain(format!("t = {t} outside |nt| < pi/2")));
        }
        let theta = (n * t).sin() / m;
        Ok::<_, Error>(CurveSample {
            s: theta,
            theta: Some(theta),
            t: Some(t),
            position: salkowski_curve(params, t)?,
            frame: Some(frame_at_t(params, t)),
            kappa: 1.0,
            tau: f_of_theta(params, theta)?,
        })
    })?;
    apply_orientation(params, &mut samples);
    SampledCurve::new(
        Some(IntrinsicProfile::Salkowski { params: *params }),
        Some(*params),
        samples,
        Generator::ClosedForm,
        SampleParameter::Slant,
        1.0,
    )
}

/// Samples [`anti_salkowski_curve`] on a t-grid inside 0 < nt < π/2. Arc
/// length follows the family convention s = cos(nt)/m, so s decreases with t.
pub fn anti_salkowski_sampled(params: &SlantParameters, t_grid: &[f64]) -> Result<SampledCurve> {
    check_not_half(params)?;
    require_arcsin(params, "the anti-Salkowski curve")?;
    let (n, m) = (params.n(), params.m());
    let mut samples = Execution::default().try_map_range(t_grid.len(), |i| {
        let t = t_grid[i];
        let nt = n * t;
        if !(nt > 0.0 && nt < FRAC_PI_2) {
            return Err(Error::domain(format!("t = {t} outside 0 < nt < pi/2")));
        }
        Ok::<_, Error>(CurveSample {
            s: nt.cos() / m,
            theta: Some(nt.sin() / m),
            t: Some(t),
            position: anti_salkowski_curve(params, t)?,
            frame: Some(frame_at_t(params, t).reversed()),
            kappa: 1.0 / nt.tan(),
            tau: params.sign().factor(),
        })
    })?;
    apply_orientation(params, &mut samples);
    SampledCurve::new(
        Some(IntrinsicProfile::AntiSalkowski { params: *params }),
        Some(*params),
        samples,
        Generator::ClosedForm,
        SampleParameter::Slant,
        -1.0,
    )
}

/// Samples [`constant_precession_curve`] on an s-grid. Frames are attached
/// where κ = (μ/m) cos μs is positive.
pub fn constant_precession_sampled(mu: f64, params: &SlantParameters, s_grid: &[f64]) -> Result<SampledCurve> {
    require_arcsin(params, "the constant-precession curve")?;
    let profile = IntrinsicProfile::constant_precession(mu, *params)?;
    let (n, m) = (params.n(), params.m());
    let mut samples = Execution::default().try_map_range(s_grid.len(), |i| {
        let s = s_grid[i];
        let t = mu * s / n;
        let kappa = mu / m * (mu * s).cos();
        Ok::<_, Error>(CurveSample {
            s,
            theta: Some((mu * s).sin() / m),
            t: Some(t),
            position: constant_precession_curve(mu, params, s)?,
            frame: ((mu * s).abs() < FRAC_PI_2).then(|| frame_at_t(params, t)),
            kappa,
            tau: params.sign().factor() * mu / m * (mu * s).sin(),
        })
    })?;
    apply_orientation(params, &mut samples);
    SampledCurve::new(Some(profile), Some(*params), samples, Generator::ClosedForm, SampleParameter::ArcLength, 1.0)
}

fn check_grid(grid: &[f64], what: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("{what} grid contains non-finite values")));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid(format!("{what} grid must be strictly increasing")));
    }
    Ok(())
}

/// Position by the t-parametric route: ψ(t) = ∫ (dθ/dt) T(t) / κ(t) dt,
/// with arc length recovered from ds = (dθ/dt)/κ dt. Both integrals start at
/// zero at the first grid point.
pub fn position_parametric_t<K>(params: &SlantParameters, kappa_of_t: K, t_grid: &[f64]) -> Result<SampledCurve>
where
    K: Fn(f64) -> f64 + Sync + Send,
{
    position_parametric_t_with(params, kappa_of_t, t_grid, QuadratureConfig::default(), Execution::default())
}

pub fn position_parametric_t_with<K>(
    params: &SlantParameters,
    kappa_of_t: K,
    t_grid: &[f64],
    quad: QuadratureConfig,
    exec: Execution,
) -> Result<SampledCurve>
where
    K: Fn(f64) -> f64 + Sync + Send,
{
    check_grid(t_grid, "t")?;
    let n = params.n();
    let in_range = |t: f64| match params.branch() {
        Branch::Arcsin => (n * t).abs() < FRAC_PI_2,
        Branch::Arccos => n * t > 0.0 && n * t < PI,
    };
    for &t in t_grid {
        if !in_range(t) {
            return Err(Error::domain(format!("t = {t} outside the open range of the {:?} branch", params.branch())));
        }
        let k = kappa_of_t(t);
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::domain(format!("curvature {k} is not positive at t = {t}")));
        }
    }
    let speed = |t: f64| dtheta_dt(params, t) / kappa_of_t(t);
    let positions: Vec<Vec3> = cumulative(|t| tangent_at_t(params, t) * speed(t), t_grid, quad, exec)?;
    let arc: Vec<f64> = cumulative(speed, t_grid, quad, exec)?;
    if positions.iter().any(|p| !p.iter().all(|v| v.is_finite())) {
        return Err(Error::domain("curvature left its domain inside the grid"));
    }
    let mut samples = exec.try_map_range(t_grid.len(), |i| {
        let t = t_grid[i];
        let theta = theta_of_t(params, t)?;
        let kappa = kappa_of_t(t);
        Ok::<_, Error>(CurveSample {
            s: arc[i],
            theta: Some(theta),
            t: Some(t),
            position: positions[i],
            frame: Some(frame_at_t(params, t)),
            kappa,
            tau: kappa * f_of_theta(params, theta)?,
        })
    })?;
    apply_orientation(params, &mut samples);
    SampledCurve::new(None, Some(*params), samples, Generator::NestedQuadrature, SampleParameter::Slant, 1.0)
}

/// κ as a function of t for the named families (arcsin branch). `None` when
/// the profile has no closed t-form.
pub fn kappa_in_t(profile: &IntrinsicProfile) -> Option<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
    match profile {
        IntrinsicProfile::Salkowski { .. } => Some(Box::new(|_| 1.0)),
        IntrinsicProfile::AntiSalkowski { params } => {
            let n = params.n();
            Some(Box::new(move |t: f64| 1.0 / (n * t).tan()))
        }
        IntrinsicProfile::ConstantPrecession { mu, params } => {
            let (a, n) = (mu / params.m(), params.n());
            Some(Box::new(move |t: f64| a * (n * t).cos()))
        }
        IntrinsicProfile::SlantFromKappa { kappa, params } => {
            let (n, m) = (params.n(), params.m());
            match *kappa {
                CurvatureSpec::Constant { kappa0 } => Some(Box::new(move |_| kappa0)),
                CurvatureSpec::Cosine { amplitude, mu } => Some(Box::new(move |t: f64| {
                    let x = mu * (n * t).sin() / (m * amplitude);
                    amplitude * (1.0 - x * x).sqrt()
                })),
                CurvatureSpec::Tabulated(_) => None,
            }
        }
        _ => None,
    }
}

/// Position by the natural route ψ(s) = ∫(∫κ N ds) ds on an s-grid.
///
/// The inner integral starts from the unit tangent at the first grid point;
/// the outer integral starts at the origin.
pub fn position_natural(profile: &IntrinsicProfile, params: &SlantParameters, s_grid: &[f64]) -> Result<SampledCurve> {
    position_natural_with(profile, params, s_grid, QuadratureConfig::default(), Execution::default())
}

pub fn position_natural_with(
    profile: &IntrinsicProfile,
    params: &SlantParameters,
    s_grid: &[f64],
    quad: QuadratureConfig,
    exec: Execution,
) -> Result<SampledCurve> {
    check_grid(s_grid, "s")?;
    let kappas = exec.try_map_range(s_grid.len(), |i| profile.kappa(s_grid[i]))?;
    let quadrature_theta = matches!(profile, IntrinsicProfile::Tabulated { .. })
        || matches!(profile, IntrinsicProfile::SlantFromKappa { kappa, .. } if kappa.needs_quadrature());
    let thetas: Vec<f64> = if quadrature_theta {
        let theta0 = profile.theta(s_grid[0])?;
        let acc: Vec<f64> = cumulative(|u| profile.kappa(u).unwrap_or(f64::NAN), s_grid, quad, exec)?;
        acc.into_iter().map(|v| theta0 + v).collect()
    } else {
        exec.try_map_range(s_grid.len(), |i| profile.theta(s_grid[i]))?
    };
    for &th in &thetas {
        params.check_open(th)?;
    }
    let dir = profile.theta_direction();

    // θ at an interior point of panel i
    let theta_at = |i: usize, u: f64| -> Result<f64> {
        if quadrature_theta {
            profile.theta_from(s_grid[i], thetas[i], u)
        } else {
            profile.theta(u)
        }
    };
    let bent = |i: usize, u: f64| -> Vec3 {
        match (profile.kappa(u), theta_at(i, u)) {
            (Ok(k), Ok(th)) => match normal_vector(params, th) {
                Ok(nv) => nv * k,
                Err(_) => Vec3::repeat(f64::NAN),
            },
            _ => Vec3::repeat(f64::NAN),
        }
    };

    let panel_index = |a: f64| s_grid.partition_point(|&v| v < a).min(s_grid.len() - 1);
    let t0 = tangent_vector(params, thetas[0])? * dir;
    let turn: Vec<Vec3> = cumulative_panels(
        |a, b, cfg| integrate(|u| bent(panel_index(a), u), a, b, cfg),
        s_grid,
        quad,
        exec,
    )?;
    let tangents: Vec<Vec3> = turn.iter().map(|d| t0 + d).collect();
    let positions: Vec<Vec3> = cumulative_panels(
        |a, b, cfg| {
            let i = panel_index(a);
            let inner_cfg = QuadratureConfig { abs_tol: cfg.abs_tol, ..cfg };
            integrate(
                |u| match integrate(|v| bent(i, v), a, u, inner_cfg) {
                    Ok(d) => tangents[i] + d,
                    Err(_) => Vec3::repeat(f64::NAN),
                },
                a,
                b,
                cfg,
            )
        },
        s_grid,
        quad,
        exec,
    )?;
    if positions.iter().chain(&tangents).any(|p| !p.iter().all(|v| v.is_finite())) {
        return Err(Error::domain("the profile left its domain inside the grid"));
    }

    let mut samples = exec.try_map_range(s_grid.len(), |i| {
        let th = thetas[i];
        let frame = FrenetFrame::from_tangent_normal(tangents[i], normal_vector(params, th)?)?;
        Ok::<_, Error>(CurveSample {
            s: s_grid[i],
            theta: Some(th),
            t: Some(t_of_theta(params, th)?),
            position: positions[i],
            frame: Some(frame),
            kappa: kappas[i],
            tau: kappas[i] * f_of_theta(params, th)?,
        })
    })?;
    apply_orientation(params, &mut samples);
    SampledCurve::new(
        Some(profile.clone()),
        Some(*params),
        samples,
        Generator::NestedQuadrature,
        SampleParameter::ArcLength,
        dir,
    )
}

/// Evenly spaced grid of `count` points on `[a, b]`.
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (count - 1) as f64;
            (0..count).map(|i| if i + 1 == count { b } else { a + i as f64 * h }).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::Sign;
    use proptest::prelude::*;

    fn p(n: f64, branch: Branch) -> SlantParameters {
        let base = SlantParameters::with_n(n).unwrap().with_branch(branch);
        base.with_sign(base.natural_sign())
    }

    fn close(a: Vec3, b: Vec3, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn salkowski_start_point() {
        let v = salkowski_curve(&p(1.0 / 3.0, Branch::Arcsin), 0.0).unwrap();
        assert!(close(v, Vec3::new(-6.4 * 2f64.sqrt() / 6.0, 0.0, -2.0 / 3.0), 1e-14), "{v}");
    }

    #[test]
    fn half_is_singular() {
        let q = p(0.5, Branch::Arcsin);
        assert!(matches!(salkowski_curve(&q, 0.3), Err(Error::SingularParameter(_))));
        assert!(matches!(anti_salkowski_curve(&q, 0.3), Err(Error::SingularParameter(_))));
        assert!(constant_precession_curve(1.0, &q, 0.3).is_ok());
    }

    #[test]
    fn anti_salkowski_guards_curvature() {
        let q = p(2.0 / 3.0, Branch::Arcsin);
        assert!(matches!(anti_salkowski_curve(&q, -0.5), Err(Error::Domain(_))));
        let a = anti_salkowski_formula(&q, 0.7).unwrap();
        let b = anti_salkowski_formula(&q, -0.7).unwrap();
        assert!((a.z + b.z).abs() < 1e-15);
        assert!(anti_salkowski_formula(&q, 1e-9).unwrap().z.abs() < 1e-20);
    }

    #[test]
    fn frames_are_orthonormal_with_dt_dtheta_equal_n() {
        for branch in [Branch::Arcsin, Branch::Arccos] {
            for n in [0.2, 1.0 / 3.0, 0.8] {
                let q = p(n, branch);
                let ts: [f64; 3] = match branch {
                    Branch::Arcsin => [-1.0, 0.2, 1.1],
                    Branch::Arccos => [0.4, 1.5, 2.5],
                };
                for t in ts {
                    let t = t / n.max(0.5);
                    let f = frame_at_t(&q, t);
                    assert!(f.orthonormality_defect() < 1e-13);
                    let h = 1e-5;
                    let dt = (tangent_at_t(&q, t + h) - tangent_at_t(&q, t - h)) / (2.0 * h);
                    assert!(close(dt / dtheta_dt(&q, t), normal_at_t(&q, t), 1e-8), "{branch:?} n={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn axis_is_e3_for_both_branches() {
        for branch in [Branch::Arcsin, Branch::Arccos] {
            let q = p(0.4, branch);
            for theta in [-1.5, -0.3, 0.0, 0.9, 2.0] {
                let theta = theta * 0.99 / q.m() / 2.3;
                let t = t_of_theta(&q, theta).unwrap();
                let d = axis_vector(&q, &frame_at_t(&q, t), theta).unwrap();
                assert!(close(d, Vec3::z(), 1e-12), "{branch:?} {theta} {d}");
            }
        }
    }

    #[test]
    fn binormal_stencil_matches_cross_product() {
        let q = p(1.0 / 3.0, Branch::Arcsin);
        let (theta, h) = (0.7, 1e-3);
        let normals: Vec<Vec3> = (-3..=3).map(|k| normal_vector(&q, theta + k as f64 * h).unwrap()).collect();
        let b = binormal_from_normal(&q, theta, &normals, h).unwrap();
        let f = frame_at_t(&q, t_of_theta(&q, theta).unwrap());
        assert!(close(b, f.b, 1e-8), "{b} vs {}", f.b);
        assert!(binormal_from_normal(&q, theta, &normals[..4], h).is_err());
    }

    #[test]
    fn closed_forms_have_the_right_velocity() {
        let h = 1e-5;
        let q = p(1.0 / 3.0, Branch::Arcsin);
        for t in [-1.5, 0.0, 2.0] {
            let v = (salkowski_curve(&q, t + h).unwrap() - salkowski_curve(&q, t - h).unwrap()) / (2.0 * h);
            assert!(close(v, tangent_at_t(&q, t) * dtheta_dt(&q, t), 1e-8));
        }
        let q = p(0.2, Branch::Arcsin);
        for t in [1.0, 3.0, 7.0] {
            let v = (anti_salkowski_curve(&q, t + h).unwrap() - anti_salkowski_curve(&q, t - h).unwrap()) / (2.0 * h);
            let speed = dtheta_dt(&q, t) * (q.n() * t).tan();
            assert!(close(v, tangent_at_t(&q, t) * speed, 1e-8));
        }
        let q = p(0.8, Branch::Arcsin);
        let mu = q.m();
        for s in [-1.0, 0.1, 1.2] {
            let v = (constant_precession_curve(mu, &q, s + h).unwrap()
                - constant_precession_curve(mu, &q, s - h).unwrap())
                / (2.0 * h);
            assert!(close(v, tangent_at_t(&q, mu * s / q.n()), 1e-8));
        }
    }

    #[test]
    fn parametric_route_reproduces_salkowski() {
        let q = p(1.0 / 3.0, Branch::Arcsin);
        let ts = linspace(-1.2, 1.2, 121);
        let num = position_parametric_t(&q, |_| 1.0, &ts).unwrap();
        let exact = salkowski_sampled(&q, &ts).unwrap();
        let off = exact.samples[0].position;
        for (a, b) in num.samples.iter().zip(&exact.samples) {
            assert!(close(a.position + off, b.position, 1e-9));
            assert!((a.s - (b.s - exact.samples[0].s)).abs() < 1e-10);
        }
    }

    #[test]
    fn natural_route_reproduces_salkowski_and_precession() {
        let q = p(1.0 / 3.0, Branch::Arcsin);
        let ts = linspace(-1.0, 1.0, 41);
        let exact = salkowski_sampled(&q, &ts).unwrap();
        let s: Vec<f64> = exact.samples.iter().map(|c| c.s).collect();
        let num = position_natural(&IntrinsicProfile::Salkowski { params: q }, &q, &s).unwrap();
        let off = exact.samples[0].position;
        for (a, b) in num.samples.iter().zip(&exact.samples) {
            assert!(close(a.position + off, b.position, 1e-8), "{} vs {}", a.position + off, b.position);
            assert!(close(a.frame.unwrap().t, b.frame.unwrap().t, 1e-9));
        }

        let q = p(0.5, Branch::Arcsin);
        let prof = IntrinsicProfile::constant_precession(q.m(), q).unwrap();
        let s = linspace(-1.3 / q.m(), 1.3 / q.m(), 41);
        let exact = constant_precession_sampled(q.m(), &q, &s).unwrap();
        let num = position_natural(&prof, &q, &s).unwrap();
        let off = exact.samples[0].position;
        for (a, b) in num.samples.iter().zip(&exact.samples) {
            assert!(close(a.position + off, b.position, 1e-8));
        }
    }

    #[test]
    fn natural_route_follows_anti_salkowski_orientation() {
        let q = p(0.2, Branch::Arcsin);
        let ts = linspace(2.0, 6.0, 41);
        let exact = anti_salkowski_sampled(&q, &ts).unwrap();
        let s: Vec<f64> = exact.samples.iter().map(|c| c.s).collect();
        let num = position_natural(&IntrinsicProfile::AntiSalkowski { params: q }, &q, &s).unwrap();
        let off = exact.samples[0].position;
        for (a, b) in num.samples.iter().zip(&exact.samples) {
            assert!(close(a.position + off, b.position, 1e-8));
            assert!((a.tau - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn minus_sign_mirrors() {
        let plus = p(1.0 / 3.0, Branch::Arcsin);
        let minus = plus.with_sign(Sign::Minus);
        let ts = linspace(-1.0, 1.0, 11);
        let a = salkowski_sampled(&plus, &ts).unwrap();
        let b = salkowski_sampled(&minus, &ts).unwrap();
        for (x, y) in a.samples.iter().zip(&b.samples) {
            assert!(close(mirror_y(&x.position), y.position, 1e-15));
            assert_eq!(x.tau, -y.tau);
        }
        assert!(salkowski_sampled(&plus.with_branch(Branch::Arccos), &ts).is_err());
    }

    #[test]
    fn grids_are_validated() {
        let q = p(1.0 / 3.0, Branch::Arcsin);
        assert!(matches!(position_parametric_t(&q, |_| 1.0, &[0.0, 5.0]), Err(Error::Domain(_))));
        assert!(position_parametric_t(&q, |_| 1.0, &[0.3, 0.1]).is_err());
        assert!(position_parametric_t(&q, |_| -1.0, &[0.0, 0.1]).is_err());
        assert!(position_parametric_t(&q, |_| 1.0, &[]).is_err());
        let one = position_parametric_t(&q, |_| 1.0, &[0.4]).unwrap();
        assert_eq!(one.samples[0].position, Vec3::zeros());
        let prof = IntrinsicProfile::Salkowski { params: q };
        assert!(matches!(position_natural(&prof, &q, &[0.0, 3.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn execution_modes_agree() {
        let q = p(0.25, Branch::Arcsin);
        let s = linspace(-0.5, 0.5, 33);
        let prof = IntrinsicProfile::Salkowski { params: q };
        let a = position_natural_with(&prof, &q, &s, QuadratureConfig::default(), Execution::Sequential).unwrap();
        let b = position_natural_with(&prof, &q, &s, QuadratureConfig::default(), Execution::Parallel).unwrap();
        assert_eq!(a.positions(), b.positions());
    }

    proptest! {
        #[test]
        fn theta_t_round_trip(n in 0.05f64..0.95, u in -0.99f64..0.99) {
            for branch in [Branch::Arcsin, Branch::Arccos] {
                let q = p(n, branch);
                let theta = u / q.m();
                let t = t_of_theta(&q, theta).unwrap();
                prop_assert!((theta_of_t(&q, t).unwrap() - theta).abs() < 1e-12 / q.m().min(1.0));
            }
        }

        #[test]
        fn normal_has_constant_axis_component(n in 0.05f64..0.95, t in -3.0f64..3.0) {
            let q = p(n, Branch::Arcsin);
            let nv = normal_at_t(&q, t);
            prop_assert!((nv.norm() - 1.0).abs() < 1e-12);
            prop_assert!((nv.z - n).abs() < 1e-15);
            prop_assert!(tangent_at_t(&q, t).dot(&nv).abs() < 1e-12);
        }
    }
}
