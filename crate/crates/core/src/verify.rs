//! Convention-independent checks on sampled curves.
//!
//! Finite-difference checks run on interior samples only; the number of
//! dropped boundary samples is recorded in each report.

use nalgebra::{Matrix3, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::curve::{Generator, SampledCurve};
use crate::frame::{FrenetFrame, Vec3};
use crate::interp::{hermite, segment_index};
use crate::profiles::{f_of_theta, IntrinsicProfile, SlantParameters};
use crate::stencil::Stencil;
use crate::synthesis::{axis_vector, normal_vector};
use crate::{Error, Result};

/// |ψ′ × ψ″| below this marks a sample as degenerate.
pub const DEGENERATE: f64 = 1e-10;

/// Dimensionless spacing (local rotation rate × arc-length step) used when
/// a curve is thinned before curvature/σ estimation. Finer grids lose more
/// to round-off in ψ‴ than they gain in truncation error.
pub const ESTIMATION_SPACING: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub max: f64,
    pub mean: f64,
    pub rms: f64,
    pub tolerance: Option<f64>,
    pub pass: Option<bool>,
    pub n_samples: usize,
    pub n_dropped: usize,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Summary of non-negative residuals; `pass` is set iff a tolerance is.
    pub fn from_residuals(check: &str, residuals: &[f64], tolerance: Option<f64>, n_dropped: usize) -> Self {
        let n = residuals.len();
        let max = residuals.iter().copied().fold(0.0, |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) });
        let (mean, rms) = if n == 0 {
            (0.0, 0.0)
        } else {
            let sum: f64 = residuals.iter().sum();
            let sq: f64 = residuals.iter().map(|r| r * r).sum();
            (sum / n as f64, (sq / n as f64).sqrt())
        };
        VerificationReport {
            check: check.to_string(),
            max,
            mean,
            rms,
            tolerance,
            pass: tolerance.map(|t| max <= t),
            n_samples: n,
            n_dropped,
            notes: Vec::new(),
        }
    }

    pub fn informational(mut self) -> Self {
        self.tolerance = None;
        self.pass = None;
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    /// Failed means a tolerance was set and missed.
    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub index: usize,
    pub kappa: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureEstimates {
    pub estimates: Vec<Estimate>,
    /// Boundary samples without a full stencil.
    pub n_dropped: usize,
    pub n_degenerate: usize,
    pub spacing: f64,
}

/// Accuracy of the derivative stencils used for κ̂, τ̂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EstimatorOrder {
    /// 5-point ψ′, ψ″ and 7-point ψ‴.
    #[default]
    Fourth,
    /// 7-point ψ′, ψ″ and 9-point ψ‴.
    Sixth,
}

impl EstimatorOrder {
    fn stencils(self) -> [Stencil; 3] {
        match self {
            EstimatorOrder::Fourth => [Stencil::D1_5, Stencil::D2_5, Stencil::D3_7],
            EstimatorOrder::Sixth => [Stencil::D1_7, Stencil::D2_7, Stencil::D3_9],
        }
    }
}

/// κ̂ = |ψ′×ψ″|/|ψ′|³ and τ̂ = det(ψ′,ψ″,ψ‴)/|ψ′×ψ″|² by central differences in
/// the curve's own (uniform) sampling parameter. Both are invariant under
/// reparameterization, so no chain rule is needed.
pub fn estimate_curvature_torsion(curve: &SampledCurve) -> Result<CurvatureEstimates> {
    estimate_curvature_torsion_with(curve, EstimatorOrder::Fourth)
}

pub fn estimate_curvature_torsion_with(curve: &SampledCurve, order: EstimatorOrder) -> Result<CurvatureEstimates> {
    let [s1, s2, s3] = order.stencils();
    let half = s3.half_width();
    let len = curve.len();
    if len < 2 * half + 1 {
        return Err(Error::TooFewSamples { needed: 2 * half + 1, got: len });
    }
    let h = curve.uniform_spacing()?;
    let pos = curve.positions();
    let mut estimates = Vec::with_capacity(len - 2 * half);
    let mut n_degenerate = 0;
    for i in half..len - half {
        let d1 = s1.at(&pos, i, h);
        let d2 = s2.at(&pos, i, h);
        let d3 = s3.at(&pos, i, h);
        let c = d1.cross(&d2);
        let cn = c.norm();
        if !(cn >= DEGENERATE) {
            n_degenerate += 1;
            continue;
        }
        estimates.push(Estimate { index: i, kappa: cn / d1.norm().powi(3), tau: c.dot(&d3) / (cn * cn) });
    }
    if estimates.is_empty() {
        return Err(Error::Degenerate("every interior sample has |psi' x psi''| below threshold".into()));
    }
    Ok(CurvatureEstimates { estimates, n_dropped: 2 * half, n_degenerate, spacing: h })
}

/// σ = κ²/(κ²+τ²)^{3/2} (τ/κ)′ on samples uniform in arc length; returns
/// values for the interior indices `2..len-2`.
pub fn sigma_profile(kappa_tau: &[(f64, f64)], s_spacing: f64) -> Result<Vec<f64>> {
    if kappa_tau.len() < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: kappa_tau.len() });
    }
    if !(s_spacing != 0.0 && s_spacing.is_finite()) {
        return Err(Error::invalid("arc-length spacing must be finite and non-zero"));
    }
    if let Some(i) = kappa_tau.iter().position(|(k, _)| !(*k > 0.0)) {
        return Err(Error::Degenerate(format!("curvature not positive at sample {i}")));
    }
    let f: Vec<f64> = kappa_tau.iter().map(|(k, t)| t / k).collect();
    Ok((2..kappa_tau.len() - 2)
        .map(|i| {
            let (k, t) = kappa_tau[i];
            k * k / (k * k + t * t).powf(1.5) * Stencil::D1_5.at(&f, i, s_spacing)
        })
        .collect())
}

/// Stride that brings the largest local (rotation rate × step) near
/// [`ESTIMATION_SPACING`], keeping at least 15 samples.
pub fn estimation_stride(curve: &SampledCurve) -> usize {
    let n = curve.len();
    if n < 2 {
        return 1;
    }
    let worst = curve
        .samples
        .windows(2)
        .map(|w| {
            let omega = (w[0].kappa.hypot(w[0].tau)).max(w[1].kappa.hypot(w[1].tau));
            let omega = if omega.is_finite() { omega } else { 1.0 };
            omega * (w[1].s - w[0].s).abs()
        })
        .fold(0.0, f64::max);
    let ideal = if worst > 0.0 { (ESTIMATION_SPACING / worst).floor() as usize } else { 1 };
    ideal.clamp(1, ((n - 1) / 14).max(1))
}

/// Drops a trailing partial step (as left by the integrator) when that
/// makes the sampling uniform.
pub fn uniform_run(curve: &SampledCurve) -> Result<SampledCurve> {
    match curve.uniform_spacing() {
        Ok(_) => Ok(curve.clone()),
        Err(e) => {
            if curve.len() > 2 {
                let mut t = curve.clone();
                t.samples.pop();
                if t.uniform_spacing().is_ok() {
                    return Ok(t);
                }
            }
            Err(e)
        }
    }
}

/// σ along a curve sampled uniformly in any parameter p: (τ/κ)′ in s is
/// D_p(τ/κ) / D_p(s). Uses the sixth-order estimator on a thinned grid,
/// since σ differentiates τ̂ once more.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaProfile {
    pub s: Vec<f64>,
    pub sigma: Vec<f64>,
    pub stride: usize,
    pub n_dropped: usize,
}

impl SigmaProfile {
    pub fn mean(&self) -> f64 {
        self.sigma.iter().sum::<f64>() / self.sigma.len().max(1) as f64
    }
}

pub fn sigma_along(curve: &SampledCurve) -> Result<SigmaProfile> {
    let base = uniform_run(curve)?;
    let stride = estimation_stride(&base);
    let thin = base.decimated(stride, 0);
    let est = estimate_curvature_torsion_with(&thin, EstimatorOrder::Sixth)?;
    let h = est.spacing;
    let s: Vec<f64> = thin.arc_lengths();
    let f: Vec<Option<f64>> = {
        let mut v = vec![None; thin.len()];
        for e in &est.estimates {
            v[e.index] = Some(e.tau / e.kappa);
        }
        v
    };
    let mut out_s = Vec::new();
    let mut sigma = Vec::new();
    for e in &est.estimates {
        let i = e.index;
        if i < 3 || i + 3 >= thin.len() {
            continue;
        }
        let window: Option<Vec<f64>> = (i - 3..=i + 3).map(|j| f[j]).collect();
        let Some(window) = window else { continue };
        let df = Stencil::D1_7.at(&window, 3, h);
        let ds = Stencil::D1_7.at(&s[i - 3..=i + 3], 3, h);
        let (k, t) = (e.kappa, e.tau);
        out_s.push(s[i]);
        sigma.push(k * k / (k * k + t * t).powf(1.5) * df / ds);
    }
    if sigma.is_empty() {
        return Err(Error::TooFewSamples { needed: 15, got: thin.len() });
    }
    Ok(SigmaProfile { s: out_s, n_dropped: thin.len() - sigma.len(), sigma, stride })
}

/// σ-constancy: |σ| = m when the slant parameters are known, otherwise the
/// spread about the median.
pub fn sigma_check(curve: &SampledCurve, tolerance: f64) -> Result<(SigmaProfile, VerificationReport)> {
    let prof = sigma_along(curve)?;
    let mean = prof.mean();
    let (residuals, target): (Vec<f64>, String) = match curve.params {
        Some(p) => (prof.sigma.iter().map(|v| (v.abs() - p.m()).abs()).collect(), format!("|sigma| = m = {}", p.m())),
        None => {
            let mut sorted = prof.sigma.clone();
            sorted.sort_by(|a, b| a.total_cmp(b));
            let med = sorted[sorted.len() / 2];
            (prof.sigma.iter().map(|v| (v - med).abs()).collect(), format!("spread about median {med:.9}"))
        }
    };
    let sign = if mean > 0.0 { "+" } else if mean < 0.0 { "-" } else { "0" };
    let report = VerificationReport::from_residuals("sigma-constancy", &residuals, Some(tolerance), prof.n_dropped)
        .note(target)
        .note(format!("mean sigma {mean:.12}, sign {sign}"))
        .note(format!("estimated on every {}-th sample", prof.stride));
    Ok((prof, report))
}

/// |ψ′(p)|/|s′(p)| − 1 at interior samples.
pub fn unit_speed(curve: &SampledCurve, tolerance: f64) -> Result<VerificationReport> {
    let curve = uniform_run(curve)?;
    if curve.len() < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: curve.len() });
    }
    let h = curve.uniform_spacing()?;
    let pos = curve.positions();
    let s = curve.arc_lengths();
    let r: Vec<f64> = (2..curve.len() - 2)
        .map(|i| (Stencil::D1_5.at(&pos, i, h).norm() / Stencil::D1_5.at(&s, i, h).abs() - 1.0).abs())
        .collect();
    Ok(VerificationReport::from_residuals("unit-speed", &r, Some(tolerance), 4))
}

/// κ̂ and τ̂ against the values stored on the samples.
pub fn intrinsic_agreement(
    curve: &SampledCurve,
    kappa_tol: f64,
    tau_tol: f64,
    stride: usize,
) -> Result<[VerificationReport; 2]> {
    let thin = uniform_run(curve)?.decimated(stride, 0);
    let est = estimate_curvature_torsion(&thin)?;
    let rk: Vec<f64> = est.estimates.iter().map(|e| (e.kappa - thin.samples[e.index].kappa).abs()).collect();
    let rt: Vec<f64> = est.estimates.iter().map(|e| (e.tau - thin.samples[e.index].tau).abs()).collect();
    let dropped = est.n_dropped + est.n_degenerate;
    let note = format!("every {stride}-th sample; {} degenerate", est.n_degenerate);
    Ok([
        VerificationReport::from_residuals("kappa-estimate", &rk, Some(kappa_tol), dropped).note(note.clone()),
        VerificationReport::from_residuals("tau-estimate", &rt, Some(tau_tol), dropped).note(note),
    ])
}

fn frames(curve: &SampledCurve) -> Result<Vec<FrenetFrame>> {
    curve
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| s.frame.ok_or(Error::MissingFrame { index: i }))
        .collect()
}

/// Residuals |⟨N_i, axis⟩ − n|.
pub fn slant_angle_check(curve: &SampledCurve, axis: Vec3, n: f64, tolerance: f64) -> Result<VerificationReport> {
    let axis = axis.try_normalize(1e-300).ok_or_else(|| Error::invalid("axis must be non-zero"))?;
    let r: Vec<f64> = frames(curve)?.iter().map(|f| (f.n.dot(&axis) - n).abs()).collect();
    Ok(VerificationReport::from_residuals("slant-angle", &r, Some(tolerance), 0)
        .note(format!("axis ({:.12}, {:.12}, {:.12}), n = {n}", axis.x, axis.y, axis.z)))
}

/// Plane fitted through the principal normals: its normal is the best axis
/// and the mean projection the cosine of the slant angle.
pub fn fit_axis(curve: &SampledCurve) -> Result<(Vec3, f64)> {
    let normals: Vec<Vec3> = frames(curve)?.iter().map(|f| f.n).collect();
    if normals.len() < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: normals.len() });
    }
    let mean = normals.iter().sum::<Vec3>() / normals.len() as f64;
    let mut cov = Matrix3::zeros();
    for v in &normals {
        let d = v - mean;
        cov += d * d.transpose();
    }
    let eig = SymmetricEigen::new(cov);
    let k = eig.eigenvalues.imin();
    let mut axis: Vec3 = eig.eigenvectors.column(k).into_owned();
    if axis.dot(&mean) < 0.0 {
        axis = -axis;
    }
    Ok((axis, axis.dot(&mean)))
}

/// Evaluates the axis formula per sample; returns the normalized mean and
/// the componentwise spread.
pub fn axis_recovery(
    curve: &SampledCurve,
    params: &SlantParameters,
    tolerance: f64,
) -> Result<(Vec3, VerificationReport)> {
    let dir = curve.theta_direction;
    let axes: Vec<Vec3> = curve
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let f = s.frame.ok_or(Error::MissingFrame { index: i })?;
            let theta = s.theta.ok_or_else(|| Error::invalid(format!("sample {i} has no theta")))?;
            let oriented = FrenetFrame::new(f.t * dir, f.n, f.b * dir);
            axis_vector(params, &oriented, theta)
        })
        .collect::<Result<_>>()?;
    if axes.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let mean = axes.iter().sum::<Vec3>() / axes.len() as f64;
    let r: Vec<f64> = axes.iter().map(|a| (a - mean).amax()).collect();
    let est = mean.normalize();
    let report = VerificationReport::from_residuals("axis-spread", &r, Some(tolerance), 0)
        .note(format!("axis ({:.12}, {:.12}, {:.12})", est.x, est.y, est.z));
    Ok((est, report))
}

/// f, f′, f″ of the torsion ratio for the unmirrored branch geometry.
fn f_derivatives(params: &SlantParameters, theta: f64) -> (f64, f64, f64) {
    let m = params.m();
    let sg = params.natural_sign().factor();
    let w = 1.0 - m * m * theta * theta;
    (sg * m * theta / w.sqrt(), sg * m / w.powf(1.5), sg * 3.0 * m.powi(3) * theta / w.powf(2.5))
}

/// Residuals of the two normal-vector ODEs for an arbitrary N(θ) on a
/// uniform θ grid (stencil spacing = grid spacing). All three derivatives
/// are sixth order; near |mθ| = 0.9 the fourth-order N‴ alone exceeds 1e-5.
pub fn ode_residuals_for<F>(
    params: &SlantParameters,
    theta_grid: &[f64],
    normal: F,
    tolerance: f64,
) -> Result<[VerificationReport; 2]>
where
    F: Fn(f64) -> Result<Vec3>,
{
    if theta_grid.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: theta_grid.len() });
    }
    let h = (theta_grid[theta_grid.len() - 1] - theta_grid[0]) / (theta_grid.len() - 1) as f64;
    if !(h > 0.0) || theta_grid.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1e-300) * 1e3) {
        return Err(Error::invalid("theta grid must be uniform and increasing"));
    }
    let m = params.m();
    let half = Stencil::D3_9.half_width() as f64;
    for &th in [theta_grid[0] - half * h, theta_grid[theta_grid.len() - 1] + half * h].iter() {
        if !((m * th).abs() < 1.0) {
            return Err(Error::domain(format!("stencil node theta = {th} leaves |m theta| < 1")));
        }
    }
    let mut eq17 = Vec::with_capacity(theta_grid.len());
    let mut general = Vec::with_capacity(theta_grid.len());
    for &th in theta_grid {
        let vals: Vec<Vec3> = (-4..=4).map(|k| normal(th + k as f64 * h)).collect::<Result<_>>()?;
        let d1 = Stencil::D1_7.at(&vals, 4, h);
        let d2 = Stencil::D2_7.at(&vals, 4, h);
        let d3 = Stencil::D3_9.at(&vals, 4, h);
        let nv = vals[4];
        if d1.norm() < 0.5 {
            return Err(Error::Degenerate(format!("N'(theta) = {d1} at theta = {th}: not the normal of a unit-speed curve")));
        }
        let w = 1.0 - m * m * th * th;
        eq17.push((d3 * w - d2 * (3.0 * m * m * th) + d1).norm());
        // f f' times the printed general form: f'G' + f f' N with G = (N'' + (1+f²)N)/f'
        let (f, fp, fpp) = f_derivatives(params, th);
        let scaled_g_prime = d3 + d1 * (1.0 + f * f) + nv * (2.0 * f * fp) - (d2 + nv * (1.0 + f * f)) * (fpp / fp);
        general.push((scaled_g_prime + nv * (f * fp)).norm());
    }
    let note = format!("stencil spacing {h:e}");
    Ok([
        VerificationReport::from_residuals("ode-third-order", &eq17, Some(tolerance), 0).note(note.clone()),
        VerificationReport::from_residuals("ode-general", &general, Some(tolerance), 0)
            .note(note)
            .note("general form multiplied through by f f'"),
    ])
}

/// Both ODE residuals for the analytic normal of the parameters' branch.
pub fn third_order_ode_residual(
    params: &SlantParameters,
    theta_grid: &[f64],
    tolerance: f64,
) -> Result<[VerificationReport; 2]> {
    ode_residuals_for(params, theta_grid, |th| normal_vector(params, th), tolerance)
}

/// Darboux-vector magnitude and, for constant precession in canonical
/// coordinates, the hyperboloid residual.
pub fn darboux_checks(curve: &SampledCurve, tolerance: f64) -> Result<Vec<VerificationReport>> {
    frames(curve)?;
    let w: Vec<f64> = curve.samples.iter().map(|s| s.kappa.hypot(s.tau)).collect();
    let mut out = Vec::new();
    match &curve.profile {
        Some(IntrinsicProfile::ConstantPrecession { mu, params }) => {
            let target = mu / params.m();
            let r: Vec<f64> = w.iter().map(|v| (v - target).abs()).collect();
            out.push(
                VerificationReport::from_residuals("darboux-magnitude", &r, Some(tolerance), 0)
                    .note(format!("|W| = mu/m = {target}")),
            );
            let m = params.m();
            let c = 4.0 * m.powi(4) / (mu * mu);
            if curve.generator == Generator::ClosedForm {
                let r: Vec<f64> = curve
                    .samples
                    .iter()
                    .map(|s| {
                        let p = s.position;
                        (p.x * p.x + p.y * p.y - m * m * p.z * p.z - c).abs()
                    })
                    .collect();
                out.push(
                    VerificationReport::from_residuals("hyperboloid", &r, Some(tolerance), 0)
                        .note(format!("x^2 + y^2 - m^2 z^2 = {c}")),
                );
            }
        }
        _ => {
            let mean = w.iter().sum::<f64>() / w.len().max(1) as f64;
            let r: Vec<f64> = w.iter().map(|v| (v - mean).abs()).collect();
            out.push(
                VerificationReport::from_residuals("darboux-magnitude", &r, None, 0)
                    .note(format!("deviation from mean |W| = {mean}")),
            );
        }
    }
    Ok(out)
}

/// Pointwise distance after resampling `b` at the arc lengths of `a` with
/// cubic Hermite segments (tangents as derivatives). No registration.
pub fn compare_curves(a: &SampledCurve, b: &SampledCurve, tolerance: Option<f64>) -> Result<VerificationReport> {
    let (Some((a0, a1)), Some((b0, b1))) = (a.s_range(), b.s_range()) else {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    };
    let (lo, hi) = (a0.max(b0), a1.min(b1));
    if lo > hi {
        return Err(Error::ParameterMismatch(format!("s-ranges [{a0}, {a1}] and [{b0}, {b1}] are disjoint")));
    }
    let bs = b.arc_lengths();
    let bp = b.positions();
    let tangent = |i: usize| -> Vec3 {
        if let Some(f) = b.samples[i].frame {
            return f.t;
        }
        let (j, k) = (i.saturating_sub(1), (i + 1).min(b.len() - 1));
        if j == k {
            Vec3::zeros()
        } else {
            (bp[k] - bp[j]) / (bs[k] - bs[j])
        }
    };
    let slack = 1e-12 * (hi - lo).abs().max(1.0);
    let mut r = Vec::new();
    for s in a.samples.iter().filter(|s| s.s >= lo - slack && s.s <= hi + slack) {
        let q = if b.len() == 1 {
            bp[0]
        } else {
            let i = segment_index(&bs, s.s.clamp(b0, b1));
            let h = bs[i + 1] - bs[i];
            hermite(bp[i], tangent(i), bp[i + 1], tangent(i + 1), (s.s.clamp(b0, b1) - bs[i]) / h, h)
        };
        r.push((s.position - q).norm());
    }
    let dropped = a.len() - r.len();
    Ok(VerificationReport::from_residuals("curve-distance", &r, tolerance, dropped)
        .note(format!("compared on s in [{lo}, {hi}]")))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub unit_speed: f64,
    pub kappa: f64,
    pub tau: f64,
    pub normal_angle: f64,
    pub axis: f64,
    pub sigma: f64,
    pub darboux: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { unit_speed: 1e-6, kappa: 1e-4, tau: 1e-4, normal_angle: 1e-8, axis: 1e-8, sigma: 1e-5, darboux: 1e-9 }
    }
}

/// Every check applicable to the curve. General helices (constant-curve
/// profiles) get the slant-angle check as information only.
pub fn run_suite(curve: &SampledCurve, tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let has_frames = curve.samples.iter().all(|s| s.frame.is_some());
    out.push(unit_speed(curve, tol.unit_speed)?);
    let stride = estimation_stride(&uniform_run(curve)?);
    out.extend(intrinsic_agreement(curve, tol.kappa, tol.tau, stride)?);
    if has_frames {
        let canonical = matches!(curve.generator, Generator::ClosedForm | Generator::NestedQuadrature);
        let report = match curve.params {
            Some(p) if canonical => slant_angle_check(curve, Vec3::z(), p.n(), tol.normal_angle)?,
            Some(p) => {
                let (axis, _) = fit_axis(curve)?;
                slant_angle_check(curve, axis, p.n(), tol.normal_angle)?.note("axis fitted to the normals")
            }
            None => {
                let (axis, n) = fit_axis(curve)?;
                slant_angle_check(curve, axis, n, tol.normal_angle)?.note("axis and n fitted to the normals")
            }
        };
        let general_helix = matches!(curve.profile, Some(IntrinsicProfile::ConstantCurve { .. }));
        out.push(if general_helix { report.informational().note("general helix: not asserted") } else { report });
        if let Some(p) = curve.params {
            if curve.samples.iter().all(|s| s.theta.is_some()) {
                out.push(axis_recovery(curve, &p, tol.axis)?.1);
            }
        }
        out.extend(darboux_checks(curve, tol.darboux)?);
    }
    out.push(sigma_check(curve, tol.sigma)?.1);
    Ok(out)
}

/// τ̂/κ̂ against f(θ) for a curve carrying slant parameters and θ.
pub fn torsion_ratio_check(curve: &SampledCurve, tolerance: f64) -> Result<VerificationReport> {
    let params = curve.params.ok_or_else(|| Error::invalid("curve has no slant parameters"))?;
    let stride = estimation_stride(&uniform_run(curve)?);
    let thin = uniform_run(curve)?.decimated(stride, 0);
    let est = estimate_curvature_torsion(&thin)?;
    let r: Vec<f64> = est
        .estimates
        .iter()
        .map(|e| {
            let th = thin.samples[e.index].theta.ok_or_else(|| Error::invalid("sample has no theta"))?;
            Ok((e.tau / e.kappa - f_of_theta(&params, th)?).abs())
        })
        .collect::<Result<_>>()?;
    Ok(VerificationReport::from_residuals("torsion-ratio", &r, Some(tolerance), est.n_dropped + est.n_degenerate)
        .note(format!("every {stride}-th sample")))
}
