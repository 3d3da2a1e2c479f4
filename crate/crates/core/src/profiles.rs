//! Intrinsic equations κ(s), τ(s), the cumulative turn θ(s) = ∫κ ds and the
//! slant-helix torsion condition.

use std::f64::consts::FRAC_PI_2;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::interp::MonotoneCubic;
use crate::quadrature::{integrate, QuadratureConfig};
use crate::{Error, Result};

/// Points with `|m θ| >= 1 - DOMAIN_MARGIN` are rejected, never clamped.
pub const DOMAIN_MARGIN: f64 = 1e-12;

/// Which inverse-trigonometric solution of the normal-vector equation a
/// slant helix uses: `t = arcsin(mθ)/n` or `t = arccos(mθ)/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Arcsin,
    Arccos,
}

/// The ± of the slant torsion condition τ = ±mκθ/√(1 − m²θ²).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Angle constants of a slant helix: the principal normal makes angle `phi`
/// with the axis, `n = cos(phi)` and `m = n / sqrt(1 - n^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlantParameters {
    phi: f64,
    n: f64,
    m: f64,
    branch: Branch,
    sign: Sign,
}

impl SlantParameters {
    pub fn new(n: f64, branch: Branch, sign: Sign) -> Result<Self> {
        if !(n.is_finite() && n > 0.0 && n < 1.0) {
            return Err(Error::invalid(format!("n must lie in (0, 1), got {n}")));
        }
        let m = n / (1.0 - n * n).sqrt();
        Ok(Self { phi: n.acos(), n, m, branch, sign })
    }

    /// Arcsin branch, positive sign.
    pub fn with_n(n: f64) -> Result<Self> {
        Self::new(n, Branch::Arcsin, Sign::Plus)
    }

    pub fn from_angle(phi: f64, branch: Branch, sign: Sign) -> Result<Self> {
        if !(phi > 0.0 && phi < FRAC_PI_2) {
            return Err(Error::invalid(format!("phi must lie in (0, pi/2), got {phi}")));
        }
        Self::new(phi.cos(), branch, sign)
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
    pub fn n(&self) -> f64 {
        self.n
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn branch(&self) -> Branch {
        self.branch
    }
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    /// Torsion sign produced by this branch's normal field in a right-handed
    /// frame: arcsin gives `+`, arccos (a reflected solution) gives `-`.
    pub fn natural_sign(&self) -> Sign {
        match self.branch {
            Branch::Arcsin => Sign::Plus,
            Branch::Arccos => Sign::Minus,
        }
    }

    /// True when the synthesized curve must be mirrored to realize `sign`.
    pub fn needs_mirror(&self) -> bool {
        self.sign != self.natural_sign()
    }

    /// Rejects `|mθ| >= 1 - DOMAIN_MARGIN`.
    pub fn check_open(&self, theta: f64) -> Result<()> {
        let x = self.m * theta;
        if !(x.abs() < 1.0 - DOMAIN_MARGIN) {
            return Err(Error::domain(format!("|m*theta| = {} must be < 1", x.abs())));
        }
        Ok(())
    }

    /// Rejects `|mθ| > 1` (boundary allowed).
    pub fn check_closed(&self, theta: f64) -> Result<f64> {
        let x = self.m * theta;
        if !(x.abs() <= 1.0 + DOMAIN_MARGIN) {
            return Err(Error::domain(format!("|m*theta| = {} exceeds 1", x.abs())));
        }
        Ok(x.clamp(-1.0, 1.0))
    }
}

/// τ/κ of a slant helix as a function of θ.
pub fn f_of_theta(params: &SlantParameters, theta: f64) -> Result<f64> {
    params.check_open(theta)?;
    let x = params.m() * theta;
    Ok(params.sign().factor() * x / (1.0 - x * x).sqrt())
}

/// dτ/κ / dθ, i.e. `±m (1 - m²θ²)^(-3/2)`.
pub fn f_prime_of_theta(params: &SlantParameters, theta: f64) -> Result<f64> {
    params.check_open(theta)?;
    let x = params.m() * theta;
    Ok(params.sign().factor() * params.m() / (1.0 - x * x).powf(1.5))
}

/// Curvature input for the slant constructor.
#[derive(Debug, Clone, PartialEq)]
pub enum CurvatureSpec {
    Constant { kappa0: f64 },
    /// κ(s) = amplitude · cos(μ s)
    Cosine { amplitude: f64, mu: f64 },
    /// Monotone cubic through (s, κ) rows.
    Tabulated(MonotoneCubic),
}

impl CurvatureSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            CurvatureSpec::Constant { kappa0 } if !(*kappa0 > 0.0 && kappa0.is_finite()) => {
                Err(Error::invalid(format!("constant curvature must be > 0, got {kappa0}")))
            }
            CurvatureSpec::Cosine { amplitude, mu } if !(*amplitude > 0.0 && *mu > 0.0) => {
                Err(Error::invalid("cosine curvature needs amplitude > 0 and mu > 0"))
            }
            CurvatureSpec::Tabulated(t) if t.ys().iter().any(|&k| k <= 0.0) => {
                Err(Error::invalid("tabulated curvature must be > 0 at every row"))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        let k = match self {
            CurvatureSpec::Constant { kappa0 } => *kappa0,
            CurvatureSpec::Cosine { amplitude, mu } => {
                if !((mu * s).abs() < FRAC_PI_2) {
                    return Err(Error::domain(format!("cosine curvature is not positive at s = {s}")));
                }
                amplitude * (mu * s).cos()
            }
            CurvatureSpec::Tabulated(t) => t.eval(s)?,
        };
        if !(k > 0.0) {
            return Err(Error::domain(format!("curvature {k} is not positive at s = {s}")));
        }
        Ok(k)
    }

    /// Closed-form θ(s) with θ(0) = 0 where one exists.
    fn theta_closed(&self, s: f64) -> Option<f64> {
        match self {
            CurvatureSpec::Constant { kappa0 } => Some(kappa0 * s),
            CurvatureSpec::Cosine { amplitude, mu } => Some(amplitude * (mu * s).sin() / mu),
            CurvatureSpec::Tabulated(_) => None,
        }
    }

    /// Lower end of the θ integral for tabulated data: 0 when inside the
    /// table, otherwise the nearest table end.
    fn anchor(&self) -> f64 {
        match self {
            CurvatureSpec::Tabulated(t) => {
                let (a, b) = t.domain();
                0f64.clamp(a, b)
            }
            _ => 0.0,
        }
    }

    /// θ(s) = ∫κ from the anchor.
    pub fn theta(&self, s: f64) -> Result<f64> {
        self.eval(s)?;
        match self.theta_closed(s) {
            Some(v) => Ok(v),
            None => integrate(|u| self.eval(u).unwrap_or(f64::NAN), self.anchor(), s, QuadratureConfig::default())
                .and_then(finite),
        }
    }

    /// θ(s) continued from a known value θ(s_ref) = theta_ref.
    pub fn theta_from(&self, s_ref: f64, theta_ref: f64, s: f64) -> Result<f64> {
        match self.theta_closed(s) {
            Some(v) => {
                self.eval(s)?;
                Ok(v)
            }
            None => {
                self.eval(s)?;
                let d: f64 = integrate(|u| self.eval(u).unwrap_or(f64::NAN), s_ref, s, QuadratureConfig::default())?;
                finite(theta_ref + d)
            }
        }
    }

    pub fn needs_quadrature(&self) -> bool {
        self.theta_closed(0.0).is_none()
    }
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain("integrand left its domain"))
    }
}

/// Torsion a slant helix must have for curvature `kappa`:
/// τ = ±mκθ / √(1 − m²θ²), θ = ∫κ ds.
pub fn slant_tau_from_kappa(kappa: &CurvatureSpec, params: &SlantParameters, s: f64) -> Result<f64> {
    let k = kappa.eval(s)?;
    let theta = kappa.theta(s)?;
    Ok(k * f_of_theta(params, theta)?)
}

/// A curve given by its intrinsic equations.
#[derive(Debug, Clone, PartialEq)]
pub enum IntrinsicProfile {
    /// Circle (τ = 0) or circular helix.
    ConstantCurve { kappa0: f64, tau0: f64 },
    /// κ = 1, τ = ms/√(1 − m²s²).
    Salkowski { params: SlantParameters },
    /// κ = ms/√(1 − m²s²), τ = 1; θ follows the family's own convention
    /// θ = √(1 − m²s²)/m, which decreases along the curve.
    AntiSalkowski { params: SlantParameters },
    /// κ = (μ/m) cos μs, τ = (μ/m) sin μs.
    ConstantPrecession { mu: f64, params: SlantParameters },
    /// Any positive κ with τ from the slant condition.
    SlantFromKappa { kappa: CurvatureSpec, params: SlantParameters },
    Tabulated { kappa: MonotoneCubic, tau: MonotoneCubic },
}

#[derive(Debug, Deserialize)]
struct ProfileRow {
    s: f64,
    kappa: f64,
    tau: f64,
}

impl IntrinsicProfile {
    pub fn constant(kappa0: f64, tau0: f64) -> Result<Self> {
        if !(kappa0 > 0.0 && kappa0.is_finite() && tau0.is_finite()) {
            return Err(Error::invalid("constant curve needs kappa0 > 0 and finite tau0"));
        }
        Ok(IntrinsicProfile::ConstantCurve { kappa0, tau0 })
    }

    pub fn constant_precession(mu: f64, params: SlantParameters) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::invalid(format!("mu must be > 0, got {mu}")));
        }
        Ok(IntrinsicProfile::ConstantPrecession { mu, params })
    }

    pub fn slant_from_kappa(kappa: CurvatureSpec, params: SlantParameters) -> Result<Self> {
        kappa.validate()?;
        Ok(IntrinsicProfile::SlantFromKappa { kappa, params })
    }

    /// Builds a tabulated profile from `(s, κ, τ)` rows.
    pub fn tabulated(rows: &[(f64, f64, f64)]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| !(r.1 > 0.0)) {
            return Err(Error::invalid(format!("tabulated curvature must be > 0 (row s = {})", r.0)));
        }
        let s: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let kappa = MonotoneCubic::new(s.clone(), rows.iter().map(|r| r.1).collect())?;
        let tau = MonotoneCubic::new(s, rows.iter().map(|r| r.2).collect())?;
        Ok(IntrinsicProfile::Tabulated { kappa, tau })
    }

    /// Reads `s,kappa,tau` CSV.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["s", "kappa", "tau"] {
            return Err(Error::Parse(format!("expected header s,kappa,tau, got {:?}", headers)));
        }
        let mut rows = Vec::new();
        for rec in rdr.deserialize() {
            let r: ProfileRow = rec?;
            rows.push((r.s, r.kappa, r.tau));
        }
        Self::tabulated(&rows)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn name(&self) -> &'static str {
        match self {
            IntrinsicProfile::ConstantCurve { .. } => "constant",
            IntrinsicProfile::Salkowski { .. } => "salkowski",
            IntrinsicProfile::AntiSalkowski { .. } => "anti-salkowski",
            IntrinsicProfile::ConstantPrecession { .. } => "precession",
            IntrinsicProfile::SlantFromKappa { .. } => "slant",
            IntrinsicProfile::Tabulated { .. } => "tabulated",
        }
    }

    pub fn slant_params(&self) -> Option<&SlantParameters> {
        match self {
            IntrinsicProfile::Salkowski { params }
            | IntrinsicProfile::AntiSalkowski { params }
            | IntrinsicProfile::ConstantPrecession { params, .. }
            | IntrinsicProfile::SlantFromKappa { params, .. } => Some(params),
            _ => None,
        }
    }

    /// Sign of dθ/ds: -1 for the anti-Salkowski convention, +1 otherwise.
    pub fn theta_direction(&self) -> f64 {
        match self {
            IntrinsicProfile::AntiSalkowski { .. } => -1.0,
            _ => 1.0,
        }
    }

    /// Closed domain bounds of s (the open slant guards are checked on
    /// evaluation).
    pub fn domain(&self) -> (f64, f64) {
        match self {
            IntrinsicProfile::ConstantCurve { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            IntrinsicProfile::Salkowski { params } => (-1.0 / params.m(), 1.0 / params.m()),
            IntrinsicProfile::AntiSalkowski { params } => (0.0, 1.0 / params.m()),
            IntrinsicProfile::ConstantPrecession { mu, .. } => (-FRAC_PI_2 / mu, FRAC_PI_2 / mu),
            IntrinsicProfile::SlantFromKappa { kappa, .. } => match kappa {
                CurvatureSpec::Tabulated(t) => t.domain(),
                CurvatureSpec::Cosine { mu, .. } => (-FRAC_PI_2 / mu, FRAC_PI_2 / mu),
                CurvatureSpec::Constant { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            },
            IntrinsicProfile::Tabulated { kappa, .. } => kappa.domain(),
        }
    }

    pub fn kappa(&self, s: f64) -> Result<f64> {
        if !s.is_finite() {
            return Err(Error::domain("arc length must be finite"));
        }
        match self {
            IntrinsicProfile::ConstantCurve { kappa0, .. } => Ok(*kappa0),
            IntrinsicProfile::Salkowski { params } => {
                params.check_open(s)?;
                Ok(1.0)
            }
            IntrinsicProfile::AntiSalkowski { params } => {
                let x = anti_salkowski_ms(params, s)?;
                Ok(x / (1.0 - x * x).sqrt())
            }
            IntrinsicProfile::ConstantPrecession { mu, params } => {
                if !((mu * s).abs() < FRAC_PI_2) {
                    return Err(Error::domain(format!("curvature (mu/m)cos(mu s) is not positive at s = {s}")));
                }
                Ok(mu / params.m() * (mu * s).cos())
            }
            IntrinsicProfile::SlantFromKappa { kappa, params } => {
                let k = kappa.eval(s)?;
                params.check_open(kappa.theta(s)?)?;
                Ok(k)
            }
            IntrinsicProfile::Tabulated { kappa, .. } => {
                let k = kappa.eval(s)?;
                if !(k > 0.0) {
                    return Err(Error::domain(format!("interpolated curvature {k} not positive at s = {s}")));
                }
                Ok(k)
            }
        }
    }

    pub fn tau(&self, s: f64) -> Result<f64> {
        if !s.is_finite() {
            return Err(Error::domain("arc length must be finite"));
        }
        match self {
            IntrinsicProfile::ConstantCurve { tau0, .. } => Ok(*tau0),
            IntrinsicProfile::Salkowski { params } => f_of_theta(params, s),
            IntrinsicProfile::AntiSalkowski { params } => {
                anti_salkowski_ms(params, s)?;
                Ok(params.sign().factor())
            }
            IntrinsicProfile::ConstantPrecession { mu, params } => {
                self.kappa(s)?;
                Ok(params.sign().factor() * mu / params.m() * (mu * s).sin())
            }
            IntrinsicProfile::SlantFromKappa { kappa, params } => slant_tau_from_kappa(kappa, params, s),
            IntrinsicProfile::Tabulated { tau, .. } => tau.eval(s),
        }
    }

    /// Cumulative turn θ(s).
    pub fn theta(&self, s: f64) -> Result<f64> {
        match self {
            IntrinsicProfile::ConstantCurve { kappa0, .. } => Ok(kappa0 * s),
            IntrinsicProfile::Salkowski { params } => {
                params.check_open(s)?;
                Ok(s)
            }
            IntrinsicProfile::AntiSalkowski { params } => {
                let x = anti_salkowski_ms(params, s)?;
                Ok((1.0 - x * x).sqrt() / params.m())
            }
            IntrinsicProfile::ConstantPrecession { mu, params } => {
                self.kappa(s)?;
                Ok((mu * s).sin() / params.m())
            }
            IntrinsicProfile::SlantFromKappa { kappa, params } => {
                let th = kappa.theta(s)?;
                params.check_open(th)?;
                Ok(th)
            }
            IntrinsicProfile::Tabulated { kappa, .. } => {
                let (a, b) = kappa.domain();
                let anchor = 0f64.clamp(a, b);
                kappa.eval(s)?;
                integrate(|u| kappa.eval(u).unwrap_or(f64::NAN), anchor, s, QuadratureConfig::default()).and_then(finite)
            }
        }
    }

    /// θ(s) continued from a known θ(s_ref); avoids re-integrating from the
    /// anchor for quadrature-backed profiles.
    pub fn theta_from(&self, s_ref: f64, theta_ref: f64, s: f64) -> Result<f64> {
        match self {
            IntrinsicProfile::SlantFromKappa { kappa, params } if kappa.needs_quadrature() => {
                let th = kappa.theta_from(s_ref, theta_ref, s)?;
                params.check_open(th)?;
                Ok(th)
            }
            IntrinsicProfile::Tabulated { kappa, .. } => {
                kappa.eval(s)?;
                let d: f64 = integrate(|u| kappa.eval(u).unwrap_or(f64::NAN), s_ref, s, QuadratureConfig::default())?;
                finite(theta_ref + d)
            }
            _ => self.theta(s),
        }
    }
}

/// `m s` for the anti-Salkowski family, checked to lie in (0, 1).
fn anti_salkowski_ms(params: &SlantParameters, s: f64) -> Result<f64> {
    let x = params.m() * s;
    if !(x > 0.0) {
        return Err(Error::domain(format!("anti-Salkowski curvature ms/sqrt(1-m^2 s^2) is not positive at s = {s}")));
    }
    if !(x < 1.0 - DOMAIN_MARGIN) {
        return Err(Error::domain(format!("m*s = {x} must be < 1")));
    }
    // θ = √(1 − m²s²)/m must keep |mθ| < 1 as well
    if !((1.0 - x * x).sqrt() < 1.0 - DOMAIN_MARGIN) {
        return Err(Error::domain(format!("|m*theta| reaches 1 at s = {s}")));
    }
    Ok(x)
}

pub fn eval_kappa(profile: &IntrinsicProfile, s: f64) -> Result<f64> {
    profile.kappa(s)
}

pub fn eval_tau(profile: &IntrinsicProfile, s: f64) -> Result<f64> {
    profile.tau(s)
}

pub fn theta_of_s(profile: &IntrinsicProfile, s: f64) -> Result<f64> {
    profile.theta(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn third() -> SlantParameters {
        SlantParameters::with_n(1.0 / 3.0).unwrap()
    }

    #[test]
    fn parameter_identities() {
        for n in [0.05, 1.0 / 3.0, 0.5, 10.0 / 11.0, 0.99] {
            let p = SlantParameters::with_n(n).unwrap();
            assert_abs_diff_eq!(p.m() * p.m() * (1.0 - n * n), n * n, epsilon = 1e-14);
            assert_abs_diff_eq!(1.0 / n, (1.0 + p.m() * p.m()).sqrt() / p.m(), epsilon = 1e-12);
            assert_abs_diff_eq!(p.phi().cos(), n, epsilon = 1e-15);
        }
        assert!(SlantParameters::with_n(0.0).is_err());
        assert!(SlantParameters::with_n(1.0).is_err());
        assert!(SlantParameters::with_n(f64::NAN).is_err());
        let p = SlantParameters::from_angle(1.0, Branch::Arccos, Sign::Minus).unwrap();
        assert_abs_diff_eq!(p.n(), 1f64.cos(), epsilon = 1e-15);
    }

    #[test]
    fn eval_kappa_examples() {
        let sal = IntrinsicProfile::Salkowski { params: third() };
        assert_eq!(eval_kappa(&sal, 0.4).unwrap(), 1.0);
        let c = IntrinsicProfile::constant(2.0, 0.0).unwrap();
        assert_eq!(eval_kappa(&c, -123.0).unwrap(), 2.0);
        let half = SlantParameters::with_n(0.5).unwrap();
        let prec = IntrinsicProfile::constant_precession(half.m(), half).unwrap();
        assert_abs_diff_eq!(eval_kappa(&prec, 0.0).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn eval_tau_examples() {
        for n in [0.2, 1.0 / 3.0, 0.7] {
            let sal = IntrinsicProfile::Salkowski { params: SlantParameters::with_n(n).unwrap() };
            assert_eq!(eval_tau(&sal, 0.0).unwrap(), 0.0);
            let anti = IntrinsicProfile::AntiSalkowski { params: SlantParameters::with_n(n).unwrap() };
            assert_eq!(eval_tau(&anti, 0.7).unwrap(), 1.0);
        }
        let sal = IntrinsicProfile::Salkowski { params: third() };
        // m = 1/(2√2): (1/(2√2)) / √(1 − 1/8)
        assert_abs_diff_eq!(eval_tau(&sal, 1.0).unwrap(), 0.377_964_473_009_227_2, epsilon = 1e-14);
    }

    #[test]
    fn theta_examples() {
        let sal = IntrinsicProfile::Salkowski { params: third() };
        assert_eq!(theta_of_s(&sal, 0.25).unwrap(), 0.25);
        assert_eq!(theta_of_s(&sal, 0.0).unwrap(), 0.0);
        let half = SlantParameters::with_n(0.5).unwrap();
        let prec = IntrinsicProfile::constant_precession(half.m(), half).unwrap();
        assert_eq!(theta_of_s(&prec, 0.0).unwrap(), 0.0);
        let expect = 3f64.sqrt() * (1.0 / 3f64.sqrt()).sin();
        assert_abs_diff_eq!(theta_of_s(&prec, 1.0).unwrap(), expect, epsilon = 1e-14);
        // 30-digit reference value
        assert_abs_diff_eq!(expect, 0.945_363_055_670_417_2, epsilon = 1e-15);
        // quadrature cross-check of the closed antiderivative
        let q: f64 = integrate(|u| prec.kappa(u).unwrap(), 0.0, 1.0, QuadratureConfig::default()).unwrap();
        assert_abs_diff_eq!(q, expect, epsilon = 1e-10);
    }

    #[test]
    fn anti_salkowski_theta_convention() {
        let p = SlantParameters::with_n(0.2).unwrap();
        let anti = IntrinsicProfile::AntiSalkowski { params: p };
        let s = 1.5;
        let th = anti.theta(s).unwrap();
        assert_abs_diff_eq!(th, (1.0 - p.m() * p.m() * s * s).sqrt() / p.m(), epsilon = 1e-15);
        // θ decreases along s at rate κ
        let h = 1e-6;
        let d = (anti.theta(s + h).unwrap() - anti.theta(s - h).unwrap()) / (2.0 * h);
        assert_abs_diff_eq!(d, -anti.kappa(s).unwrap(), epsilon = 1e-6);
        assert!(anti.kappa(0.0).is_err());
        assert!(anti.kappa(-0.1).is_err());
        assert!(anti.kappa(1.0 / p.m()).is_err());
    }

    #[test]
    fn slant_tau_examples() {
        let p = third();
        let one = CurvatureSpec::Constant { kappa0: 1.0 };
        let v = slant_tau_from_kappa(&one, &p, 0.5).unwrap();
        assert_abs_diff_eq!(v, 0.179_605_302_026_774_9, epsilon = 1e-14);
        let sal = IntrinsicProfile::Salkowski { params: p };
        assert_abs_diff_eq!(v, sal.tau(0.5).unwrap(), epsilon = 1e-15);
        assert_eq!(slant_tau_from_kappa(&one, &p, 0.0).unwrap(), 0.0);

        for n in [0.5, 0.8, 1.0 / 3.0] {
            let p = SlantParameters::with_n(n).unwrap();
            let mu = 0.7 * p.m();
            let cos = CurvatureSpec::Cosine { amplitude: mu / p.m(), mu };
            for i in -10..=10 {
                let s = i as f64 * 0.1;
                let t = slant_tau_from_kappa(&cos, &p, s).unwrap();
                assert_abs_diff_eq!(t, mu / p.m() * (mu * s).sin(), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn f_of_theta_examples() {
        let p = third();
        assert_eq!(f_of_theta(&p, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(f_of_theta(&p, 1.0).unwrap(), 0.377_964_473_009_227_2, epsilon = 1e-14);
        let pm = p.with_sign(Sign::Minus);
        assert_abs_diff_eq!(f_of_theta(&pm, 1.0).unwrap(), -0.377_964_473_009_227_2, epsilon = 1e-14);
        assert!(matches!(f_of_theta(&p, 1.0 / p.m()), Err(Error::Domain(_))));
        assert!(f_of_theta(&p, (1.0 - 1e-13) / p.m()).is_err());
    }

    #[test]
    fn tabulated_rejects_bad_rows() {
        assert!(IntrinsicProfile::tabulated(&[(0.0, 1.0, 0.0), (1.0, 0.0, 0.0)]).is_err());
        assert!(IntrinsicProfile::tabulated(&[(0.0, 1.0, 0.0), (0.0, 1.0, 0.0)]).is_err());
    }

    #[test]
    fn csv_loader() {
        let text = "s,kappa,tau\n0,1,0\n0.5,1.5,0.1\n1.0,2,0.2\n";
        let p = IntrinsicProfile::from_csv_reader(text.as_bytes()).unwrap();
        assert_eq!(p.kappa(0.5).unwrap(), 1.5);
        assert!(IntrinsicProfile::from_csv_reader("a,b,c\n1,2,3\n".as_bytes()).is_err());
        assert!(IntrinsicProfile::from_csv_reader("s,kappa,tau\n0,1,0\n1,x,0\n".as_bytes()).is_err());
    }
}
