//! Fixed-step RK4 integration of the Frenet–Serret system, used as ground
//! truth for the closed forms.

use serde::{Deserialize, Serialize};

use crate::curve::{CurveSample, Generator, SampleParameter, SampledCurve};
use crate::frame::{FrenetFrame, Vec3};
use crate::profiles::{CurvatureSpec, IntrinsicProfile};
use crate::synthesis::t_of_theta;
use crate::{Error, Result};

/// Steps beyond this count are refused rather than run for hours.
const MAX_STEPS: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Method {
    #[default]
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub step: f64,
    pub renormalize_every: usize,
    pub method: Method,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { step: 1e-4, renormalize_every: 1, method: Method::Rk4 }
    }
}

impl IntegratorConfig {
    pub fn with_step(step: f64) -> Self {
        Self { step, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::invalid(format!("step must be > 0, got {}", self.step)));
        }
        if self.renormalize_every == 0 {
            return Err(Error::invalid("renormalize_every must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialState {
    pub position: Vec3,
    pub frame: FrenetFrame,
    pub s0: f64,
}

impl InitialState {
    pub fn new(position: Vec3, frame: FrenetFrame, s0: f64) -> Result<Self> {
        let defect = frame.orthonormality_defect();
        if !(defect <= 1e-9) {
            return Err(Error::Frame(format!("initial frame is not orthonormal and right-handed (defect {defect:e})")));
        }
        if !(s0.is_finite() && position.iter().all(|v| v.is_finite())) {
            return Err(Error::invalid("initial state must be finite"));
        }
        Ok(Self { position, frame, s0 })
    }
}

#[derive(Clone, Copy)]
struct State {
    psi: Vec3,
    t: Vec3,
    n: Vec3,
    b: Vec3,
    theta: f64,
}

impl State {
    fn axpy(&self, k: &State, h: f64) -> State {
        State {
            psi: self.psi + k.psi * h,
            t: self.t + k.t * h,
            n: self.n + k.n * h,
            b: self.b + k.b * h,
            theta: self.theta + k.theta * h,
        }
    }
}

fn rhs(profile: &IntrinsicProfile, dir: f64, s: f64, y: &State) -> Result<State> {
    let k = profile.kappa(s)?;
    let tau = profile.tau(s)?;
    Ok(State {
        psi: y.t,
        t: y.n * k,
        n: y.b * tau - y.t * k,
        b: -y.n * tau,
        theta: dir * k,
    })
}

fn rk4(profile: &IntrinsicProfile, dir: f64, s: f64, y: &State, h: f64) -> Result<State> {
    let k1 = rhs(profile, dir, s, y)?;
    let k2 = rhs(profile, dir, s + 0.5 * h, &y.axpy(&k1, 0.5 * h))?;
    let k3 = rhs(profile, dir, s + 0.5 * h, &y.axpy(&k2, 0.5 * h))?;
    let k4 = rhs(profile, dir, s + h, &y.axpy(&k3, h))?;
    Ok(State {
        psi: y.psi + (k1.psi + (k2.psi + k3.psi) * 2.0 + k4.psi) * (h / 6.0),
        t: y.t + (k1.t + (k2.t + k3.t) * 2.0 + k4.t) * (h / 6.0),
        n: y.n + (k1.n + (k2.n + k3.n) * 2.0 + k4.n) * (h / 6.0),
        b: y.b + (k1.b + (k2.b + k3.b) * 2.0 + k4.b) * (h / 6.0),
        theta: y.theta + (k1.theta + 2.0 * (k2.theta + k3.theta) + k4.theta) * (h / 6.0),
    })
}

fn closed_theta(profile: &IntrinsicProfile) -> bool {
    match profile {
        IntrinsicProfile::Tabulated { .. } => false,
        IntrinsicProfile::SlantFromKappa { kappa, .. } => !matches!(kappa, CurvatureSpec::Tabulated(_)),
        _ => true,
    }
}

/// Integrates from `init.s0` to `s_end` (either direction) and records one
/// sample per step, in increasing s.
pub fn integrate_frenet(
    profile: &IntrinsicProfile,
    init: &InitialState,
    s_end: f64,
    config: &IntegratorConfig,
) -> Result<SampledCurve> {
    config.validate()?;
    let init = InitialState::new(init.position, init.frame, init.s0)?;
    if !s_end.is_finite() {
        return Err(Error::Step("end of integration must be finite".into()));
    }
    let span = s_end - init.s0;
    let dir = profile.theta_direction();
    let params = profile.slant_params().copied();
    let exact_theta = closed_theta(profile);
    let theta0 = profile.theta(init.s0).unwrap_or(0.0);

    let full = (span.abs() / config.step).floor();
    if full > MAX_STEPS {
        return Err(Error::Step(format!("{full} steps exceed the limit of {MAX_STEPS}")));
    }
    // a remainder below rounding noise is folded into the last full step
    let mut steps = full as usize;
    let rem = span.abs() - full * config.step;
    if rem > 1e-9 * config.step {
        steps += 1;
    }
    let h = config.step * span.signum();

    let record = |s: f64, y: &State| -> Result<CurveSample> {
        let theta = if exact_theta { profile.theta(s).ok() } else { Some(y.theta) };
        Ok(CurveSample {
            s,
            theta,
            t: match (params, theta) {
                (Some(p), Some(th)) => t_of_theta(&p, th).ok(),
                _ => None,
            },
            position: y.psi,
            frame: Some(FrenetFrame::new(y.t, y.n, y.b)),
            kappa: profile.kappa(s)?,
            tau: profile.tau(s)?,
        })
    };

    let f = init.frame;
    let mut y = State { psi: init.position, t: f.t, n: f.n, b: f.b, theta: theta0 };
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(record(init.s0, &y)?);
    let mut s = init.s0;
    for i in 1..=steps {
        let last = i == steps;
        let s_next = if last { s_end } else { init.s0 + i as f64 * h };
        y = rk4(profile, dir, s, &y, s_next - s)?;
        if i % config.renormalize_every == 0 || last {
            let g = FrenetFrame::new(y.t, y.n, y.b).reorthonormalized();
            y.t = g.t;
            y.n = g.n;
            y.b = g.b;
        }
        if !(y.psi.iter().chain(y.t.iter()).all(|v| v.is_finite())) {
            return Err(Error::Step(format!("integration diverged at s = {s_next}")));
        }
        s = s_next;
        samples.push(record(s, &y)?);
    }
    if span < 0.0 {
        samples.reverse();
    }
    SampledCurve::new(
        Some(profile.clone()),
        params,
        samples,
        Generator::OdeOracle,
        SampleParameter::ArcLength,
        dir,
    )
}

/// Seeds the integrator from a sample of an existing curve.
pub fn initial_state_from_closed_form(curve: &SampledCurve, index: usize) -> Result<InitialState> {
    let sample = curve.samples.get(index).ok_or(Error::MissingFrame { index })?;
    let frame = sample.frame.filter(|f| f.is_finite()).ok_or(Error::MissingFrame { index })?;
    if frame.orthonormality_defect() > 1e-9 {
        return Err(Error::MissingFrame { index });
    }
    InitialState::new(sample.position, frame, sample.s)
}

/// Circular helix with curvature `kappa`, torsion `tau` about e3:
/// ψ(s) = (r cos cs, r sin cs, h c s) with c = √(κ²+τ²), r = κ/c², h = τ/c².
pub fn circular_helix_point(kappa: f64, tau: f64, s: f64) -> Vec3 {
    let c = kappa.hypot(tau);
    let (r, h) = (kappa / (c * c), tau / (c * c));
    Vec3::new(r * (c * s).cos(), r * (c * s).sin(), h * c * s)
}

/// State of [`circular_helix_point`] at arc length `s0`.
pub fn circular_helix_start(kappa: f64, tau: f64, s0: f64) -> Result<InitialState> {
    if !(kappa > 0.0 && tau.is_finite()) {
        return Err(Error::invalid("circular helix needs kappa > 0 and finite tau"));
    }
    let c = kappa.hypot(tau);
    let (r, h) = (kappa / (c * c), tau / (c * c));
    let (cs, sn) = ((c * s0).cos(), (c * s0).sin());
    let frame = FrenetFrame::new(
        Vec3::new(-r * c * sn, r * c * cs, h * c),
        Vec3::new(-cs, -sn, 0.0),
        Vec3::new(h * c * sn, -h * c * cs, r * c),
    );
    InitialState::new(circular_helix_point(kappa, tau, s0), frame.reorthonormalized(), s0)
}
