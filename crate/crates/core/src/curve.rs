//! Sampled curves shared by the generators, the oracle and the checks.

use serde::{Deserialize, Serialize};

use crate::frame::{FrenetFrame, Vec3};
use crate::profiles::{IntrinsicProfile, SlantParameters};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    ClosedForm,
    NestedQuadrature,
    OdeOracle,
    /// Loaded from a file; provenance unknown.
    Imported,
}

/// Stored parameter in which the samples are uniformly spaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleParameter {
    ArcLength,
    Slant,
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub s: f64,
    pub theta: Option<f64>,
    pub t: Option<f64>,
    pub position: Vec3,
    /// Oriented along increasing s.
    pub frame: Option<FrenetFrame>,
    pub kappa: f64,
    pub tau: f64,
}

impl CurveSample {
    pub fn parameter(&self, which: SampleParameter) -> Option<f64> {
        match which {
            SampleParameter::ArcLength => Some(self.s),
            SampleParameter::Slant => self.t,
            SampleParameter::Theta => self.theta,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SampledCurve {
    pub profile: Option<IntrinsicProfile>,
    pub params: Option<SlantParameters>,
    pub samples: Vec<CurveSample>,
    pub generator: Generator,
    pub parameter: SampleParameter,
    /// Sign of dθ/ds along the samples.
    pub theta_direction: f64,
}

impl SampledCurve {
    /// Orders samples by increasing s (reversing a decreasing run) and
    /// checks strict monotonicity.
    pub fn new(
        profile: Option<IntrinsicProfile>,
        params: Option<SlantParameters>,
        mut samples: Vec<CurveSample>,
        generator: Generator,
        parameter: SampleParameter,
        theta_direction: f64,
    ) -> Result<Self> {
        if samples.len() >= 2 && samples[1].s < samples[0].s {
            samples.reverse();
        }
        if let Some(i) = samples.windows(2).position(|w| !(w[1].s > w[0].s)) {
            return Err(Error::invalid(format!(
                "arc length must be strictly monotone (samples {} and {})",
                i,
                i + 1
            )));
        }
        Ok(Self { profile, params, samples, generator, parameter, theta_direction })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn positions(&self) -> Vec<Vec3> {
        self.samples.iter().map(|s| s.position).collect()
    }

    pub fn arc_lengths(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.s).collect()
    }

    pub fn s_range(&self) -> Option<(f64, f64)> {
        Some((self.samples.first()?.s, self.samples.last()?.s))
    }

    pub fn s_span(&self) -> f64 {
        self.s_range().map(|(a, b)| b - a).unwrap_or(0.0)
    }

    /// Values of the sampling parameter; errors if any sample lacks it.
    pub fn parameter_values(&self) -> Result<Vec<f64>> {
        self.samples
            .iter()
            .map(|s| s.parameter(self.parameter))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::invalid(format!("samples lack the {:?} parameter", self.parameter)))
    }

    /// Spacing of the sampling parameter (may be negative), checked uniform
    /// to a relative 1e-9.
    pub fn uniform_spacing(&self) -> Result<f64> {
        let p = self.parameter_values()?;
        if p.len() < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: p.len() });
        }
        let h = (p[p.len() - 1] - p[0]) / (p.len() - 1) as f64;
        let scale = p.iter().fold(h.abs(), |a, v| a.max(v.abs()));
        if let Some(w) = p.windows(2).find(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * scale.max(1.0)) {
            return Err(Error::invalid(format!("non-uniform spacing near {} (expected step {h})", w[0])));
        }
        Ok(h)
    }

    pub fn translate(&mut self, offset: Vec3) {
        for s in &mut self.samples {
            s.position += offset;
        }
    }

    /// Translates so that sample `index` sits at `target`.
    pub fn align_to(&mut self, index: usize, target: Vec3) -> Result<()> {
        let p = self
            .samples
            .get(index)
            .ok_or_else(|| Error::invalid(format!("sample {index} out of range")))?
            .position;
        self.translate(target - p);
        Ok(())
    }

    /// Keeps every `stride`-th sample starting at `offset`.
    pub fn decimated(&self, stride: usize, offset: usize) -> SampledCurve {
        let stride = stride.max(1);
        SampledCurve {
            profile: self.profile.clone(),
            params: self.params,
            samples: self.samples.iter().skip(offset).step_by(stride).copied().collect(),
            generator: self.generator,
            parameter: self.parameter,
            theta_direction: self.theta_direction,
        }
    }
}
