//! The nine reference curves in three figure sets, with the
//! sampling grids used to reproduce them.

use serde::Serialize;

use crate::curve::SampledCurve;
use crate::profiles::{IntrinsicProfile, SlantParameters};
use crate::synthesis::{anti_salkowski_sampled, constant_precession_sampled, linspace, salkowski_sampled};
use crate::{Error, Result};

pub const FIGURE_SAMPLES: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Salkowski,
    AntiSalkowski,
    Precession,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureCurve {
    pub figure: u8,
    pub family: Family,
    pub n_num: u32,
    pub n_den: u32,
    /// Range of nt (Salkowski, anti-Salkowski) or μs (precession, μ = m).
    pub range: (f64, f64),
    pub samples: usize,
}

impl FigureCurve {
    const fn new(figure: u8, family: Family, n_num: u32, n_den: u32, range: (f64, f64)) -> Self {
        Self { figure, family, n_num, n_den, range, samples: FIGURE_SAMPLES }
    }

    pub fn n(&self) -> f64 {
        self.n_num as f64 / self.n_den as f64
    }

    pub fn params(&self) -> Result<SlantParameters> {
        SlantParameters::with_n(self.n())
    }

    pub fn label(&self) -> String {
        let fam = match self.family {
            Family::Salkowski => "salkowski",
            Family::AntiSalkowski => "anti-salkowski",
            Family::Precession => "precession",
        };
        format!("fig{}-{fam}-n{}_{}", self.figure, self.n_num, self.n_den)
    }

    /// Grid in the family's own parameter (t, or s for precession).
    pub fn grid(&self) -> Result<Vec<f64>> {
        let p = self.params()?;
        let scale = match self.family {
            Family::Precession => p.m(),
            _ => p.n(),
        };
        Ok(linspace(self.range.0 / scale, self.range.1 / scale, self.samples))
    }

    pub fn profile(&self) -> Result<IntrinsicProfile> {
        let p = self.params()?;
        Ok(match self.family {
            Family::Salkowski => IntrinsicProfile::Salkowski { params: p },
            Family::AntiSalkowski => IntrinsicProfile::AntiSalkowski { params: p },
            Family::Precession => IntrinsicProfile::constant_precession(p.m(), p)?,
        })
    }

    pub fn generate(&self) -> Result<SampledCurve> {
        let p = self.params()?;
        let grid = self.grid()?;
        match self.family {
            Family::Salkowski => salkowski_sampled(&p, &grid),
            Family::AntiSalkowski => anti_salkowski_sampled(&p, &grid),
            Family::Precession => constant_precession_sampled(p.m(), &p, &grid),
        }
    }
}

const CURVES: [FigureCurve; 9] = [
    FigureCurve::new(1, Family::Salkowski, 1, 3, (-1.3, 1.3)),
    FigureCurve::new(1, Family::Salkowski, 1, 8, (-1.3, 1.3)),
    FigureCurve::new(1, Family::Salkowski, 10, 11, (-1.3, 1.3)),
    FigureCurve::new(2, Family::AntiSalkowski, 1, 5, (0.1, 1.5)),
    FigureCurve::new(2, Family::AntiSalkowski, 1, 13, (0.1, 1.5)),
    FigureCurve::new(2, Family::AntiSalkowski, 2, 3, (0.1, 1.5)),
    FigureCurve::new(3, Family::Precession, 4, 5, (-1.4, 1.4)),
    FigureCurve::new(3, Family::Precession, 1, 2, (-1.4, 1.4)),
    FigureCurve::new(3, Family::Precession, 1, 3, (-1.4, 1.4)),
];

pub fn figure(which: u8) -> Result<Vec<FigureCurve>> {
    if !(1..=3).contains(&which) {
        return Err(Error::invalid(format!("figure must be 1, 2 or 3, got {which}")));
    }
    Ok(CURVES.iter().copied().filter(|c| c.figure == which).collect())
}

pub fn all_figure_curves() -> &'static [FigureCurve] {
    &CURVES
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn captions() {
        let ns = |f| figure(f).unwrap().iter().map(|c| (c.n_num, c.n_den)).collect::<Vec<_>>();
        assert_eq!(ns(1), [(1, 3), (1, 8), (10, 11)]);
        assert_eq!(ns(2), [(1, 5), (1, 13), (2, 3)]);
        assert_eq!(ns(3), [(4, 5), (1, 2), (1, 3)]);
        assert!(figure(4).is_err());
    }

    #[test]
    fn all_generate() {
        for c in all_figure_curves() {
            let curve = c.generate().unwrap();
            assert_eq!(curve.len(), FIGURE_SAMPLES, "{}", c.label());
        }
    }
}
