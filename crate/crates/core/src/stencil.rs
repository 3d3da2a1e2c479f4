//! Central finite-difference stencils on uniform grids.

use std::ops::{Add, Mul};

/// Coefficients of a central stencil; the derivative estimate is
/// `sum(c_k * f(i + k - half)) / h^order`.
#[derive(Debug, Clone, Copy)]
pub struct Stencil {
    pub order: u32,
    pub coefficients: &'static [f64],
}

impl Stencil {
    /// First derivative, 5 points, O(h^4).
    pub const D1_5: Stencil = Stencil {
        order: 1,
        coefficients: &[1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0],
    };
    /// First derivative, 7 points, O(h^6).
    pub const D1_7: Stencil = Stencil {
        order: 1,
        coefficients: &[
            -1.0 / 60.0,
            9.0 / 60.0,
            -45.0 / 60.0,
            0.0,
            45.0 / 60.0,
            -9.0 / 60.0,
            1.0 / 60.0,
        ],
    };
    /// Second derivative, 5 points, O(h^4).
    pub const D2_5: Stencil = Stencil {
        order: 2,
        coefficients: &[-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0],
    };
    /// Second derivative, 7 points, O(h^6).
    pub const D2_7: Stencil = Stencil {
        order: 2,
        coefficients: &[
            2.0 / 180.0,
            -27.0 / 180.0,
            270.0 / 180.0,
            -490.0 / 180.0,
            270.0 / 180.0,
            -27.0 / 180.0,
            2.0 / 180.0,
        ],
    };
    /// Third derivative, 7 points, O(h^4).
    pub const D3_7: Stencil = Stencil {
        order: 3,
        coefficients: &[
            1.0 / 8.0,
            -1.0,
            13.0 / 8.0,
            0.0,
            -13.0 / 8.0,
            1.0,
            -1.0 / 8.0,
        ],
    };

    /// Third derivative, 9 points, O(h^6).
    pub const D3_9: Stencil = Stencil {
        order: 3,
        coefficients: &[
            -7.0 / 240.0,
            3.0 / 10.0,
            -169.0 / 120.0,
            61.0 / 30.0,
            0.0,
            -61.0 / 30.0,
            169.0 / 120.0,
            -3.0 / 10.0,
            7.0 / 240.0,
        ],
    };

    pub fn half_width(&self) -> usize {
        self.coefficients.len() / 2
    }

    /// Applies the stencil to `f(-half) ..= f(half)` with spacing `h`.
    pub fn apply<V, F>(&self, h: f64, f: F) -> V
    where
        V: Copy + Add<Output = V> + Mul<f64, Output = V>,
        F: Fn(isize) -> V,
    {
        let half = self.half_width() as isize;
        let mut acc: Option<V> = None;
        for (k, &c) in self.coefficients.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let term = f(k as isize - half) * c;
            acc = Some(match acc {
                Some(a) => a + term,
                None => term,
            });
        }
        acc.expect("stencil has a nonzero coefficient") * (1.0 / h.powi(self.order as i32))
    }

    /// Applies the stencil centred on `values[i]`. Caller guarantees the
    /// stencil fits.
    pub fn at<V>(&self, values: &[V], i: usize, h: f64) -> V
    where
        V: Copy + Add<Output = V> + Mul<f64, Output = V>,
    {
        self.apply(h, |k| values[(i as isize + k) as usize])
    }
}
