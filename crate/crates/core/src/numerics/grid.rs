#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// A uniform one-dimensional lattice `start + i·step`, `0 ≤ i < count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    start: f64,
    step: f64,
    count: usize,
}

impl UniformGrid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() {
            return Err(Error::InvalidGrid {
                reason: "start must be finite",
            });
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidGrid {
                reason: "step must be positive and finite",
            });
        }
        if count < 2 {
            return Err(Error::InvalidGrid {
                reason: "count must be at least 2",
            });
        }
        Ok(Self { start, step, count })
    }

    /// Lattice from `start` with spacing `step`, stopping at the last point
    /// not beyond `end`.
    pub fn from_range(start: f64, step: f64, end: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidGrid {
                reason: "step must be positive and finite",
            });
        }
        if !(end.is_finite() && end > start) {
            return Err(Error::InvalidGrid {
                reason: "end must exceed start",
            });
        }
        // Tolerate end sitting on the lattice up to rounding.
        let span = (end - start) / step;
        let count = (span + 1e-9 * span.max(1.0)).floor() as usize + 1;
        Self::new(start, step, count)
    }

    /// `count` points spanning `[center - half_width, center + half_width]`.
    pub fn centered(center: f64, half_width: f64, count: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid {
                reason: "half-width must be positive and finite",
            });
        }
        if count < 2 {
            return Err(Error::InvalidGrid {
                reason: "count must be at least 2",
            });
        }
        Self::new(
            center - half_width,
            2.0 * half_width / (count - 1) as f64,
            count,
        )
    }

    #[inline]
    pub fn start(&self) -> f64 {
        self.start
    }

    #[inline]
    pub fn step(&self) -> f64 {
        self.step
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.point(self.count - 1)
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.start + self.end())
    }

    /// Largest `|point|` on the grid.
    pub fn max_abs(&self) -> f64 {
        self.start.abs().max(self.end().abs())
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }

    /// Trapezoid weight of sample `i`.
    #[inline]
    pub fn trapezoid_weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.count {
            0.5 * self.step
        } else {
            self.step
        }
    }

    /// Whether `[lo, hi]` lies inside the grid span.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.start <= lo && hi <= self.end()
    }

    /// The same lattice with every coordinate multiplied by `factor`
    /// (reversed when `factor < 0` so the step stays positive).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if factor > 0.0 {
            Self::new(self.start * factor, self.step * factor, self.count)
        } else if factor < 0.0 {
            Self::new(self.end() * factor, self.step * -factor, self.count)
        } else {
            Err(Error::InvalidParameter {
                name: "scale factor",
                value: factor,
            })
        }
    }

    /// Grids agree when their lattices coincide to rounding.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let tol = 1e-12 * self.max_abs().max(self.step);
        self.count == other.count
            && (self.start - other.start).abs() <= tol
            && (self.step - other.step).abs() <= 1e-12 * self.step
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_is_affine_in_index() {
        let g = UniformGrid::new(-1.5, 0.25, 13).unwrap();
        for i in 0..13 {
            assert_eq!(g.point(i), -1.5 + i as f64 * 0.25);
        }
        assert_eq!(g.end(), 1.5);
        assert_eq!(g.center(), 0.0);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(UniformGrid::new(0.0, 0.0, 10).is_err());
        assert!(UniformGrid::new(0.0, -1.0, 10).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 1).is_err());
        assert!(UniformGrid::new(f64::NAN, 1.0, 4).is_err());
    }

    #[test]
    fn range_end_is_adjusted_down_to_lattice() {
        let g = UniformGrid::from_range(-8.0, 0.01, 8.0).unwrap();
        assert_eq!(g.count(), 1601);
        let g = UniformGrid::from_range(0.0, 0.3, 1.0).unwrap();
        assert_eq!(g.count(), 4);
        assert!(g.end() <= 1.0);
    }

    #[test]
    fn negative_scaling_reverses() {
        let g = UniformGrid::new(1.0, 0.5, 5).unwrap();
        let s = g.scaled(-2.0).unwrap();
        assert_eq!(s.start(), -6.0);
        assert_eq!(s.step(), 1.0);
        assert_eq!(s.end(), -2.0);
    }
}
