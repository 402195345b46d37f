use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use super::grid::UniformGrid;
use crate::error::{Error, Result};

/// Which variable a sampled wave is a function of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Coordinate,
    Momentum,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Coordinate => "coordinate",
            Representation::Momentum => "momentum",
        }
    }

    pub fn conjugate(self) -> Self {
        match self {
            Representation::Coordinate => Representation::Momentum,
            Representation::Momentum => Representation::Coordinate,
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Non-fatal numerical conditions attached to results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// Edge samples are larger than `threshold` relative to the peak.
    EdgeDecay { magnitude: f64, threshold: f64 },
    /// Input was rescaled to unit norm; `norm` is the original L² norm.
    Renormalized { norm: f64 },
    /// A grid's half-width is below the recommended coverage of the signal.
    NarrowGrid { required: f64, actual: f64 },
    /// Phase-space coefficients have not decayed at the edges of their grid.
    Coverage { edge: f64, threshold: f64 },
    /// A sampled output was moved onto another grid by spectral interpolation.
    Resampled,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Warning::EdgeDecay {
                magnitude,
                threshold,
            } => write!(
                f,
                "edge magnitude {magnitude:.3e} exceeds decay threshold {threshold:.1e}"
            ),
            Warning::Renormalized { norm } => {
                write!(f, "input renormalized (original norm {norm:.12})")
            }
            Warning::NarrowGrid { required, actual } => write!(
                f,
                "grid half-width {actual:.3e} is below the recommended {required:.3e}"
            ),
            Warning::Coverage { edge, threshold } => write!(
                f,
                "coefficient edge magnitude {edge:.3e} exceeds coverage threshold {threshold:.1e}"
            ),
            Warning::Resampled => f.write_str("output resampled onto requested grid"),
        }
    }
}

/// Complex samples of a wavefunction on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWave {
    grid: UniformGrid,
    values: Vec<Complex64>,
    representation: Representation,
    warnings: Vec<Warning>,
}

impl SampledWave {
    pub fn new(
        grid: UniformGrid,
        values: Vec<Complex64>,
        representation: Representation,
    ) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::LengthMismatch {
                expected: grid.count(),
                found: values.len(),
            });
        }
        Ok(Self {
            grid,
            values,
            representation,
            warnings: Vec::new(),
        })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(
        grid: UniformGrid,
        representation: Representation,
        mut f: impl FnMut(f64) -> Complex64,
    ) -> Self {
        let values = grid.points().map(&mut f).collect();
        Self {
            grid,
            values,
            representation,
            warnings: Vec::new(),
        }
    }

    #[inline]
    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    #[inline]
    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    pub fn push_warning(&mut self, warning: Warning) {
        if !self.warnings.contains(&warning) {
            self.warnings.push(warning);
        }
    }

    pub fn extend_warnings(&mut self, warnings: &[Warning]) {
        for w in warnings {
            self.push_warning(*w);
        }
    }

    pub fn with_warnings(mut self, warnings: &[Warning]) -> Self {
        self.extend_warnings(warnings);
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Trapezoid L² norm.
    pub fn norm(&self) -> f64 {
        super::metrics::trapezoid_norm(&self.grid, &self.values)
    }

    /// Largest edge magnitude relative to the peak modulus.
    pub fn edge_ratio(&self) -> f64 {
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let first = self.values[0].norm();
        let last = self.values[self.values.len() - 1].norm();
        first.max(last) / peak
    }

    /// Returns an [`Warning::EdgeDecay`] if the edges exceed `threshold`.
    pub fn decay_warning(&self, threshold: f64) -> Option<Warning> {
        let magnitude = self.edge_ratio();
        (magnitude > threshold).then_some(Warning::EdgeDecay {
            magnitude,
            threshold,
        })
    }

    pub fn require(&self, representation: Representation) -> Result<()> {
        if self.representation == representation {
            Ok(())
        } else {
            Err(Error::RepresentationMismatch {
                expected: representation.name(),
            })
        }
    }

    /// Copy scaled to unit trapezoid norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::ZeroNorm);
        }
        let mut out = self.clone();
        for v in &mut out.values {
            *v /= n;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_must_match_grid() {
        let g = UniformGrid::new(0.0, 1.0, 4).unwrap();
        let err = SampledWave::new(
            g,
            alloc::vec![Complex64::new(0.0, 0.0); 3],
            Representation::Coordinate,
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::LengthMismatch {
                expected: 4,
                found: 3
            }
        );
    }

    #[test]
    fn edge_ratio_detects_truncation() {
        let g = UniformGrid::centered(0.0, 3.0, 101).unwrap();
        let w = SampledWave::from_fn(g, Representation::Coordinate, |x| {
            Complex64::new((-x * x / 2.0).exp(), 0.0)
        });
        let r = w.edge_ratio();
        assert!((r - (-4.5f64).exp()).abs() < 1e-15);
        assert!(w.decay_warning(1e-12).is_some());
        assert!(w.decay_warning(0.1).is_none());
    }
}
