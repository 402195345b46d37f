#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::Units;

/// Largest accepted `|ad - bc - 1|`.
pub const SYMPLECTIC_TOLERANCE: f64 = 1e-12;

/// A linear canonical transformation
///
/// ```text
/// y = a·x + b·(Δx/Δp)·p
/// k = c·(Δp/Δx)·x + d·p
/// ```
///
/// with `ad - bc = 1`, reference widths `Δx·Δp = ħ/2` and kernel phase `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LctParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    delta_p: f64,
    epsilon: f64,
    units: Units,
}

impl LctParams {
    pub fn new(
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        delta_p: f64,
        epsilon: f64,
        units: Units,
    ) -> Result<Self> {
        let p = Self::new_unchecked(a, b, c, d, delta_p, epsilon, units)?;
        let residual = p.symplectic_residual();
        if residual.abs() > SYMPLECTIC_TOLERANCE {
            return Err(Error::NotSymplectic { residual });
        }
        Ok(p)
    }

    /// Like [`new`](Self::new) but without the symplectic check. Intended for
    /// exercising failure paths; every transform still works on the matrix as
    /// given.
    pub fn new_unchecked(
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        delta_p: f64,
        epsilon: f64,
        units: Units,
    ) -> Result<Self> {
        for (name, value) in [("a", a), ("b", b), ("c", c), ("d", d), ("epsilon", epsilon)] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        if !(delta_p.is_finite() && delta_p > 0.0) {
            return Err(Error::InvalidParameter {
                name: "delta_p",
                value: delta_p,
            });
        }
        Ok(Self {
            a,
            b,
            c,
            d,
            delta_p,
            epsilon,
            units,
        })
    }

    pub fn identity(delta_p: f64, units: Units) -> Result<Self> {
        Self::new(1.0, 0.0, 0.0, 1.0, delta_p, 0.0, units)
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn d(&self) -> f64 {
        self.d
    }

    #[inline]
    pub fn delta_p(&self) -> f64 {
        self.delta_p
    }

    #[inline]
    pub fn delta_x(&self) -> f64 {
        self.units.hbar() / (2.0 * self.delta_p)
    }

    #[inline]
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    #[inline]
    pub fn units(&self) -> Units {
        self.units
    }

    /// `Δx/Δp`, the factor converting momenta to the coordinate scale.
    #[inline]
    pub fn scale(&self) -> f64 {
        self.delta_x() / self.delta_p
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        Self { epsilon, ..*self }
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// `ad - bc - 1`.
    pub fn symplectic_residual(&self) -> f64 {
        self.a * self.d - self.b * self.c - 1.0
    }

    /// Whether the two parameter sets use the same reference widths and ħ.
    pub fn same_scales(&self, other: &Self) -> bool {
        self.units == other.units && scales_match(self.delta_p, other.delta_p)
    }

    /// `second ∘ first`: the matrix product, with phases added.
    pub fn compose(second: &Self, first: &Self) -> Result<Self> {
        if !second.same_scales(first) {
            return Err(Error::ScaleMismatch);
        }
        let (s, f) = (second, first);
        Ok(Self {
            a: s.a * f.a + s.b * f.c,
            b: s.a * f.b + s.b * f.d,
            c: s.c * f.a + s.d * f.c,
            d: s.c * f.b + s.d * f.d,
            epsilon: s.epsilon + f.epsilon,
            ..*first
        })
    }

    /// `(d, -b, -c, a)` with the phase negated.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
            epsilon: -self.epsilon,
            ..*self
        }
    }
}

pub(crate) fn scales_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}
