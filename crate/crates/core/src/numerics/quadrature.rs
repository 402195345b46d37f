//! Gauss–Hermite quadrature.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub const MAX_GAUSS_HERMITE_NODES: usize = 512;

/// Nodes and weights for `∫ f(t) e^{-t²} dt ≈ Σ wᵢ f(tᵢ)`.
///
/// `weights` may underflow to zero for the outermost nodes of large rules;
/// `scaled_weights` hold `wᵢ e^{tᵢ²}` and stay representable, which is what
/// integrands that already carry their own Gaussian decay should use.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermiteRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

impl GaussHermiteRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ wᵢ f(tᵢ)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }
}

/// Orthonormal Hermite recurrence at `t`, returning `(pₙ, pₙ₋₁, log_scale)`
/// with the true values equal to the returned ones times `e^{log_scale}`.
fn orthonormal_pair(n: usize, t: f64) -> (f64, f64, f64) {
    const RESCALE_ABOVE: f64 = 1e100;
    let mut p1 = core::f64::consts::PI.powf(-0.25);
    let mut p2 = 0.0;
    let mut log_scale = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = t * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
        if p1.abs() > RESCALE_ABOVE {
            p1 /= RESCALE_ABOVE;
            p2 /= RESCALE_ABOVE;
            log_scale += RESCALE_ABOVE.ln();
        }
    }
    (p1, p2, log_scale)
}

/// Gauss–Hermite rule with `count` nodes in ascending order.
pub fn gauss_hermite_nodes(count: usize) -> Result<GaussHermiteRule> {
    if count == 0 || count > MAX_GAUSS_HERMITE_NODES {
        return Err(Error::QuadratureSize {
            count,
            max: MAX_GAUSS_HERMITE_NODES,
        });
    }
    let n = count;
    let nf = n as f64;
    let newton_step = |z: f64| {
        let (p, pm1, log_scale) = orthonormal_pair(n, z);
        (p / ((2.0 * nf).sqrt() * pm1), pm1, log_scale)
    };
    // Positive roots, ascending. They lie below √(2n+1) and are separated
    // by more than π/√(2n+1), so a scan at a quarter of that spacing brackets
    // each one exactly once.
    let limit = (2.0 * nf + 1.0).sqrt();
    let scan = 0.25 * core::f64::consts::PI / limit;
    let mut roots = Vec::with_capacity(n);
    let mut lo = if n % 2 == 1 { 0.5 * scan } else { 0.0 };
    let mut f_lo = orthonormal_pair(n, lo).0;
    while roots.len() < n / 2 && lo < limit + scan {
        let hi = lo + scan;
        let f_hi = orthonormal_pair(n, hi).0;
        if f_lo == 0.0 || (f_lo < 0.0) != (f_hi < 0.0) {
            let (mut a, mut b, mut fa) = (lo, hi, f_lo);
            let mut z = 0.5 * (a + b);
            for _ in 0..200 {
                let (dz, _, _) = newton_step(z);
                let newton = z - dz;
                let next = if newton > a && newton < b {
                    newton
                } else {
                    0.5 * (a + b)
                };
                let f_next = orthonormal_pair(n, next).0;
                if f_next == 0.0 {
                    z = next;
                    break;
                }
                if (f_next < 0.0) == (fa < 0.0) {
                    a = next;
                    fa = f_next;
                } else {
                    b = next;
                }
                let converged = next == newton && dz.abs() <= 1e-15 * next.max(1.0);
                z = next;
                if converged || b - a <= 1e-15 * z.max(1.0) {
                    break;
                }
            }
            // One last Newton polish from the bracketed estimate.
            let (dz, _, _) = newton_step(z);
            if dz.abs() < b - a + 1e-14 {
                z -= dz;
            }
            roots.push(z);
        }
        lo = hi;
        f_lo = f_hi;
    }
    debug_assert_eq!(roots.len(), n / 2);
    // w̃ = 2 e^{z²} / (pₙ')² with pₙ' = √(2n) pₙ₋₁, evaluated in logs.
    let log_scaled_weight = |z: f64| {
        let (_, pm1, log_scale) = newton_step(z);
        2.0f64.ln() - (2.0 * nf).ln() - 2.0 * (pm1.abs().ln() + log_scale) + z * z
    };
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut scaled_weights = Vec::with_capacity(n);
    let mut push = |t: f64, log_w: f64| {
        nodes.push(t);
        weights.push((log_w - t * t).exp());
        scaled_weights.push(log_w.exp());
    };
    for &z in roots.iter().rev() {
        push(-z, log_scaled_weight(z));
    }
    if n % 2 == 1 {
        push(0.0, log_scaled_weight(0.0));
    }
    for &z in &roots {
        push(z, log_scaled_weight(z));
    }
    Ok(GaussHermiteRule {
        nodes,
        weights,
        scaled_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn size_limits() {
        assert!(gauss_hermite_nodes(0).is_err());
        assert!(gauss_hermite_nodes(513).is_err());
        assert_eq!(gauss_hermite_nodes(1).unwrap().nodes, alloc::vec![0.0]);
        assert_eq!(gauss_hermite_nodes(512).unwrap().len(), 512);
    }

    #[test]
    fn small_rules_are_exact() {
        // Two-point rule: ±1/√2, weights √π/2.
        let r = gauss_hermite_nodes(2).unwrap();
        assert!((r.nodes[1] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((r.nodes[0] + 0.5f64.sqrt()).abs() < 1e-15);
        assert!((r.weights[0] - PI.sqrt() / 2.0).abs() < 1e-15);
        // Three-point rule: 0, ±√(3/2); weights 2√π/3, √π/6.
        let r = gauss_hermite_nodes(3).unwrap();
        assert_eq!(r.nodes[1], 0.0);
        assert!((r.nodes[2] - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((r.weights[1] - 2.0 * PI.sqrt() / 3.0).abs() < 1e-15);
        assert!((r.weights[2] - PI.sqrt() / 6.0).abs() < 1e-15);
    }

    #[test]
    fn integrates_monomials() {
        for &n in &[5usize, 20, 64, 200] {
            let r = gauss_hermite_nodes(n).unwrap();
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            // ∫ t^{2k} e^{-t²} = Γ(k + 1/2).
            let mut gamma = PI.sqrt();
            for k in 0..4.min(n) {
                let got = r.integrate(|t| t.powi(2 * k as i32));
                assert!(
                    (got - gamma).abs() < 1e-12 * gamma,
                    "n={n} k={k} {got} {gamma}"
                );
                let odd = r.integrate(|t| t.powi(2 * k as i32 + 1));
                assert!(odd.abs() < 1e-12);
                gamma *= k as f64 + 0.5;
            }
        }
    }

    #[test]
    fn scaled_weights_survive_large_rules() {
        let r = gauss_hermite_nodes(512).unwrap();
        assert!(r.scaled_weights.iter().all(|w| w.is_finite() && *w > 0.0));
        // ∫ e^{-t²/2}·e^{-t²/2} dt = √π using the scaled weights.
        let s: f64 = r
            .nodes
            .iter()
            .zip(&r.scaled_weights)
            .map(|(t, w)| w * (-t * t).exp())
            .sum();
        assert!((s - PI.sqrt()).abs() < 1e-12);
    }
}
