//! Hermite polynomials and Hermite–Gauss functions.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Highest order accepted by [`hermite`] before overflow becomes a concern
/// for moderate arguments.
pub const DEFAULT_MAX_HERMITE_ORDER: usize = 64;

/// Physicists' Hermite polynomial `Hₙ(t)` by the three-term recurrence.
pub fn hermite(n: usize, t: f64) -> Result<f64> {
    hermite_bounded(n, t, DEFAULT_MAX_HERMITE_ORDER)
}

/// [`hermite`] with an explicit order limit.
pub fn hermite_bounded(n: usize, t: f64, max_order: usize) -> Result<f64> {
    if n > max_order {
        return Err(Error::HermiteOrder {
            order: n,
            max: max_order,
        });
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * t;
    for k in 1..n {
        let next = 2.0 * t * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `Hₙ(t) e^{-t²/2} / √(2ⁿ n!)`, stable for any order and argument.
///
/// The normalized recurrence is run with a running logarithmic scale so that
/// neither the polynomial nor the Gaussian factor over- or underflows on its
/// own.
pub fn hermite_weighted(n: usize, t: f64) -> f64 {
    const RESCALE_ABOVE: f64 = 1e100;
    let gauss_log = -0.5 * t * t;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut log_scale = 0.0;
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * t * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            prev /= RESCALE_ABOVE;
            log_scale += RESCALE_ABOVE.ln();
        }
    }
    cur * (log_scale + gauss_log).exp()
}
