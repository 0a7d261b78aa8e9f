//! Bracketed root finding for monotone maps.
//!
//! Regula falsi steps with the Illinois weight reduction, falling back to
//! bisection whenever a step fails to halve the bracket. The bracket is
//! never lost, so convergence is guaranteed for continuous functions.

use crate::error::{Error, Result};

/// Find `x` in `[lo, hi]` with `f(x) = 0`, given a sign change on the bracket.
///
/// Stops once the bracket is narrower than `xtol` or an exact zero is hit and
/// returns the endpoint with the smaller residual.
pub fn find_root<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<f64> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Domain(format!(
            "no sign change on [{a}, {b}]: f = ({fa:e}, {fb:e})"
        )));
    }
    // Which side was retained on the previous step (-1 = a, 1 = b).
    let mut side = 0i8;
    let mut force_bisect = false;
    for _ in 0..max_iter {
        let width = b - a;
        if width <= xtol {
            break;
        }
        let mut x = if force_bisect {
            0.5 * (a + b)
        } else {
            (a * fb - b * fa) / (fb - fa)
        };
        if !(x > a && x < b) {
            x = 0.5 * (a + b);
            if !(x > a && x < b) {
                // No representable point left inside the bracket.
                break;
            }
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if !fx.is_finite() {
            return Err(Error::NoConvergence(format!("non-finite value at x = {x}")));
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
        force_bisect = b - a > 0.5 * width;
    }
    if b - a > xtol && (0.5 * (a + b) > a && 0.5 * (a + b) < b) {
        return Err(Error::NoConvergence(format!(
            "bracket [{a}, {b}] still wider than {xtol:e} after {max_iter} iterations"
        )));
    }
    // fa/fb may have been scaled by the Illinois rule; re-evaluate.
    Ok(if f(a).abs() <= f(b).abs() { a } else { b })
}
