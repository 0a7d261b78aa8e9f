//! Complete elliptic integral of the first kind, Jacobi elliptic functions
//! and the inverse of `cn` on its principal branch.
//!
//! Accuracy degrades as the modulus approaches 1 unless the complement
//! `1 - k²` is supplied directly through [`EllipticModulus::with_complement`].

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Result};
use crate::quadrature::integrate;

const AGM_MAX_ITER: usize = 40;

/// Elliptic modulus `k ∈ [0, 1)` together with its complement `1 - k²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    k: f64,
    m1: f64,
}

impl EllipticModulus {
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k) {
            return Err(domain(format!("elliptic modulus k = {k} outside [0, 1)")));
        }
        Ok(Self {
            k,
            m1: (1.0 - k) * (1.0 + k),
        })
    }

    /// Build from `k` and an independently accurate `1 - k²`, which avoids
    /// the cancellation in `1 - k²` when `k` is close to 1. `k` itself may
    /// round to 1 as long as the complement is positive.
    pub fn with_complement(k: f64, m1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) || !(m1 > 0.0 && m1 <= 1.0) {
            return Err(domain(format!(
                "elliptic modulus k = {k}, 1-k² = {m1} out of range"
            )));
        }
        Ok(Self { k, m1 })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `1 - k²`.
    pub fn complement(&self) -> f64 {
        self.m1
    }

    /// Complementary modulus `k' = √(1 - k²)`.
    pub fn k_prime(&self) -> f64 {
        self.m1.sqrt()
    }
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= 2.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// `K(k) = ∫₀¹ dt / √((1-t²)(1-k²t²))`, via the arithmetic-geometric mean.
pub fn complete_k(m: &EllipticModulus) -> f64 {
    FRAC_PI_2 / agm(1.0, m.k_prime())
}

/// Convenience form of [`complete_k`] taking the modulus as a number.
pub fn complete_k_of(k: f64) -> Result<f64> {
    Ok(complete_k(&EllipticModulus::new(k)?))
}

/// `K(1/√2)`, the constant that governs the small-frequency limits.
pub fn k_of_inv_sqrt2() -> f64 {
    FRAC_PI_2 / agm(1.0, std::f64::consts::FRAC_1_SQRT_2)
}

/// Jacobi elliptic functions `(cn, sn, dn)` at argument `u`.
///
/// Uses the descending Landen (AGM) scheme with back-substitution of the
/// amplitude. Accurate to about 1e-13 absolute for `|u| ≤ 10 K(k)`.
pub fn jacobi_cn_sn_dn(u: f64, m: &EllipticModulus) -> (f64, f64, f64) {
    if m.k == 0.0 {
        return (u.cos(), u.sin(), 1.0);
    }
    let mut a = [0.0f64; AGM_MAX_ITER + 1];
    let mut c = [0.0f64; AGM_MAX_ITER + 1];
    a[0] = 1.0;
    c[0] = m.k;
    let mut b = m.k_prime();
    let mut n = 0;
    while n < AGM_MAX_ITER && c[n].abs() > f64::EPSILON * a[n] {
        let an = a[n];
        a[n + 1] = 0.5 * (an + b);
        c[n + 1] = 0.5 * (an - b);
        b = (an * b).sqrt();
        n += 1;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for i in (1..=n).rev() {
        let s = (c[i] / a[i] * phi.sin()).clamp(-1.0, 1.0);
        phi = 0.5 * (phi + s.asin());
    }
    let (sn, cn) = phi.sin_cos();
    // dn² = 1 - k² + k² cn², free of cancellation near k = 1.
    let dn = (m.m1 + m.k * m.k * cn * cn).sqrt();
    (cn, sn, dn)
}

/// Carlson's symmetric integral `R_F(x, y, z)` by duplication.
///
/// At most one argument may be zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 0.0008;
    let (mut x, mut y, mut z) = (x, y, z);
    loop {
        let mu = (x + y + z) / 3.0;
        let dx = 1.0 - x / mu;
        let dy = 1.0 - y / mu;
        let dz = 1.0 - z / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < ERRTOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / mu.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
    }
}

/// Incomplete integral `F(θ, k) = ∫₀^θ dφ / √(1 - k² sin²φ)` for `θ ∈ [0, π/2]`.
pub fn incomplete_f(theta: f64, m: &EllipticModulus) -> f64 {
    let (s, c) = theta.sin_cos();
    s * carlson_rf(c * c, 1.0 - m.k * m.k * s * s, 1.0)
}

/// The `u ∈ [0, K(k)]` with `cn(u; k) = c`.
///
/// Evaluated as `∫_c^1 dt / √((1-t²)(1-k²+k²t²))` after the substitution
/// `t = 1 - s²`, which removes the square-root singularity at `t = 1`.
pub fn arccn(c: f64, m: &EllipticModulus) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(domain(format!("arccn argument {c} outside [0, 1]")));
    }
    if c == 1.0 {
        return Ok(0.0);
    }
    arccn_from_gap((1.0 - c).sqrt(), m, 1e-15)
}

/// [`arccn`] parametrized by `s_max = √(1 - c)`, for callers that know
/// `1 - c` more accurately than `c`.
pub(crate) fn arccn_from_gap(s_max: f64, m: &EllipticModulus, tol: f64) -> Result<f64> {
    let (k2, m1) = (m.k * m.k, m.m1);
    let integrand = |s: f64| {
        let s2 = s * s;
        let t = 1.0 - s2;
        2.0 / ((2.0 - s2) * (m1 + k2 * t * t)).sqrt()
    };
    Ok(integrate(integrand, 0.0, s_max, tol * 1e-3, tol)?.value)
}

/// Oscillation range of the dnoidal solution family
/// `d(x) = √(2|ω|/(2-k²)) dn(√(|ω|/(2-k²)) x; k)` for `ω < 0`.
pub fn dnoidal_range(omega: f64, m: &EllipticModulus) -> Result<(f64, f64)> {
    if !(omega < 0.0) {
        return Err(domain(format!(
            "dnoidal range needs omega < 0, got {omega}"
        )));
    }
    let scale = (2.0 * omega.abs() / (1.0 + m.m1)).sqrt();
    Ok((scale * m.k_prime(), scale))
}
