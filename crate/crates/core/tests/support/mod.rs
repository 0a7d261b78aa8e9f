//! Reference computations for the integration tests. None of these reuse the
//! library's inverse maps; they work from the defining integrals, forward
//! `cn` evaluations and explicit digit strings.

#![allow(dead_code)]

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use dbridge::elliptic::{jacobi_cn_sn_dn, EllipticModulus};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `K(k)` by the trapezoid rule on `∫₀^{π/2} dθ / √(1 - k² sin² θ)`.
/// The integrand is smooth and π-periodic, so the rule converges
/// geometrically at a rate set by the distance `k'` of its poles.
pub fn k_trapezoid(k: f64) -> f64 {
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    let n = (60.0 / kp.max(1e-6)).ceil() as usize + 64;
    let h = FRAC_PI_2 / n as f64;
    let f = |t: f64| {
        let s = t.sin();
        1.0 / (1.0 - k * k * s * s).sqrt()
    };
    let inner: f64 = (1..n).map(|i| f(i as f64 * h)).sum();
    h * (0.5 * (f(0.0) + f(FRAC_PI_2)) + inner)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=n {
                    let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Composite Gauss–Legendre quadrature of `f` over `[a, b]`.
pub fn integrate_gl(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let rule = gauss_legendre(20);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let mid = a + (p as f64 + 0.5) * h;
            rule.iter()
                .map(|&(x, w)| w * f(mid + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

/// `φ(k) = F(θ; k) / K(k)` with `cos θ = √(2k² - 1)/k`, from the
/// Legendre-form integral.
pub fn phi_gauss(k: f64) -> f64 {
    let c = (2.0 * k * k - 1.0).sqrt() / k;
    let theta = ((1.0 - c) * (1.0 + c)).sqrt().atan2(c);
    let f = integrate_gl(
        |t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(),
        0.0,
        theta,
        64,
    );
    f / k_trapezoid(k)
}

fn modulus(k: f64) -> EllipticModulus {
    EllipticModulus::with_complement(k, (1.0 - k) * (1.0 + k)).unwrap()
}

fn cn(u: f64, k: f64) -> f64 {
    jacobi_cn_sn_dn(u, &modulus(k)).0
}

/// Smallest `c ∈ [0, K]` with `cn(c; k) = y`, by bisection on forward `cn`.
fn arccn_bisect(y: f64, k: f64, kk: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, kk);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cn(mid, k) > y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Frequency of the isolated solution of index `n` on a ring of length
/// `length`, found by bisection on the modulus.
///
/// `frac` is `{nα}`; `sigma` is `+1` for `u(L1) = u(0)` and `-1` for
/// `u(L1) = -u(0)`. For each trial `k` the wave `A cn(p x + s c0)` is pinned
/// at `u(0) = √(2|ω|)` and the mismatch at `x = L1` is measured with forward
/// `cn`, where `p L1 = 4 K n α`.
pub fn omega_bisect(n: u64, frac: f64, sigma: f64, length: f64) -> f64 {
    let s = if (sigma > 0.0) == (frac < 0.5) {
        -1.0
    } else {
        1.0
    };
    let k_of = |x: f64| {
        let sg = 1.0 / (1.0 + (-x).exp());
        FRAC_1_SQRT_2 + (1.0 - FRAC_1_SQRT_2) * sg
    };
    let mismatch = |x: f64| {
        let k = k_of(x);
        let kk = k_trapezoid(k);
        let e = (2.0 * k).mul_add(k, -1.0);
        let c0 = arccn_bisect(e.sqrt() / k, k, kk);
        cn(4.0 * kk * frac + s * c0, k) - sigma * cn(c0, k)
    };
    // march up from k ≈ 1/√2 to the first sign change
    let (mut lo, mut f_lo) = (-25.0f64, mismatch(-25.0));
    let mut hi = lo;
    loop {
        hi += 1.0;
        assert!(hi <= 18.0, "no sign change for n = {n}");
        let f_hi = mismatch(hi);
        if f_hi * f_lo < 0.0 {
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-14 {
            break;
        }
        let fm = mismatch(mid);
        if (fm > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    let k = k_of(0.5 * (lo + hi));
    let e = (2.0 * k).mul_add(k, -1.0);
    let s_val = 4.0 * e.sqrt() * k_trapezoid(k);
    let root = n as f64 * s_val / length;
    -root * root
}

/// Binary digits `b_1 … b_len` of the constructed ratio for a target `ℓ`
/// with `frac_bits` fractional binary digits, written out block by block
/// as digit strings.
pub fn constructed_digits(ell: f64, len: usize) -> Vec<bool> {
    let mut frac_bits = 0u32;
    while (ell * 2f64.powi(frac_bits as i32)).fract() != 0.0 {
        frac_bits += 1;
    }
    let int_bits = format!("{:b}", ell.ceil() as u64).len() as u64;
    let first = (int_bits + 1).max(2);
    let mut out = vec![false; first as usize];
    let mut start = first;
    let mut j = 1u32;
    while out.len() < len {
        let d = (j - 1).min(frac_bits);
        let scaled = (ell * 2f64.powi(d as i32)).ceil() as u64;
        // n_j digits: leading one then the integer part; d digits of fraction
        let body = format!(
            "{:0width$b}",
            scaled,
            width = (start - 1 + d as u64) as usize
        );
        out.push(true);
        out.extend(body.chars().map(|c| c == '1'));
        out.extend(std::iter::repeat_n(false, (start + d as u64) as usize));
        start = 3 * start + 2 * d as u64;
        j += 1;
    }
    out.truncate(len);
    out
}

/// `ξ̃_N = N({Nα} - 1/2)` for `N = 2^e` from explicit digits, returned as
/// `(y, shift)` with `ξ̃_N = y · 2^-shift`; the expansion is cut after
/// `digits.len()` digits and `b_{e+1}` must be 1.
pub fn xi_tilde_dyadic(digits: &[bool], e: usize) -> (BigUint, usize) {
    // N{Nα} = Σ_i b_{e+i} 2^{e-i}
    let tail = &digits[e..];
    assert!(tail[0], "ξ̃ would be negative");
    let mut num = BigUint::zero();
    for &b in tail {
        num <<= 1;
        if b {
            num += 1u32;
        }
    }
    let half = BigUint::one() << (tail.len() - 1);
    (num - half, tail.len() - e)
}
