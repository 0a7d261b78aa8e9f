//! The monotone maps behind the frequency formulas: `S`, `φ`, `G = S∘φ⁻¹`,
//! the ring period, the quarter shift `γ` and the small-amplitude map `W`.
//!
//! A focusing modulus `k ∈ (1/√2, 1)` is carried together with
//! `e = 2k² - 1` and `1 - k²`, and inverses are solved in the logit
//! coordinate `x = ln(e / (2(1 - k²)))`. Both ends of the range then stay
//! resolvable in double precision: `e` near `k = 1/√2` and `1 - k²` near
//! `k = 1` are produced without cancellation.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2};

use crate::elliptic::{arccn_from_gap, carlson_rf, complete_k, k_of_inv_sqrt2, EllipticModulus};
use crate::error::{domain, Error, Result};
use crate::roots::find_root;

/// Half-width of the logit bracket. Beyond it `e` or `1 - k²` would leave the
/// normal double range.
const LOGIT_BOUND: f64 = 700.0;
const LOGIT_TOL: f64 = 1e-14;
const MAX_ITER: usize = 400;

/// A modulus `k ∈ (1/√2, 1)` of the focusing cnoidal waves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusFocusing {
    k: f64,
    e: f64,
    m1: f64,
}

impl ModulusFocusing {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > FRAC_1_SQRT_2 && k < 1.0) {
            return Err(domain(format!(
                "focusing modulus k = {k} outside (1/√2, 1)"
            )));
        }
        let e = (2.0 * k).mul_add(k, -1.0);
        let m1 = (1.0 - k) * (1.0 + k);
        if !(e > 0.0) {
            return Err(domain(format!(
                "focusing modulus k = {k} indistinguishable from 1/√2"
            )));
        }
        Ok(Self { k, e, m1 })
    }

    /// Modulus with `ln((2k² - 1) / (2(1 - k²))) = x`.
    pub fn from_logit(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(domain(format!("logit {x} not finite")));
        }
        let (e, m1) = if x >= 0.0 {
            let t = (-x).exp();
            (1.0 / (1.0 + t), 0.5 * t / (1.0 + t))
        } else {
            let t = x.exp();
            (t / (1.0 + t), 0.5 / (1.0 + t))
        };
        if !(e > 0.0 && m1 > 0.0) {
            return Err(domain(format!("logit {x} beyond double precision range")));
        }
        let k2 = if m1 < 0.25 { 1.0 - m1 } else { 0.5 * (1.0 + e) };
        Ok(Self {
            k: k2.sqrt(),
            e,
            m1,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `2k² - 1`.
    pub fn excess(&self) -> f64 {
        self.e
    }

    /// `1 - k²`.
    pub fn complement(&self) -> f64 {
        self.m1
    }

    pub fn logit(&self) -> f64 {
        self.e.ln() - (2.0 * self.m1).ln()
    }

    pub fn elliptic(&self) -> EllipticModulus {
        EllipticModulus::with_complement(self.k, self.m1)
            .expect("focusing modulus is a valid elliptic modulus")
    }

    pub fn complete_k(&self) -> f64 {
        complete_k(&self.elliptic())
    }

    /// `S(k) = 4 √(2k² - 1) K(k)`.
    pub fn s(&self) -> f64 {
        4.0 * self.e.sqrt() * self.complete_k()
    }

    /// `(φ(k), 1 - φ(k))`, each computed without subtracting from 1.
    pub fn phi_pair(&self) -> (f64, f64) {
        let kk = self.complete_k();
        let k2 = self.k * self.k;
        // φ numerator: F(θ) with cos θ = √e/k, sin θ = √(1-k²)/k.
        let num = self.m1.sqrt() / self.k * carlson_rf(self.e / k2, k2, 1.0);
        // K - F(θ) = F(β) with sin β = √e/k².
        let rest =
            self.e.sqrt() / k2 * carlson_rf(self.m1 * self.m1 / (k2 * k2), self.m1 / k2, 1.0);
        (num / kk, rest / kk)
    }

    pub fn phi(&self) -> f64 {
        self.phi_pair().0
    }

    /// Numerator of `φ` evaluated by quadrature of its integral form,
    /// `arccn(√(2k²-1)/k; k)`.
    pub fn phi_numerator_integral(&self, tol: f64) -> Result<f64> {
        // 1 - √e/k = (1-k²) / (k(k + √e))
        let gap = self.m1 / (self.k * (self.k + self.e.sqrt()));
        arccn_from_gap(gap.sqrt(), &self.elliptic(), tol)
    }
}

/// Tolerances of the map evaluations and their inverses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapConfig {
    /// Relative tolerance of quadrature-based map evaluations.
    pub map_tol: f64,
    /// Accepted residual of an inverse, `|f(f⁻¹(y)) - y|` relative to `max(1, |y|)`.
    pub inverse_tol: f64,
}

impl Default for MapConfig {
    fn default() -> Self {
        Self {
            map_tol: 1e-12,
            inverse_tol: 1e-10,
        }
    }
}

fn solve_logit<F: Fn(&ModulusFocusing) -> f64>(residual: F) -> Result<ModulusFocusing> {
    let f = |x: f64| match ModulusFocusing::from_logit(x) {
        Ok(m) => residual(&m),
        Err(_) => f64::NAN,
    };
    let x = find_root(f, -LOGIT_BOUND, LOGIT_BOUND, LOGIT_TOL, MAX_ITER)?;
    ModulusFocusing::from_logit(x)
}

fn check_inverse(what: &str, got: f64, want: f64, tol: f64) -> Result<()> {
    if (got - want).abs() <= tol * want.abs().max(1.0) {
        Ok(())
    } else {
        Err(Error::NoConvergence(format!(
            "{what}: residual {:e} at {want}",
            got - want
        )))
    }
}

impl MapConfig {
    /// The `k` with `S(k) = s`.
    pub fn s_inverse(&self, s: f64) -> Result<ModulusFocusing> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(domain(format!("S⁻¹ needs s > 0, got {s}")));
        }
        let ln_s = s.ln();
        let m = solve_logit(|m| m.s().ln() - ln_s).map_err(|e| match e {
            Error::Domain(_) => domain(format!("S⁻¹({s}) beyond double precision range")),
            other => other,
        })?;
        check_inverse("S⁻¹", m.s(), s, self.inverse_tol)?;
        Ok(m)
    }

    /// The `k` with `φ(k) = t`.
    pub fn phi_inverse(&self, t: f64) -> Result<ModulusFocusing> {
        if !(t > 0.0 && t < 1.0) {
            return Err(domain(format!("φ⁻¹ needs t ∈ (0, 1), got {t}")));
        }
        if t > 0.5 {
            return self.phi_inverse_complement(1.0 - t);
        }
        let ln_t = t.ln();
        let m = solve_logit(|m| m.phi().ln() - ln_t)?;
        check_inverse("φ⁻¹", m.phi(), t, self.inverse_tol)?;
        Ok(m)
    }

    /// The `k` with `1 - φ(k) = c`, exact in `c` even when `c` is tiny.
    pub fn phi_inverse_complement(&self, c: f64) -> Result<ModulusFocusing> {
        if !(c > 0.0 && c < 1.0) {
            return Err(domain(format!("φ⁻¹ needs 1 - t ∈ (0, 1), got {c}")));
        }
        if c > 0.5 {
            return self.phi_inverse(1.0 - c);
        }
        let ln_c = c.ln();
        let m = solve_logit(|m| m.phi_pair().1.ln() - ln_c)?;
        check_inverse("φ⁻¹", m.phi_pair().1, c, self.inverse_tol)?;
        Ok(m)
    }

    /// `G(t) = S(φ⁻¹(t))`.
    pub fn g_of_t(&self, t: f64) -> Result<f64> {
        Ok(self.phi_inverse(t)?.s())
    }

    /// `G(1 - c)`.
    pub fn g_from_complement(&self, c: f64) -> Result<f64> {
        Ok(self.phi_inverse_complement(c)?.s())
    }

    /// `γ_{n,ω} = (L/4n) φ(k_{n,ω})` with `k_{n,ω} = S⁻¹(L√|ω|/n)`.
    pub fn gamma_shift(&self, n: u64, omega: f64, length: f64) -> Result<f64> {
        let m = self.modulus_for(n, omega, length)?;
        Ok(length / (4.0 * n as f64) * m.phi())
    }

    /// `γ_{n,ω} = √((2k²-1)/|ω|) arccn(√(2k²-1)/k; k)`, by quadrature.
    pub fn gamma_shift_integral(&self, n: u64, omega: f64, length: f64) -> Result<f64> {
        let m = self.modulus_for(n, omega, length)?;
        Ok((m.excess() / omega.abs()).sqrt() * m.phi_numerator_integral(self.map_tol)?)
    }

    /// `k_{n,ω} = S⁻¹(L√|ω|/n)` for `ω < 0`.
    pub fn modulus_for(&self, n: u64, omega: f64, length: f64) -> Result<ModulusFocusing> {
        if !(omega < 0.0) || n == 0 || !(length > 0.0) {
            return Err(domain(format!(
                "k_(n,ω) needs n ≥ 1, ω < 0, L > 0; got n = {n}, ω = {omega}, L = {length}"
            )));
        }
        self.s_inverse(length * omega.abs().sqrt() / n as f64)
    }

    /// The `k ∈ (0, 1/√2)` with `W(k) = t`.
    pub fn w_inverse(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < FRAC_PI_2) {
            return Err(domain(format!("W⁻¹ needs t ∈ (0, π/2), got {t}")));
        }
        let f = |k: f64| w_unchecked(k) - t;
        let k = find_root(f, 0.0, FRAC_1_SQRT_2, 1e-17, MAX_ITER)?;
        check_inverse("W⁻¹", w_unchecked(k), t, self.inverse_tol)?;
        Ok(k)
    }
}

/// `S(k) = 4 √(2k² - 1) K(k)` for `k ∈ (1/√2, 1)`.
pub fn s_of_k(k: f64) -> Result<f64> {
    Ok(ModulusFocusing::new(k)?.s())
}

pub fn s_inverse(s: f64) -> Result<ModulusFocusing> {
    MapConfig::default().s_inverse(s)
}

/// `φ(k)`: ratio of the shift integral to `K(k)`, decreasing from 1 to 0.
pub fn phi_of_k(k: f64) -> Result<f64> {
    Ok(ModulusFocusing::new(k)?.phi())
}

pub fn phi_inverse(t: f64) -> Result<ModulusFocusing> {
    MapConfig::default().phi_inverse(t)
}

pub fn phi_inverse_complement(c: f64) -> Result<ModulusFocusing> {
    MapConfig::default().phi_inverse_complement(c)
}

pub fn g_of_t(t: f64) -> Result<f64> {
    MapConfig::default().g_of_t(t)
}

pub fn g_from_complement(c: f64) -> Result<f64> {
    MapConfig::default().g_from_complement(c)
}

pub fn gamma_shift(n: u64, omega: f64, length: f64) -> Result<f64> {
    MapConfig::default().gamma_shift(n, omega, length)
}

pub fn gamma_shift_integral(n: u64, omega: f64, length: f64) -> Result<f64> {
    MapConfig::default().gamma_shift_integral(n, omega, length)
}

fn w_unchecked(k: f64) -> f64 {
    let m = EllipticModulus::new(k).expect("k below 1/√2");
    (-2.0 * k).mul_add(k, 1.0).max(0.0).sqrt() * complete_k(&m)
}

/// `W(k) = √(1 - 2k²) K(k)` for `k ∈ (0, 1/√2)`.
pub fn w_of_k(k: f64) -> Result<f64> {
    if !(k > 0.0 && k < FRAC_1_SQRT_2) {
        return Err(domain(format!("W needs k ∈ (0, 1/√2), got {k}")));
    }
    Ok(w_unchecked(k))
}

pub fn w_inverse(t: f64) -> Result<f64> {
    MapConfig::default().w_inverse(t)
}

/// Frequency and modulus of a cnoidal ring wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodParams {
    omega: f64,
    k: f64,
}

impl PeriodParams {
    /// Requires `k ∈ (1/√2, 1)` for `ω < 0` and `k ∈ (0, 1/√2)` for `ω > 0`.
    pub fn new(omega: f64, k: f64) -> Result<Self> {
        let ok = if omega < 0.0 {
            k > FRAC_1_SQRT_2 && k < 1.0
        } else if omega > 0.0 {
            k > 0.0 && k < FRAC_1_SQRT_2
        } else {
            false
        };
        if !ok {
            return Err(domain(format!(
                "no cnoidal period for ω = {omega}, k = {k}"
            )));
        }
        Ok(Self { omega, k })
    }

    /// `T = 4 √((1 - 2k²)/ω) K(k)`; for `ω < 0` this is `S(k)/√|ω|`.
    pub fn period(&self) -> f64 {
        if self.omega < 0.0 {
            let m = ModulusFocusing::new(self.k).expect("validated");
            m.s() / self.omega.abs().sqrt()
        } else {
            4.0 * w_unchecked(self.k) / self.omega.sqrt()
        }
    }
}

pub fn period_t(params: &PeriodParams) -> f64 {
    params.period()
}

/// Leading behavior of `φ⁻¹(t) - 1/√2` as `t → 1`, given `c = 1 - t`.
pub fn phi_inverse_offset_asymptotic(c: f64) -> f64 {
    let k0 = k_of_inv_sqrt2();
    k0 * k0 * c * c / (8.0 * SQRT_2)
}

/// Leading behavior of `G` near `t = 1` in terms of `δ = φ⁻¹(t) - 1/√2`.
pub fn g_asymptotic_in_offset(delta: f64) -> f64 {
    4.0 * 8f64.powf(0.25) * k_of_inv_sqrt2() * delta.sqrt()
}

/// Leading behavior of `W⁻¹(t)` as `t → π/2`.
pub fn w_inverse_asymptotic(t: f64) -> f64 {
    (8.0 * (FRAC_PI_2 - t) / (3.0 * PI)).sqrt()
}
