//! Frequencies and classification of the standing waves.
//!
//! Isolated solutions have `L√|ω_n^±|/n = G(ξ_n)` (plus family) or
//! `G(1 - ξ_n)` (minus family) and exist exactly when neither `nα` nor
//! `nα + 1/2` is an integer. For rational `α = p/q` the excluded indices
//! carry one-parameter branches instead: plus-family branches at `n ∈ ℕq`,
//! minus-family branches at `n ∈ (2ℕ - 1)q/2` when `q` is even.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rayon::prelude::*;

use crate::alpha::{AlphaRatio, DichotomySequences};
use crate::error::{domain, Error, Result};
use crate::maps::{MapConfig, ModulusFocusing};

/// Ring edges of lengths `L1` and `L2`, total `L = L1 + L2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphGeometry {
    l1: f64,
    l2: f64,
}

impl GraphGeometry {
    pub fn new(l1: f64, l2: f64) -> Result<Self> {
        if !(l1 > 0.0 && l2 > 0.0 && l1.is_finite() && l2.is_finite()) {
            return Err(domain(format!(
                "edge lengths must be positive, got L1 = {l1}, L2 = {l2}"
            )));
        }
        Ok(Self { l1, l2 })
    }

    /// Geometry with total length `length` and `L1 = α L`.
    pub fn from_ratio(alpha: &AlphaRatio, length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(domain(format!(
                "total length must be positive, got {length}"
            )));
        }
        let a = alpha.value();
        Self::new(a * length, (1.0 - a) * length)
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn length(&self) -> f64 {
        self.l1 + self.l2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `u(0) = u(L1) = √(2|ω|)`.
    Plus,
    /// `u(0) = -u(L1) = √(2|ω|)`.
    Minus,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Plus => "plus",
            Family::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Isolated,
    ContinuousBranch,
}

/// Sign choice `x ± γ` inside a branch wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchSign {
    Plus,
    Minus,
}

/// One ring solution `u(x) = A cn(p (x + shift); k)` with
/// `A = √(2|ω|k²/(2k²-1))`, `p = √(|ω|/(2k²-1))` and period `L/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandingWave {
    pub family: Family,
    pub n: u64,
    pub omega: f64,
    pub modulus: ModulusFocusing,
    /// Translation `a` in `cn(p (x + a))`.
    pub shift: f64,
    pub branch: Branch,
}

impl StandingWave {
    pub fn k(&self) -> f64 {
        self.modulus.k()
    }

    /// Peak value `√(2|ω|k²/(2k²-1))`.
    pub fn amplitude(&self) -> f64 {
        let k = self.modulus.k();
        (2.0 * self.omega.abs() * k * k / self.modulus.excess()).sqrt()
    }

    /// Argument scaling `√(|ω|/(2k²-1))`.
    pub fn wavenumber(&self) -> f64 {
        (self.omega.abs() / self.modulus.excess()).sqrt()
    }

    /// Vertex value `√(2|ω|)`.
    pub fn vertex_value(&self) -> f64 {
        (2.0 * self.omega.abs()).sqrt()
    }
}

/// Index of a one-parameter family of branch solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchIndex {
    pub family: Family,
    pub n: u64,
}

impl BranchIndex {
    /// The branch wave at frequency `omega < 0`.
    pub fn at(&self, geom: &GraphGeometry, omega: f64, sign: BranchSign) -> Result<StandingWave> {
        branch_wave(geom, self.family, self.n, omega, sign)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solution {
    Isolated(StandingWave),
    Branch(BranchIndex),
}

impl Solution {
    pub fn n(&self) -> u64 {
        match self {
            Solution::Isolated(w) => w.n,
            Solution::Branch(b) => b.n,
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Solution::Isolated(w) => w.family,
            Solution::Branch(b) => b.family,
        }
    }
}

fn g_at(cfg: &MapConfig, t: f64, one_minus_t: f64) -> Result<ModulusFocusing> {
    if t <= 0.5 {
        cfg.phi_inverse(t)
    } else {
        cfg.phi_inverse_complement(one_minus_t)
    }
}

fn isolated(
    geom: &GraphGeometry,
    d: &DichotomySequences,
    family: Family,
) -> Result<Option<StandingWave>> {
    if !d.is_regular() {
        return Ok(None);
    }
    let cfg = MapConfig::default();
    let length = geom.length();
    let nf = d.n as f64;
    let (modulus, shift) = match family {
        Family::Plus => (
            g_at(&cfg, d.xi, d.one_minus_xi)?,
            -length / (2.0 * nf) * d.r_n,
        ),
        Family::Minus => {
            let s = length / (2.0 * nf) * (d.r_n.abs() - 0.5) * d.r_n.signum();
            (g_at(&cfg, d.one_minus_xi, d.xi)?, -s)
        }
    };
    let root = nf * modulus.s() / length;
    Ok(Some(StandingWave {
        family,
        n: d.n,
        omega: -root * root,
        modulus,
        shift,
        branch: Branch::Isolated,
    }))
}

fn check_geometry(geom: &GraphGeometry, alpha: &AlphaRatio) -> Result<()> {
    let ratio = geom.l1() / geom.length();
    if (ratio - alpha.value()).abs() > 1e-12 {
        return Err(Error::Inconsistent(format!(
            "geometry ratio {ratio} does not match α = {alpha}"
        )));
    }
    Ok(())
}

/// Isolated plus-family solution at index `n`, if any.
pub fn omega_plus(
    geom: &GraphGeometry,
    alpha: &AlphaRatio,
    n: u64,
) -> Result<Option<StandingWave>> {
    check_geometry(geom, alpha)?;
    isolated(geom, &alpha.dichotomy_seq(n)?, Family::Plus)
}

/// Isolated minus-family solution at index `n`, if any.
pub fn omega_minus(
    geom: &GraphGeometry,
    alpha: &AlphaRatio,
    n: u64,
) -> Result<Option<StandingWave>> {
    check_geometry(geom, alpha)?;
    isolated(geom, &alpha.dichotomy_seq(n)?, Family::Minus)
}

/// All solutions with `n ≤ n_max`, ordered by `n`, plus before minus.
pub fn enumerate_solutions(
    geom: &GraphGeometry,
    alpha: &AlphaRatio,
    n_max: u64,
) -> Result<Vec<Solution>> {
    check_geometry(geom, alpha)?;
    let per_n: Vec<Vec<Solution>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let d = alpha.dichotomy_seq(n)?;
            let mut out = Vec::with_capacity(2);
            if d.is_regular() {
                for family in [Family::Plus, Family::Minus] {
                    if let Some(w) = isolated(geom, &d, family)? {
                        out.push(Solution::Isolated(w));
                    }
                }
            } else if d.integer_multiple {
                out.push(Solution::Branch(BranchIndex {
                    family: Family::Plus,
                    n,
                }));
            } else {
                out.push(Solution::Branch(BranchIndex {
                    family: Family::Minus,
                    n,
                }));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

/// Whether `n` indexes a branch of `family` for rational `α = p/q`.
pub fn is_branch_index(alpha: &AlphaRatio, family: Family, n: u64) -> bool {
    let Some((_, q)) = alpha.as_rational() else {
        return false;
    };
    match family {
        Family::Plus => n.is_multiple_of(q),
        Family::Minus => q % 2 == 0 && n.is_multiple_of(q / 2) && (n / (q / 2)) % 2 == 1,
    }
}

fn branch_wave(
    geom: &GraphGeometry,
    family: Family,
    n: u64,
    omega: f64,
    sign: BranchSign,
) -> Result<StandingWave> {
    let cfg = MapConfig::default();
    let modulus = cfg.modulus_for(n, omega, geom.length())?;
    let gamma = geom.length() / (4.0 * n as f64) * modulus.phi();
    let shift = match sign {
        BranchSign::Plus => gamma,
        BranchSign::Minus => -gamma,
    };
    Ok(StandingWave {
        family,
        n,
        omega,
        modulus,
        shift,
        branch: Branch::ContinuousBranch,
    })
}

/// Branch wave `ũ_{n,ω}^±` with shift `±γ_{n,ω}`.
pub fn branch_solution(
    geom: &GraphGeometry,
    alpha: &AlphaRatio,
    family: Family,
    n: u64,
    omega: f64,
    sign: BranchSign,
) -> Result<StandingWave> {
    check_geometry(geom, alpha)?;
    if !is_branch_index(alpha, family, n) {
        return Err(domain(format!(
            "n = {n} is not a {family}-family branch index for α = {alpha}"
        )));
    }
    branch_wave(geom, family, n, omega, sign)
}

/// Eigenvalue of the linear operator on the graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearEigenvalue {
    pub n: u64,
    pub lambda: f64,
    pub q0: u64,
}

impl LinearEigenvalue {
    /// Eigenfunction on the ring, `sin(2π n q0 x / L)`; zero on the half-lines.
    pub fn eigenfunction(&self, x: f64, length: f64) -> f64 {
        (2.0 * PI * (self.n * self.q0) as f64 * x / length).sin()
    }
}

/// `λ_n = n² 4π² q0² / L²` for rational `α`; empty for irrational `α`.
pub fn linear_eigenvalues(
    geom: &GraphGeometry,
    alpha: &AlphaRatio,
    n_max: u64,
) -> Vec<LinearEigenvalue> {
    let Some((_, q0)) = alpha.half_integer_reduction() else {
        return Vec::new();
    };
    let length = geom.length();
    (1..=n_max)
        .map(|n| {
            let w = 2.0 * PI * (n * q0) as f64 / length;
            LinearEigenvalue {
                n,
                lambda: w * w,
                q0,
            }
        })
        .collect()
}

/// Small-amplitude cnoidal solution just below a linear eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bifurcation {
    pub lambda: f64,
    pub omega: f64,
    /// `√(2k²ω/(1 - 2k²))`.
    pub amplitude: f64,
    /// `√(4ε/3)`.
    pub predicted: f64,
    /// `k_n = W⁻¹((π/2)√(ω/λ_n))`.
    pub k_n: f64,
}

/// Amplitude of the solution at `ω = λ_n - ε` against its leading-order law.
pub fn bifurcation_check(
    geom: &GraphGeometry,
    alpha: &AlphaRatio,
    n: u64,
    eps: f64,
) -> Result<Bifurcation> {
    let eig = linear_eigenvalues(geom, alpha, n)
        .pop()
        .ok_or_else(|| domain(format!("α = {alpha} has no linear eigenvalues")))?;
    let lambda = eig.lambda;
    if !(eps > 0.0 && eps < lambda) {
        return Err(domain(format!("ε = {eps} must lie in (0, λ_n = {lambda})")));
    }
    let omega = lambda - eps;
    let k = MapConfig::default().w_inverse(FRAC_PI_2 * (omega / lambda).sqrt())?;
    let amplitude = (2.0 * k * k * omega / (-2.0 * k).mul_add(k, 1.0)).sqrt();
    Ok(Bifurcation {
        lambda,
        omega,
        amplitude,
        predicted: (4.0 * eps / 3.0).sqrt(),
        k_n: k,
    })
}
