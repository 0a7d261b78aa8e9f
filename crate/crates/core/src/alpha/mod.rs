//! Certified arithmetic on the length ratio `α = L1/L ∈ (0, 1)`.
//!
//! The two ring edges play symmetric roles, so ratios above 1/2 are
//! accepted; `α` and `1 - α` give the same `ξ_n` and opposite `ξ̃_n`.
//!
//! Rational ratios are handled exactly with integer residues. Quadratic
//! irrationals and constructed expansions are truncated to a `P`-bit fixed
//! point value `A = ⌊α 2^P⌋ 2^{128-P}` held in a `u128`. Then
//! `n A mod 2^128` is a lower bound for `{nα} 2^128`, off by less than
//! `n 2^{128-P}`, and `ξ̃_n` is known to within `n² 2^{-P}`.

pub mod catalog;
pub mod construct;
pub mod quadratic;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

pub use catalog::Catalog;
pub use construct::ConstructedAlpha;
pub use quadratic::QuadraticIrrational;

use crate::error::{domain, Error, Result};
use crate::format::ratio_decimal;

pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const MIN_PRECISION_BITS: u32 = 24;
pub const DEFAULT_N_MAX: u64 = 10_000_000;
/// Largest accepted certified radius on `ξ̃_n`.
pub const MAX_XI_RADIUS: f64 = 1e-10;

const HALF: u128 = 1 << 127;
const TWO_POW_M128: f64 = 1.0 / 340_282_366_920_938_463_463_374_607_431_768_211_456.0;
const TWO_POW_M127: f64 = 2.0 * TWO_POW_M128;

#[derive(Debug, Clone)]
pub enum AlphaKind {
    Rational { p: u64, q: u64 },
    QuadraticIrrational(QuadraticIrrational),
    Constructed(ConstructedAlpha),
}

/// The ratio `α`, with its fixed-point image for the irrational kinds.
#[derive(Debug, Clone)]
pub struct AlphaRatio {
    kind: AlphaKind,
    bits: u32,
    fixed: u128,
    n_max: u64,
}

/// `{nα}` with a one-sided certified error: the true value lies in
/// `[value, value + error_radius]` modulo 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracPart {
    pub value: f64,
    pub error_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Raw {
    /// `{nα} = s/q`.
    Exact { s: u64, q: u64 },
    /// `{nα} - 1/2 ≈ d / 2^128`.
    Fixed { d: i128 },
}

/// The sequences `r_n`, `ξ_n = 2|r_n|`, `ξ̃_n = n({nα} - 1/2)` at one `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DichotomySequences {
    pub n: u64,
    /// `{nα}`.
    pub frac: f64,
    /// `r_n = nα - [nα + 1/2] ∈ [-1/2, 1/2)`.
    pub r_n: f64,
    pub xi: f64,
    /// `1 - ξ_n = 2|ξ̃_n|/n`, computed without cancellation.
    pub one_minus_xi: f64,
    pub xi_tilde: f64,
    /// Certified radius on `ξ̃_n` (zero for rational `α`).
    pub error_radius: f64,
    /// `nα ∈ ℕ`, i.e. `ξ_n = 0`.
    pub integer_multiple: bool,
    /// `nα + 1/2 ∈ ℕ`, i.e. `ξ_n = 1`.
    pub half_integer: bool,
    raw: Raw,
}

impl DichotomySequences {
    /// Neither degenerate case holds, so both frequency equations are solvable.
    pub fn is_regular(&self) -> bool {
        !(self.integer_multiple || self.half_integer)
    }

    /// `ξ̃_n` as a fixed-point decimal with `decimals` digits after the point.
    pub fn xi_tilde_decimal(&self, decimals: u32) -> String {
        let n = BigInt::from(self.n);
        match self.raw {
            Raw::Exact { s, q } => {
                let num = n * (2 * BigInt::from(s) - BigInt::from(q));
                ratio_decimal(&num, &(2 * BigInt::from(q)), decimals)
            }
            Raw::Fixed { d } => {
                ratio_decimal(&(n * BigInt::from(d)), &(BigInt::from(1) << 128), decimals)
            }
        }
    }

    fn exact(n: u64, s: u64, q: u64) -> Self {
        let (nf, qf) = (n as f64, q as f64);
        let twice = 2 * s as i128 - q as i128;
        let r_n = if twice < 0 {
            s as f64 / qf
        } else {
            (s as i128 - q as i128) as f64 / qf
        };
        Self {
            n,
            frac: s as f64 / qf,
            r_n,
            xi: 2.0 * r_n.abs(),
            one_minus_xi: twice.unsigned_abs() as f64 / qf,
            xi_tilde: nf * twice as f64 / (2.0 * qf),
            error_radius: 0.0,
            integer_multiple: s == 0,
            half_integer: twice == 0,
            raw: Raw::Exact { s, q },
        }
    }

    fn fixed(n: u64, f: u128, bits: u32) -> Result<Self> {
        let width = (n as u128) << (128 - bits);
        let (top, wrapped) = f.overflowing_add(width);
        if wrapped || (f < HALF && top >= HALF) {
            return Err(Error::PrecisionExhausted {
                n,
                reason: format!("{bits}-bit value of α cannot separate {{nα}} from 0 or 1/2"),
            });
        }
        let error_radius = n as f64 * width as f64 * TWO_POW_M128;
        if error_radius >= MAX_XI_RADIUS {
            return Err(Error::PrecisionExhausted {
                n,
                reason: format!("radius {error_radius:.1e} on ξ̃_n at {bits} bits"),
            });
        }
        let d = f.wrapping_sub(HALF) as i128;
        let r_n = if f < HALF {
            f as f64 * TWO_POW_M128
        } else {
            -(f.wrapping_neg() as f64) * TWO_POW_M128
        };
        Ok(Self {
            n,
            frac: f as f64 * TWO_POW_M128,
            r_n,
            xi: f.min(f.wrapping_neg()) as f64 * TWO_POW_M127,
            one_minus_xi: d.unsigned_abs() as f64 * TWO_POW_M127,
            xi_tilde: n as f64 * d as f64 * TWO_POW_M128,
            error_radius,
            integer_multiple: false,
            half_integer: false,
            raw: Raw::Fixed { d },
        })
    }
}

/// `(p0, q0)` coprime with `p/q = p0/(2 q0)`.
pub fn reduce_half_integer(p: u64, q: u64) -> (u64, u64) {
    if q % 2 == 1 {
        (2 * p, q)
    } else {
        (p, q / 2)
    }
}

fn check_bits(bits: u32) -> Result<()> {
    if !(MIN_PRECISION_BITS..=128).contains(&bits) {
        return Err(domain(format!(
            "precision {bits} bits outside [{MIN_PRECISION_BITS}, 128]"
        )));
    }
    Ok(())
}

impl AlphaRatio {
    fn build(kind: AlphaKind, bits: u32) -> Result<Self> {
        check_bits(bits)?;
        let fixed = match &kind {
            AlphaKind::Rational { .. } => 0,
            AlphaKind::QuadraticIrrational(qi) => qi.fixed_point(bits),
            AlphaKind::Constructed(c) => c.fixed_point(bits)?,
        };
        Ok(Self {
            kind,
            bits,
            fixed,
            n_max: DEFAULT_N_MAX,
        })
    }

    /// `p/q`, reduced; must lie in `(0, 1)`.
    pub fn rational(p: u64, q: u64) -> Result<Self> {
        if p == 0 || p >= q {
            return Err(domain(format!("{p}/{q} lies outside (0, 1)")));
        }
        let g = p.gcd(&q);
        Self::build(
            AlphaKind::Rational { p: p / g, q: q / g },
            DEFAULT_PRECISION_BITS,
        )
    }

    /// `(a + b√m)/c`.
    pub fn quadratic(a: i64, b: i64, c: i64, m: u64) -> Result<Self> {
        Self::build(
            AlphaKind::QuadraticIrrational(QuadraticIrrational::new(a, b, c, m)?),
            DEFAULT_PRECISION_BITS,
        )
    }

    pub fn constructed(c: ConstructedAlpha) -> Result<Self> {
        Self::build(AlphaKind::Constructed(c), DEFAULT_PRECISION_BITS)
    }

    /// A decimal literal such as `0.381966`, taken as the exact rational it denotes.
    pub fn decimal(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("'{text}' is not a decimal in (0, 1)"));
        let digits = text
            .trim()
            .strip_prefix("0.")
            .or_else(|| text.trim().strip_prefix('.'))
            .ok_or_else(bad)?;
        if digits.is_empty() || digits.len() > 19 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let p: u64 = digits.parse().map_err(|_| bad())?;
        let q = 10u64.pow(digits.len() as u32);
        Self::rational(p, q)
    }

    /// Same ratio at a different fixed-point precision.
    pub fn with_precision(&self, bits: u32) -> Result<Self> {
        let mut out = Self::build(self.kind.clone(), bits)?;
        out.n_max = self.n_max;
        Ok(out)
    }

    /// Raise or lower the largest admissible index.
    pub fn with_n_max(mut self, n_max: u64) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn kind(&self) -> &AlphaKind {
        &self.kind
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// `(p, q)` in lowest terms when `α` is rational.
    pub fn as_rational(&self) -> Option<(u64, u64)> {
        match self.kind {
            AlphaKind::Rational { p, q } => Some((p, q)),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// `(p0, q0)` with `α = p0/(2 q0)`, for rational `α`.
    pub fn half_integer_reduction(&self) -> Option<(u64, u64)> {
        self.as_rational().map(|(p, q)| reduce_half_integer(p, q))
    }

    pub fn value(&self) -> f64 {
        match &self.kind {
            AlphaKind::Rational { p, q } => *p as f64 / *q as f64,
            AlphaKind::QuadraticIrrational(qi) => qi.value(),
            AlphaKind::Constructed(c) => c.value(),
        }
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.n_max {
            return Err(domain(format!("index n = {n} outside [1, {}]", self.n_max)));
        }
        Ok(())
    }

    /// `{nα}` with its certified one-sided error radius.
    pub fn frac_part(&self, n: u64) -> Result<FracPart> {
        self.check_index(n)?;
        Ok(match self.kind {
            AlphaKind::Rational { p, q } => {
                let s = (n as u128 * p as u128 % q as u128) as u64;
                FracPart {
                    value: s as f64 / q as f64,
                    error_radius: 0.0,
                }
            }
            _ => FracPart {
                value: self.fixed.wrapping_mul(n as u128) as f64 * TWO_POW_M128,
                error_radius: ((n as u128) << (128 - self.bits)) as f64 * TWO_POW_M128,
            },
        })
    }

    pub fn dichotomy_seq(&self, n: u64) -> Result<DichotomySequences> {
        self.check_index(n)?;
        self.cursor(n).sequences()
    }

    /// Sequential access to `ξ̃_n` starting at `start`, without the index cap.
    pub fn cursor(&self, start: u64) -> XiCursor<'_> {
        XiCursor::new(self, start)
    }

    /// Running minimum of `n ‖nα - β‖` over `1 ≤ n ≤ limit`.
    pub fn estimate_approx_constant(&self, beta: f64, limit: u64) -> Result<f64> {
        if limit == 0 || !beta.is_finite() {
            return Err(domain("approximation constant needs N ≥ 1 and finite β"));
        }
        self.check_index(limit)?;
        let b = beta.rem_euclid(1.0);
        let target = (b * 2f64.powi(64)) as u128 * (1u128 << 64);
        let mut best = f64::INFINITY;
        let mut cur = self.cursor(1);
        for _ in 0..limit {
            let dist = match cur.state {
                CursorState::Exact { s, q, .. } => {
                    let d = (s as f64 / q as f64 - b).abs();
                    d.min(1.0 - d)
                }
                CursorState::Fixed { f, .. } => {
                    let d = f.wrapping_sub(target);
                    d.min(d.wrapping_neg()) as f64 * TWO_POW_M128
                }
            };
            best = best.min(cur.n as f64 * dist);
            cur.advance();
        }
        Ok(best)
    }

    /// Short machine-readable description (`p/q`, `quad:a,b,c,m`, `constructed:ℓ`).
    pub fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for AlphaRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AlphaKind::Rational { p, q } => write!(f, "{p}/{q}"),
            AlphaKind::QuadraticIrrational(qi) => write!(f, "{qi}"),
            AlphaKind::Constructed(c) => write!(f, "constructed:{}", c.ell()),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum CursorState {
    Exact { s: u64, p: u64, q: u64 },
    Fixed { f: u128, a: u128, bits: u32 },
}

/// Walks `n, n+1, …` updating `{nα}` incrementally.
#[derive(Debug, Clone)]
pub struct XiCursor<'a> {
    _alpha: &'a AlphaRatio,
    n: u64,
    state: CursorState,
}

impl<'a> XiCursor<'a> {
    fn new(alpha: &'a AlphaRatio, start: u64) -> Self {
        let state = match alpha.kind {
            AlphaKind::Rational { p, q } => CursorState::Exact {
                s: (start as u128 * p as u128 % q as u128) as u64,
                p,
                q,
            },
            _ => CursorState::Fixed {
                f: alpha.fixed.wrapping_mul(start as u128),
                a: alpha.fixed,
                bits: alpha.bits,
            },
        };
        Self {
            _alpha: alpha,
            n: start,
            state,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn advance(&mut self) {
        self.n += 1;
        match &mut self.state {
            CursorState::Exact { s, p, q } => {
                *s += *p;
                if *s >= *q {
                    *s -= *q;
                }
            }
            CursorState::Fixed { f, a, .. } => *f = f.wrapping_add(*a),
        }
    }

    /// `ξ̃_n` in double precision, uncertified.
    pub fn xi_tilde(&self) -> f64 {
        match self.state {
            CursorState::Exact { s, q, .. } => {
                self.n as f64 * (2 * s as i128 - q as i128) as f64 / (2.0 * q as f64)
            }
            CursorState::Fixed { f, .. } => {
                self.n as f64 * f.wrapping_sub(HALF) as i128 as f64 * TWO_POW_M128
            }
        }
    }

    /// `ξ_n = 2|r_n|` in double precision, uncertified.
    pub fn xi(&self) -> f64 {
        match self.state {
            CursorState::Exact { s, q, .. } => 2.0 * s.min(q - s) as f64 / q as f64,
            CursorState::Fixed { f, .. } => f.min(f.wrapping_neg()) as f64 * TWO_POW_M127,
        }
    }

    /// Certified radius on [`Self::xi_tilde`].
    pub fn xi_tilde_radius(&self) -> f64 {
        match self.state {
            CursorState::Exact { .. } => 0.0,
            CursorState::Fixed { bits, .. } => {
                let n = self.n as f64;
                n * n * 2f64.powi(-(bits as i32))
            }
        }
    }

    pub fn sequences(&self) -> Result<DichotomySequences> {
        match self.state {
            CursorState::Exact { s, q, .. } => Ok(DichotomySequences::exact(self.n, s, q)),
            CursorState::Fixed { f, bits, .. } => DichotomySequences::fixed(self.n, f, bits),
        }
    }
}

/// Ratio from the construction targeting `ξ̃_{2^{n_j}} → ℓ`, with the block
/// starts `n_1 < … < n_depth`.
pub fn construct_alpha(ell: f64, depth: usize) -> Result<(AlphaRatio, Vec<u64>)> {
    if depth == 0 || depth > 64 {
        return Err(domain(format!("depth {depth} outside [1, 64]")));
    }
    let c = ConstructedAlpha::new(ell)?;
    let starts = c.block_starts(depth)?;
    Ok((AlphaRatio::constructed(c)?, starts))
}
