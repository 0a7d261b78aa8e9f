//! Binary-expansion construction of a ratio whose dyadic subsequence
//! `ξ̃_{2^{n_j}}` converges to a prescribed `ℓ ≥ 0`.
//!
//! Layout of the expansion `α = 0.b₁b₂b₃…`: the first `n₁` digits are zero.
//! Block `j` starts after position `n_j`. Its first `n_j` digits hold
//! `2^{n_j-1} + ⌊u_j⌋`, the next `d_j` digits hold the fractional digits of
//! `u_j`, then `n_j + d_j` zero digits follow and the next block starts at
//! `n_{j+1} = 3n_j + 2d_j`. Here
//! `d_j = min(j - 1, number of fractional binary digits of ℓ)` and
//! `u_j = ⌈ℓ 2^{d_j}⌉ / 2^{d_j}`, so `ξ̃_{2^{n_j}} = u_j + tail_j` with
//! `0 < tail_j < 2^{-n_j-d_j}` and `ξ̃_{2^{n_j}} - ℓ` strictly decreasing.

use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::format::ratio_decimal;

/// Largest digit position the generator will materialize.
pub const MAX_POSITION: u64 = 1 << 28;

/// Digits read past the end of a block when evaluating `ξ̃_{2^{n_j}}`.
const GUARD_DIGITS: u64 = 64;

#[derive(Debug)]
struct Block {
    start: u64,
    digits: u32,
    /// `(2^{n_j-1} + ⌊u_j⌋)·2^{d_j} + frac digits`, `n_j + d_j` binary digits.
    payload: BigUint,
}

impl Block {
    /// Position of the last payload digit.
    fn end(&self) -> u64 {
        2 * self.start + self.digits as u64
    }

    /// Start of the following block, after `n_j + d_j` zeros.
    fn next_start(&self) -> u64 {
        3 * self.start + 2 * self.digits as u64
    }
}

/// Lazily materialized expansion; clones share the memoized blocks.
#[derive(Debug, Clone)]
pub struct ConstructedAlpha {
    ell: f64,
    /// `ℓ = mantissa · 2^-frac_bits` with odd mantissa (or zero).
    mantissa: BigUint,
    frac_bits: u32,
    first: u64,
    blocks: Arc<Mutex<Vec<Block>>>,
}

/// Split a nonnegative finite double into `(m, f)` with `x = m · 2^-f`,
/// `m` odd unless `x = 0`, `f ≥ 0`.
fn dyadic_parts(x: f64) -> (BigUint, u32) {
    if x == 0.0 {
        return (BigUint::zero(), 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut m, mut e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let tz = m.trailing_zeros() as i64;
    m >>= tz;
    e += tz;
    if e >= 0 {
        (BigUint::from(m) << e as usize, 0)
    } else {
        (BigUint::from(m), (-e) as u32)
    }
}

/// `x · 2^e` without intermediate overflow or premature underflow.
pub(crate) fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return 0.0;
        }
    }
    x * 2f64.powi(e as i32)
}

/// `y · 2^e` rounded to double.
pub(crate) fn biguint_ldexp(y: &BigUint, e: i64) -> f64 {
    let len = y.bits();
    if len <= 64 {
        return ldexp(y.to_f64().unwrap_or(0.0), e);
    }
    let drop = len - 64;
    let mut top = (y >> drop as usize).to_u64().expect("64 bits");
    // Sticky bit keeps round-to-nearest honest after truncation.
    if y.trailing_zeros().unwrap_or(0) < drop {
        top |= 1;
    }
    ldexp(top as f64, e + drop as i64)
}

impl ConstructedAlpha {
    pub fn new(ell: f64) -> Result<Self> {
        if !(ell >= 0.0 && ell.is_finite()) {
            return Err(domain(format!("target ℓ = {ell} must be finite and ≥ 0")));
        }
        let (mantissa, frac_bits) = dyadic_parts(ell);
        if ell > 1e300 {
            return Err(domain("target ℓ too large for the construction"));
        }
        let ceil = dyadic_parts(ell.ceil()).0;
        let first = 2.max(ceil.bits() + 1);
        Ok(Self {
            ell,
            mantissa,
            frac_bits,
            first,
            blocks: Arc::new(Mutex::new(Vec::new())),
        })
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// `n₁`, the length of the leading zero run.
    pub fn first_start(&self) -> u64 {
        self.first
    }

    fn make_block(&self, j: usize, start: u64) -> Block {
        let digits = ((j as u32).saturating_sub(1)).min(self.frac_bits);
        // ⌈ℓ 2^d⌉ = ⌈mantissa / 2^(f-d)⌉
        let shift = (self.frac_bits - digits) as usize;
        let mut u = &self.mantissa >> shift;
        if (&u << shift) != self.mantissa {
            u += 1u32;
        }
        let lead = BigUint::one() << (start - 1 + digits as u64) as usize;
        Block {
            start,
            digits,
            payload: lead + u,
        }
    }

    /// Ensure blocks exist up to index `j` (0-based) and run `f` on them.
    fn with_blocks<T>(
        &self,
        upto: impl Fn(&[Block]) -> bool,
        f: impl FnOnce(&[Block]) -> T,
    ) -> Result<T> {
        let mut blocks = self.blocks.lock().expect("block memo poisoned");
        while !upto(&blocks) {
            let start = blocks.last().map_or(self.first, Block::next_start);
            if start > MAX_POSITION {
                return Err(domain(format!(
                    "expansion digit {start} exceeds the materialization limit {MAX_POSITION}"
                )));
            }
            let j = blocks.len() + 1;
            blocks.push(self.make_block(j, start));
        }
        Ok(f(&blocks))
    }

    /// Block starts `n_1 < … < n_depth`.
    pub fn block_starts(&self, depth: usize) -> Result<Vec<u64>> {
        self.with_blocks(
            |b| b.len() >= depth,
            |b| b[..depth].iter().map(|x| x.start).collect(),
        )
    }

    /// Binary digit `b_i`, `i ≥ 1`.
    pub fn bit(&self, i: u64) -> Result<bool> {
        if i <= self.first {
            return Ok(false);
        }
        self.with_blocks(
            |b| b.last().is_some_and(|x| x.end() >= i),
            |b| {
                b.iter()
                    .find(|x| x.start < i && i <= x.end())
                    .is_some_and(|blk| blk.payload.bit(blk.end() - i))
            },
        )
    }

    /// Digits `b_from … b_{from+len-1}` as an integer, most significant first.
    pub fn digits(&self, from: u64, len: u64) -> Result<BigUint> {
        let last = from + len - 1;
        self.with_blocks(
            |b| b.last().is_some_and(|x| x.end() >= last),
            |b| {
                let mut out = BigUint::zero();
                let mut pos = from;
                while pos <= last {
                    let covering = b.iter().find(|x| x.start < pos && pos <= x.next_start());
                    let (value, width) = match covering {
                        None => (BigUint::zero(), self.first.min(last) - pos + 1),
                        Some(blk) if pos > blk.end() => {
                            (BigUint::zero(), blk.next_start().min(last) - pos + 1)
                        }
                        Some(blk) => {
                            let hi = blk.end().min(last);
                            // payload digits pos..=hi: drop the (end - hi) low ones
                            let shifted = &blk.payload >> (blk.end() - hi) as usize;
                            let width = hi - pos + 1;
                            let mask = (BigUint::one() << width as usize) - 1u32;
                            (shifted & mask, width)
                        }
                    };
                    out = (out << width as usize) + value;
                    pos += width;
                }
                out
            },
        )
    }

    /// The first `bits` digits in the high end of a `u128`.
    pub fn fixed_point(&self, bits: u32) -> Result<u128> {
        let v = self
            .digits(1, bits as u64)?
            .to_u128()
            .expect("≤ 128 digits");
        Ok(if bits == 128 { v } else { v << (128 - bits) })
    }

    pub fn value(&self) -> f64 {
        self.fixed_point(64)
            .map_or(f64::NAN, |v| (v >> 64) as f64 * 2f64.powi(-64))
    }

    /// `ξ̃_{2^{n_j}}` for block `j` (1-based), as `(Y, e)` with value `Y·2^e`.
    ///
    /// Truncated `GUARD_DIGITS` digits into the next block, so the value is
    /// exact to a relative `2^-63`.
    pub fn xi_tilde_block_exact(&self, j: usize) -> Result<(BigUint, i64)> {
        let starts = self.block_starts(j + 1)?;
        let (nj, next) = (starts[j - 1], starts[j]);
        let width = next - nj + GUARD_DIGITS;
        let x = self.digits(nj + 1, width)?;
        let half = BigUint::one() << (width - 1) as usize;
        let y = x - half;
        Ok((y, nj as i64 - width as i64))
    }

    pub fn xi_tilde_block(&self, j: usize) -> Result<f64> {
        let (y, e) = self.xi_tilde_block_exact(j)?;
        Ok(biguint_ldexp(&y, e))
    }

    /// `ξ̃_{2^{n_j}} - ℓ`, formed exactly and then rounded. Underflows to 0
    /// once the gap drops below the smallest subnormal.
    pub fn xi_tilde_gap(&self, j: usize) -> Result<f64> {
        let (y, e) = self.xi_tilde_block_exact(j)?;
        let f = -(self.frac_bits as i64);
        let base = e.min(f);
        let a = y << (e - base) as usize;
        let b = &self.mantissa << (f - base) as usize;
        Ok(if a >= b {
            biguint_ldexp(&(a - b), base)
        } else {
            -biguint_ldexp(&(b - a), base)
        })
    }

    /// `ξ̃_{2^{n_j}}` as a decimal with `decimals` digits after the point.
    pub fn xi_tilde_block_decimal(&self, j: usize, decimals: u32) -> Result<String> {
        let (y, e) = self.xi_tilde_block_exact(j)?;
        let (num, den) = if e >= 0 {
            (BigInt::from(y) << e as usize, BigInt::one())
        } else {
            (BigInt::from(y), BigInt::one() << (-e) as usize)
        };
        Ok(ratio_decimal(&num, &den, decimals))
    }
}
