//! Quadratic irrationals `(a + b√m)/c` with exact fixed-point truncation.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    a: i64,
    b: i64,
    c: i64,
    m: u64,
}

/// Ordering of `b√m` against the integer `r`, for nonsquare `m` and `b ≠ 0`.
fn cmp_b_sqrt_m(b: &BigInt, m: &BigInt, r: &BigInt) -> Ordering {
    let sq = b * b * m;
    let r2 = r * r;
    match (b.is_positive(), r.is_negative()) {
        (true, true) => Ordering::Greater,
        (false, false) => Ordering::Less,
        (true, false) => sq.cmp(&r2),
        (false, true) => r2.cmp(&sq),
    }
}

fn is_square(m: u64) -> bool {
    let r = m.isqrt();
    r * r == m
}

impl QuadraticIrrational {
    /// `(a + b√m)/c`; requires `m` not a perfect square, `b, c ≠ 0` and a
    /// value in `(0, 1)`.
    pub fn new(a: i64, b: i64, c: i64, m: u64) -> Result<Self> {
        if b == 0 || c == 0 || is_square(m) {
            return Err(domain(format!(
                "quad:{a},{b},{c},{m} is not a quadratic irrational (need b, c ≠ 0 and m nonsquare)"
            )));
        }
        let (a, b, c) = if c < 0 { (-a, -b, -c) } else { (a, b, c) };
        let (ba, bb, bc, bm) = (
            BigInt::from(a),
            BigInt::from(b),
            BigInt::from(c),
            BigInt::from(m),
        );
        let positive = cmp_b_sqrt_m(&bb, &bm, &-&ba) == Ordering::Greater;
        let below_one = cmp_b_sqrt_m(&bb, &bm, &(bc - ba)) == Ordering::Less;
        if !(positive && below_one) {
            return Err(domain(format!("quad:{a},{b},{c},{m} lies outside (0, 1)")));
        }
        Ok(Self { a, b, c, m })
    }

    pub fn params(&self) -> (i64, i64, i64, u64) {
        (self.a, self.b, self.c, self.m)
    }

    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.m as f64).sqrt()) / self.c as f64
    }

    /// `floor(α · 2^bits)`, exact.
    pub fn floor_scaled(&self, bits: u32) -> BigUint {
        let b = BigInt::from(self.b);
        let radicand = (&b * &b * BigInt::from(self.m)) << (2 * bits as usize);
        let root = BigInt::from_biguint(Sign::Plus, radicand.magnitude().sqrt());
        let base = BigInt::from(self.a) << bits as usize;
        // b√m·2^bits lies strictly between root and root + 1.
        let numer = if self.b > 0 {
            base + root
        } else {
            base - root - 1
        };
        let q = numer.div_floor(&BigInt::from(self.c));
        q.to_biguint().unwrap_or_else(BigUint::zero)
    }

    /// Top `bits` binary digits of `α` placed in the high end of a `u128`.
    pub fn fixed_point(&self, bits: u32) -> u128 {
        let v = self
            .floor_scaled(bits)
            .to_u128()
            .expect("α < 1 fits the fixed-point word");
        if bits == 128 {
            v
        } else {
            v << (128 - bits)
        }
    }
}

impl std::fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "quad:{},{},{},{}", self.a, self.b, self.c, self.m)
    }
}
