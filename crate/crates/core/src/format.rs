//! Number formatting shared by the table writers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// 17 significant digits in scientific notation; round-trips any `f64`.
pub fn sci17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `num / den` as a fixed-point decimal with `decimals` digits after the
/// point, rounded half away from zero. `den` must be positive.
pub fn ratio_decimal(num: &BigInt, den: &BigInt, decimals: u32) -> String {
    debug_assert!(den.is_positive());
    let scale = BigInt::from(10u32).pow(decimals);
    let scaled = num.abs() * &scale * 2u32 + den;
    let rounded = scaled.div_floor(&(den * 2u32));
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let negative = num.is_negative() && !rounded.is_zero();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if decimals > 0 {
        let digits = frac_part.to_string();
        out.push('.');
        out.extend(std::iter::repeat_n('0', decimals as usize - digits.len()));
        out.push_str(&digits);
    }
    out
}
