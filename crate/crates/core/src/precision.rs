//! Decimal-digit precision bookkeeping for the big-float layers.

use rug::Float;

/// Extra decimal digits carried by intermediate computations.
pub const GUARD_DIGITS: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Mantissa bits needed to hold `digits` significant decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    ((digits as f64) * LOG2_10).ceil() as u32
}

/// Working bits for `digits` plus the standard guard.
pub fn guarded_bits(digits: u32) -> u32 {
    digits_to_bits(digits + GUARD_DIGITS)
}

/// `10^(-digits)` at the given precision.
pub fn ten_to_minus(digits: i32, bits: u32) -> Float {
    use rug::ops::Pow;
    Float::with_val(bits, Float::with_val(bits, 10).pow(-digits))
}

/// Scientific rendering with `digits` significant decimal digits.
pub fn sci(x: &Float, digits: u32) -> String {
    format!("{:.*e}", digits.max(1) as usize, x)
}
