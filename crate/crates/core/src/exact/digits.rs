use std::collections::HashMap;
use std::fmt;

use rug::{Integer, Rational};

use super::angle::RationalAngle;
use crate::error::{Error, Result};

/// Radix expansion `0.prefix(repetend)` of a fraction in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    pub base: u32,
    pub prefix: Vec<u32>,
    /// Empty for terminating expansions.
    pub repetend: Vec<u32>,
}

impl DigitExpansion {
    pub fn is_terminating(&self) -> bool {
        self.repetend.is_empty()
    }

    /// Rebuilds the exact fraction: `P/bᵏ + R/(bᵏ(bʳ − 1))`.
    pub fn to_rational(&self) -> Rational {
        let base = Integer::from(self.base);
        let value_of = |ds: &[u32]| ds.iter().fold(Integer::new(), |acc, &d| acc * &base + d);
        let scale = Integer::from(Integer::u_pow_u(self.base, self.prefix.len() as u32));
        let mut q = Rational::from((value_of(&self.prefix), scale.clone()));
        if !self.repetend.is_empty() {
            let cycle =
                Integer::from(Integer::u_pow_u(self.base, self.repetend.len() as u32)) - 1u32;
            q += Rational::from((value_of(&self.repetend), scale * cycle));
        }
        q
    }
}

fn digit_char(d: u32) -> char {
    std::char::from_digit(d, 36).unwrap_or('?')
}

impl fmt::Display for DigitExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() && self.repetend.is_empty() {
            return write!(f, "0");
        }
        write!(f, "0.")?;
        for &d in &self.prefix {
            write!(f, "{}", digit_char(d))?;
        }
        if !self.repetend.is_empty() {
            write!(f, "(")?;
            for &d in &self.repetend {
                write!(f, "{}", digit_char(d))?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Expands `t` in `base` by long division, detecting the remainder cycle.
///
/// The remainder sequence `r/den` is exactly the orbit of `t` under
/// `t → base·t mod 1`, so the prefix is its preperiod and the repetend its
/// prime period. Fails if more than `max_len` digits would be needed.
pub fn digits(t: &RationalAngle, base: u32, max_len: usize) -> Result<DigitExpansion> {
    assert!((2..=36).contains(&base), "base must be in 2..=36");
    let den = t.den();
    let mut remainder = t.num().clone();
    let mut seen: HashMap<Integer, usize> = HashMap::new();
    let mut out = Vec::new();
    while remainder != 0 {
        if let Some(&start) = seen.get(&remainder) {
            let repetend = out.split_off(start);
            return Ok(DigitExpansion {
                base,
                prefix: out,
                repetend,
            });
        }
        if out.len() >= max_len {
            return Err(Error::RepetendNotFound { max_len });
        }
        seen.insert(remainder.clone(), out.len());
        remainder *= base;
        let (digit, rem) = remainder.div_rem_euc(den.clone());
        out.push(digit.to_u32().expect("digit below base"));
        remainder = rem;
    }
    Ok(DigitExpansion {
        base,
        prefix: out,
        repetend: Vec::new(),
    })
}
