use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::maps::{householder_map, schroeder_first_map, RationalMap};

/// Which iteration is being run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Householder of order `k ≥ 1`; the angle is multiplied by `k + 1`.
    Householder(u32),
    /// Two-point secant; angles add like Fibonacci numbers.
    Secant,
    /// Schröder's third-order iteration of the first kind.
    Schroeder3,
}

impl Method {
    pub const NEWTON: Method = Method::Householder(1);
    pub const HALLEY: Method = Method::Householder(2);

    /// Angle multiplier `k + 1` for Householder methods.
    pub fn multiplier(&self) -> Option<u32> {
        match self {
            Method::Householder(k) => Some(k + 1),
            _ => None,
        }
    }

    /// The one-step map, or `None` for the two-point secant.
    pub fn map(&self) -> Option<RationalMap> {
        match self {
            Method::Householder(k) => Some(householder_map(*k)),
            Method::Schroeder3 => Some(schroeder_first_map(3).expect("order 3 is supported")),
            Method::Secant => None,
        }
    }

    pub fn is_secant(&self) -> bool {
        matches!(self, Method::Secant)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "newton" => return Ok(Method::NEWTON),
            "halley" => return Ok(Method::HALLEY),
            "secant" => return Ok(Method::Secant),
            "schroeder3" | "schroder3" => return Ok(Method::Schroeder3),
            _ => {}
        }
        let k = s
            .strip_prefix("householder:")
            .and_then(|k| k.parse::<u32>().ok())
            .filter(|k| *k >= 1)
            .ok_or_else(|| Error::MethodParse(s.clone()))?;
        Ok(Method::Householder(k))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Householder(1) => "newton".to_string(),
            Method::Householder(2) => "halley".to_string(),
            Method::Householder(k) => format!("householder:{k}"),
            Method::Secant => "secant".to_string(),
            Method::Schroeder3 => "schroeder3".to_string(),
        };
        f.pad(&name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for text in ["newton", "halley", "householder:4", "secant", "schroeder3"] {
            let m: Method = text.parse().unwrap();
            assert_eq!(m.to_string(), text);
        }
        assert_eq!("householder:1".parse::<Method>().unwrap(), Method::NEWTON);
        assert!("householder:0".parse::<Method>().is_err());
        assert!("bisection".parse::<Method>().is_err());
    }

    #[test]
    fn multipliers() {
        assert_eq!(Method::NEWTON.multiplier(), Some(2));
        assert_eq!(Method::Householder(5).multiplier(), Some(6));
        assert_eq!(Method::Secant.multiplier(), None);
        assert!(Method::Secant.map().is_none());
    }
}
