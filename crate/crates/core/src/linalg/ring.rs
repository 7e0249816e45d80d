use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base ring of a computation.
///
/// Integers and rationals are exact. `PrimeField(p)` is `Z/p` with `p` prime;
/// `p = 2` is accepted here even though some of the sl₂ machinery refuses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidRing(format!("prime {p} exceeds 2^31")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// 0 for Z and Q.
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Canonical representative of an integer in this ring. For `F_p` this is
    /// the residue in `[0, p)`; for Z and Q the value itself.
    pub fn reduce(&self, v: i64) -> i64 {
        match self {
            Ring::PrimeField(p) => v.rem_euclid(*p as i64),
            _ => v,
        }
    }

    /// Reduce an accumulated `i128` value; panics on Z/Q overflow of `i64`.
    pub fn reduce_wide(&self, v: i128) -> i64 {
        match self {
            Ring::PrimeField(p) => v.rem_euclid(*p as i128) as i64,
            _ => i64::try_from(v).expect("matrix entry overflowed i64"),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Ring::Integers => "Z".to_string(),
            Ring::Rationals => "Q".to_string(),
            Ring::PrimeField(p) => format!("Fp:{p}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s.trim() {
            "Z" | "ZZ" | "Integers" => Ok(Ring::Integers),
            "Q" | "QQ" | "Rationals" => Ok(Ring::Rationals),
            other => {
                let digits = other
                    .strip_prefix("Fp:")
                    .or_else(|| other.strip_prefix("F"))
                    .or_else(|| other.strip_prefix("GF"))
                    .ok_or_else(|| Error::InvalidRing(other.to_string()))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::InvalidRing(other.to_string()))?;
                Ring::prime_field(p)
            }
        }
    }
}

impl TryFrom<String> for Ring {
    type Error = Error;
    fn try_from(s: String) -> Result<Ring> {
        s.parse()
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.label()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n` (ascending, without multiplicity).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_label_roundtrip() {
        for s in ["Z", "Q", "Fp:5", "Fp:2", "Fp:13"] {
            let r: Ring = s.parse().unwrap();
            assert_eq!(r.label(), s);
        }
        assert!("Fp:9".parse::<Ring>().is_err());
        assert!("Fp:1".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn reduce_is_canonical() {
        let f5 = Ring::PrimeField(5);
        assert_eq!(f5.reduce(-2), 3);
        assert_eq!(f5.reduce(12), 2);
        assert_eq!(Ring::Integers.reduce(-7), -7);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(97), vec![97]);
    }
}
