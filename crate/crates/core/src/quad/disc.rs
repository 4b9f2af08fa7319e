use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_squarefree_u64, squarefree_sieve};
use crate::error::{Error, Result};

/// Discriminant of a quadratic field over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct FundDisc(i64);

impl FundDisc {
    pub fn new(d: i64) -> Result<Self> {
        if Self::is_fundamental(d) {
            Ok(FundDisc(d))
        } else {
            Err(Error::domain(format!("{d} is not a fundamental discriminant")))
        }
    }

    pub fn is_fundamental(d: i64) -> bool {
        if d == 0 || d == 1 {
            return false;
        }
        match d.rem_euclid(4) {
            1 => is_squarefree_u64(d.unsigned_abs()),
            0 => {
                let m = d / 4;
                matches!(m.rem_euclid(4), 2 | 3) && is_squarefree_u64(m.unsigned_abs())
            }
            _ => false,
        }
    }

    #[inline]
    pub fn get(self) -> i64 {
        self.0
    }

    /// Sort key: ascending |d|, negative before positive.
    pub fn sort_key(self) -> (u64, bool) {
        (self.0.unsigned_abs(), self.0 > 0)
    }
}

impl PartialOrd for FundDisc {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FundDisc {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl TryFrom<i64> for FundDisc {
    type Error = Error;
    fn try_from(d: i64) -> Result<Self> {
        FundDisc::new(d)
    }
}

impl From<FundDisc> for i64 {
    fn from(d: FundDisc) -> i64 {
        d.0
    }
}

impl fmt::Display for FundDisc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All fundamental discriminants with |d| <= bound, ordered by (|d|, sign).
pub fn fundamental_discriminants(bound: u64) -> Vec<FundDisc> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let sf = squarefree_sieve(n);
    let mut out = Vec::new();
    for a in 3..=n {
        for d in [-(a as i64), a as i64] {
            let ok = match d.rem_euclid(4) {
                1 => sf[a],
                0 => {
                    let m = d / 4;
                    matches!(m.rem_euclid(4), 2 | 3) && sf[a / 4]
                }
                _ => false,
            };
            if ok {
                out.push(FundDisc(d));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds() {
        assert!(fundamental_discriminants(0).is_empty());
        assert!(fundamental_discriminants(1).is_empty());
        let ten: Vec<i64> = fundamental_discriminants(10).into_iter().map(|d| d.get()).collect();
        assert_eq!(ten, vec![-3, -4, 5, -7, -8, 8]);
    }

    #[test]
    fn sieve_agrees_with_predicate() {
        let list: Vec<i64> = fundamental_discriminants(2000).into_iter().map(|d| d.get()).collect();
        let brute: Vec<i64> = {
            let mut v: Vec<i64> = (-2000..=2000).filter(|&d| FundDisc::is_fundamental(d)).collect();
            v.sort_by_key(|&d| (d.unsigned_abs(), d > 0));
            v
        };
        assert_eq!(list, brute);
    }

    #[test]
    fn rejects_non_fundamental() {
        for d in [0, 1, 4, -1, 12 * 4, 9, -12 * 3, 2, 3, 6] {
            assert!(FundDisc::new(d).is_err(), "{d}");
        }
        for d in [-3, -4, 5, 8, -8, 12, 13, -15, -20, 24, 40, 1_000_005] {
            assert_eq!(FundDisc::is_fundamental(d), FundDisc::new(d).is_ok());
        }
        assert!(FundDisc::new(12).is_ok());
        assert!(FundDisc::new(-20).is_ok());
    }
}
