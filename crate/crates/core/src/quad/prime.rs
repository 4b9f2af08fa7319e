use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{QuadElement, QuadField, QuadIdeal};
use crate::arith::{self, kronecker, sqrt_mod_prime};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

/// A prime ideal of a quadratic field together with its local data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    ideal: QuadIdeal,
    p: u64,
    kind: SplitKind,
    /// For split or ramified primes, the ideal is (p, w - root).
    root: Option<u64>,
}

impl PrimeIdeal {
    pub fn ideal(&self) -> &QuadIdeal {
        &self.ideal
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> SplitKind {
        self.kind
    }

    /// Ramification index over p.
    pub fn e(&self) -> u32 {
        if self.kind == SplitKind::Ramified {
            2
        } else {
            1
        }
    }

    /// Residue degree over p.
    pub fn f(&self) -> u32 {
        if self.kind == SplitKind::Inert {
            2
        } else {
            1
        }
    }

    pub fn norm(&self) -> u64 {
        self.p.pow(self.f())
    }

    pub fn field(&self) -> QuadField {
        self.ideal.field()
    }

    /// Valuation at this prime of a nonzero integral element.
    pub fn valuation(&self, e: &QuadElement) -> u32 {
        let (x, y) = e.integral_coords().expect("valuation of a non-integral element");
        assert!(!(x.is_zero() && y.is_zero()), "valuation of zero");
        let p = BigInt::from(self.p);
        match self.kind {
            SplitKind::Inert => arith::valuation(&x.gcd(y), self.p),
            SplitKind::Ramified => arith::valuation(&e.norm_int(), self.p),
            SplitKind::Split => {
                let g = x.gcd(y);
                let k = arith::valuation(&g, self.p);
                let scale = num_traits::pow(p.clone(), k as usize);
                let (x, y) = (x / &scale, y / &scale);
                let root = BigInt::from(self.root.expect("split prime has a root"));
                // x + y w lies in (p, w - r) iff x + y r = 0 mod p
                if ((&x + &y * root) % &p).is_zero() {
                    let reduced = QuadElement::new(e.field(), x, y);
                    k + arith::valuation(&reduced.norm_int(), self.p)
                } else {
                    k
                }
            }
        }
    }

    /// Valuation of a nonzero integral ideal at this prime.
    pub fn ideal_valuation(&self, ideal: &QuadIdeal) -> u32 {
        let (g1, g2) = ideal.generators();
        self.valuation(&g1).min(self.valuation(&g2))
    }

    /// An element of valuation exactly one at this prime.
    pub fn uniformizer(&self) -> QuadElement {
        if self.kind != SplitKind::Ramified {
            return QuadElement::from_int(self.field(), self.p);
        }
        let (g1, g2) = self.ideal.generators();
        let sum = &g1 + &g2;
        [g1, g2, sum]
            .into_iter()
            .find(|g| self.valuation(g) == 1)
            .expect("a generator of a ramified prime has valuation one")
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingType {
    pub kind: SplitKind,
    pub primes: Vec<PrimeIdeal>,
}

/// Roots of w^2 - t w - n modulo p, ascending.
fn omega_roots_mod(field: QuadField, p: u64) -> Vec<u64> {
    let t = field.t();
    let n = field.n().rem_euclid(p as i64) as u64;
    if p == 2 {
        return (0..2u64)
            .filter(|&r| (r * r + 2 * p - (t as u64 * r) % p - n).is_multiple_of(p))
            .collect();
    }
    let mut roots = if t == 1 {
        // (2w - 1)^2 = d
        let dd = field.d().rem_euclid(p as i64) as u64;
        match sqrt_mod_prime(dd, p) {
            None => vec![],
            Some(s) => {
                let inv2 = p.div_ceil(2);
                let r1 = arith::mul_mod((1 + s) % p, inv2, p);
                let r2 = arith::mul_mod((1 + p - s) % p, inv2, p);
                vec![r1, r2]
            }
        }
    } else {
        match sqrt_mod_prime(n, p) {
            None => vec![],
            Some(s) => vec![s, (p - s) % p],
        }
    };
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Decomposition of the rational prime p in the field.
pub fn splitting_type(field: QuadField, p: u64) -> Result<SplittingType> {
    if !arith::is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let chi = kronecker(field.d(), p);
    let make = |root: u64, kind| {
        let b = ((p - root) % p) as i64;
        let ideal = QuadIdeal::from_hnf(field, BigInt::from(p), BigInt::from(b), BigInt::from(1))
            .expect("prime above p is a valid ideal");
        PrimeIdeal { ideal, p, kind, root: Some(root) }
    };
    let st = match chi {
        -1 => {
            let ideal = QuadIdeal::principal_int(field, p).expect("nonzero");
            SplittingType {
                kind: SplitKind::Inert,
                primes: vec![PrimeIdeal { ideal, p, kind: SplitKind::Inert, root: None }],
            }
        }
        0 => {
            let roots = omega_roots_mod(field, p);
            debug_assert_eq!(roots.len(), 1);
            SplittingType {
                kind: SplitKind::Ramified,
                primes: vec![make(roots[0], SplitKind::Ramified)],
            }
        }
        _ => {
            let roots = omega_roots_mod(field, p);
            debug_assert_eq!(roots.len(), 2);
            let mut primes: Vec<PrimeIdeal> =
                roots.into_iter().map(|r| make(r, SplitKind::Split)).collect();
            primes.sort_by(|a, b| a.ideal.hnf().1.cmp(b.ideal.hnf().1));
            SplittingType { kind: SplitKind::Split, primes }
        }
    };
    Ok(st)
}

/// Prime factorization of a nonzero integral ideal, ordered by prime norm.
pub fn factor_ideal(ideal: &QuadIdeal) -> Vec<(PrimeIdeal, u32)> {
    let field = ideal.field();
    let norm = ideal.norm();
    let mut out = Vec::new();
    for (p, _) in arith::factor_biguint(norm.magnitude()) {
        let p = p.to_u64().expect("prime factors of desk-scale norms fit in 64 bits");
        let st = splitting_type(field, p).expect("factor is prime");
        for prime in st.primes {
            let v = prime.ideal_valuation(ideal);
            if v > 0 {
                out.push((prime, v));
            }
        }
    }
    out
}

/// Factorization of the principal ideal of a nonzero integral element.
pub fn factor_element(alpha: &QuadElement) -> Result<Vec<(PrimeIdeal, u32)>> {
    let ideal = QuadIdeal::principal(alpha)?;
    Ok(factor_ideal(&ideal))
}

/// Multiply out a factorization.
pub fn ideal_from_factors(field: QuadField, factors: &[(PrimeIdeal, u32)]) -> QuadIdeal {
    factors
        .iter()
        .fold(QuadIdeal::unit(field), |acc, (p, e)| acc.mul(&p.ideal.pow(*e)))
}

#[allow(dead_code)]
fn biguint_to_bigint(n: BigUint) -> BigInt {
    BigInt::from(n)
}
