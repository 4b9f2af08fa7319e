//! Galois type over Q of a tower K(sqrt(alpha)) / K / Q.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::is_rational_square;
use crate::error::{Error, Result};
use crate::quad::{is_square, QuadElement, QuadField};

/// Galois group of the normal closure of a quartic tower field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GaloisType {
    D4,
    C4,
    V4,
}

impl GaloisType {
    pub fn as_str(&self) -> &'static str {
        match self {
            GaloisType::D4 => "D4",
            GaloisType::C4 => "C4",
            GaloisType::V4 => "V4",
        }
    }
}

impl fmt::Display for GaloisType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GaloisType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D4" => Ok(GaloisType::D4),
            "C4" => Ok(GaloisType::C4),
            "V4" => Ok(GaloisType::V4),
            _ => Err(Error::Parse(format!("unknown Galois type {s}"))),
        }
    }
}

/// Classify K(sqrt(alpha)) by the norm n = Nm(alpha): V4 if n is a square,
/// C4 if d*n is a square, D4 otherwise.
pub fn classify_extension(field: QuadField, alpha: &QuadElement) -> Result<GaloisType> {
    if alpha.field() != field {
        return Err(Error::domain("element of a different field"));
    }
    if alpha.is_zero() || is_square(alpha) {
        return Err(Error::domain(format!("{alpha} does not define a quadratic extension of {field}")));
    }
    let n = alpha.norm();
    let dn = &n * BigRational::from_integer(field.d().into());
    let ty = if is_rational_square(&n) {
        GaloisType::V4
    } else if is_rational_square(&dn) {
        GaloisType::C4
    } else {
        GaloisType::D4
    };
    if ty == GaloisType::C4 && !field.is_real() {
        return Err(Error::invariant(format!("cyclic quartic over imaginary {field}")));
    }
    Ok(ty)
}

/// Coefficients [c0, c1, c2, c3, 1] of x^4 - Tr(alpha) x^2 + Nm(alpha), the
/// minimal polynomial of sqrt(alpha).
///
/// A rational alpha is first multiplied by (1 + w)^2 so that sqrt(alpha)
/// generates the quartic field.
pub fn minimal_polynomial(field: QuadField, alpha: &QuadElement) -> Result<[BigInt; 5]> {
    if alpha.field() != field {
        return Err(Error::domain("element of a different field"));
    }
    if !alpha.is_integral() {
        return Err(Error::domain(format!("{alpha} is not integral")));
    }
    if alpha.is_zero() || is_square(alpha) {
        return Err(Error::domain(format!("{alpha} is a square in {field}")));
    }
    let a = if alpha.is_rational() {
        let s = QuadElement::new(field, 1, 1);
        alpha * &(&s * &s)
    } else {
        alpha.clone()
    };
    let tr = a.trace().to_integer();
    let nm = a.norm().to_integer();
    Ok([nm, BigInt::from(0), -tr, BigInt::from(0), BigInt::one()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> QuadField {
        QuadField::from_disc(d).unwrap()
    }

    #[test]
    fn examples() {
        let f = k(8);
        assert_eq!(classify_extension(f, &QuadElement::new(f, 2, 1)).unwrap(), GaloisType::C4);
        assert_eq!(classify_extension(f, &QuadElement::new(f, 1, 1)).unwrap(), GaloisType::D4);
        // 3 + sqrt 5 = 2 + 2w
        let g = k(5);
        assert_eq!(classify_extension(g, &QuadElement::new(g, 2, 2)).unwrap(), GaloisType::V4);
        assert!(classify_extension(f, &QuadElement::new(f, 3, 2)).is_err());
    }

    #[test]
    fn minimal_polynomials() {
        let i = QuadElement::omega(k(-4));
        let p = minimal_polynomial(k(-4), &i).unwrap();
        assert_eq!(p, [1, 0, 0, 0, 1].map(BigInt::from));
        let f = k(8);
        let p = minimal_polynomial(f, &QuadElement::new(f, 1, 1)).unwrap();
        assert_eq!(p, [-1, 0, -2, 0, 1].map(BigInt::from));
        let p = minimal_polynomial(f, &QuadElement::new(f, 2, 1)).unwrap();
        assert_eq!(p, [2, 0, -4, 0, 1].map(BigInt::from));
    }

    #[test]
    fn square_class_and_conjugation_invariance() {
        for d in [5, 8, 12, -4, -23, 13] {
            let f = k(d);
            for a in -4..=4 {
                for b in -4..=4 {
                    let al = QuadElement::new(f, a, b);
                    let Ok(t) = classify_extension(f, &al) else { continue };
                    assert_eq!(classify_extension(f, &al.conj()).unwrap(), t);
                    let beta = QuadElement::new(f, b + 1, 2);
                    let tw = &al * &(&beta * &beta);
                    assert_eq!(classify_extension(f, &tw).unwrap(), t);
                }
            }
        }
    }
}
