use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{QuadElement, QuadField};
use crate::error::{Error, Result};

/// A nonzero integral ideal in Hermite normal form: the lattice spanned by
/// `a` and `b + c*w`, with a > 0, c > 0, c | a, c | b, 0 <= b < a.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIdeal {
    field: QuadField,
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// HNF of a full-rank sublattice of Z^2 given by generators (x, y) in the
/// (1, w) basis. Returns (a, b, c) with lattice = Z*(a,0) + Z*(b,c).
fn hnf2(gens: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut a = BigInt::zero();
    let mut pivot: Option<(BigInt, BigInt)> = None;
    for (x, y) in gens {
        if y.is_zero() {
            a = a.gcd(x);
            continue;
        }
        match pivot.take() {
            None => {
                if y.is_negative() {
                    pivot = Some((-x, -y));
                } else {
                    pivot = Some((x.clone(), y.clone()));
                }
            }
            Some((px, py)) => {
                let e = py.extended_gcd(y);
                let g = e.gcd;
                let nx = &e.x * &px + &e.y * x;
                // (y/g) * pivot - (py/g) * gen has zero second coordinate
                let wx = (y / &g) * &px - (&py / &g) * x;
                a = a.gcd(&wx);
                pivot = Some((nx, g));
            }
        }
    }
    let (mut bx, mut c) = pivot?;
    if c.is_negative() {
        bx = -bx;
        c = -c;
    }
    if a.is_zero() {
        return None;
    }
    let b = bx.mod_floor(&a);
    Some((a, b, c))
}

impl QuadIdeal {
    pub fn unit(field: QuadField) -> Self {
        QuadIdeal {
            field,
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    /// Validated construction from HNF data.
    pub fn from_hnf(field: QuadField, a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if !a.is_positive() || !c.is_positive() || b.is_negative() || b >= a {
            return Err(Error::domain(format!("[{a}, {b} + {c}w] is not in HNF")));
        }
        if !(&a % &c).is_zero() || !(&b % &c).is_zero() {
            return Err(Error::domain(format!("[{a}, {b} + {c}w]: c must divide a and b")));
        }
        let ideal = QuadIdeal { field, a, b, c };
        let w = QuadElement::omega(field);
        let (g1, g2) = ideal.generators();
        if !ideal.contains(&(&g1 * &w)) || !ideal.contains(&(&g2 * &w)) {
            return Err(Error::domain(format!("{ideal} is not closed under w")));
        }
        Ok(ideal)
    }

    /// Ideal generated (as an O_K-module) by integral elements.
    pub fn from_elements(field: QuadField, elems: &[QuadElement]) -> Result<Self> {
        let t = BigInt::from(field.t());
        let n = BigInt::from(field.n());
        let mut gens = Vec::with_capacity(2 * elems.len());
        for e in elems {
            let (x, y) = e
                .integral_coords()
                .ok_or_else(|| Error::domain(format!("{e} is not integral")))?;
            gens.push((x.clone(), y.clone()));
            // (x + y w) w = n y + (x + t y) w
            gens.push((&n * y, x + &t * y));
        }
        let (a, b, c) = hnf2(&gens).ok_or_else(|| Error::domain("zero ideal"))?;
        Ok(QuadIdeal { field, a, b, c })
    }

    pub fn principal(alpha: &QuadElement) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::domain("zero ideal"));
        }
        QuadIdeal::from_elements(alpha.field(), std::slice::from_ref(alpha))
    }

    pub fn principal_int(field: QuadField, n: impl Into<BigInt>) -> Result<Self> {
        QuadIdeal::principal(&QuadElement::from_int(field, n))
    }

    /// Ideal c * [A, (B + sqrt(d))/2] from the (A, B) data of a primitive ideal.
    pub fn from_primitive(field: QuadField, a_norm: &BigInt, b_form: &BigInt, scale: &BigInt) -> Self {
        let t = BigInt::from(field.t());
        let half: BigInt = (b_form - &t) / 2;
        let b0 = half.mod_floor(a_norm);
        QuadIdeal {
            field,
            a: a_norm * scale,
            b: b0 * scale,
            c: scale.clone(),
        }
    }

    #[inline]
    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn hnf(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn norm_u64(&self) -> Option<u64> {
        self.norm().to_u64()
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_one()
    }

    /// Largest rational integer dividing the ideal.
    pub fn content(&self) -> &BigInt {
        &self.c
    }

    /// (A, B) with self = content * [A, (B + sqrt(d))/2], 4A | B^2 - d.
    pub fn primitive_form(&self) -> (BigInt, BigInt) {
        let a = &self.a / &self.c;
        let b0 = &self.b / &self.c;
        let b = BigInt::from(2) * b0 + BigInt::from(self.field.t());
        (a, b)
    }

    /// The Z-basis elements a and b + c*w.
    pub fn generators(&self) -> (QuadElement, QuadElement) {
        (
            QuadElement::from_int(self.field, self.a.clone()),
            QuadElement::new(self.field, self.b.clone(), self.c.clone()),
        )
    }

    pub fn contains(&self, e: &QuadElement) -> bool {
        let Some((x, y)) = e.integral_coords() else {
            return false;
        };
        if !(y % &self.c).is_zero() {
            return false;
        }
        let k = y / &self.c;
        ((x - &k * &self.b) % &self.a).is_zero()
    }

    pub fn mul(&self, other: &QuadIdeal) -> QuadIdeal {
        debug_assert_eq!(self.field, other.field);
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let (g1, g2) = self.generators();
        let (h1, h2) = other.generators();
        let prods = [&g1 * &h1, &g1 * &h2, &g2 * &h1, &g2 * &h2];
        let gens: Vec<(BigInt, BigInt)> = prods
            .iter()
            .map(|p| {
                let (x, y) = p.integral_coords().expect("integral");
                (x.clone(), y.clone())
            })
            .collect();
        let (a, b, c) = hnf2(&gens).expect("product of nonzero ideals is nonzero");
        QuadIdeal { field: self.field, a, b, c }
    }

    pub fn pow(&self, mut e: u32) -> QuadIdeal {
        let mut base = self.clone();
        let mut acc = QuadIdeal::unit(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn conj(&self) -> QuadIdeal {
        let (g1, g2) = self.generators();
        QuadIdeal::from_elements(self.field, &[g1.conj(), g2.conj()]).expect("nonzero")
    }

    /// Short textual label "a,b,c" of the HNF.
    pub fn label(&self) -> String {
        format!("{},{},{}", self.a, self.b, self.c)
    }

    /// Ordering key used for deterministic output.
    pub fn sort_key(&self) -> (BigInt, BigInt, BigInt) {
        (self.norm(), self.a.clone(), self.b.clone())
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {} + {}w]", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> QuadField {
        QuadField::from_disc(d).unwrap()
    }

    #[test]
    fn principal_ideals_have_norm_of_generator() {
        let f = k(-4);
        let i3 = QuadIdeal::principal_int(f, 3).unwrap();
        assert_eq!(i3.norm(), BigInt::from(9));
        let g = QuadIdeal::principal(&QuadElement::new(f, 2, 1)).unwrap();
        assert_eq!(g.norm(), BigInt::from(5));
        assert_eq!(QuadIdeal::unit(f).norm(), BigInt::one());
    }

    #[test]
    fn hnf_is_validated() {
        let f = k(-4);
        assert!(QuadIdeal::from_hnf(f, 5.into(), 2.into(), 1.into()).is_ok());
        assert!(QuadIdeal::from_hnf(f, 5.into(), 1.into(), 1.into()).is_err());
        assert!(QuadIdeal::from_hnf(f, 5.into(), 7.into(), 1.into()).is_err());
    }

    #[test]
    fn conjugate_product_is_norm() {
        let f = k(-23);
        let p = QuadIdeal::from_elements(f, &[QuadElement::from_int(f, 2), QuadElement::omega(f)]).unwrap();
        assert_eq!(p.norm(), BigInt::from(2));
        let nn = p.mul(&p.conj());
        assert_eq!(nn, QuadIdeal::principal_int(f, 2).unwrap());
    }
}
