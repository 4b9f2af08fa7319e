use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QuadField;
use crate::error::{Error, Result};

/// An element (x + y*w) / den of a quadratic field, with den > 0 and
/// gcd(x, y, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    field: QuadField,
    x: BigInt,
    y: BigInt,
    den: BigInt,
}

impl QuadElement {
    /// Integral element x + y*w.
    pub fn new(field: QuadField, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        QuadElement {
            field,
            x: x.into(),
            y: y.into(),
            den: BigInt::one(),
        }
    }

    /// (x + y*w) / den, normalized.
    pub fn with_den(field: QuadField, x: BigInt, y: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut e = QuadElement { field, x, y, den };
        e.normalize();
        e
    }

    pub fn from_rationals(field: QuadField, x: &BigRational, y: &BigRational) -> Self {
        let den = x.denom().lcm(y.denom());
        let xn = x.numer() * (&den / x.denom());
        let yn = y.numer() * (&den / y.denom());
        QuadElement::with_den(field, xn, yn, den)
    }

    pub fn from_int(field: QuadField, n: impl Into<BigInt>) -> Self {
        QuadElement::new(field, n, 0)
    }

    pub fn from_rational(field: QuadField, q: &BigRational) -> Self {
        QuadElement::with_den(field, q.numer().clone(), BigInt::zero(), q.denom().clone())
    }

    pub fn zero(field: QuadField) -> Self {
        QuadElement::new(field, 0, 0)
    }

    pub fn one(field: QuadField) -> Self {
        QuadElement::new(field, 1, 0)
    }

    pub fn omega(field: QuadField) -> Self {
        QuadElement::new(field, 0, 1)
    }

    /// sqrt(d) = 2w - t.
    pub fn sqrt_disc(field: QuadField) -> Self {
        QuadElement::new(field, -field.t(), 2)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.x = -&self.x;
            self.y = -&self.y;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.x.gcd(&self.y).gcd(&self.den);
        if !g.is_one() && !g.is_zero() {
            self.x /= &g;
            self.y /= &g;
            self.den /= &g;
        }
    }

    #[inline]
    pub fn field(&self) -> QuadField {
        self.field
    }

    /// Numerator coordinates and common denominator.
    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.x, &self.y, &self.den)
    }

    pub fn x(&self) -> BigRational {
        BigRational::new(self.x.clone(), self.den.clone())
    }

    pub fn y(&self) -> BigRational {
        BigRational::new(self.y.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero() && self.den.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// Integer coordinates of an integral element.
    pub fn integral_coords(&self) -> Option<(&BigInt, &BigInt)> {
        if self.den.is_one() {
            Some((&self.x, &self.y))
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        // sigma(w) = t - w
        let t = BigInt::from(self.field.t());
        QuadElement {
            field: self.field,
            x: &self.x + &self.y * t,
            y: -&self.y,
            den: self.den.clone(),
        }
    }

    /// Norm of the numerator x + y*w.
    fn numer_norm(&self) -> BigInt {
        let t = self.field.t();
        let n = BigInt::from(self.field.n());
        let mut v = &self.x * &self.x - &n * &self.y * &self.y;
        if t == 1 {
            v += &self.x * &self.y;
        }
        v
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(self.numer_norm(), &self.den * &self.den)
    }

    pub fn trace(&self) -> BigRational {
        let tr = BigInt::from(2) * &self.x + &self.y * BigInt::from(self.field.t());
        BigRational::new(tr, self.den.clone())
    }

    /// Norm of an integral element as an integer.
    pub fn norm_int(&self) -> BigInt {
        debug_assert!(self.is_integral());
        self.numer_norm()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        // 1/a = sigma(a) / Nm(a)
        let nn = self.numer_norm();
        let c = self.conj();
        // (c.x + c.y w)/den / (nn / den^2) = (c.x + c.y w) * den / nn
        Ok(QuadElement::with_den(
            self.field,
            &c.x * &self.den,
            &c.y * &self.den,
            nn,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadElement::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadElement::with_den(self.field, &self.x * k, &self.y * k, self.den.clone())
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        QuadElement::with_den(
            self.field,
            &self.x * q.numer(),
            &self.y * q.numer(),
            &self.den * q.denom(),
        )
    }

    /// Sign of the element under a real embedding; `plus` selects sqrt(d) > 0.
    pub fn sign_at(&self, plus: bool) -> Ordering {
        assert!(self.field.is_real(), "sign of an element of an imaginary field");
        // 2*den*a = (2x + t y) + y sqrt(d)
        let u = BigInt::from(2) * &self.x + &self.y * BigInt::from(self.field.t());
        let v = if plus { self.y.clone() } else { -&self.y };
        let su = u.sign();
        let sv = v.sign();
        use num_bigint::Sign::*;
        match (su, sv) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
            _ => {
                let lhs = &u * &u;
                let rhs = &v * &v * BigInt::from(self.field.d());
                match lhs.cmp(&rhs) {
                    Ordering::Greater => {
                        if su == Plus {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        }
                    }
                    Ordering::Less => {
                        if sv == Plus {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        }
                    }
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Natural logs of |a| under both embeddings (real fields), or of |a|
    /// (twice) for imaginary fields. Approximate.
    pub fn log_abs_embeddings(&self) -> (f64, f64) {
        let log_norm = log_abs_rational(&self.norm());
        let d = self.field.d() as f64;
        let t = self.field.t() as f64;
        let x = big_to_f64_scaled(&self.x, &self.den);
        let y = big_to_f64_scaled(&self.y, &self.den);
        if self.field.is_real() {
            let s = d.sqrt();
            let a = x + y * (t + s) / 2.0;
            let b = x + y * (t - s) / 2.0;
            // the larger one has no cancellation; recover the other from the norm
            if a.abs() >= b.abs() {
                let la = a.abs().ln();
                (la, log_norm - la)
            } else {
                let lb = b.abs().ln();
                (log_norm - lb, lb)
            }
        } else {
            let l = log_norm / 2.0;
            (l, l)
        }
    }
}

fn big_to_f64_scaled(n: &BigInt, den: &BigInt) -> f64 {
    let a = n.to_f64().unwrap_or(f64::INFINITY);
    let b = den.to_f64().unwrap_or(f64::INFINITY);
    if a.is_finite() && b.is_finite() {
        a / b
    } else {
        BigRational::new(n.clone(), den.clone())
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

pub(crate) fn log_abs_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        n.to_f64().unwrap().abs().ln()
    } else {
        let shift = bits - 60;
        let top = (n.abs() >> shift).to_f64().unwrap();
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

pub(crate) fn log_abs_rational(q: &BigRational) -> f64 {
    log_abs_bigint(q.numer()) - log_abs_bigint(q.denom())
}

impl<'a> Add<&'a QuadElement> for &'a QuadElement {
    type Output = QuadElement;
    fn add(self, rhs: &QuadElement) -> QuadElement {
        debug_assert_eq!(self.field, rhs.field);
        if self.den == rhs.den {
            QuadElement::with_den(self.field, &self.x + &rhs.x, &self.y + &rhs.y, self.den.clone())
        } else {
            QuadElement::with_den(
                self.field,
                &self.x * &rhs.den + &rhs.x * &self.den,
                &self.y * &rhs.den + &rhs.y * &self.den,
                &self.den * &rhs.den,
            )
        }
    }
}

impl<'a> Sub<&'a QuadElement> for &'a QuadElement {
    type Output = QuadElement;
    fn sub(self, rhs: &QuadElement) -> QuadElement {
        self + &(-rhs)
    }
}

impl Neg for &QuadElement {
    type Output = QuadElement;
    fn neg(self) -> QuadElement {
        QuadElement {
            field: self.field,
            x: -&self.x,
            y: -&self.y,
            den: self.den.clone(),
        }
    }
}

impl Neg for QuadElement {
    type Output = QuadElement;
    fn neg(self) -> QuadElement {
        -&self
    }
}

impl<'a> Mul<&'a QuadElement> for &'a QuadElement {
    type Output = QuadElement;
    fn mul(self, rhs: &QuadElement) -> QuadElement {
        debug_assert_eq!(self.field, rhs.field);
        let n = BigInt::from(self.field.n());
        let be = &self.y * &rhs.y;
        let x = &self.x * &rhs.x + &n * &be;
        let mut y = &self.x * &rhs.y + &self.y * &rhs.x;
        if self.field.t() == 1 {
            y += &be;
        }
        if self.den.is_one() && rhs.den.is_one() {
            QuadElement {
                field: self.field,
                x,
                y,
                den: BigInt::one(),
            }
        } else {
            QuadElement::with_den(self.field, x, y, &self.den * &rhs.den)
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadElement> for QuadElement {
            type Output = QuadElement;
            fn $m(self, rhs: QuadElement) -> QuadElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadElement> for QuadElement {
            type Output = QuadElement;
            fn $m(self, rhs: &QuadElement) -> QuadElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => format!("{}", self.x),
            (true, false) => format!("{}*w", self.y),
            (false, false) => {
                if self.y.is_negative() {
                    format!("{} - {}*w", self.x, -&self.y)
                } else {
                    format!("{} + {}*w", self.x, self.y)
                }
            }
        };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}
