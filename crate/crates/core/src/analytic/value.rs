use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// A real number as a midpoint with a rigorous absolute error radius.
///
/// Midpoints are binary64; every operation widens the radius by a bound on
/// its own rounding error, so the true value always lies in
/// [mid - rad, mid + rad].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticValue {
    pub midpoint: f64,
    pub radius: f64,
}

/// Bound on the rounding error of a correctly rounded or faithfully computed
/// result of magnitude |x|: two ulps plus the smallest subnormal.
#[inline]
fn slack(x: f64) -> f64 {
    x.abs() * (2.0 * f64::EPSILON) + f64::from_bits(1)
}

/// Round a nonnegative bound upward.
#[inline]
fn up(x: f64) -> f64 {
    x + slack(x)
}

impl AnalyticValue {
    pub fn new(midpoint: f64, radius: f64) -> Self {
        assert!(radius >= 0.0 && radius.is_finite() || radius == f64::INFINITY);
        AnalyticValue { midpoint, radius }
    }

    /// An exactly representable number.
    pub fn exact(x: f64) -> Self {
        AnalyticValue::new(x, 0.0)
    }

    pub fn from_int(n: i64) -> Self {
        let m = n as f64;
        let r = if (m as i128) == n as i128 { 0.0 } else { slack(m) };
        AnalyticValue::new(m, r)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let m = n.to_f64().unwrap_or(f64::INFINITY);
        AnalyticValue::new(m, slack(m))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let m = q.to_f64().unwrap_or(f64::NAN);
        AnalyticValue::new(m, slack(m))
    }

    pub fn pi() -> Self {
        AnalyticValue::new(std::f64::consts::PI, slack(std::f64::consts::PI))
    }

    pub fn lo(&self) -> f64 {
        self.midpoint - self.radius
    }

    pub fn hi(&self) -> f64 {
        self.midpoint + self.radius
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.midpoint).abs() <= self.radius
    }

    /// Whether the two balls intersect.
    pub fn overlaps(&self, other: &Self) -> bool {
        (self.midpoint - other.midpoint).abs() <= up(self.radius + other.radius)
    }

    /// Widen by an additional absolute error.
    pub fn widen(self, extra: f64) -> Self {
        AnalyticValue::new(self.midpoint, up(self.radius + extra.abs()))
    }

    pub fn abs_upper(&self) -> f64 {
        up(self.midpoint.abs() + self.radius)
    }

    pub fn sqrt(self) -> Self {
        assert!(self.lo() >= 0.0, "sqrt of a ball meeting the negatives");
        let m = self.midpoint.sqrt();
        // |sqrt(x) - sqrt(m)| <= r / (sqrt(m - r) + sqrt(m))
        let lo = self.lo().max(0.0).sqrt();
        let prop = if self.radius == 0.0 { 0.0 } else { self.radius / (lo + m) };
        AnalyticValue::new(m, up(prop + slack(m)))
    }

    pub fn ln(self) -> Self {
        assert!(self.lo() > 0.0, "log of a ball meeting the nonpositive reals");
        let m = self.midpoint.ln();
        // |ln x - ln m| <= r / (m - r)
        let prop = if self.radius == 0.0 { 0.0 } else { self.radius / self.lo() };
        AnalyticValue::new(m, up(prop + slack(m) + f64::EPSILON))
    }

    pub fn exp(self) -> Self {
        let m = self.midpoint.exp();
        // |e^x - e^m| <= e^m (e^r - 1)
        let prop = m * self.radius.exp_m1();
        AnalyticValue::new(m, up(prop + slack(m)))
    }

    pub fn powi(self, k: i32) -> Self {
        let mut acc = AnalyticValue::exact(1.0);
        let base = if k < 0 { AnalyticValue::exact(1.0) / self } else { self };
        for _ in 0..k.unsigned_abs() {
            acc = acc * base;
        }
        acc
    }

    /// Sum in the given order.
    pub fn sum<I: IntoIterator<Item = AnalyticValue>>(it: I) -> Self {
        it.into_iter().fold(AnalyticValue::exact(0.0), |a, b| a + b)
    }
}

impl Add for AnalyticValue {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let m = self.midpoint + o.midpoint;
        AnalyticValue::new(m, up(self.radius + o.radius + slack(m)))
    }
}

impl Sub for AnalyticValue {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for AnalyticValue {
    type Output = Self;
    fn neg(self) -> Self {
        AnalyticValue::new(-self.midpoint, self.radius)
    }
}

impl Mul for AnalyticValue {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let m = self.midpoint * o.midpoint;
        let prop = self.midpoint.abs() * o.radius
            + o.midpoint.abs() * self.radius
            + self.radius * o.radius;
        AnalyticValue::new(m, up(up(prop) + slack(m)))
    }
}

impl Div for AnalyticValue {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let lo = o.midpoint.abs() - o.radius;
        assert!(lo > 0.0, "division by a ball containing zero");
        let m = self.midpoint / o.midpoint;
        // |a/b - m| <= (|a - am| + |m| |b - bm|) / |b|lower
        let prop = (self.radius + m.abs() * o.radius) / lo;
        AnalyticValue::new(m, up(up(prop) + slack(m)))
    }
}

impl Mul<f64> for AnalyticValue {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self * AnalyticValue::exact(k)
    }
}

impl fmt::Display for AnalyticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12} +/- {:.3e}", self.midpoint, self.radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosures_hold() {
        let two = AnalyticValue::exact(2.0);
        let r = two.sqrt();
        assert!(r.contains(std::f64::consts::SQRT_2));
        let third = AnalyticValue::exact(1.0) / AnalyticValue::exact(3.0);
        assert!(third.radius > 0.0 && third.radius < 1e-15);
        let l = AnalyticValue::exact(std::f64::consts::E).ln();
        assert!(l.contains(1.0));
        let x = AnalyticValue::new(1.0, 1e-3);
        let y = x * x - x;
        assert!(y.contains(1.001 * 1.001 - 1.001));
    }
}
