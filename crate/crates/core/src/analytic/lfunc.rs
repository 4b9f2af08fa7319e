use crate::arith::kronecker;
use crate::error::{Error, Result};
use crate::quad::FundDisc;

use super::AnalyticValue;

/// Working precision, in decimal digits of absolute accuracy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { digits: 10 }
    }
}

/// Binary64 midpoints cannot certify more than this.
pub const MAX_DIGITS: u32 = 13;

impl Precision {
    pub fn new(digits: u32) -> Result<Self> {
        if digits == 0 || digits > MAX_DIGITS {
            return Err(Error::capacity("precision digits", digits, MAX_DIGITS));
        }
        Ok(Precision { digits })
    }

    pub fn target(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }

    /// Terms summed directly before the Euler-Maclaurin tail.
    pub(crate) fn hurwitz_terms(&self) -> u32 {
        // |B_12| N^-13 below 10^-(digits+4)
        let n = 10f64.powf((self.digits as f64 + 4.0) / 13.0).ceil() as u32;
        n.max(4)
    }
}

/// B_2, B_4, ..., B_12.
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

/// Hurwitz zeta(2, x) for 0 < x <= 1, with n terms summed directly.
pub(crate) fn hurwitz_zeta2(x: AnalyticValue, n: u32) -> AnalyticValue {
    let one = AnalyticValue::exact(1.0);
    let mut head = AnalyticValue::exact(0.0);
    for k in (0..n).rev() {
        let t = x + AnalyticValue::exact(k as f64);
        head = head + one / (t * t);
    }
    let big = x + AnalyticValue::exact(n as f64);
    let inv = one / big;
    let inv2 = inv * inv;
    let mut tail = inv + inv2 * 0.5;
    let mut pw = inv2 * inv;
    for b in BERNOULLI {
        tail = tail + pw * b;
        pw = pw * inv2;
    }
    // remainder after the B_12 term: |B_12| (n + x)^-13
    let rem = BERNOULLI[5].abs() * inv.hi().powi(13);
    (head + tail).widen(rem)
}

fn check_disc(d: i64) -> Result<u64> {
    if d != 1 {
        FundDisc::new(d)?;
    }
    Ok(d.unsigned_abs())
}

/// L(2, chi_d) for a fundamental discriminant d; d = 1 gives zeta(2).
pub fn dirichlet_l_at_2(d: i64) -> Result<AnalyticValue> {
    dirichlet_l_at_2_with(d, Precision::default())
}

pub fn dirichlet_l_at_2_with(d: i64, prec: Precision) -> Result<AnalyticValue> {
    let q = check_disc(d)?;
    let n = prec.hurwitz_terms();
    let qv = AnalyticValue::from_int(q as i64);
    // L(2, chi) = q^-2 sum_a chi(a) zeta(2, a/q)
    let mut acc = AnalyticValue::exact(0.0);
    for a in 1..=q {
        let chi = if q == 1 { 1 } else { kronecker(d, a) };
        if chi == 0 {
            continue;
        }
        let z = hurwitz_zeta2(AnalyticValue::from_int(a as i64) / qv, n);
        acc = if chi > 0 { acc + z } else { acc - z };
    }
    let v = acc / (qv * qv);
    if v.radius > prec.target() {
        return Err(Error::capacity("L(2) radius", format!("{:e}", v.radius), format!("{:e}", prec.target())));
    }
    Ok(v)
}

/// zeta(2) = pi^2 / 6.
pub fn zeta2() -> AnalyticValue {
    let pi = AnalyticValue::pi();
    pi * pi / AnalyticValue::exact(6.0)
}

/// sin on a ball, from the 1-Lipschitz bound.
fn sin(x: AnalyticValue) -> AnalyticValue {
    let m = x.midpoint.sin();
    AnalyticValue::new(m, 0.0).widen(x.radius + 2.0 * f64::EPSILON * m.abs() + f64::EPSILON)
}

/// L(1, chi_d) from the finite closed forms.
pub fn dirichlet_l_at_1(d: FundDisc) -> AnalyticValue {
    let dd = d.get();
    let q = dd.unsigned_abs();
    let qv = AnalyticValue::from_int(q as i64);
    let pi = AnalyticValue::pi();
    if dd < 0 {
        // -pi / q^(3/2) sum chi(a) a
        let s: i64 = (1..q).map(|a| kronecker(dd, a) as i64 * a as i64).sum();
        -(pi * AnalyticValue::from_int(s)) / (qv * qv.sqrt())
    } else {
        // -(1/sqrt q) sum chi(a) ln sin(pi a / q)
        let mut acc = AnalyticValue::exact(0.0);
        for a in 1..q {
            let chi = kronecker(dd, a);
            if chi == 0 {
                continue;
            }
            let l = sin(pi * AnalyticValue::from_int(a as i64) / qv).ln();
            acc = if chi > 0 { acc + l } else { acc - l };
        }
        -acc / qv.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l2_examples() {
        let cat = dirichlet_l_at_2(-4).unwrap();
        assert!(cat.contains(0.915_965_594_177_219), "{cat}");
        assert!(cat.radius < 1e-10);
        let m3 = dirichlet_l_at_2(-3).unwrap();
        assert!((m3.midpoint - 0.781_302_412_896_486).abs() < 1e-10, "{m3}");
        let z = dirichlet_l_at_2(1).unwrap();
        assert!(z.contains(std::f64::consts::PI.powi(2) / 6.0), "{z}");
        let l5 = dirichlet_l_at_2(5).unwrap();
        assert!((l5.midpoint - 4.0 * std::f64::consts::PI.powi(2) / (25.0 * 5f64.sqrt())).abs() < 1e-12);
        assert!(dirichlet_l_at_2(12).is_ok());
        assert!(dirichlet_l_at_2(9).is_err());
        assert!(Precision::new(30).is_err());
    }

    #[test]
    fn hurwitz_small_argument() {
        // zeta(2, 1/2) = 3 zeta(2)
        let z = hurwitz_zeta2(AnalyticValue::exact(0.5), 10);
        assert!(z.contains(std::f64::consts::PI.powi(2) / 2.0), "{z}");
    }

    #[test]
    fn l1_examples() {
        let l = dirichlet_l_at_1(FundDisc::new(-4).unwrap());
        assert!(l.contains(std::f64::consts::FRAC_PI_4), "{l}");
        let l = dirichlet_l_at_1(FundDisc::new(5).unwrap());
        let phi: f64 = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((l.midpoint - 2.0 * phi.ln() / 5f64.sqrt()).abs() < 1e-13, "{l}");
    }
}
