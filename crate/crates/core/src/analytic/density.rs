use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classgroup::{class_number, regulator};
use crate::error::{Error, Result};
use crate::quad::{fundamental_discriminants, splitting_type, FundDisc, QuadField};

use super::lfunc::{dirichlet_l_at_2_with, zeta2, Precision};
use super::AnalyticValue;

/// Residue at s = 1 of the Dedekind zeta function, by the class number formula.
pub fn dedekind_zeta_residue(field: QuadField) -> Result<AnalyticValue> {
    let h = AnalyticValue::from_int(class_number(field)? as i64);
    let sqrt_d = AnalyticValue::from_int(field.d().abs()).sqrt();
    if field.is_real() {
        Ok(h * 2.0 * regulator(field)? / sqrt_d)
    } else {
        let w = AnalyticValue::from_int(field.torsion_order() as i64);
        Ok(AnalyticValue::pi() * 2.0 * h / (w * sqrt_d))
    }
}

/// zeta_K(2) = zeta(2) L(2, chi_d).
pub fn dedekind_zeta_at_2(field: QuadField, prec: Precision) -> Result<AnalyticValue> {
    Ok(zeta2() * dirichlet_l_at_2_with(field.d(), prec)?)
}

/// Density 2^-r2 zeta_K(1) / zeta_K(2) of quadratic extensions of K by relative norm.
pub fn rel_quadratic_density(field: QuadField) -> Result<AnalyticValue> {
    rel_quadratic_density_with(field, Precision::default())
}

pub fn rel_quadratic_density_with(field: QuadField, prec: Precision) -> Result<AnalyticValue> {
    let r = dedekind_zeta_residue(field)? / dedekind_zeta_at_2(field, prec)?;
    Ok(r * 0.5f64.powi(field.r2() as i32))
}

/// The same density over the rationals: 1 / zeta(2).
pub fn rational_quadratic_density() -> AnalyticValue {
    AnalyticValue::exact(1.0) / zeta2()
}

// ---------------------------------------------------------------------------
// Residue lemma

/// Decomposition of 2 in a number field: one (f, e) pair per prime above 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplittingShape {
    pub primes: Vec<(u32, u32)>,
}

impl SplittingShape {
    pub fn new(primes: Vec<(u32, u32)>) -> Result<Self> {
        if primes.is_empty() || primes.iter().any(|&(f, e)| f == 0 || e == 0) {
            return Err(Error::domain(format!("malformed splitting shape {primes:?}")));
        }
        let mut primes = primes;
        primes.sort_unstable();
        Ok(SplittingShape { primes })
    }

    pub fn degree(&self) -> u32 {
        self.primes.iter().map(|&(f, e)| f * e).sum()
    }

    /// Decomposition of 2 in a quadratic field.
    pub fn of_field(field: QuadField) -> Self {
        let st = splitting_type(field, 2).expect("2 is prime");
        SplittingShape::new(st.primes.iter().map(|p| (p.f(), p.e())).collect()).expect("well formed")
    }

    /// Every shape with sum e f = n, each listed once.
    pub fn all_of_degree(n: u32) -> Vec<SplittingShape> {
        fn rec(left: u32, min: (u32, u32), cur: &mut Vec<(u32, u32)>, out: &mut Vec<SplittingShape>) {
            if left == 0 {
                out.push(SplittingShape { primes: cur.clone() });
                return;
            }
            for f in 1..=left {
                for e in 1..=left / f {
                    if (f, e) < min {
                        continue;
                    }
                    cur.push((f, e));
                    rec(left - f * e, (f, e), cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, (0, 0), &mut Vec::new(), &mut out);
        out
    }
}

/// Sum over c | 2 O_E of Nm(2/c)^-1 prod_{p | c} (1 - Nm(p)^-1), over all divisors.
pub fn residue_lemma_sum(shape: &SplittingShape) -> Result<BigRational> {
    let shape = SplittingShape::new(shape.primes.clone())?;
    let norms: Vec<BigInt> = shape.primes.iter().map(|&(f, _)| BigInt::from(2u32).pow(f)).collect();
    let exps: Vec<u32> = shape.primes.iter().map(|&(_, e)| e).collect();
    // odometer over exponent vectors k with 0 <= k_i <= e_i
    let mut k = vec![0u32; exps.len()];
    let mut total = BigRational::zero();
    loop {
        let mut term = BigRational::one();
        for i in 0..k.len() {
            let q = BigRational::from_integer(norms[i].clone());
            term /= num_traits::pow(q.clone(), (exps[i] - k[i]) as usize);
            if k[i] > 0 {
                term *= BigRational::one() - q.recip();
            }
        }
        total += term;
        let mut i = 0;
        loop {
            if i == k.len() {
                return Ok(total);
            }
            if k[i] < exps[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// The D4 constant

/// Contribution 2^(-r2-1) d^-2 zeta_K(1) / zeta_K(2) of one quadratic field.
pub fn d4_term(field: QuadField, prec: Precision) -> Result<AnalyticValue> {
    let d = AnalyticValue::from_int(field.d());
    Ok(rel_quadratic_density_with(field, prec)? * 0.5 / (d * d))
}

/// The same contribution through the explicit sum over c | 2 O_K.
pub fn d4_term_with_divisor_sum(field: QuadField, prec: Precision) -> Result<AnalyticValue> {
    let lemma = residue_lemma_sum(&SplittingShape::of_field(field))?;
    let d = AnalyticValue::from_int(field.d());
    Ok(rel_quadratic_density_with(field, prec)? * AnalyticValue::from_rational(&lemma) * 0.5 / (d * d))
}

/// Result of evaluating the truncated constant.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct D4Constant {
    pub value: AnalyticValue,
    /// Heuristic estimate of the omitted tail; not part of the certified radius.
    pub tail_estimate: f64,
    pub terms_used: usize,
}

/// Per-field terms for all fundamental discriminants |d| <= d0, ascending |d| then sign.
pub fn d4_terms(d0: u64, prec: Precision) -> Result<Vec<(FundDisc, AnalyticValue)>> {
    let discs = fundamental_discriminants(d0);
    discs
        .par_iter()
        .map(|&d| {
            let field = QuadField::new(d);
            let t = d4_term(field, prec)?;
            let t2 = d4_term_with_divisor_sum(field, prec)?;
            if !t.overlaps(&t2) {
                return Err(Error::invariant(format!("residue forms disagree at d = {}: {t} vs {t2}", d.get())));
            }
            Ok((d, t))
        })
        .collect()
}

/// Sum of the terms with |d| <= d0, together with a tail estimate.
pub fn d4_constant(d0: u64) -> Result<D4Constant> {
    d4_constant_with(d0, Precision::default())
}

pub fn d4_constant_with(d0: u64, prec: Precision) -> Result<D4Constant> {
    let terms = d4_terms(d0, prec)?;
    Ok(summarize(d0, &terms))
}

/// Partial sum over |d| <= d0 from a precomputed term list.
pub fn summarize(d0: u64, terms: &[(FundDisc, AnalyticValue)]) -> D4Constant {
    let used: Vec<_> = terms.iter().filter(|(d, _)| d.get().unsigned_abs() <= d0).collect();
    let value = AnalyticValue::sum(used.iter().map(|(_, t)| *t));
    // Terms decay like d^-2 with a bounded mean weight w = d^2 term per unit of |d|,
    // so the tail beyond d0 is about w / d0. Calibrate w on (d0/2, d0].
    let half = d0 / 2;
    let w: f64 = used
        .iter()
        .filter(|(d, _)| d.get().unsigned_abs() > half)
        .map(|(d, t)| t.midpoint * (d.get() as f64).powi(2))
        .sum::<f64>()
        / (d0 - half).max(1) as f64;
    D4Constant { value, tail_estimate: w / d0.max(1) as f64, terms_used: used.len() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> QuadField {
        QuadField::from_disc(d).unwrap()
    }

    #[test]
    fn residues() {
        assert!(dedekind_zeta_residue(k(-4)).unwrap().contains(std::f64::consts::FRAC_PI_4));
        let r = dedekind_zeta_residue(k(-3)).unwrap();
        assert!((r.midpoint - 0.604_599_788_078_072_6).abs() < 1e-12, "{r}");
        let r = dedekind_zeta_residue(k(5)).unwrap();
        assert!((r.midpoint - 0.430_408_940_964_004).abs() < 1e-12, "{r}");
    }

    #[test]
    fn densities() {
        let q = rational_quadratic_density();
        assert!(q.contains(6.0 / std::f64::consts::PI.powi(2)));
        let i = rel_quadratic_density(k(-4)).unwrap();
        assert!((i.midpoint - 0.2606).abs() < 5e-5, "{i}");
        // L(2, chi_5) = 4 pi^2 / (25 sqrt 5)
        let pi = std::f64::consts::PI;
        let l5 = 4.0 * pi * pi / (25.0 * 5f64.sqrt());
        let s5 = rel_quadratic_density(k(5)).unwrap();
        let expect = 2.0 * ((1.0 + 5f64.sqrt()) / 2.0).ln() / 5f64.sqrt() / (pi * pi / 6.0 * l5);
        assert!((s5.midpoint - expect).abs() < 1e-12, "{s5}");
        assert!((s5.midpoint - 0.3705).abs() < 5e-5, "{s5}");
    }

    #[test]
    fn lemma_examples() {
        let one = BigRational::one();
        for shape in [vec![(1, 1)], vec![(1, 2)], vec![(2, 1)], vec![(1, 1), (1, 1)]] {
            assert_eq!(residue_lemma_sum(&SplittingShape::new(shape).unwrap()).unwrap(), one);
        }
        assert!(SplittingShape::new(vec![(0, 1)]).is_err());
        let counts: Vec<usize> = (1..=4).map(|n| SplittingShape::all_of_degree(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 5, 11]);
    }

    #[test]
    fn constant_terms() {
        let p = Precision::default();
        let t3 = d4_term(k(-3), p).unwrap();
        assert!((t3.midpoint - 0.01307).abs() < 5e-6, "{t3}");
        let t4 = d4_term(k(-4), p).unwrap();
        assert!((t4.midpoint - 0.00814).abs() < 5e-6, "{t4}");
        let c = d4_constant(3).unwrap();
        assert_eq!(c.terms_used, 1);
        assert_eq!(c.value.midpoint, t3.midpoint);
    }
}
