//! Quadratic extensions L = K(sqrt(alpha)) of a quadratic field K, ordered
//! by the absolute norm of the relative discriminant.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, primes_up_to};
use crate::classgroup::{self, ClassGroup, Selmer2};
use crate::error::{Error, Result};
use crate::quad::{
    factor_element, ideal_from_factors, is_square, splitting_type, PrimeIdeal, QuadElement,
    QuadField, QuadIdeal, SplitKind,
};

/// A quadratic extension of a quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelExtension {
    pub base: QuadField,
    /// Square class representative, integral.
    pub alpha: QuadElement,
    /// The squarefree ideal a with (alpha) = a * c^2.
    pub ideal: QuadIdeal,
    /// Coordinates of alpha / alpha_0 on the 2-Selmer basis.
    pub selmer_bits: u32,
    pub rel_disc: QuadIdeal,
    pub rel_disc_norm: u64,
    /// Signed discriminant of L over Q.
    pub abs_disc: i64,
}

impl RelExtension {
    /// Canonical label: HNF of the squarefree ideal and the Selmer bits.
    pub fn label(&self) -> (String, u32) {
        (self.ideal.label(), self.selmer_bits)
    }

    fn sort_cmp(&self, other: &Self) -> Ordering {
        self.rel_disc_norm
            .cmp(&other.rel_disc_norm)
            .then_with(|| self.ideal.sort_key().cmp(&other.ideal.sort_key()))
            .then_with(|| self.selmer_bits.cmp(&other.selmer_bits))
    }
}

/// |Disc(L/Q)| = Disc(K/Q)^2 * Nm(Disc(L/K)).
pub fn tower_absolute_disc(field: QuadField, rel_disc_norm: u64) -> Result<u64> {
    if rel_disc_norm == 0 {
        return Err(Error::domain("relative discriminant norm must be positive"));
    }
    let d = field.d().unsigned_abs();
    d.checked_mul(d)
        .and_then(|d2| d2.checked_mul(rel_disc_norm))
        .ok_or_else(|| Error::capacity("absolute discriminant", "overflow", u64::MAX))
}

// ---------------------------------------------------------------------------
// Local computation at primes above 2

/// Exponent of a prime above 2 in Disc(K(sqrt(alpha))/K), for integral nonzero alpha.
fn wild_exponent(prime: &PrimeIdeal, alpha: &QuadElement) -> u32 {
    let e = prime.e();
    let v = prime.valuation(alpha);
    if v % 2 == 1 {
        return 2 * e + 1;
    }
    // alpha = pi^v u with u a local unit; find the quadratic defect of u
    let field = alpha.field();
    let pv = prime.uniformizer().pow(v);
    let mut t = 0;
    for (x, y) in [(1, 0), (0, 1), (1, 1)] {
        let r = QuadElement::new(field, x, y);
        let diff = alpha - &(&pv * &(&r * &r));
        if diff.is_zero() {
            return 0;
        }
        let w = prime.valuation(&diff);
        if w < v {
            continue;
        }
        t = t.max(((w - v) / 2).min(e));
    }
    2 * e - 2 * t
}

/// Make alpha integral by a rational square and strip square factors of its content.
pub fn normalize_alpha(alpha: &QuadElement) -> QuadElement {
    let (x, y, den) = alpha.parts();
    let (x, y) = (x * den, y * den);
    let s = arith::square_divisor(&x.gcd(&y));
    let sq = &s * &s;
    QuadElement::new(alpha.field(), x / &sq, y / &sq)
}

/// Disc(K(sqrt(alpha))/K) as an ideal of O_K.
pub fn relative_discriminant(field: QuadField, alpha: &QuadElement) -> Result<QuadIdeal> {
    if alpha.field() != field {
        return Err(Error::domain("element of a different field"));
    }
    if alpha.is_zero() {
        return Err(Error::domain("alpha = 0"));
    }
    if is_square(alpha) {
        return Err(Error::domain(format!("{alpha} is a square in {field}")));
    }
    let a = normalize_alpha(alpha);
    let mut factors: Vec<(PrimeIdeal, u32)> = factor_element(&a)?
        .into_iter()
        .filter(|(p, e)| p.p() != 2 && e % 2 == 1)
        .map(|(p, _)| (p, 1))
        .collect();
    for p in splitting_type(field, 2)?.primes {
        let ex = wild_exponent(&p, &a);
        if ex > 0 {
            factors.push((p, ex));
        }
    }
    Ok(ideal_from_factors(field, &factors))
}

/// Disc(Q(sqrt(a))/Q) as a positive integer, for a nonsquare rational a.
pub fn relative_discriminant_rational(a: &BigRational) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::domain("alpha = 0"));
    }
    if arith::is_rational_square(a) {
        return Err(Error::domain(format!("{a} is a square in Q")));
    }
    let n = arith::squarefree_kernel(&(a.numer() * a.denom()));
    let odd = &n.abs() >> n.abs().trailing_zeros().unwrap_or(0) as usize;
    let two = if n.is_even() {
        8
    } else if n.mod_floor(&BigInt::from(4)) == BigInt::one() {
        1
    } else {
        4
    };
    Ok(odd * BigInt::from(two))
}

// ---------------------------------------------------------------------------
// Enumeration

/// Arithmetic data of a base field needed to enumerate its quadratic extensions.
#[derive(Clone, Debug)]
pub struct BaseData {
    pub field: QuadField,
    pub class_group: ClassGroup,
    pub selmer: Selmer2,
    pub two_primes: Vec<PrimeIdeal>,
    unit: Option<(QuadElement, f64)>,
}

impl BaseData {
    pub fn new(field: QuadField) -> Result<Self> {
        let class_group = classgroup::class_group(field)?;
        let selmer = classgroup::selmer2_from(&class_group)?;
        let two_primes = splitting_type(field, 2)?.primes;
        let unit = if field.is_real() {
            let eps = classgroup::fundamental_unit(field)?;
            let (l, _) = eps.log_abs_embeddings();
            Some((eps, l))
        } else {
            None
        };
        Ok(BaseData { field, class_group, selmer, two_primes, unit })
    }

    /// Multiply by an even power of the fundamental unit to balance the two
    /// real embeddings.
    fn balance(&self, alpha: QuadElement) -> QuadElement {
        let Some((eps, reg)) = &self.unit else {
            return alpha;
        };
        let (l1, l2) = alpha.log_abs_embeddings();
        let k = ((l2 - l1) / (4.0 * reg)).round() as i64;
        if k == 0 {
            return alpha;
        }
        let e2 = if k > 0 { eps.pow(2 * k as u32) } else { eps.conj().pow(2 * (-k) as u32) };
        // eps^-1 = +-sigma(eps), so sigma(eps)^2 = eps^-2
        &alpha * &e2
    }
}

struct OddPrime {
    ideal: QuadIdeal,
    norm: u64,
    dlog: Vec<u64>,
}

/// All quadratic extensions of K with Nm(Disc(L/K)) <= y, one per
/// K-isomorphism class, sorted by (norm, ideal, Selmer bits).
pub fn enumerate_quadratic_extensions(field: QuadField, y: u64) -> Result<Vec<RelExtension>> {
    let base = BaseData::new(field)?;
    enumerate_with(&base, y)
}

pub fn enumerate_with(base: &BaseData, y: u64) -> Result<Vec<RelExtension>> {
    let field = base.field;
    let cl = &base.class_group;
    let inv = cl.invariants().to_vec();
    // odd prime ideals of norm <= y, ascending
    let mut primes = Vec::new();
    for p in primes_up_to(y) {
        if p == 2 {
            continue;
        }
        let st = splitting_type(field, p)?;
        for pr in st.primes {
            let norm = if st.kind == SplitKind::Inert {
                match p.checked_mul(p) {
                    Some(n) if n <= y => n,
                    _ => continue,
                }
            } else {
                p
            };
            let dlog = cl.dlog(pr.ideal()).to_vec();
            primes.push(OddPrime { ideal: pr.ideal().clone(), norm, dlog });
        }
    }
    primes.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.ideal.sort_key().cmp(&b.ideal.sort_key())));

    // subsets of the primes above 2, with the exact contribution 2e+1 when present
    let k2 = base.two_primes.len();
    let subsets: Vec<(u32, u64)> = (0..1u32 << k2)
        .filter_map(|mask| {
            let mut lb = 1u64;
            for (i, p) in base.two_primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    lb = lb.checked_mul(p.norm().checked_pow(2 * p.e() + 1)?)?;
                }
            }
            (lb <= y).then_some((mask, lb))
        })
        .collect();

    let mut out = Vec::new();
    let mut visit = |odd: &QuadIdeal, odd_norm: u64, dlog: &[u64]| -> Result<()> {
        for &(mask, lb) in &subsets {
            if odd_norm.saturating_mul(lb) > y {
                continue;
            }
            let mut ideal = odd.clone();
            let mut v = dlog.to_vec();
            for (i, p) in base.two_primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    ideal = ideal.mul(p.ideal());
                    for (a, b) in v.iter_mut().zip(cl.dlog(p.ideal())) {
                        *a += b;
                    }
                }
            }
            for (a, n) in v.iter_mut().zip(&inv) {
                *a %= n;
            }
            emit(base, odd, &ideal, &v, mask, odd_norm, y, &mut out)?;
        }
        Ok(())
    };

    // depth-first over squarefree products of odd primes
    let mut stack: Vec<(usize, QuadIdeal, u64, Vec<u64>)> =
        vec![(0, QuadIdeal::unit(field), 1, vec![0; inv.len()])];
    while let Some((start, ideal, norm, dlog)) = stack.pop() {
        visit(&ideal, norm, &dlog)?;
        for j in start..primes.len() {
            let p = &primes[j];
            let Some(n) = norm.checked_mul(p.norm) else { break };
            if n > y {
                break;
            }
            let v: Vec<u64> = dlog
                .iter()
                .zip(&p.dlog)
                .zip(&inv)
                .map(|((a, b), m)| (a + b) % m)
                .collect();
            stack.push((j + 1, ideal.mul(&p.ideal), n, v));
        }
    }
    out.sort_by(|a, b| a.sort_cmp(b));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn emit(
    base: &BaseData,
    odd_part: &QuadIdeal,
    ideal: &QuadIdeal,
    dlog: &[u64],
    mask: u32,
    odd_norm: u64,
    y: u64,
    out: &mut Vec<RelExtension>,
) -> Result<()> {
    let field = base.field;
    let cl = &base.class_group;
    // a * c^2 principal for c in the class -dlog/2
    let Some(c) = cl.half_inverse_dlog(dlog) else {
        return Ok(());
    };
    let alpha0 = if ideal.is_unit() {
        QuadElement::one(field)
    } else {
        let target = ideal.mul(&c.mul(c));
        classgroup::principal_generator(&target).ok_or_else(|| {
            Error::invariant(format!("{target} should be principal in {field}"))
        })?
    };
    for bits in 0..base.selmer.order() as u32 {
        if bits == 0 && ideal.is_unit() {
            continue;
        }
        let alpha = if bits == 0 { alpha0.clone() } else { &alpha0 * &base.selmer.element(bits) };
        let mut norm = odd_norm;
        let mut wild = Vec::new();
        let mut ok = true;
        for (i, p) in base.two_primes.iter().enumerate() {
            let ex = if mask >> i & 1 == 1 {
                2 * p.e() + 1
            } else {
                wild_exponent(p, &alpha)
            };
            match norm.checked_mul(p.norm().pow(ex)) {
                Some(n) if n <= y => norm = n,
                _ => {
                    ok = false;
                    break;
                }
            }
            if ex > 0 {
                wild.push((p.clone(), ex));
            }
        }
        if !ok {
            continue;
        }
        let alpha = base.balance(normalize_alpha(&alpha));
        let rel_disc = odd_part.mul(&ideal_from_factors(field, &wild));
        debug_assert_eq!(rel_disc.norm_u64(), Some(norm));
        let abs = tower_absolute_disc(field, norm)? as i64;
        let sign = if field.is_real() {
            let neg = [true, false]
                .iter()
                .filter(|&&s| alpha.sign_at(s) == Ordering::Less)
                .count();
            if neg % 2 == 1 { -1 } else { 1 }
        } else {
            1
        };
        out.push(RelExtension {
            base: field,
            alpha,
            ideal: ideal.clone(),
            selmer_bits: bits,
            rel_disc,
            rel_disc_norm: norm,
            abs_disc: sign * abs,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> QuadField {
        QuadField::from_disc(d).unwrap()
    }

    #[test]
    fn rational_base() {
        let q = |n: i64| relative_discriminant_rational(&BigRational::from_integer(n.into())).unwrap();
        assert_eq!(q(-1), BigInt::from(4));
        assert_eq!(q(5), BigInt::from(5));
        assert_eq!(q(2), BigInt::from(8));
        assert_eq!(q(-3), BigInt::from(3));
        assert_eq!(q(12), BigInt::from(12));
        assert!(relative_discriminant_rational(&BigRational::from_integer(9.into())).is_err());
    }

    #[test]
    fn zeta8_over_gaussian() {
        let f = k(-4);
        let i = QuadElement::omega(f);
        let d = relative_discriminant(f, &i).unwrap();
        assert_eq!(d.norm(), BigInt::from(16));
        // -8 = 2 (2i)^2 and 2 = -i (1 + i)^2 lie in the class of i
        assert_eq!(relative_discriminant(f, &QuadElement::from_int(f, -8)).unwrap(), d);
        assert!(relative_discriminant(f, &QuadElement::from_int(f, -1)).is_err());
        // Q(i, sqrt 3) = Q(zeta_12) has relative norm 144/16 = 9, below Q(zeta_8)
        let ext = enumerate_quadratic_extensions(f, 16).unwrap();
        assert_eq!(ext.len(), 2);
        assert_eq!(ext[0].alpha, QuadElement::from_int(f, 3));
        assert_eq!((ext[0].rel_disc_norm, ext[0].abs_disc), (9, 144));
        assert_eq!(ext[1].alpha, i);
        assert_eq!((ext[1].rel_disc_norm, ext[1].abs_disc), (16, 256));
        assert_eq!(enumerate_quadratic_extensions(f, 15).unwrap().len(), 1);
        assert!(enumerate_quadratic_extensions(f, 8).unwrap().is_empty());
    }

    #[test]
    fn zeta12_over_sqrt3() {
        let ext = enumerate_quadratic_extensions(k(12), 1).unwrap();
        assert_eq!(ext.len(), 1);
        assert_eq!(ext[0].rel_disc_norm, 1);
        assert_eq!(ext[0].abs_disc, 144);
    }

    #[test]
    fn tower_formula() {
        assert_eq!(tower_absolute_disc(k(-4), 16).unwrap(), 256);
        assert_eq!(tower_absolute_disc(k(12), 1).unwrap(), 144);
        assert!(tower_absolute_disc(k(5), 0).is_err());
    }

    #[test]
    fn enumeration_matches_direct_discriminants() {
        for d in [-4, 5, -20, 8, -23, 12, -15, 40] {
            let f = k(d);
            for e in enumerate_quadratic_extensions(f, 300).unwrap() {
                let direct = relative_discriminant(f, &e.alpha).unwrap();
                assert_eq!(direct, e.rel_disc, "d={d} alpha={}", e.alpha);
            }
        }
    }
}
