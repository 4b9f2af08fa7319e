//! Independent brute-force checks: maximal-order discriminants of quartic
//! fields, Galois groups from the resolvent cubic, and a naive enumeration of
//! square classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, exact_sqrt};
use crate::error::{Error, Result};
use crate::quad::{factor_element, is_square, QuadElement, QuadField, QuadIdeal};
use crate::relquad::relative_discriminant;

// ---------------------------------------------------------------------------
// Integer polynomials

/// Coefficients low to high.
type Poly = Vec<BigInt>;

fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[BigInt]) -> Poly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// A superset of the floors of the real roots of p, sorted.
fn root_floors(p: &[BigInt]) -> Vec<BigInt> {
    let p = trim(p.to_vec());
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![(-&p[0]).div_floor(&p[1])];
    }
    let crit = root_floors(&derivative(&p));
    // Cauchy bound
    let lead = p[n].abs();
    let bound: BigInt = p[..n].iter().map(|c| Integer::div_ceil(&c.abs(), &lead)).max().unwrap() + 1;
    let mut out = crit.clone();
    let mut edges = vec![-bound.clone()];
    for c in &crit {
        edges.push(c.clone());
        edges.push(c + 1);
    }
    edges.push(bound);
    // monotone pieces [edges[2k], edges[2k+1]]
    for pair in edges.chunks(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        if lo > hi {
            continue;
        }
        let (flo, fhi) = (eval(&p, lo), eval(&p, hi));
        if flo.is_zero() {
            out.push(lo.clone());
        }
        if fhi.is_zero() {
            out.push(hi.clone());
        }
        if flo.sign() == fhi.sign() || flo.is_zero() || fhi.is_zero() {
            continue;
        }
        // invariant: sign changes on [a, b]
        let (mut a, mut b) = (lo.clone(), hi.clone());
        let sa = flo.sign();
        while &b - &a > BigInt::one() {
            let m: BigInt = (&a + &b).div_floor(&BigInt::from(2));
            let fm = eval(&p, &m);
            if fm.is_zero() {
                a = m;
                break;
            }
            if fm.sign() == sa {
                a = m;
            } else {
                b = m;
            }
        }
        out.push(a);
    }
    out.sort();
    out.dedup();
    out
}

/// Integer roots of an integer polynomial, sorted, without multiplicity.
pub fn integer_roots(p: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = root_floors(p)
        .into_iter()
        .flat_map(|k| [k.clone(), k + 1])
        .filter(|k| eval(p, k).is_zero())
        .collect();
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Quartics

/// A monic integer quartic x^4 + a x^3 + b x^2 + c x + d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuarticPoly {
    /// [d, c, b, a, 1]
    coeffs: [BigInt; 5],
}

impl QuarticPoly {
    /// x^4 + a x^3 + b x^2 + c x + d.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        QuarticPoly {
            coeffs: [d.into(), c.into(), b.into(), a.into(), BigInt::one()],
        }
    }

    /// From coefficients low to high; the leading one must be 1.
    pub fn from_coeffs(coeffs: [BigInt; 5]) -> Result<Self> {
        if !coeffs[4].is_one() {
            return Err(Error::domain("quartic must be monic"));
        }
        Ok(QuarticPoly { coeffs })
    }

    pub fn coeffs(&self) -> &[BigInt; 5] {
        &self.coeffs
    }

    fn abcd(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.coeffs[3], &self.coeffs[2], &self.coeffs[1], &self.coeffs[0])
    }

    pub fn discriminant(&self) -> BigInt {
        let (a, b, c, d) = self.abcd();
        let i = |n: i64| BigInt::from(n);
        let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
        let terms = [
            i(256) * d * &d2,
            i(-192) * a * c * &d2,
            i(-128) * &b2 * &d2,
            i(144) * b * &c2 * d,
            i(-27) * &c2 * &c2,
            i(144) * &a2 * b * &d2,
            i(-6) * &a2 * &c2 * d,
            i(-80) * a * &b2 * c * d,
            i(18) * a * b * &c2 * c,
            i(16) * &b2 * &b2 * d,
            i(-4) * &b2 * b * &c2,
            i(-27) * &a2 * &a2 * &d2,
            i(18) * &a2 * a * b * c * d,
            i(-4) * &a2 * a * &c2 * c,
            i(-4) * &a2 * &b2 * b * d,
            &a2 * &b2 * &c2,
        ];
        terms.into_iter().sum()
    }

    /// Resolvent cubic y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2),
    /// whose roots are x1 x2 + x3 x4 and its conjugates.
    pub fn resolvent(&self) -> [BigInt; 4] {
        let (a, b, c, d) = self.abcd();
        [
            -(a * a * d - BigInt::from(4) * b * d + c * c),
            a * c - BigInt::from(4) * d,
            -b.clone(),
            BigInt::one(),
        ]
    }

    /// Whether the quartic is irreducible over Q.
    pub fn is_irreducible(&self) -> bool {
        if !integer_roots(&self.coeffs).is_empty() {
            return false;
        }
        // a factorization (x^2 + p x + q)(x^2 + r x + s) has q + s a root of the resolvent
        let (a, b, c, d) = self.abcd();
        for z in integer_roots(&self.resolvent()) {
            // q, s roots of T^2 - z T + d; p, r roots of T^2 - a T + (b - z)
            let Some(qs) = quadratic_integer_roots(&z, d) else { continue };
            let Some(pr) = quadratic_integer_roots(a, &(b - &z)) else { continue };
            let (q, s) = qs;
            let (p, r) = pr;
            if &(&p * &s + &q * &r) == c || &(&r * &s + &q * &p) == c {
                return false;
            }
        }
        true
    }
}

/// Integer roots (u, v) of T^2 - sum T + prod, if both are integers.
fn quadratic_integer_roots(sum: &BigInt, prod: &BigInt) -> Option<(BigInt, BigInt)> {
    let disc = sum * sum - BigInt::from(4) * prod;
    let r = exact_sqrt(&disc)?;
    let u = sum + &r;
    if u.is_odd() {
        return None;
    }
    let u = u / 2;
    let v = sum - &u;
    Some((u, v))
}

impl fmt::Display for QuarticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^4")?;
        for (i, c) in self.coeffs.iter().enumerate().take(4).rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let m = c.abs();
            match i {
                0 => write!(f, " {sign} {m}")?,
                1 if m.is_one() => write!(f, " {sign} x")?,
                1 => write!(f, " {sign} {m}*x")?,
                _ if m.is_one() => write!(f, " {sign} x^{i}")?,
                _ => write!(f, " {sign} {m}*x^{i}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Galois groups

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuarticGalois {
    S4,
    A4,
    D4,
    C4,
    V4,
}

impl fmt::Display for QuarticGalois {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn is_square_int(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// Galois group of an irreducible quartic from its resolvent cubic.
pub fn resolvent_cubic_galois(f: &QuarticPoly) -> Result<QuarticGalois> {
    if !f.is_irreducible() {
        return Err(Error::domain(format!("{f} is reducible")));
    }
    let disc = f.discriminant();
    let roots = integer_roots(&f.resolvent());
    let g = match roots.len() {
        0 => {
            if is_square_int(&disc) {
                QuarticGalois::A4
            } else {
                QuarticGalois::S4
            }
        }
        1 => {
            // C4 iff x^2 - theta x + d and x^2 + a x + (b - theta) split over Q(sqrt(disc))
            let theta = &roots[0];
            let (a, b, _, d) = f.abcd();
            let q1 = theta * theta - BigInt::from(4) * d;
            let q2 = a * a - BigInt::from(4) * (b - theta);
            let splits = |q: &BigInt| q.is_zero() || is_square_int(q) || is_square_int(&(q * &disc));
            if splits(&q1) && splits(&q2) {
                QuarticGalois::C4
            } else {
                QuarticGalois::D4
            }
        }
        _ => QuarticGalois::V4,
    };
    Ok(g)
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, for the Dedekind criterion

type PolyP = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn trim_p(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn reduce_p(f: &[BigInt], p: u64) -> PolyP {
    let pb = BigInt::from(p);
    trim_p(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn inv_p(a: u64, p: u64) -> u64 {
    arith::pow_mod(a, p - 2, p)
}

fn mul_p(a: &[u64], b: &[u64], p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim_p(out)
}

/// Quotient and remainder; b nonzero.
fn divrem_p(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP) {
    let mut r = trim_p(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_p(*b.last().unwrap(), p);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[i + k] = (r[i + k] + p - mulmod(c, bi, p)) % p;
        }
        r = trim_p(r);
    }
    (trim_p(q), r)
}

fn monic_p(a: PolyP, p: u64) -> PolyP {
    match a.last() {
        None => a,
        Some(&l) => {
            let li = inv_p(l, p);
            a.into_iter().map(|c| mulmod(c, li, p)).collect()
        }
    }
}

fn gcd_p(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let (mut a, mut b) = (trim_p(a.to_vec()), trim_p(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem_p(&a, &b, p);
        a = b;
        b = r;
    }
    monic_p(a, p)
}

fn deriv_p(a: &[u64], p: u64) -> PolyP {
    trim_p(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

/// Product of the distinct monic irreducible factors of a nonzero polynomial.
fn radical_p(f: &[u64], p: u64) -> PolyP {
    let f = monic_p(trim_p(f.to_vec()), p);
    if f.len() <= 1 {
        return vec![1];
    }
    let df = deriv_p(&f, p);
    if df.is_empty() {
        // f(x) = g(x^p) = g(x)^p over F_p
        let g: PolyP = f.iter().step_by(p as usize).copied().collect();
        return radical_p(&g, p);
    }
    let u = gcd_p(&f, &df, p);
    let (w, _) = divrem_p(&f, &u, p);
    let ru = radical_p(&u, p);
    let g = gcd_p(&w, &ru, p);
    let (ru_g, _) = divrem_p(&ru, &g, p);
    monic_p(mul_p(&w, &ru_g, p), p)
}

fn lift(a: &[u64]) -> Poly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Dedekind criterion: whether Z[x]/(f) is maximal at p.
pub fn dedekind_p_maximal(f: &QuarticPoly, p: u64) -> bool {
    let fp = reduce_p(&f.coeffs, p);
    let g = radical_p(&fp, p);
    let (h, r) = divrem_p(&fp, &g, p);
    debug_assert!(r.is_empty());
    // F = (g h - f) / p over Z
    let gh = poly_mul(&lift(&g), &lift(&h));
    let n = gh.len().max(5);
    let pb = BigInt::from(p);
    let big_f: Poly = (0..n)
        .map(|i| {
            let x = gh.get(i).cloned().unwrap_or_default();
            let y = f.coeffs.get(i).cloned().unwrap_or_default();
            let diff = x - y;
            debug_assert!((&diff % &pb).is_zero());
            diff / &pb
        })
        .collect();
    let fbar = reduce_p(&big_f, p);
    let t = gcd_p(&gcd_p(&fbar, &g, p), &h, p);
    t.len() <= 1
}

// ---------------------------------------------------------------------------
// Round 2

type Vec4 = [BigRational; 4];

fn zero4() -> Vec4 {
    std::array::from_fn(|_| BigRational::zero())
}

/// Quartic algebra Q[x]/(f) on the power basis.
struct Algebra {
    /// x^4 = -(d + c x + b x^2 + a x^3)
    f: [BigInt; 5],
}

impl Algebra {
    fn mul(&self, u: &Vec4, v: &Vec4) -> Vec4 {
        let mut prod = vec![BigRational::zero(); 7];
        for i in 0..4 {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                prod[i + j] += &u[i] * &v[j];
            }
        }
        for k in (4..7).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..4 {
                prod[k - 4 + i] -= &c * BigRational::from_integer(self.f[i].clone());
            }
        }
        std::array::from_fn(|i| prod[i].clone())
    }
}

/// Inverse of a 4x4 rational matrix (rows), by Gauss-Jordan.
fn invert(m: &[Vec4; 4]) -> [Vec4; 4] {
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<BigRational>> = (0..4)
        .map(|i| (0..4).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..4 {
        let piv = (col..4).find(|&r| !a[r][col].is_zero()).expect("nonsingular basis");
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = a[col][col].recip();
        for j in 0..4 {
            a[col][j] *= &s;
            inv[col][j] *= &s;
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let k = a[r][col].clone();
                for j in 0..4 {
                    let (x, y) = (a[col][j].clone(), inv[col][j].clone());
                    a[r][j] -= &k * x;
                    inv[r][j] -= &k * y;
                }
            }
        }
    }
    std::array::from_fn(|i| std::array::from_fn(|j| inv[i][j].clone()))
}

fn det(m: &[Vec4; 4]) -> BigRational {
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.to_vec()).collect();
    let mut det = BigRational::one();
    for col in 0..4 {
        let Some(piv) = (col..4).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..4 {
            let k = &a[r][col] / &a[col][col];
            for j in col..4 {
                let x = a[col][j].clone();
                a[r][j] -= &k * x;
            }
        }
    }
    det
}

/// v * M for a row vector v.
fn vec_mat(v: &Vec4, m: &[Vec4; 4]) -> Vec4 {
    let mut out = zero4();
    for i in 0..4 {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            out[j] += &v[i] * &m[i][j];
        }
    }
    out
}

/// Row Hermite normal form of an integer lattice of full rank 4.
fn hnf_rows(mut rows: Vec<[BigInt; 4]>) -> [[BigInt; 4]; 4] {
    let mut out: Vec<[BigInt; 4]> = Vec::with_capacity(4);
    for col in 0..4 {
        // gcd-combine all remaining rows on this column into a single pivot row
        let mut pivot: Option<[BigInt; 4]> = None;
        let mut rest = Vec::with_capacity(rows.len());
        for r in rows.into_iter() {
            if r[col].is_zero() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(pv) => {
                    let e = pv[col].extended_gcd(&r[col]);
                    let (u, v) = (pv[col].clone() / &e.gcd, r[col].clone() / &e.gcd);
                    let new_p: [BigInt; 4] = std::array::from_fn(|j| &e.x * &pv[j] + &e.y * &r[j]);
                    let killed: [BigInt; 4] = std::array::from_fn(|j| &v * &pv[j] - &u * &r[j]);
                    rest.push(killed);
                    pivot = Some(new_p);
                }
            }
        }
        let mut pv = pivot.expect("lattice of full rank");
        if pv[col].is_negative() {
            for x in pv.iter_mut() {
                *x = -x.clone();
            }
        }
        out.push(pv);
        rows = rest.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    }
    // reduce entries above the pivots
    for col in 0..4 {
        for r in 0..col {
            let q = out[r][col].div_floor(&out[col][col]);
            if !q.is_zero() {
                let pr = out[col].clone();
                for j in 0..4 {
                    out[r][j] -= &q * &pr[j];
                }
            }
        }
    }
    std::array::from_fn(|i| out[i].clone())
}

/// Kernel {c in F_p^n : c * A = 0} of an n x m matrix over F_p.
fn left_kernel_mod_p(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    // transpose: solve A^T c = 0
    let mut t: Vec<Vec<u64>> = (0..m).map(|j| (0..n).map(|i| a[i][j] % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..m).find(|&r| t[r][col] != 0) else { continue };
        t.swap(row, piv);
        let s = inv_p(t[row][col], p);
        for x in t[row].iter_mut() {
            *x = mulmod(*x, s, p);
        }
        for r in 0..m {
            if r != row && t[r][col] != 0 {
                let k = t[r][col];
                for j in 0..n {
                    let y = mulmod(k, t[row][j], p);
                    t[r][j] = (t[r][j] + p - y) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - t[r][fc]) % p;
            }
            v
        })
        .collect()
}

/// State of the p-maximalization of an order of a quartic field.
#[derive(Clone, Debug)]
pub struct QuarticOrderState {
    pub poly: QuarticPoly,
    /// Rows: a Z-basis of the order on the power basis.
    pub basis: [Vec4; 4],
    pub disc: BigInt,
}

impl QuarticOrderState {
    fn equation_order(poly: &QuarticPoly) -> Self {
        let basis = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { BigRational::one() } else { BigRational::zero() })
        });
        QuarticOrderState { poly: poly.clone(), basis, disc: poly.discriminant() }
    }

    fn recompute_disc(&mut self) {
        let dt = det(&self.basis);
        let d = BigRational::from_integer(self.poly.discriminant()) * &dt * &dt;
        assert!(d.is_integer(), "discriminant of an order is an integer");
        self.disc = d.to_integer();
    }

    /// One enlargement at p; returns false if the order is already p-maximal.
    fn enlarge(&mut self, p: u64) -> bool {
        let alg = Algebra { f: self.poly.coeffs.clone() };
        let binv = invert(&self.basis);
        let coords = |x: &Vec4| -> [BigInt; 4] {
            let c = vec_mat(x, &binv);
            std::array::from_fn(|i| {
                assert!(c[i].is_integer(), "product left the order");
                c[i].to_integer()
            })
        };
        // structure constants w_i w_j = sum_k m[i][j][k] w_k
        let m: Vec<Vec<[BigInt; 4]>> = (0..4)
            .map(|i| (0..4).map(|j| coords(&alg.mul(&self.basis[i], &self.basis[j]))).collect())
            .collect();
        let pb = BigInt::from(p);
        let mulp = |u: &[u64; 4], v: &[u64; 4]| -> [u64; 4] {
            let mut out = [0u64; 4];
            for i in 0..4 {
                if u[i] == 0 {
                    continue;
                }
                for j in 0..4 {
                    if v[j] == 0 {
                        continue;
                    }
                    let uv = mulmod(u[i], v[j], p);
                    for (k, o) in out.iter_mut().enumerate() {
                        let c = m[i][j][k].mod_floor(&pb).to_u64().unwrap();
                        *o = (*o + mulmod(uv, c, p)) % p;
                    }
                }
            }
            out
        };
        let powp = |x: [u64; 4], e: u64| -> [u64; 4] {
            let mut acc = [1u64 % p, 0, 0, 0];
            // the identity of the order is 1 = coords of the power basis element 1
            let one = coords(&std::array::from_fn(|i| if i == 0 { BigRational::one() } else { BigRational::zero() }));
            for (k, a) in acc.iter_mut().enumerate() {
                *a = one[k].mod_floor(&pb).to_u64().unwrap();
            }
            let mut base = x;
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulp(&acc, &base);
                }
                base = mulp(&base, &base);
                e >>= 1;
            }
            acc
        };
        // radical: kernel of x -> x^(p^j) with p^j >= 4
        let mut q = p;
        while q < 4 {
            q *= p;
        }
        let frob: Vec<Vec<u64>> = (0..4)
            .map(|i| {
                let mut e = [0u64; 4];
                e[i] = 1;
                let mut y = e;
                let mut done = 1u64;
                while done < q {
                    y = powp(y, p);
                    done *= p;
                }
                y.to_vec()
            })
            .collect();
        let ker = left_kernel_mod_p(&frob, p);
        let mut gens: Vec<[BigInt; 4]> = (0..4)
            .map(|i| std::array::from_fn(|j| if i == j { pb.clone() } else { BigInt::zero() }))
            .collect();
        for v in &ker {
            gens.push(std::array::from_fn(|j| BigInt::from(v[j])));
        }
        let ip = hnf_rows(gens);
        // I_p basis elements on the power basis, and the inverse to read coordinates
        let ip_q: [Vec4; 4] = std::array::from_fn(|k| {
            let row: Vec4 = std::array::from_fn(|j| BigRational::from_integer(ip[k][j].clone()));
            vec_mat(&row, &self.basis)
        });
        let ip_inv = invert(&ip_q);
        // U = {x in O : x I_p in p I_p}: linear conditions mod p
        let conds: Vec<Vec<u64>> = (0..4)
            .map(|i| {
                let mut row = Vec::with_capacity(16);
                for k in 0..4 {
                    let prod = alg.mul(&self.basis[i], &ip_q[k]);
                    let c = vec_mat(&prod, &ip_inv);
                    for x in c.iter() {
                        assert!(x.is_integer(), "I_p is an ideal");
                        row.push(x.to_integer().mod_floor(&pb).to_u64().unwrap());
                    }
                }
                row
            })
            .collect();
        let uker = left_kernel_mod_p(&conds, p);
        if uker.is_empty() {
            return false;
        }
        let mut ugens: Vec<[BigInt; 4]> = (0..4)
            .map(|i| std::array::from_fn(|j| if i == j { pb.clone() } else { BigInt::zero() }))
            .collect();
        for v in &uker {
            ugens.push(std::array::from_fn(|j| BigInt::from(v[j])));
        }
        let u = hnf_rows(ugens);
        let new_basis: [Vec4; 4] = std::array::from_fn(|k| {
            let row: Vec4 = std::array::from_fn(|j| BigRational::new(u[k][j].clone(), pb.clone()));
            vec_mat(&row, &self.basis)
        });
        let old = det(&self.basis).abs();
        let new = det(&new_basis).abs();
        if new == old {
            return false;
        }
        assert!(new < old, "ring of multipliers contains the order");
        self.basis = new_basis;
        self.recompute_disc();
        true
    }
}

/// Primes p with p^2 dividing the discriminant.
fn square_primes(f: &QuarticPoly, disc: &BigInt) -> Vec<u64> {
    // for even quartics x^4 + b x^2 + d the discriminant is 16 d (b^2 - 4d)^2
    let (a, b, c, d) = f.abcd();
    let mut cands: Vec<(u64, u32)> = Vec::new();
    let mut push = |n: &BigInt, mult: u32| {
        for (p, e) in arith::factor_bigint(n) {
            let p = p.to_u64().expect("prime factor fits in 64 bits");
            match cands.iter_mut().find(|(q, _)| *q == p) {
                Some((_, x)) => *x += e * mult,
                None => cands.push((p, e * mult)),
            }
        }
    };
    if a.is_zero() && c.is_zero() {
        push(&BigInt::from(16), 1);
        push(d, 1);
        push(&(b * b - BigInt::from(4) * d), 2);
    } else {
        push(disc, 1);
    }
    let mut out: Vec<u64> = cands.into_iter().filter(|&(_, e)| e >= 2).map(|(p, _)| p).collect();
    out.sort_unstable();
    out
}

/// Discriminant of the maximal order of Q[x]/(f).
pub fn maximal_order_disc(f: &QuarticPoly) -> Result<BigInt> {
    Ok(maximal_order(f)?.disc)
}

/// The maximal order of Q[x]/(f), by Dedekind and Round 2 at each p with p^2 | disc(f).
pub fn maximal_order(f: &QuarticPoly) -> Result<QuarticOrderState> {
    if !f.is_irreducible() {
        return Err(Error::domain(format!("{f} is reducible")));
    }
    let mut state = QuarticOrderState::equation_order(f);
    let disc = state.disc.clone();
    for p in square_primes(f, &disc) {
        if dedekind_p_maximal(f, p) {
            continue;
        }
        let mut guard = 0;
        while state.enlarge(p) {
            guard += 1;
            if guard > 64 {
                return Err(Error::invariant(format!("Round 2 at {p} did not stabilize for {f}")));
            }
        }
    }
    let q = &disc / &state.disc;
    if !(&disc % &state.disc).is_zero() || exact_sqrt(&q).is_none() {
        return Err(Error::invariant(format!("index of Z[x]/({f}) is not integral")));
    }
    Ok(state)
}

// ---------------------------------------------------------------------------
// Naive square classes

/// A square class found by the naive search.
#[derive(Clone, Debug)]
pub struct NaiveClass {
    pub alpha: QuadElement,
    pub rel_disc: QuadIdeal,
}

/// Default bound on the coefficient height of the naive search.
pub const NAIVE_HEIGHT_CAPACITY: u64 = 200;

/// Square classes a + b w, |a|, |b| <= h, whose relative discriminant has norm <= y.
pub fn naive_selmer_enum(field: QuadField, h: u64, y: u64) -> Result<Vec<NaiveClass>> {
    if h > NAIVE_HEIGHT_CAPACITY {
        return Err(Error::capacity("naive search height", h, NAIVE_HEIGHT_CAPACITY));
    }
    let h = h as i64;
    // group by (squarefree ideal part, relative discriminant), then dedupe by ratios
    let mut groups: std::collections::HashMap<(QuadIdeal, QuadIdeal), Vec<QuadElement>> =
        std::collections::HashMap::new();
    let mut order = Vec::new();
    for a in -h..=h {
        for b in -h..=h {
            let alpha = QuadElement::new(field, a, b);
            if alpha.is_zero() || is_square(&alpha) {
                continue;
            }
            let rd = relative_discriminant(field, &alpha)?;
            if rd.norm() > BigInt::from(y) {
                continue;
            }
            let sqfree = factor_element(&alpha)?
                .into_iter()
                .filter(|(_, e)| e % 2 == 1)
                .fold(QuadIdeal::unit(field), |acc, (p, _)| acc.mul(p.ideal()));
            let key = (sqfree, rd);
            let reps = groups.entry(key.clone()).or_default();
            if reps.iter().any(|r| is_square(&(r * &alpha))) {
                continue;
            }
            if reps.is_empty() {
                order.push(key);
            }
            reps.push(alpha);
        }
    }
    let mut out = Vec::new();
    for key in order {
        for alpha in &groups[&key] {
            out.push(NaiveClass { alpha: alpha.clone(), rel_disc: key.1.clone() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuarticPoly {
        QuarticPoly::new(a, b, c, d)
    }

    #[test]
    fn discriminant_matches_resolvent() {
        for (a, b, c, d) in [(0, 0, 0, 1), (1, 1, 1, 1), (0, 0, 0, -2), (3, -5, 7, 11), (-2, 0, 9, -4)] {
            let f = q(a, b, c, d);
            let r = f.resolvent();
            // discriminant of a monic cubic y^3 + p y^2 + q y + s
            let (p, qq, s) = (&r[2], &r[1], &r[0]);
            let i = |n: i64| BigInt::from(n);
            let dc = p * p * qq * qq - i(4) * qq * qq * qq - i(4) * p * p * p * s - i(27) * s * s
                + i(18) * p * qq * s;
            assert_eq!(f.discriminant(), dc);
        }
        assert_eq!(q(0, 0, 0, 1).discriminant(), BigInt::from(256));
        assert_eq!(q(0, 0, 0, -2).discriminant(), BigInt::from(-2048));
    }

    #[test]
    fn integer_root_isolation() {
        let p: Vec<BigInt> = [6, -5, -2, 1].iter().map(|&x| BigInt::from(x)).collect(); // (x-1)(x+2)(x-3)
        assert_eq!(integer_roots(&p), vec![BigInt::from(-2), BigInt::from(1), BigInt::from(3)]);
        let p: Vec<BigInt> = [-2, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert!(integer_roots(&p).is_empty());
        let p: Vec<BigInt> = [0, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(integer_roots(&p), vec![BigInt::zero()]);
    }

    #[test]
    fn irreducibility() {
        assert!(q(0, 0, 0, 1).is_irreducible());
        assert!(!q(0, 2, 0, 1).is_irreducible()); // (x^2 + 1)^2
        assert!(!q(0, -5, 0, 4).is_irreducible());
        assert!(!q(0, 0, 0, 4).is_irreducible()); // (x^2 + 2x + 2)(x^2 - 2x + 2)
        assert!(q(1, 1, 1, 1).is_irreducible());
    }

    #[test]
    fn galois_examples() {
        assert_eq!(resolvent_cubic_galois(&q(0, 0, 0, 1)).unwrap(), QuarticGalois::V4);
        assert_eq!(resolvent_cubic_galois(&q(1, 1, 1, 1)).unwrap(), QuarticGalois::C4);
        assert_eq!(resolvent_cubic_galois(&q(0, 0, 0, -2)).unwrap(), QuarticGalois::D4);
        assert_eq!(resolvent_cubic_galois(&q(0, 0, 1, 1)).unwrap(), QuarticGalois::S4);
        assert_eq!(resolvent_cubic_galois(&q(0, 0, 8, 12)).unwrap(), QuarticGalois::A4);
        assert!(resolvent_cubic_galois(&q(0, 2, 0, 1)).is_err());
    }

    #[test]
    fn maximal_orders() {
        assert_eq!(maximal_order_disc(&q(0, 0, 0, 1)).unwrap(), BigInt::from(256));
        assert_eq!(maximal_order_disc(&q(0, -1, 0, 1)).unwrap(), BigInt::from(144));
        assert_eq!(maximal_order_disc(&q(1, 1, 1, 1)).unwrap(), BigInt::from(125));
        assert_eq!(maximal_order_disc(&q(0, -2, 0, -1)).unwrap(), BigInt::from(-1024));
        // x^4 + 4x^2 + 1 generates Q(sqrt 3, sqrt -2)
        assert_eq!(maximal_order_disc(&q(0, 4, 0, 1)).unwrap(), BigInt::from(2304));
        // x^4 - 10x^2 + 1 generates Q(sqrt 2, sqrt 3), discriminant 2304
        assert_eq!(maximal_order_disc(&q(0, -10, 0, 1)).unwrap(), BigInt::from(2304));
        // x^4 - 10x^2 + 5 is cyclic of conductor 20
        assert_eq!(maximal_order_disc(&q(0, -10, 0, 5)).unwrap(), BigInt::from(2000));
    }

    #[test]
    fn dedekind_examples() {
        assert!(dedekind_p_maximal(&q(0, 0, 0, 1), 2));
        // x^4 - 10x^2 + 1 has index 8, a power of 2
        assert!(!dedekind_p_maximal(&q(0, -10, 0, 1), 2));
        assert!(dedekind_p_maximal(&q(0, -10, 0, 1), 3));
        assert!(dedekind_p_maximal(&q(0, 0, 0, -2), 2));
    }
}
