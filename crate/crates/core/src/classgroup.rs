//! Class groups, unit groups and 2-Selmer groups of quadratic fields.
//!
//! Imaginary fields use reduced positive definite forms; real fields use the
//! cycles of reduced quadratic irrationals (P + sqrt(D)) / 2A under the
//! continued fraction map. Either way a class is identified by a canonical
//! reduced representative and the group law comes from ideal multiplication.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::analytic::AnalyticValue;
use crate::arith::{factor_u64, isqrt_u64};
use crate::error::{Error, Result};
use crate::quad::{sqrt_in_field, QuadElement, QuadField, QuadIdeal};

/// Default bound on |d| for class group computations.
pub const DEFAULT_CAPACITY: u64 = 10_000;

fn check_capacity(field: QuadField, capacity: u64) -> Result<()> {
    if field.d().unsigned_abs() > capacity {
        return Err(Error::capacity("|d|", field.d().unsigned_abs(), capacity));
    }
    Ok(())
}

fn to_i128(n: &BigInt) -> i128 {
    n.to_i128().expect("ideal data fits in 128 bits")
}

// ---------------------------------------------------------------------------
// Imaginary fields: reduced forms

/// Gauss reduction of the positive definite form (a, b, (b^2 - d)/4a).
fn reduce_definite(d: i128, mut a: i128, mut b: i128) -> (i128, i128) {
    loop {
        let k = (a - b).div_euclid(2 * a);
        b += 2 * a * k;
        let c = (b * b - d) / (4 * a);
        if a > c {
            a = c;
            b = -b;
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return (a, b);
    }
}

/// Reduced forms (a, b) of discriminant d < 0, ordered by (a, b).
fn reduced_definite_forms(d: i64) -> Vec<(i128, i128)> {
    let d = d as i128;
    let amax = isqrt_u64((-d / 3) as u64) as i128;
    let mut out = Vec::new();
    for a in 1..=amax {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            out.push((a, b));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Real fields: continued fraction cycles

#[derive(Clone, Copy, Debug)]
struct Cf {
    d: i128,
    s: i128,
}

impl Cf {
    fn new(d: i64) -> Self {
        Cf { d: d as i128, s: isqrt_u64(d as u64) as i128 }
    }

    /// One continued fraction step on xi = (p + sqrt(d)) / 2a.
    /// Returns (a', p') with xi = q + 1/xi'.
    fn step(&self, a: i128, p: i128) -> (i128, i128) {
        let q = if a > 0 {
            (p + self.s).div_euclid(2 * a)
        } else {
            -(p + self.s).div_euclid(-2 * a) - 1
        };
        let p1 = 2 * a * q - p;
        let a1 = (self.d - p1 * p1) / (4 * a);
        (a1, p1)
    }

    fn is_reduced(&self, a: i128, p: i128) -> bool {
        a > 0 && p > 0 && p <= self.s && 2 * a + p > self.s && 2 * a - p <= self.s
    }

    /// Iterate until a reduced irrational is reached.
    fn to_reduced(&self, mut a: i128, mut p: i128) -> (i128, i128) {
        let mut guard = 0u32;
        while !self.is_reduced(a, p) {
            (a, p) = self.step(a, p);
            guard += 1;
            assert!(guard < 100_000, "continued fraction failed to reach a reduced quotient");
        }
        (a, p)
    }

    fn reduced(&self) -> Vec<(i128, i128)> {
        let mut out = Vec::new();
        for p in 1..=self.s {
            if (p - self.d).rem_euclid(2) != 0 {
                continue;
            }
            let num = self.d - p * p;
            let amin = (self.s - p) / 2 + 1;
            let amax = (self.s + p) / 2;
            for a in amin.max(1)..=amax {
                if num % (4 * a) == 0 && self.is_reduced(a, p) {
                    out.push((a, p));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Partition of the reduced irrationals into cycles, each listed from
    /// its smallest member and followed in continued fraction order.
    fn cycles(&self) -> Vec<Vec<(i128, i128)>> {
        let mut seen = HashSet::new();
        let mut cycles = Vec::new();
        for start in self.reduced() {
            if seen.contains(&start) {
                continue;
            }
            let mut cyc = vec![start];
            seen.insert(start);
            let mut cur = self.step(start.0, start.1);
            while cur != start {
                debug_assert!(self.is_reduced(cur.0, cur.1));
                seen.insert(cur);
                cyc.push(cur);
                cur = self.step(cur.0, cur.1);
            }
            cycles.push(cyc);
        }
        cycles
    }

    /// The reduced irrational with a = 1.
    fn principal_start(&self) -> (i128, i128) {
        let p = if (self.s - self.d).rem_euclid(2) == 0 { self.s } else { self.s - 1 };
        (1, p)
    }

    /// mu = (-p' + sqrt(d)) / 2a, the factor with xi = mu * xi' lattice-wise.
    fn mu(&self, field: QuadField, a: i128, p1: i128) -> QuadElement {
        let t = field.t() as i128;
        QuadElement::with_den(
            field,
            BigInt::from(-p1 - t),
            BigInt::from(2),
            BigInt::from(2 * a),
        )
    }
}

/// Class number, counted from reduced representatives.
pub fn class_number(field: QuadField) -> Result<u64> {
    class_number_with_capacity(field, DEFAULT_CAPACITY)
}

pub fn class_number_with_capacity(field: QuadField, capacity: u64) -> Result<u64> {
    check_capacity(field, capacity)?;
    Ok(if field.is_real() {
        Cf::new(field.d()).cycles().len() as u64
    } else {
        reduced_definite_forms(field.d()).len() as u64
    })
}

// ---------------------------------------------------------------------------
// Principal generators

/// A generator of a principal ideal, or None if the ideal is not principal.
pub fn principal_generator(ideal: &QuadIdeal) -> Option<QuadElement> {
    let field = ideal.field();
    if ideal.is_unit() {
        return Some(QuadElement::one(field));
    }
    if field.is_real() {
        generator_real(ideal)
    } else {
        generator_imag(ideal)
    }
}

fn generator_imag(ideal: &QuadIdeal) -> Option<QuadElement> {
    // Lagrange reduction of the ideal lattice under the (definite) norm form;
    // a principal ideal is generated by any shortest vector.
    let (mut v1, mut v2) = ideal.generators();
    let dot = |u: &QuadElement, v: &QuadElement| -> BigRational {
        (u * &v.conj()).trace() / BigInt::from(2)
    };
    let mut n1 = v1.norm();
    let mut n2 = v2.norm();
    loop {
        if n2 < n1 {
            std::mem::swap(&mut v1, &mut v2);
            std::mem::swap(&mut n1, &mut n2);
        }
        let q = dot(&v1, &v2) / &n1;
        // |q| <= 1/2 means the basis is Lagrange reduced
        if q.abs() * BigInt::from(2) <= BigRational::one() {
            break;
        }
        let m = q.round().to_integer();
        v2 = &v2 - &v1.scale(&m);
        n2 = v2.norm();
    }
    if n1 == BigRational::from_integer(ideal.norm()) {
        Some(v1)
    } else {
        None
    }
}

fn generator_real(ideal: &QuadIdeal) -> Option<QuadElement> {
    let field = ideal.field();
    let cf = Cf::new(field.d());
    let content = ideal.content().clone();
    let (a0, p0) = ideal.primitive_form();
    let (a0, p0) = (to_i128(&a0), to_i128(&p0));
    let mut gen = QuadElement::from_int(field, &content * BigInt::from(a0));
    if a0 == 1 {
        return Some(gen);
    }
    let (mut a, mut p) = (a0, p0);
    let mut first_reduced: Option<(i128, i128)> = None;
    loop {
        let (a1, p1) = cf.step(a, p);
        gen = &gen * &cf.mu(field, a, p1);
        (a, p) = (a1, p1);
        if a.abs() == 1 {
            return Some(gen);
        }
        if cf.is_reduced(a, p) {
            match first_reduced {
                None => first_reduced = Some((a, p)),
                Some(f) if f == (a, p) => return None,
                _ => {}
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Units

/// Units of a quadratic field.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub field: QuadField,
    pub torsion_order: u32,
    pub fundamental_unit: Option<QuadElement>,
    pub regulator: Option<AnalyticValue>,
}

/// Fundamental unit eps > 1 of a real quadratic field, from one period of the
/// continued fraction of the reduced irrational with a = 1.
pub fn fundamental_unit(field: QuadField) -> Result<QuadElement> {
    Ok(unit_and_regulator(field)?.0)
}

pub fn regulator(field: QuadField) -> Result<AnalyticValue> {
    Ok(unit_and_regulator(field)?.1)
}

fn unit_and_regulator(field: QuadField) -> Result<(QuadElement, AnalyticValue)> {
    if !field.is_real() {
        return Err(Error::domain(format!("{field} is imaginary; no fundamental unit")));
    }
    let cf = Cf::new(field.d());
    let start = cf.principal_start();
    let sqrt_d = AnalyticValue::from_int(field.d()).sqrt();
    let mut eta = QuadElement::one(field);
    let mut reg = AnalyticValue::exact(0.0);
    let (mut a, mut p) = start;
    loop {
        let (a1, p1) = cf.step(a, p);
        eta = &eta * &cf.mu(field, a, p1);
        // eps is the product of the complete quotients xi_j = 1/mu_j
        let xi = (AnalyticValue::from_int(p1 as i64) + sqrt_d)
            / AnalyticValue::from_int(2 * a1 as i64);
        reg = reg + xi.ln();
        (a, p) = (a1, p1);
        if (a, p) == start {
            break;
        }
    }
    let eps = eta.inv()?;
    let nm = eps.norm();
    if nm.abs() != BigRational::one() || !eps.is_integral() {
        return Err(Error::invariant(format!("{eps} is not a unit")));
    }
    if eps.sign_at(true) != std::cmp::Ordering::Greater {
        return Err(Error::invariant(format!("fundamental unit {eps} is not > 1")));
    }
    Ok((eps, reg))
}

pub fn unit_group(field: QuadField) -> Result<UnitGroup> {
    let (fundamental_unit, regulator) = if field.is_real() {
        let (e, r) = unit_and_regulator(field)?;
        (Some(e), Some(r))
    } else {
        (None, None)
    };
    Ok(UnitGroup {
        field,
        torsion_order: field.torsion_order(),
        fundamental_unit,
        regulator,
    })
}

// ---------------------------------------------------------------------------
// Class group structure

#[derive(Clone, Debug)]
enum Reducer {
    Definite(HashMap<(i128, i128), usize>),
    Indefinite(Cf, HashMap<(i128, i128), usize>),
}

/// The ideal class group with an explicit discrete logarithm.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    field: QuadField,
    reducer: Reducer,
    /// One reduced ideal per class; index 0 is the principal class.
    reps: Vec<QuadIdeal>,
    /// Invariant factors d_1 | d_2 | ..., all > 1.
    invariants: Vec<u64>,
    generators: Vec<QuadIdeal>,
    dlog: Vec<Vec<u64>>,
    by_dlog: HashMap<Vec<u64>, usize>,
}

impl ClassGroup {
    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn order(&self) -> u64 {
        self.reps.len() as u64
    }

    /// Invariant factors, each dividing the next.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    /// Ideals whose classes generate the cyclic factors.
    pub fn generators(&self) -> &[QuadIdeal] {
        &self.generators
    }

    pub fn two_rank(&self) -> usize {
        self.invariants.iter().filter(|&&n| n % 2 == 0).count()
    }

    /// Index of the class of a nonzero integral ideal.
    pub fn class_index(&self, ideal: &QuadIdeal) -> usize {
        let (a, b) = ideal.primitive_form();
        let (a, b) = (to_i128(&a), to_i128(&b));
        match &self.reducer {
            Reducer::Definite(map) => {
                let key = reduce_definite(self.field.d() as i128, a, -b);
                map[&key]
            }
            Reducer::Indefinite(cf, map) => map[&cf.to_reduced(a, b)],
        }
    }

    /// Exponent vector of the class of an ideal on the generators.
    pub fn dlog(&self, ideal: &QuadIdeal) -> &[u64] {
        &self.dlog[self.class_index(ideal)]
    }

    pub fn is_principal(&self, ideal: &QuadIdeal) -> bool {
        self.class_index(ideal) == 0
    }

    /// Representative ideal of the class with the given exponent vector.
    pub fn rep(&self, v: &[u64]) -> &QuadIdeal {
        let v: Vec<u64> = v.iter().zip(&self.invariants).map(|(e, n)| e % n).collect();
        &self.reps[self.by_dlog[&v]]
    }

    pub fn reps(&self) -> &[QuadIdeal] {
        &self.reps
    }

    /// Ideals representing a basis of the 2-torsion subgroup.
    pub fn two_torsion_basis(&self) -> Vec<QuadIdeal> {
        let k = self.invariants.len();
        (0..k)
            .filter(|&i| self.invariants[i].is_multiple_of(2))
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = self.invariants[i] / 2;
                self.rep(&v).clone()
            })
            .collect()
    }

    /// An ideal c with a * c^2 principal, if the class of a is a square.
    pub fn half_inverse(&self, ideal: &QuadIdeal) -> Option<&QuadIdeal> {
        self.half_inverse_dlog(self.dlog(ideal))
    }

    /// As `half_inverse`, for a class given by its exponent vector.
    pub fn half_inverse_dlog(&self, v: &[u64]) -> Option<&QuadIdeal> {
        let mut w = Vec::with_capacity(v.len());
        for (&e, &n) in v.iter().zip(&self.invariants) {
            if n % 2 == 1 {
                // 2 * (n + 1)/2 = 1 mod n
                w.push(((n - e) % n) * n.div_ceil(2) % n);
            } else if e % 2 == 0 {
                w.push((n - e / 2) % n);
            } else {
                return None;
            }
        }
        Some(self.rep(&w))
    }
}

pub fn class_group(field: QuadField) -> Result<ClassGroup> {
    class_group_with_capacity(field, DEFAULT_CAPACITY)
}

pub fn class_group_with_capacity(field: QuadField, capacity: u64) -> Result<ClassGroup> {
    check_capacity(field, capacity)?;
    let (reducer, reps) = if field.is_real() {
        let cf = Cf::new(field.d());
        let mut cycles = cf.cycles();
        // principal cycle first
        let start = cf.principal_start();
        let pi = cycles.iter().position(|c| c.contains(&start)).expect("principal cycle");
        cycles.swap(0, pi);
        let mut map = HashMap::new();
        let mut reps = Vec::new();
        for (i, cyc) in cycles.iter().enumerate() {
            for &key in cyc {
                map.insert(key, i);
            }
            let (a, p) = if i == 0 { start } else { cyc[0] };
            reps.push(QuadIdeal::from_primitive(field, &a.into(), &p.into(), &BigInt::one()));
        }
        (Reducer::Indefinite(cf, map), reps)
    } else {
        let forms = reduced_definite_forms(field.d());
        let mut map = HashMap::new();
        let mut reps = Vec::new();
        for (i, &(a, b)) in forms.iter().enumerate() {
            map.insert((a, b), i);
            reps.push(QuadIdeal::from_primitive(field, &a.into(), &(-b).into(), &BigInt::one()));
        }
        (Reducer::Definite(map), reps)
    };
    let mut g = ClassGroup {
        field,
        reducer,
        reps,
        invariants: Vec::new(),
        generators: Vec::new(),
        dlog: Vec::new(),
        by_dlog: HashMap::new(),
    };
    if g.class_index(&g.reps[0]) != 0 {
        return Err(Error::invariant("principal class is not indexed first"));
    }
    let h = g.reps.len();
    let mut table = vec![vec![0usize; h]; h];
    for i in 0..h {
        for j in i..h {
            let k = g.class_index(&g.reps[i].mul(&g.reps[j]));
            table[i][j] = k;
            table[j][i] = k;
        }
    }
    let (invariants, gens) = abelian_structure(h, |x, y| table[x][y]);
    let k = invariants.len();
    let mut dlog: Vec<Option<Vec<u64>>> = vec![None; h];
    let mut count = 0usize;
    let mut v = vec![0u64; k];
    loop {
        let mut x = 0usize;
        for (i, &e) in v.iter().enumerate() {
            for _ in 0..e {
                x = table[x][gens[i]];
            }
        }
        if dlog[x].is_some() {
            return Err(Error::invariant(format!("class group of {field}: generators are dependent")));
        }
        dlog[x] = Some(v.clone());
        count += 1;
        // mixed radix increment
        let mut i = 0;
        while i < k {
            v[i] += 1;
            if v[i] < invariants[i] {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    if count != h {
        return Err(Error::invariant(format!("class group of {field}: structure of wrong order")));
    }
    let dlog: Vec<Vec<u64>> = dlog.into_iter().map(|v| v.expect("every class reached")).collect();
    g.by_dlog = dlog.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    g.generators = gens.iter().map(|&i| g.reps[i].clone()).collect();
    g.invariants = invariants;
    g.dlog = dlog;
    Ok(g)
}

/// Invariant factors and matching generators of a finite abelian group on
/// 0..n with identity 0.
fn abelian_structure(n: usize, op: impl Fn(usize, usize) -> usize) -> (Vec<u64>, Vec<usize>) {
    if n == 1 {
        return (Vec::new(), Vec::new());
    }
    let order = |x: usize| -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = op(y, x);
            k += 1;
        }
        k
    };
    let mul = |x: usize, k: u64| -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = op(acc, x);
        }
        acc
    };
    let orders: Vec<u64> = (0..n).map(order).collect();
    // per prime: descending exponents and generators
    let mut sylow: Vec<(u64, Vec<(u32, usize)>)> = Vec::new();
    for (p, _) in factor_u64(n as u64) {
        let elems: Vec<usize> = (0..n).filter(|&x| is_power_of(orders[x], p)).collect();
        // number of elements killed by p^k gives the partition
        let mut exps = Vec::new();
        let mut prev = 1usize;
        let mut k = 1u32;
        while prev < elems.len() {
            let cnt = elems.iter().filter(|&&x| p.pow(k) % orders[x] == 0).count();
            let r = ilog(cnt / prev, p);
            exps.push(r);
            prev = cnt;
            k += 1;
        }
        // exps[k-1] = #{i : e_i >= k}; convert to a descending list
        let m = exps.first().copied().unwrap_or(0) as usize;
        let mut es: Vec<u32> = (0..m)
            .map(|i| exps.iter().filter(|&&r| r as usize > i).count() as u32)
            .collect();
        es.sort_unstable_by(|a, b| b.cmp(a));
        let basis = p_basis(&elems, &orders, &es, p, &op, &mul)
            .expect("every finite abelian p-group has a basis");
        sylow.push((p, es.into_iter().zip(basis).collect()));
    }
    let m = sylow.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut invariants = Vec::with_capacity(m);
    let mut gens = Vec::with_capacity(m);
    // j-th largest components combine into the j-th largest invariant factor
    for j in (0..m).rev() {
        let mut d = 1u64;
        let mut g = 0usize;
        for (p, comps) in &sylow {
            if let Some(&(e, x)) = comps.get(j) {
                d *= p.pow(e);
                g = op(g, x);
            }
        }
        invariants.push(d);
        gens.push(g);
    }
    (invariants, gens)
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn ilog(mut n: usize, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p as usize;
        k += 1;
    }
    k
}

/// Depth-first search for independent elements of orders p^e_i.
fn p_basis(
    elems: &[usize],
    orders: &[u64],
    es: &[u32],
    p: u64,
    op: &impl Fn(usize, usize) -> usize,
    mul: &impl Fn(usize, u64) -> usize,
) -> Option<Vec<usize>> {
    fn go(
        i: usize,
        span: &HashSet<usize>,
        chosen: &mut Vec<usize>,
        ctx: (&[usize], &[u64], &[u32], u64),
        op: &impl Fn(usize, usize) -> usize,
        mul: &impl Fn(usize, u64) -> usize,
    ) -> bool {
        let (elems, orders, es, p) = ctx;
        if i == es.len() {
            return true;
        }
        let target = p.pow(es[i]);
        for &g in elems {
            if orders[g] != target || span.contains(&mul(g, target / p)) {
                continue;
            }
            let mut next = HashSet::with_capacity(span.len() * target as usize);
            for &s in span {
                let mut y = s;
                for _ in 0..target {
                    next.insert(y);
                    y = op(y, g);
                }
            }
            chosen.push(g);
            if go(i + 1, &next, chosen, ctx, op, mul) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut span = HashSet::new();
    span.insert(0usize);
    let mut chosen = Vec::new();
    go(0, &span, &mut chosen, (elems, orders, es, p), op, mul).then_some(chosen)
}

// ---------------------------------------------------------------------------
// 2-Selmer group

/// Basis of {b in K*/K*^2 : (b) is the square of an ideal}.
#[derive(Clone, Debug)]
pub struct Selmer2 {
    pub field: QuadField,
    /// Unit generators first, then one element per 2-torsion class.
    pub basis: Vec<QuadElement>,
    pub unit_rank: usize,
}

impl Selmer2 {
    pub fn order(&self) -> u64 {
        1u64 << self.basis.len()
    }

    /// The element with the given bit pattern on the basis.
    pub fn element(&self, bits: u32) -> QuadElement {
        let mut acc = QuadElement::one(self.field);
        for (i, b) in self.basis.iter().enumerate() {
            if bits >> i & 1 == 1 {
                acc = &acc * b;
            }
        }
        acc
    }
}

pub fn selmer2_basis(field: QuadField) -> Result<Selmer2> {
    let cl = class_group(field)?;
    selmer2_from(&cl)
}

pub fn selmer2_from(cl: &ClassGroup) -> Result<Selmer2> {
    let field = cl.field();
    let mut basis = Vec::new();
    match field.d() {
        -3 | -4 => basis.push(QuadElement::omega(field)),
        d if d < 0 => basis.push(QuadElement::from_int(field, -1)),
        _ => {
            basis.push(QuadElement::from_int(field, -1));
            basis.push(fundamental_unit(field)?);
        }
    }
    let unit_rank = basis.len();
    for b in cl.two_torsion_basis() {
        let sq = b.mul(&b);
        let beta = principal_generator(&sq)
            .ok_or_else(|| Error::invariant(format!("square of 2-torsion class {b} is not principal")))?;
        basis.push(beta);
    }
    Ok(Selmer2 { field, basis, unit_rank })
}

/// Whether no nonempty subproduct of the basis is a square.
pub fn selmer_independent(s: &Selmer2) -> bool {
    (1..s.order() as u32).all(|bits| sqrt_in_field(&s.element(bits)).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> QuadField {
        QuadField::from_disc(d).unwrap()
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [(-3, 1), (-4, 1), (-23, 3), (-5 * 4, 2), (-47, 5), (-84, 4), (40, 2), (5, 1), (12, 1), (229, 3), (-3299, 27), (-4 * 105, 8)] {
            assert_eq!(class_number(k(d)).unwrap(), h, "d={d}");
            assert_eq!(class_group(k(d)).unwrap().order(), h, "d={d}");
        }
    }

    #[test]
    fn structures() {
        assert_eq!(class_group(k(-23)).unwrap().invariants(), &[3]);
        assert_eq!(class_group(k(-84)).unwrap().invariants(), &[2, 2]);
        assert_eq!(class_group(k(-4 * 105)).unwrap().invariants(), &[2, 2, 2]);
        assert_eq!(class_group(k(-3299)).unwrap().invariants(), &[3, 9]);
        assert!(class_group(k(-4)).unwrap().invariants().is_empty());
    }

    #[test]
    fn fundamental_units() {
        assert_eq!(fundamental_unit(k(8)).unwrap(), QuadElement::new(k(8), 1, 1));
        assert_eq!(fundamental_unit(k(5)).unwrap(), QuadElement::new(k(5), 0, 1));
        assert_eq!(fundamental_unit(k(12)).unwrap(), QuadElement::new(k(12), 2, 1));
        assert!(fundamental_unit(k(-4)).is_err());
        // Q(sqrt 94): eps = 2143295 + 221064 sqrt(94)
        assert_eq!(fundamental_unit(k(4 * 94)).unwrap(), QuadElement::new(k(4 * 94), 2143295, 221064));
        let r = regulator(k(5)).unwrap();
        assert!(r.contains(((1.0 + 5f64.sqrt()) / 2.0).ln()));
    }

    #[test]
    fn generators_of_principal_ideals() {
        for d in [-4, -23, 40, 12, -20, 229, 5] {
            let f = k(d);
            let cl = class_group(f).unwrap();
            for a in 1..6 {
                for b in -5..6 {
                    let e = QuadElement::new(f, a, b);
                    let i = QuadIdeal::principal(&e).unwrap();
                    assert!(cl.is_principal(&i), "d={d} e={e}");
                    let g = principal_generator(&i).unwrap();
                    assert_eq!(QuadIdeal::principal(&g).unwrap(), i);
                }
            }
            for r in cl.reps().iter().skip(1) {
                assert!(principal_generator(r).is_none(), "d={d} {r}");
                let h = cl.order() as u32;
                let g = principal_generator(&r.pow(h)).expect("I^h is principal");
                assert_eq!(QuadIdeal::principal(&g).unwrap(), r.pow(h));
            }
        }
    }

    #[test]
    fn selmer_examples() {
        let s = selmer2_basis(k(-4)).unwrap();
        assert_eq!(s.basis, vec![QuadElement::omega(k(-4))]);
        let s = selmer2_basis(k(8)).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.basis[1], QuadElement::new(k(8), 1, 1));
        let s = selmer2_basis(k(-20)).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.basis[1].norm().abs(), BigRational::from_integer(4.into()));
        assert!(selmer_independent(&s));
    }
}
