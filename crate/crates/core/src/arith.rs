//! Rational-integer helpers: square roots, Kronecker symbols, primality and
//! factorization by trial division plus Pollard rho.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

pub fn is_square_u64(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let num = exact_sqrt(q.numer())?;
    let den = exact_sqrt(q.denom())?;
    Some(BigRational::new(num, den))
}

pub fn is_rational_square(q: &BigRational) -> bool {
    rational_sqrt(q).is_some()
}

pub fn is_squarefree_u64(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// Sieve of squarefree flags for `0..=n` (index 0 is false).
pub fn squarefree_sieve(n: usize) -> Vec<bool> {
    let mut flags = vec![true; n + 1];
    flags[0] = false;
    let mut k = 2usize;
    while k * k <= n {
        let sq = k * k;
        let mut m = sq;
        while m <= n {
            flags[m] = false;
            m += sq;
        }
        k += 1;
    }
    flags
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn jacobi(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut result = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol (a / n) for n >= 0.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let v = n.trailing_zeros();
    let odd = n >> v;
    let mut sign = 1;
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if v % 2 == 1 && (r == 3 || r == 5) {
            sign = -1;
        }
    }
    if odd == 1 {
        return sign;
    }
    let a_mod = a.rem_euclid(odd as i64) as u64;
    sign * jacobi(a_mod, odd)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_biguint(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // 20 fixed bases: deterministic output, error probability < 4^-20 for
    // composites that slip past the small-prime screen.
    const BASES: [u64; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    'witness: for &a in &BASES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn pollard_rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut seed = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + seed) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut prod = 1u64;
        let mut steps = 0;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = x.abs_diff(y);
            prod = mul_mod(prod, diff, n);
            steps += 1;
            if steps % 64 == 0 || prod == 0 {
                d = prod.gcd(&n);
                if prod == 0 {
                    d = diff.gcd(&n);
                }
            }
        }
        if d != n && d != 0 {
            return d;
        }
        seed += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

fn collect(mut primes: Vec<u64>) -> Vec<(u64, u32)> {
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Prime factorization of a positive 64-bit integer, ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    factor_u64_into(n, &mut primes);
    collect(primes)
}

fn pollard_rho_big(n: &BigUint) -> BigUint {
    let mut seed = BigUint::from(1u32);
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        let mut prod = BigUint::one();
        let mut steps = 0u64;
        while d.is_one() {
            x = (&x * &x + &seed) % n;
            y = (&y * &y + &seed) % n;
            y = (&y * &y + &seed) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            prod = (prod * &diff) % n;
            steps += 1;
            if steps.is_multiple_of(32) {
                d = prod.gcd(n);
                if d.is_zero() {
                    d = diff.gcd(n);
                }
            }
        }
        if &d != n && !d.is_zero() {
            return d;
        }
        seed += 1u32;
    }
}

fn factor_big_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        let mut tmp = Vec::new();
        factor_u64_into(small, &mut tmp);
        out.extend(tmp.into_iter().map(BigUint::from));
        return;
    }
    if is_prime_biguint(&n) {
        out.push(n);
        return;
    }
    let d = pollard_rho_big(&n);
    let rest = &n / &d;
    factor_big_into(d, out);
    factor_big_into(rest, out);
}

/// Prime factorization of a positive arbitrary-precision integer.
pub fn factor_biguint(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    if let Some(small) = n.to_u64() {
        return factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut n = n.clone();
    let mut primes = Vec::new();
    let mut p = 2u32;
    while p < 10_000 {
        let bp = BigUint::from(p);
        while (&n % &bp).is_zero() {
            primes.push(bp.clone());
            n /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    factor_big_into(n, &mut primes);
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Factorization of |n| for a nonzero signed integer.
pub fn factor_bigint(n: &BigInt) -> Vec<(BigUint, u32)> {
    factor_biguint(n.magnitude())
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero());
    if p == 2 {
        return n.magnitude().trailing_zeros().unwrap_or(0) as u32;
    }
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&bp);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Largest integer whose square divides n (n nonzero).
pub fn square_divisor(n: &BigInt) -> BigInt {
    let mut s = BigInt::one();
    for (p, e) in factor_bigint(n) {
        let p = BigInt::from_biguint(Sign::Plus, p);
        s *= num_traits::pow(p, (e / 2) as usize);
    }
    s
}

/// Signed squarefree kernel: n = kernel * s^2 with kernel squarefree.
pub fn squarefree_kernel(n: &BigInt) -> BigInt {
    let s = square_divisor(n);
    n / (&s * &s)
}

pub fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_matches_legendre_for_odd_primes() {
        for p in primes_up_to(200).into_iter().filter(|&p| p > 2) {
            for a in -50i64..50 {
                let legendre = {
                    let r = a.rem_euclid(p as i64) as u64;
                    if r == 0 {
                        0
                    } else if pow_mod(r, (p - 1) / 2, p) == 1 {
                        1
                    } else {
                        -1
                    }
                };
                assert_eq!(kronecker(a, p), legendre, "({a}/{p})");
            }
        }
    }

    #[test]
    fn kronecker_at_two() {
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(8, 2), 0);
        assert_eq!(kronecker(-4, 4), 0);
        assert_eq!(kronecker(5, 4), 1);
    }

    #[test]
    fn tonelli_shanks_roots_square() {
        for p in primes_up_to(500).into_iter().filter(|&p| p > 2) {
            for a in 0..p {
                if let Some(r) = sqrt_mod_prime(a, p) {
                    assert_eq!(mul_mod(r, r, p), a);
                } else {
                    assert_eq!(kronecker(a as i64, p), -1);
                }
            }
        }
    }

    #[test]
    fn factorization_reconstructs() {
        for n in [1u64, 2, 12, 97, 1 << 40, 600851475143, 999_999_999_989 * 3, 18446744073709551557] {
            let f = factor_u64(n);
            let back: u128 = f.iter().map(|&(p, e)| (p as u128).pow(e)).product();
            assert_eq!(back, n as u128);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
        }
        let big: BigUint = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64)
            * BigUint::from(18446744073709551557u64);
        let f = factor_biguint(&big);
        assert_eq!(f.len(), 3);
        let back: BigUint = f.iter().map(|(p, e)| num_traits::pow(p.clone(), *e as usize)).product();
        assert_eq!(back, big);
    }

    #[test]
    fn kernels() {
        assert_eq!(squarefree_kernel(&BigInt::from(-72)), BigInt::from(-2));
        assert_eq!(square_divisor(&BigInt::from(72)), BigInt::from(6));
        assert!(is_squarefree_u64(30));
        assert!(!is_squarefree_u64(18));
        let sieve = squarefree_sieve(30);
        assert!(sieve[30] && !sieve[28] && sieve[1]);
    }
}
