use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{primes_up_to, squarefree_kernel};
use crate::quad::{fundamental_discriminants, FundDisc};

/// Fundamental discriminant of Q(sqrt(m)) for a nonzero non-square m.
fn disc_of(m: i128) -> i64 {
    let k = squarefree_kernel(&BigInt::from(m)).to_i64().expect("kernel fits");
    if k.rem_euclid(4) == 1 {
        k
    } else {
        4 * k
    }
}

/// V4 quartic fields with |disc| = |d1 d2 d3| <= x, one per triple of quadratic subfields.
pub fn count_v4_direct(x: u64) -> u64 {
    // every |d_i| >= 3, so |d1 d2| <= x / 3
    let discs: Vec<FundDisc> = fundamental_discriminants(x / 9);
    let key = |d: i64| FundDisc::new(d).expect("fundamental").sort_key();
    let mut count = 0;
    for (i, a) in discs.iter().enumerate() {
        let da = a.get();
        if (da.unsigned_abs() as u128).pow(2) * 3 > x as u128 {
            break;
        }
        for b in &discs[i + 1..] {
            let db = b.get();
            let ab = da.unsigned_abs() as u128 * db.unsigned_abs() as u128;
            // |b| is nondecreasing along the list
            if ab * 3 > x as u128 {
                break;
            }
            let dc = disc_of(da as i128 * db as i128);
            // count each triple from its two smallest members
            if key(dc) <= b.sort_key() {
                continue;
            }
            if ab * dc.unsigned_abs() as u128 <= x as u128 {
                count += 1;
            }
        }
    }
    count
}

/// C4 quartic fields with disc = f(chi)^2 f(chi^2) <= x, one per pair {chi, chi-bar}.
///
/// A primitive character of order 4 is a product of local characters: at odd p
/// of conductor p, quadratic (one) or quartic (two, when p = 1 mod 4); at 2 of
/// conductor 4 or 8 quadratic (one or two), or conductor 16 quartic (four).
pub fn count_c4_direct(x: u64) -> u64 {
    // (weight to disc, ways, quartic?)
    let two_options: [(u64, u64, bool); 4] = [(1, 1, false), (16, 1, false), (64, 2, false), (2048, 4, true)];
    let mut bound = 1u64;
    while (bound + 1) * (bound + 1) <= x {
        bound += 1;
    }
    let primes: Vec<u64> = primes_up_to(bound).into_iter().filter(|&p| p > 2).collect();
    fn rec(primes: &[u64], start: usize, disc: u64, ways: u64, quartic: bool, x: u64, total: &mut u64) {
        if quartic {
            *total += ways;
        }
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let p2 = p * p;
            if disc.saturating_mul(p2) > x {
                break;
            }
            rec(primes, i + 1, disc * p2, ways, quartic, x, total);
            if p % 4 == 1 && disc.saturating_mul(p2 * p) <= x {
                rec(primes, i + 1, disc * p2 * p, ways * 2, true, x, total);
            }
        }
    }
    let mut total = 0;
    for (w, ways, q) in two_options {
        if w <= x {
            rec(&primes, 0, w, ways, q, x, &mut total);
        }
    }
    total / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v4_examples() {
        assert_eq!(count_v4_direct(143), 0);
        assert_eq!(count_v4_direct(144), 1);
        assert_eq!(count_v4_direct(225), 2);
    }

    #[test]
    fn c4_examples() {
        assert_eq!(count_c4_direct(124), 0);
        assert_eq!(count_c4_direct(125), 1);
        assert_eq!(count_c4_direct(2047) + 2, count_c4_direct(2048));
    }
}
