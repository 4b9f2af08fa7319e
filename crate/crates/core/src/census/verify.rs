use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::analytic::{rational_quadratic_density, rel_quadratic_density, residue_lemma_sum, SplittingShape};
use crate::error::{Error, Result};
use crate::galclass::GaloisType;
use crate::oracle::{maximal_order_disc, naive_selmer_enum, resolvent_cubic_galois, QuarticGalois, QuarticPoly};
use crate::quad::{fundamental_discriminants, is_square, QuadField};
use crate::relquad::enumerate_quadratic_extensions;

use super::{census_records, count_c4_direct, count_v4_direct, pair_d4_records, tally_at, QuarticRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma,
    Tower,
    Identity,
    Oracle,
    Density,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lemma" => Suite::Lemma,
            "tower" => Suite::Tower,
            "identity" => Suite::Identity,
            "oracle" => Suite::Oracle,
            "density" => Suite::Density,
            _ => return Err(Error::Parse(format!("unknown suite {s}"))),
        })
    }
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    pub checked: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    fn new(suite: Suite) -> Self {
        SuiteOutcome { suite, passed: true, checked: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < 20 {
                self.failures.push(what());
            }
        }
    }
}

/// Converts a census record's polynomial back to integers.
pub fn record_poly(r: &QuarticRecord) -> Result<QuarticPoly> {
    let c: Vec<BigInt> = r
        .minpoly
        .iter()
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad coefficient {s}"))))
        .collect::<Result<_>>()?;
    QuarticPoly::from_coeffs([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone()])
}

fn oracle_group(g: GaloisType) -> QuarticGalois {
    match g {
        GaloisType::D4 => QuarticGalois::D4,
        GaloisType::C4 => QuarticGalois::C4,
        GaloisType::V4 => QuarticGalois::V4,
    }
}

/// Run one suite. `bound` is the census bound for record-based suites and the
/// relative norm bound for the density suite.
pub fn run_suite(suite: Suite, bound: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(suite);
    match suite {
        Suite::Lemma => {
            for n in [1, 2, 3, 4] {
                for shape in SplittingShape::all_of_degree(n) {
                    let s = residue_lemma_sum(&shape)?;
                    out.check(s == BigRational::one(), || format!("{:?} sums to {s}", shape.primes));
                }
            }
        }
        Suite::Tower => {
            for r in census_records(bound, 0)? {
                let f = record_poly(&r)?;
                let disc = maximal_order_disc(&f)?;
                out.check(disc == BigInt::from(r.abs_disc), || format!("{f}: {disc} vs {}", r.abs_disc));
            }
        }
        Suite::Identity => {
            let recs = census_records(bound, 0)?;
            let rep = tally_at(&recs, bound)?;
            out.check(rep.pair_count == 2 * rep.n_d4 + rep.n_c4 + 3 * rep.n_v4, || "pair identity".into());
            let pairs = pair_d4_records(&recs)?;
            out.check(2 * pairs == rep.raw_d4, || format!("{pairs} conjugate pairs for {} D4 records", rep.raw_d4));
            let v4 = count_v4_direct(bound);
            out.check(v4 == rep.n_v4, || format!("V4: census {} direct {v4}", rep.n_v4));
            let c4 = count_c4_direct(bound);
            out.check(c4 == rep.n_c4, || format!("C4: census {} direct {c4}", rep.n_c4));
            out.notes.push(format!(
                "X={} pairs={} D4={} C4={} V4={}",
                bound, rep.pair_count, rep.n_d4, rep.n_c4, rep.n_v4
            ));
        }
        Suite::Oracle => {
            for r in census_records(bound, 0)? {
                let f = record_poly(&r)?;
                let g = resolvent_cubic_galois(&f)?;
                out.check(g == oracle_group(r.galois), || format!("{f}: resolvent {g}, Kummer {}", r.galois));
            }
            for d in [-4, -3, 5, -20, -23] {
                let field = QuadField::from_disc(d)?;
                let y = bound.min(200);
                let naive = naive_selmer_enum(field, 50, y)?;
                let fast = enumerate_quadratic_extensions(field, y)?;
                let matched = naive.len() == fast.len()
                    && naive.iter().all(|n| fast.iter().filter(|e| is_square(&(&e.alpha * &n.alpha))).count() == 1);
                out.check(matched, || format!("d={d}: naive {} vs enumerated {}", naive.len(), fast.len()));
            }
        }
        Suite::Density => {
            for d in [-4, 5, -23] {
                let field = QuadField::from_disc(d)?;
                let n = enumerate_quadratic_extensions(field, bound)?.len();
                let dens = rel_quadratic_density(field)?;
                let ratio = n as f64 / bound as f64;
                let gap = (ratio - dens.midpoint).abs() / dens.midpoint;
                out.notes.push(format!("d={d}: {n}/{bound} = {ratio:.5} vs {:.5} (gap {:.2}%)", dens.midpoint, gap * 100.0));
                out.check(gap <= 0.05, || format!("d={d}: gap {:.2}%", gap * 100.0));
            }
            let n = fundamental_discriminants(bound).len();
            let ratio = n as f64 / bound as f64;
            let q = rational_quadratic_density().midpoint;
            out.notes.push(format!("Q: {n}/{bound} = {ratio:.5} vs {q:.5}"));
            out.check((ratio - q).abs() / q <= 0.05, || format!("Q: {ratio} vs {q}"));
        }
    }
    Ok(out)
}
