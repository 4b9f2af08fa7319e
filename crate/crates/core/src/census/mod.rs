//! The tower census: every quadratic extension L/K of every quadratic field K
//! with |Disc(L/Q)| <= X, classified and tallied.

mod direct;
mod fit;
mod output;
mod verify;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galclass::{classify_extension, minimal_polynomial, GaloisType};
use crate::quad::{fundamental_discriminants, is_square, FundDisc, QuadField};
use crate::relquad::enumerate_quadratic_extensions;

pub use direct::{count_c4_direct, count_v4_direct};
pub use fit::{fit_and_report, fit_counts, loglog_slope, FitPoint, FitReport, FitSummary};
pub use output::{record_line, Checkpoint, CHECKPOINT_SCHEMA};
pub use verify::{record_poly, run_suite, Suite, SuiteOutcome};

/// Default largest X. Keeps |d| <= 1000, far inside exact class-group range.
pub const DEFAULT_CAPACITY: u64 = 1_000_000;

/// One quadratic extension L/K, i.e. one term of the tower sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticRecord {
    pub base_disc: i64,
    pub ideal_label: String,
    pub selmer_bits: u32,
    pub rel_disc_norm: u64,
    pub abs_disc: i64,
    pub galois: GaloisType,
    /// Coefficients low to high, as decimal strings.
    pub minpoly: [String; 5],
}

/// Tallies for one base field.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTally {
    pub base_disc: i64,
    pub y: u64,
    pub records: u64,
    pub d4: u64,
    pub c4: u64,
    pub v4: u64,
}

impl FieldTally {
    fn of(base_disc: i64, y: u64, recs: &[QuarticRecord]) -> Self {
        let mut t = FieldTally { base_disc, y, ..Default::default() };
        for r in recs {
            t.records += 1;
            match r.galois {
                GaloisType::D4 => t.d4 += 1,
                GaloisType::C4 => t.c4 += 1,
                GaloisType::V4 => t.v4 += 1,
            }
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub x: u64,
    pub pair_count: u64,
    pub n_d4: u64,
    pub n_c4: u64,
    pub n_v4: u64,
    pub raw_d4: u64,
    pub raw_v4: u64,
    pub per_field: Vec<FieldTally>,
    /// False when the run stopped early on request.
    pub complete: bool,
    pub elapsed_ms: u64,
    pub version: String,
}

impl CensusReport {
    /// Aggregate tallies. Complete runs must satisfy divisibility and the pair identity.
    pub fn from_tallies(x: u64, per_field: Vec<FieldTally>, complete: bool) -> Result<Self> {
        let sum = |f: fn(&FieldTally) -> u64| per_field.iter().map(f).sum::<u64>();
        let pair_count = sum(|t| t.records);
        let (raw_d4, raw_c4, raw_v4) = (sum(|t| t.d4), sum(|t| t.c4), sum(|t| t.v4));
        let (n_d4, n_c4, n_v4) = (raw_d4 / 2, raw_c4, raw_v4 / 3);
        // a partial run may have seen only some conjugates of a field
        if complete {
            if raw_d4 % 2 != 0 {
                return Err(Error::invariant(format!("raw D4 tally {raw_d4} is odd at X = {x}")));
            }
            if raw_v4 % 3 != 0 {
                return Err(Error::invariant(format!("raw V4 tally {raw_v4} is not divisible by 3 at X = {x}")));
            }
            if pair_count != 2 * n_d4 + n_c4 + 3 * n_v4 {
                return Err(Error::invariant(format!(
                    "pair count {pair_count} != 2*{n_d4} + {n_c4} + 3*{n_v4} at X = {x}"
                )));
            }
        }
        Ok(CensusReport {
            x,
            pair_count,
            n_d4,
            n_c4,
            n_v4,
            raw_d4,
            raw_v4,
            per_field,
            complete,
            elapsed_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        })
    }
}

/// Options for [`run_census`].
#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    /// Directory for records.jsonl, summary.csv, report.json and checkpoint.json.
    pub out: Option<PathBuf>,
    /// Checkpoint to resume from.
    pub resume: Option<PathBuf>,
    pub capacity: u64,
    /// Stop after this many base fields (for interruption tests).
    pub halt_after_fields: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { jobs: 0, out: None, resume: None, capacity: DEFAULT_CAPACITY, halt_after_fields: None }
    }
}

/// Base fields with d^2 <= x, ascending |d| then negative first.
pub fn base_fields(x: u64) -> Vec<FundDisc> {
    let mut b = 1u64;
    while (b + 1) * (b + 1) <= x {
        b += 1;
    }
    fundamental_discriminants(b)
}

/// Records for one base field, in canonical order.
pub fn field_records(d: FundDisc, x: u64) -> Result<Vec<QuarticRecord>> {
    let field = QuadField::new(d);
    let dd = d.get().unsigned_abs();
    let y = x / (dd * dd);
    let mut out = Vec::new();
    for e in enumerate_quadratic_extensions(field, y)? {
        let galois = classify_extension(field, &e.alpha)?;
        let mp = minimal_polynomial(field, &e.alpha)?;
        let (ideal_label, selmer_bits) = e.label();
        out.push(QuarticRecord {
            base_disc: d.get(),
            ideal_label,
            selmer_bits,
            rel_disc_norm: e.rel_disc_norm,
            abs_disc: e.abs_disc,
            galois,
            minpoly: std::array::from_fn(|i| mp[i].to_string()),
        });
    }
    Ok(out)
}

fn check_capacity(x: u64, capacity: u64) -> Result<()> {
    if x == 0 {
        return Err(Error::domain("census bound must be positive"));
    }
    if x > capacity {
        return Err(Error::capacity("census bound X", x, capacity));
    }
    Ok(())
}

fn pool(jobs: usize) -> Result<Option<rayon::ThreadPool>> {
    if jobs == 0 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map(Some)
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
}

fn records_for(fields: &[FundDisc], x: u64, pool: &Option<rayon::ThreadPool>) -> Result<Vec<Vec<QuarticRecord>>> {
    let work = || fields.par_iter().map(|&d| field_records(d, x)).collect::<Result<Vec<_>>>();
    match pool {
        Some(p) => p.install(work),
        None => work(),
    }
}

/// All census records up to x in canonical order, without any I/O.
pub fn census_records(x: u64, jobs: usize) -> Result<Vec<QuarticRecord>> {
    census_records_with_capacity(x, jobs, DEFAULT_CAPACITY)
}

pub fn census_records_with_capacity(x: u64, jobs: usize, capacity: u64) -> Result<Vec<QuarticRecord>> {
    check_capacity(x, capacity)?;
    let fields = base_fields(x);
    let per = records_for(&fields, x, &pool(jobs)?)?;
    Ok(per.into_iter().flatten().collect())
}

/// The report at bound x from records computed at any bound >= x.
pub fn tally_at(records: &[QuarticRecord], x: u64) -> Result<CensusReport> {
    let mut per_field: Vec<FieldTally> = Vec::new();
    for d in base_fields(x) {
        let dd = d.get().unsigned_abs();
        per_field.push(FieldTally { base_disc: d.get(), y: x / (dd * dd), ..Default::default() });
    }
    let index: std::collections::HashMap<i64, usize> =
        per_field.iter().enumerate().map(|(i, t)| (t.base_disc, i)).collect();
    for r in records.iter().filter(|r| r.abs_disc.unsigned_abs() <= x) {
        let t = &mut per_field[*index
            .get(&r.base_disc)
            .ok_or_else(|| Error::invariant(format!("record over unexpected base {}", r.base_disc)))?];
        t.records += 1;
        match r.galois {
            GaloisType::D4 => t.d4 += 1,
            GaloisType::C4 => t.c4 += 1,
            GaloisType::V4 => t.v4 += 1,
        }
    }
    CensusReport::from_tallies(x, per_field, true)
}

/// Run the census at bound x, streaming records to disk when an output directory is set.
pub fn run_census(x: u64, opts: &CensusOptions) -> Result<CensusReport> {
    check_capacity(x, opts.capacity)?;
    let start = Instant::now();
    let fields = base_fields(x);
    let pool = pool(opts.jobs)?;
    let out_dir = opts
        .out
        .clone()
        .or_else(|| opts.resume.as_ref().and_then(|c| c.parent().map(|p| p.to_path_buf())));
    let mut sink = match &out_dir {
        Some(dir) => Some(output::Sink::open(dir, x, opts.resume.as_deref())?),
        None => None,
    };
    let mut per_field = sink.as_ref().map(|s| s.tallies().to_vec()).unwrap_or_default();
    let mut cursor = per_field.len();
    if cursor > fields.len() || per_field.iter().zip(&fields).any(|(t, d)| t.base_disc != d.get()) {
        return Err(Error::Parse("checkpoint does not match this census".into()));
    }
    const CHUNK: usize = 16;
    while cursor < fields.len() {
        let mut end = (cursor + CHUNK).min(fields.len());
        if let Some(h) = opts.halt_after_fields {
            end = end.min(h.max(cursor));
            if end == cursor {
                break;
            }
        }
        let batch = records_for(&fields[cursor..end], x, &pool)?;
        for (d, recs) in fields[cursor..end].iter().zip(&batch) {
            let dd = d.get().unsigned_abs();
            per_field.push(FieldTally::of(d.get(), x / (dd * dd), recs));
        }
        if let Some(s) = sink.as_mut() {
            s.append(batch.iter().flatten(), &per_field)?;
        }
        cursor = end;
    }
    let complete = cursor == fields.len();
    let mut report = CensusReport::from_tallies(x, per_field, complete)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    if let Some(s) = sink.as_mut() {
        if complete {
            s.finish(&report)?;
        }
    }
    Ok(report)
}

/// Check structurally that D4 records come in conjugate pairs K(sqrt a), K(sqrt sigma(a)).
pub fn pair_d4_records(records: &[QuarticRecord]) -> Result<u64> {
    use crate::quad::QuadElement;
    use num_bigint::BigInt;
    let mut pairs = 0u64;
    let mut by_base: std::collections::BTreeMap<i64, Vec<&QuarticRecord>> = Default::default();
    for r in records.iter().filter(|r| r.galois == GaloisType::D4) {
        by_base.entry(r.base_disc).or_default().push(r);
    }
    for (d, recs) in by_base {
        let field = QuadField::from_disc(d)?;
        // recover alpha from x^4 - T x^2 + N: alpha = (T + sqrt(T^2 - 4N)) / 2 up to conjugation
        let alphas: Vec<QuadElement> = recs
            .iter()
            .map(|r| {
                let c0: BigInt = r.minpoly[0].parse().map_err(|_| Error::Parse("minpoly".into()))?;
                let c2: BigInt = r.minpoly[2].parse().map_err(|_| Error::Parse("minpoly".into()))?;
                alpha_from_trace_norm(field, &(-c2), &c0)
            })
            .collect::<Result<_>>()?;
        let mut used = vec![false; recs.len()];
        for i in 0..recs.len() {
            if used[i] {
                continue;
            }
            // alphas are known only up to conjugation, so either product may be the square
            let conj = alphas[i].conj();
            let partner = (i + 1..recs.len()).find(|&j| {
                !used[j]
                    && recs[j].rel_disc_norm == recs[i].rel_disc_norm
                    && (is_square(&(&conj * &alphas[j])) || is_square(&(&alphas[i] * &alphas[j])))
            });
            match partner {
                Some(j) => {
                    used[i] = true;
                    used[j] = true;
                    pairs += 1;
                }
                None => {
                    return Err(Error::invariant(format!(
                        "D4 record {} over {d} has no conjugate partner",
                        recs[i].ideal_label
                    )))
                }
            }
        }
    }
    Ok(pairs)
}

/// The element of K with trace t and norm n, from the root (t + sqrt(t^2 - 4n)) / 2.
fn alpha_from_trace_norm(field: QuadField, t: &num_bigint::BigInt, n: &num_bigint::BigInt) -> Result<crate::quad::QuadElement> {
    use crate::quad::{sqrt_in_field, QuadElement};
    let disc = QuadElement::from_int(field, t * t - num_bigint::BigInt::from(4) * n);
    let s = sqrt_in_field(&disc).ok_or_else(|| Error::invariant("trace/norm pair does not come from the base field"))?;
    let two = QuadElement::from_int(field, 2);
    (&QuadElement::from_int(field, t.clone()) + &s).div(&two)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(x: u64) -> (u64, u64, u64) {
        let r = run_census(x, &CensusOptions::default()).unwrap();
        (r.n_d4, r.n_c4, r.n_v4)
    }

    #[test]
    fn small_censuses() {
        assert_eq!(counts(100), (0, 0, 0));
        // 117 is the smallest D4 discriminant
        assert_eq!(counts(116), (0, 0, 0));
        assert_eq!(counts(130), (1, 1, 0));
        assert_eq!(counts(150).2, 1);
        assert!(run_census(0, &CensusOptions::default()).is_err());
        let big = CensusOptions { capacity: 1000, ..Default::default() };
        assert!(matches!(run_census(2000, &big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn tally_matches_direct_run() {
        let recs = census_records(3000, 1).unwrap();
        for x in [500, 1000, 3000] {
            let a = tally_at(&recs, x).unwrap();
            let b = run_census(x, &CensusOptions::default()).unwrap();
            assert_eq!((a.pair_count, a.n_d4, a.n_c4, a.n_v4), (b.pair_count, b.n_d4, b.n_c4, b.n_v4));
        }
        assert_eq!(pair_d4_records(&recs).unwrap() * 2, tally_at(&recs, 3000).unwrap().raw_d4);
    }
}
