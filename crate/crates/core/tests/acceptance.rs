//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use quartic_core::analytic::{d4_constant, rel_quadratic_density, residue_lemma_sum, SplittingShape};
use quartic_core::census::{
    census_records, count_c4_direct, count_v4_direct, fit_counts, loglog_slope, record_poly, run_census,
    tally_at, CensusOptions, QuarticRecord,
};
use quartic_core::galclass::GaloisType;
use quartic_core::oracle::{maximal_order_disc, resolvent_cubic_galois, QuarticGalois};
use quartic_core::quad::QuadField;
use quartic_core::relquad::enumerate_quadratic_extensions;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut shapes = 0;
    let mut bad = Vec::new();
    for n in [1, 2, 4] {
        for s in SplittingShape::all_of_degree(n) {
            shapes += 1;
            match residue_lemma_sum(&s) {
                Ok(v) if v == BigRational::one() => {}
                Ok(v) => bad.push(format!("{:?} -> {v}", s.primes)),
                Err(e) => bad.push(format!("{:?} -> {e}", s.primes)),
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 1.0,
        format!("{shapes} shapes of 2 in degrees 1, 2, 4 sum to exactly 1 ({secs:.3}s){}", fmt_bad(&bad)),
    )
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for x in [1_000, 10_000, 100_000] {
        match run_census(x, &CensusOptions::default()) {
            Ok(r) => {
                let ok = r.pair_count == 2 * r.n_d4 + r.n_c4 + 3 * r.n_v4 && r.raw_d4 % 2 == 0 && r.raw_v4 % 3 == 0;
                pass &= ok;
                notes.push(format!("X={x}: {} = 2*{} + {} + 3*{}", r.pair_count, r.n_d4, r.n_c4, r.n_v4));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("X={x}: {e}"));
            }
        }
    }
    outcome(pass, notes.join("; "))
}

fn criterion_3(rec4: &[QuarticRecord], rec5: &[QuarticRecord]) -> Outcome {
    // every record at 10^4, plus every 10th record at 10^5
    let sample: Vec<&QuarticRecord> = rec4.iter().chain(rec5.iter().step_by(10)).collect();
    let mut bad = Vec::new();
    for r in &sample {
        let f = record_poly(r).expect("record polynomial");
        match maximal_order_disc(&f) {
            Ok(d) if d == BigInt::from(r.abs_disc) => {}
            Ok(d) => bad.push(format!("{f}: oracle {d}, tower {}", r.abs_disc)),
            Err(e) => bad.push(format!("{f}: {e}")),
        }
    }
    let n = sample.len();
    outcome(
        bad.is_empty() && n >= 500,
        format!("{}/{n} sampled records agree exactly{}", n - bad.len(), fmt_bad(&bad)),
    )
}

fn criterion_4(rec4: &[QuarticRecord]) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    let ladder: Vec<u64> = (1..=200).map(|k| k * 50).collect();
    for &x in &ladder {
        let r = tally_at(rec4, x).expect("tally");
        let (v, c) = (count_v4_direct(x), count_c4_direct(x));
        checked += 1;
        if (r.n_v4, r.n_c4) != (v, c) {
            bad.push(format!("X={x}: census V4={} C4={}, direct V4={v} C4={c}", r.n_v4, r.n_c4));
        }
    }
    let r = tally_at(rec4, 10_000).expect("tally");
    outcome(
        bad.is_empty(),
        format!(
            "at X=10^4 V4 {} = {}, C4 {} = {}; {checked} bounds checked{}",
            r.n_v4,
            count_v4_direct(10_000),
            r.n_c4,
            count_c4_direct(10_000),
            fmt_bad(&bad)
        ),
    )
}

fn criterion_5() -> Outcome {
    let y = 100_000u64;
    let mut pass = true;
    let mut notes = Vec::new();
    for d in [-4, 5, -23] {
        let field = QuadField::from_disc(d).expect("field");
        let n = enumerate_quadratic_extensions(field, y).expect("enumeration").len();
        let dens = rel_quadratic_density(field).expect("density").midpoint;
        let ratio = n as f64 / y as f64;
        let gap = (ratio - dens).abs() / dens;
        pass &= gap <= 0.05;
        notes.push(format!("d={d}: {ratio:.5} vs {dens:.5} ({:.2}%)", gap * 100.0));
    }
    outcome(pass, notes.join("; "))
}

fn criteria_6_7(rec6: &[QuarticRecord]) -> (Outcome, Outcome) {
    let bounds = [1_000u64, 10_000, 100_000, 1_000_000];
    let pts: Vec<(u64, u64)> = bounds.iter().map(|&x| (x, tally_at(rec6, x).expect("tally").n_d4)).collect();
    let fit = fit_counts(&pts).expect("fit");
    let c = d4_constant(10_000).expect("constant");
    let gap = (fit.c_hat - c.value.midpoint).abs() / c.value.midpoint;
    let six = outcome(
        gap <= 0.10,
        format!(
            "c_hat {:.5} vs constant(D0=10^4) {:.6} +/- {:.1e} (tail ~{:.1e}): gap {:.2}%; counts {:?}",
            fit.c_hat,
            c.value.midpoint,
            c.value.radius,
            c.tail_estimate,
            gap * 100.0,
            pts
        ),
    );
    let seven = match fit.residual_exponent {
        Some(e) => outcome(e < 1.0, format!("residual |N_D4 - c_hat X| log-log exponent {e:.3} (reported, not held to 3/4)")),
        None => outcome(false, "residuals vanished; exponent undefined"),
    };
    (six, seven)
}

fn criterion_8(rec4: &[QuarticRecord]) -> Outcome {
    let mut bad = Vec::new();
    for r in rec4 {
        let f = record_poly(r).expect("record polynomial");
        let want = match r.galois {
            GaloisType::D4 => QuarticGalois::D4,
            GaloisType::C4 => QuarticGalois::C4,
            GaloisType::V4 => QuarticGalois::V4,
        };
        match resolvent_cubic_galois(&f) {
            Ok(g) if g == want => {}
            Ok(g) => bad.push(format!("{f}: resolvent {g}, Kummer {}", r.galois)),
            Err(e) => bad.push(format!("{f}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("{}/{} records agree{}", rec4.len() - bad.len(), rec4.len(), fmt_bad(&bad)))
}

fn criterion_9() -> Outcome {
    let run = |jobs: usize| -> std::io::Result<Vec<u8>> {
        let dir = tempfile::tempdir()?;
        let opts = CensusOptions { jobs, out: Some(dir.path().to_path_buf()), ..Default::default() };
        run_census(10_000, &opts).map_err(|e| std::io::Error::other(e.to_string()))?;
        std::fs::read(dir.path().join("records.jsonl"))
    };
    match (run(1), run(8)) {
        (Ok(a), Ok(b)) => outcome(
            a == b && !a.is_empty(),
            format!("1 worker {} bytes, 8 workers {} bytes, identical: {}", a.len(), b.len(), a == b),
        ),
        (Err(e), _) | (_, Err(e)) => outcome(false, e.to_string()),
    }
}

fn fmt_bad(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failures: {}", bad.iter().take(5).cloned().collect::<Vec<_>>().join(" | "))
    }
}

fn main() {
    let start = Instant::now();
    let rec6 = census_records(1_000_000, 0).expect("census at 10^6");
    let rec4: Vec<QuarticRecord> = rec6.iter().filter(|r| r.abs_disc.unsigned_abs() <= 10_000).cloned().collect();
    let rec5: Vec<QuarticRecord> = rec6.iter().filter(|r| r.abs_disc.unsigned_abs() <= 100_000).cloned().collect();

    let (six, seven) = criteria_6_7(&rec6);
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(&rec4, &rec5),
        criterion_4(&rec4),
        criterion_5(),
        six,
        seven,
        criterion_8(&rec4),
        criterion_9(),
    ];
    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        println!("criterion {}: {} - {}", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    let c4: Vec<(f64, f64)> = [1_000u64, 10_000, 100_000, 1_000_000]
        .iter()
        .map(|&x| (x as f64, tally_at(&rec6, x).expect("tally").n_c4 as f64))
        .collect();
    if let Some(e) = loglog_slope(&c4) {
        println!("note: N_C4 growth exponent over 10^3..10^6 is {e:.3}; counts {:?}", c4.iter().map(|p| p.1 as u64).collect::<Vec<_>>());
    }
    println!("acceptance: {} of 9 passed in {:.1}s", 9 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
