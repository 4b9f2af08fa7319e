use quartic_core::analytic::{
    d4_term, d4_term_with_divisor_sum, d4_terms, dedekind_zeta_residue, dirichlet_l_at_1, dirichlet_l_at_2_with,
    rational_quadratic_density, summarize, Precision,
};
use quartic_core::census::loglog_slope;
use quartic_core::quad::{fundamental_discriminants, QuadField};

#[test]
fn residue_forms_agree_for_small_fields() {
    let p = Precision::default();
    for d in fundamental_discriminants(200) {
        let k = QuadField::new(d);
        // class number formula against the finite character sum for L(1)
        let res = dedekind_zeta_residue(k).unwrap();
        let l1 = dirichlet_l_at_1(d);
        assert!(res.overlaps(&l1) && (res.midpoint - l1.midpoint).abs() < 1e-9, "d={d}: {res} vs {l1}");
        let (a, b) = (d4_term(k, p).unwrap(), d4_term_with_divisor_sum(k, p).unwrap());
        assert!(a.overlaps(&b), "d={d}: {a} vs {b}");
    }
}

#[test]
fn precision_doubling_stays_inside_radius() {
    let lo = Precision::new(6).unwrap();
    let hi = Precision::new(12).unwrap();
    for d in [-3i64, -4, 5, 8, -23, 173, -163, 997] {
        let a = dirichlet_l_at_2_with(d, lo).unwrap();
        let b = dirichlet_l_at_2_with(d, hi).unwrap();
        assert!(a.radius <= 1e-6 && b.radius <= 1e-12, "d={d}: {a} {b}");
        assert!((a.midpoint - b.midpoint).abs() <= a.radius, "d={d}: {a} vs {b}");
    }
}

#[test]
fn fundamental_discriminant_count_matches_density() {
    let x = 1_000_000u64;
    let ratio = fundamental_discriminants(x).len() as f64 / x as f64;
    let q = rational_quadratic_density().midpoint;
    assert!((ratio - q).abs() / q < 0.01, "{ratio} vs {q}");
}

#[test]
fn partial_sums_converge_like_inverse_truncation() {
    let terms = d4_terms(2_000, Precision::default()).unwrap();
    let full = summarize(2_000, &terms).value.midpoint;
    assert!(terms.iter().all(|(_, t)| t.lo() > 0.0), "partial sums must increase");
    // increments C(2D) - C(D) decay like D^s
    let pts: Vec<(f64, f64)> = [62u64, 125, 250, 500, 1000]
        .iter()
        .map(|&d| {
            let a = summarize(d, &terms).value.midpoint;
            let b = summarize(2 * d, &terms).value.midpoint;
            (d as f64, b - a)
        })
        .collect();
    let s = loglog_slope(&pts).unwrap();
    println!("increment exponent {s:.3}; C(2000) = {full}");
    assert!((-1.25..=-0.75).contains(&s), "increment exponent {s}");
    // with 1/D decay the tail past D is twice the increment from D to 2D
    let (c1, tail1) = (summarize(1_000, &terms).value.midpoint, summarize(1_000, &terms).tail_estimate);
    let ratio = tail1 / (full - c1);
    println!("tail(1000) / (C(2000) - C(1000)) = {ratio:.3}");
    assert!((1.5..=2.5).contains(&ratio), "{ratio}");
}
