use num_bigint::BigInt;
use quartic_core::galclass::{classify_extension, minimal_polynomial, GaloisType};
use quartic_core::oracle::{maximal_order_disc, naive_selmer_enum, resolvent_cubic_galois, QuarticGalois, QuarticPoly};
use quartic_core::quad::{is_square, QuadField};
use quartic_core::relquad::enumerate_quadratic_extensions;

fn k(d: i64) -> QuadField {
    QuadField::from_disc(d).unwrap()
}

/// Both lists describe the same set of square classes.
fn same_classes(field: QuadField, h: u64, y: u64) {
    let naive = naive_selmer_enum(field, h, y).unwrap();
    let fast = enumerate_quadratic_extensions(field, y).unwrap();
    assert_eq!(naive.len(), fast.len(), "d={} y={y}", field.disc());
    for n in &naive {
        let hits: Vec<_> = fast.iter().filter(|e| is_square(&(&e.alpha * &n.alpha))).collect();
        assert_eq!(hits.len(), 1, "d={} alpha={}", field.disc(), n.alpha);
        assert_eq!(hits[0].rel_disc, n.rel_disc);
    }
}

#[test]
fn naive_examples() {
    assert_eq!(naive_selmer_enum(k(-4), 10, 16).unwrap().len(), 2);
    assert_eq!(naive_selmer_enum(k(-4), 10, 15).unwrap().len(), 1);
    assert_eq!(naive_selmer_enum(k(-4), 10, 8).unwrap().len(), 0);
    let h = naive_selmer_enum(k(-20), 10, 1).unwrap();
    assert_eq!(h.len(), 1);
    assert!(naive_selmer_enum(k(-4), 10_000, 1).is_err());
}

#[test]
fn naive_matches_enumeration() {
    for d in [-4, -3, 5, -20, -23] {
        same_classes(k(d), 50, 200);
    }
}

#[test]
fn tower_discriminants_match_oracle() {
    for d in [-3, -4, 5, -7, 8, 12, -15, -20, 13, -23, 17, -24, 21] {
        let f = k(d);
        let y = 4000 / (d * d) as u64;
        for e in enumerate_quadratic_extensions(f, y).unwrap() {
            let poly = QuarticPoly::from_coeffs(minimal_polynomial(f, &e.alpha).unwrap()).unwrap();
            let disc = maximal_order_disc(&poly).unwrap();
            assert_eq!(disc, BigInt::from(e.abs_disc), "d={d} alpha={} f={poly}", e.alpha);
            let g = resolvent_cubic_galois(&poly).unwrap();
            let expect = match classify_extension(f, &e.alpha).unwrap() {
                GaloisType::D4 => QuarticGalois::D4,
                GaloisType::C4 => QuarticGalois::C4,
                GaloisType::V4 => QuarticGalois::V4,
            };
            assert_eq!(g, expect, "d={d} alpha={}", e.alpha);
        }
    }
}

#[test]
fn regression_pins() {
    let table = include_str!("data/oracle_pins.txt");
    let mut n = 0;
    for line in table.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let w: Vec<&str> = line.split_whitespace().collect();
        let c: Vec<i64> = w[..4].iter().map(|s| s.parse().unwrap()).collect();
        let f = QuarticPoly::new(c[0], c[1], c[2], c[3]);
        assert_eq!(maximal_order_disc(&f).unwrap().to_string(), w[4], "{f}");
        assert_eq!(resolvent_cubic_galois(&f).unwrap().to_string(), w[5], "{f}");
        n += 1;
    }
    assert_eq!(n, 50);
}
