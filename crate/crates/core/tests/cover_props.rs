use num_bigint::BigInt;
use socover_core::cover::{cover_series_closed, family_report, veronese_check};
use socover_core::oracle::OracleConfig;
use socover_core::symdet::{h_poly_codim3, RingSpec};

#[test]
fn gap_law_and_unimodality_boundary() {
    let cfg = OracleConfig::default();
    for m in 1..=8 {
        let r = family_report(m, false, 0, &cfg).unwrap();
        assert_eq!(r.gap, Some(BigInt::from(m as i64 - 1)), "m={m}");
        assert_eq!(r.profile.unimodal, m <= 1, "m={m}");
        assert!(r.profile.palindrome, "m={m}");
        assert_eq!(r.a_invariant_y, -((4 * m * m + 4 * m) as i64), "m={m}");
    }
}

#[test]
fn family_agrees_with_oracle_in_low_degrees() {
    let cfg = OracleConfig::default();
    for m in 1..=2 {
        let r = family_report(m, true, 2, &cfg).unwrap();
        assert!(r.oracle.is_some());
    }
}

#[test]
fn cover_palindromes_across_the_family() {
    for t in [2u32, 4, 6, 8] {
        let spec = RingSpec::new(t, t + 2).unwrap();
        let c = cover_series_closed(spec, &h_poly_codim3(spec).unwrap()).unwrap();
        let p = c.h_vector().unwrap();
        assert!(p.palindrome, "t={t}");
        assert_eq!(p.a_invariant, -((t * (t + 2)) as i64) / 2, "t={t}");
        assert_eq!(c.numerator().eval_at_one(), 2 * h_poly_codim3(spec).unwrap().numerator().eval_at_one());
    }
}

#[test]
fn veronese_for_small_n() {
    let cfg = OracleConfig::default();
    for n in 1..=5 {
        assert!(veronese_check(n, 4, &cfg).unwrap().holds, "n={n}");
    }
}

#[test]
fn cover_palindrome_from_oracle_series() {
    use socover_core::cover::cover_series;
    let cfg = OracleConfig::default();
    let spec = RingSpec::new(2, 6).unwrap();
    let c = cover_series(spec, 6, &cfg).unwrap();
    let p = c.h_vector().unwrap();
    assert!(p.palindrome, "{}", p.tuple());
    assert_eq!(p.a_invariant, -6);
}
