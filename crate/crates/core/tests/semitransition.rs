use std::time::Instant;

use transring::localization::{embedding_check, localize};
use transring::poly::Field;
use transring::ring::FiniteRing;
use transring::semitransition::*;
use transring::seq::NIdeal;

#[test]
fn polynomial_rings_pass_exhaustively() {
    for (p, d) in [(2, 3), (3, 2)] {
        let s = make_poly_structure(Field::fp(p).unwrap());
        let t = Instant::now();
        let r = verify_semitransition(s.as_ref(), Mode::Exhaustive { bound: d }).unwrap();
        eprintln!("F{p}[x] deg ≤ {d}: {} pairs in {:?}", r.pairs_tested, t.elapsed());
        assert!(r.passed(), "{:#?}", r.failures);
    }
}

#[test]
fn product_with_max_structure_passes() {
    let a = make_poly_structure(Field::fp(2).unwrap());
    let b = make_max_structure(FiniteRing::product_of_fields(&[3]).unwrap()).unwrap();
    let s = product_structure(vec![a, b], 1).unwrap();
    let r = verify_semitransition(s.as_ref(), Mode::Sample { pairs: 500, seed: 7 }).unwrap();
    assert!(r.passed(), "{:#?}", r.failures);
}

#[test]
fn rational_localization_passes_sampled_suite() {
    let l = localize(make_poly_structure(Field::Q)).unwrap();
    let r = verify_semitransition(l.as_ref(), Mode::Sample { pairs: 500, seed: 11 }).unwrap();
    assert!(r.passed(), "{:#?}", r.failures);
    assert!(embedding_check(&l, 500, 3).passed());
}

#[test]
fn sequence_rings_pass_sampled_suite() {
    for ideal in [NIdeal::FiniteSets, NIdeal::DensityZero] {
        let s = make_seq_structure(ideal, SeqClass::Piecewise);
        let r = verify_semitransition(s.as_ref(), Mode::Sample { pairs: 500, seed: 5 }).unwrap();
        assert!(r.passed(), "{:#?}", &r.failures[..r.failures.len().min(3)]);
        let t = verify_transitional(s.as_ref(), 100, 9);
        eprintln!("{}: {}", s.name(), t.summary());
    }
}
