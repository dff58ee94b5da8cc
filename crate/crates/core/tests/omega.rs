use std::time::Instant;

use transring::omega::*;
use transring::ring::FiniteRing;
use transring::semitransition::{make_max_structure, truncate_c};

#[test]
fn extension_examples_pass() {
    for ex in extension_examples().unwrap() {
        let t = Instant::now();
        let r = extend_map(&ex).unwrap();
        eprintln!("{}: {:?} {:?}", r.name, t.elapsed(), r.failed_checks());
        assert!(r.passed(), "{:#?}", r.checks);
        assert!(r.annihilator_search_failures.is_empty());
    }
}

#[test]
fn corrupted_homomorphism_fails_only_its_check() {
    let ex = &extension_examples().unwrap()[1];
    let (bad, what) = corrupt_homomorphism(ex).unwrap();
    let r = extend_map(&bad).unwrap();
    eprintln!("{what}");
    assert_eq!(r.failed_checks(), vec!["homomorphism".to_string()]);
}

#[test]
fn eventually_constant_classification() {
    let r = classify_ultrafilters_c(10).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.ultrafilters.len(), 11);
    assert_eq!(r.ultrafilters.last().unwrap(), "E_★");
}

#[test]
fn omega_battery() {
    let mut structures = vec![];
    for primes in [&[2u64][..], &[2, 3], &[2, 2, 3], &[3, 5], &[2, 3, 5]] {
        structures.push(make_max_structure(FiniteRing::product_of_fields(primes).unwrap()).unwrap());
    }
    structures.push(truncate_c(3, 2).unwrap());
    structures.push(make_max_structure(FiniteRing::integers_mod(6).unwrap()).unwrap());
    for s in structures {
        let sp = omega_space(s.as_ref()).unwrap();
        assert!(sp.passed(), "{}: {:?}", s.name(), sp.properties);
        let ch = compact_hausdorff_check(s.as_ref(), &sp, &sp.topology).unwrap();
        assert!(ch.passed(), "{}: {:?}", s.name(), ch);
        let h = max_omega_homeomorphism(&sp).unwrap();
        assert!(h.passed(), "{}: {:?}", s.name(), h.failures);
        let lat = &sp.lattice;
        for c in phi_ideal_criterion_scan(lat).unwrap() {
            assert!(c.agrees(), "{c:?}");
        }
    }
}
