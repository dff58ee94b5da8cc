//! Derived values checked against computations that share no code with the
//! library: tuple arithmetic, subset scans and counting formulas.

use std::collections::BTreeSet;

use transring::filters::*;
use transring::lambda::{LambdaSubset, Point};
use transring::localization::{comaximality_check, fraction_eq, localize};
use transring::omega::*;
use transring::poly::{is_irreducible, Field, Poly};
use transring::ring::{enumerate_ideals, enumerate_maximal_ideals, FiniteRing};
use transring::semitransition::*;
use transring::seq::{IndexSet, NIdeal, PiecewiseSeq};
use transring::Rat;

/// Elements of F_p1 × … × F_pk as coordinate tuples.
fn tuples(primes: &[u64]) -> Vec<Vec<u64>> {
    primes.iter().fold(vec![vec![]], |acc, &p| {
        acc.into_iter().flat_map(|t| (0..p).map(move |x| [t.clone(), vec![x]].concat())).collect()
    })
}

fn op(primes: &[u64], a: &[u64], b: &[u64], f: impl Fn(u64, u64) -> u64) -> Vec<u64> {
    primes.iter().zip(a.iter().zip(b)).map(|(p, (x, y))| f(*x, *y) % p).collect()
}

/// Ideals by testing every subset for closure.
fn ideals_by_subset_scan(primes: &[u64]) -> Vec<BTreeSet<Vec<u64>>> {
    let elems = tuples(primes);
    let n = elems.len();
    assert!(n <= 16);
    let zero = vec![0; primes.len()];
    let mut out = vec![];
    for mask in 0u32..1 << n {
        let set: BTreeSet<Vec<u64>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone()).collect();
        let closed = set.contains(&zero)
            && set.iter().all(|a| set.iter().all(|b| set.contains(&op(primes, a, b, |x, y| x + y))))
            && set.iter().all(|a| elems.iter().all(|r| set.contains(&op(primes, a, r, |x, y| x * y))));
        if closed {
            out.push(set);
        }
    }
    out
}

/// Filters on the Boolean algebra of subsets of k points that avoid ∅, by
/// scanning every family of subsets.
fn filters_by_family_scan(k: usize) -> (usize, usize) {
    let sets: Vec<u32> = (0..1u32 << k).collect();
    let mut filters = vec![];
    for fam in 0u64..1 << sets.len() {
        let has = |s: u32| fam >> s & 1 == 1;
        let members: Vec<u32> = sets.iter().copied().filter(|&s| has(s)).collect();
        let ok = !members.is_empty()
            && !has(0)
            && members.iter().all(|&a| sets.iter().all(|&b| a & !b != 0 || has(b)))
            && members.iter().all(|&a| members.iter().all(|&b| has(a & b)));
        if ok {
            filters.push(fam);
        }
    }
    let maximal = filters.iter().filter(|&&f| !filters.iter().any(|&g| g != f && g & f == f)).count();
    (filters.len(), maximal)
}

fn orders_up_to_16() -> Vec<Vec<u64>> {
    vec![vec![2], vec![3], vec![5], vec![2, 2], vec![2, 3], vec![2, 5], vec![3, 3], vec![3, 5], vec![2, 2, 2], vec![2, 2, 3]]
}

#[test]
fn ideal_counts_match_subset_scan() {
    for primes in orders_up_to_16() {
        let ring = FiniteRing::product_of_fields(&primes).unwrap();
        let scan = ideals_by_subset_scan(&primes);
        let lib = enumerate_ideals(&ring).unwrap();
        assert_eq!(lib.len(), scan.len(), "{primes:?}");
        assert_eq!(lib.len(), 1 << primes.len());
        let mut a: Vec<usize> = lib.iter().map(|i| i.len()).collect();
        let mut b: Vec<usize> = scan.iter().map(|s| s.len()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{primes:?}");
        let proper: Vec<&BTreeSet<Vec<u64>>> = scan.iter().filter(|s| s.len() < ring.order()).collect();
        let maximal = proper.iter().filter(|s| !proper.iter().any(|t| t.len() > s.len() && s.is_subset(t))).count();
        assert_eq!(enumerate_maximal_ideals(&ring).unwrap().len(), maximal);
    }
}

#[test]
fn f2f2f3_has_eight_ideals() {
    assert_eq!(ideals_by_subset_scan(&[2, 2, 3]).len(), 8);
    let s = make_max_structure(FiniteRing::product_of_fields(&[2, 2, 3]).unwrap()).unwrap();
    let lat = PhiLattice::new(s.as_ref()).unwrap();
    let b = bijection_check(&lat).unwrap();
    assert_eq!((b.maximal_ideals, b.ultrafilters), (3, 3));
}

#[test]
fn filter_and_ultrafilter_counts_match_family_scan() {
    for primes in orders_up_to_16() {
        let s = make_max_structure(FiniteRing::product_of_fields(&primes).unwrap()).unwrap();
        let lat = PhiLattice::new(s.as_ref()).unwrap();
        let (filters, ultras) = filters_by_family_scan(primes.len());
        assert_eq!(lat.filters().len(), filters, "{primes:?}");
        assert_eq!(enumerate_ultrafilters(&lat).unwrap().len(), ultras, "{primes:?}");
    }
}

#[test]
fn single_field_has_one_ultrafilter() {
    let s = make_max_structure(FiniteRing::product_of_fields(&[5]).unwrap()).unwrap();
    let lat = PhiLattice::new(s.as_ref()).unwrap();
    let u = enumerate_ultrafilters(&lat).unwrap();
    assert_eq!(u.len(), 1);
    assert_eq!(u[0].filter.members.len(), 1);
    assert_eq!(lat.image().len(), 2);
}

/// Number of monic irreducibles of degree d over F_p: (1/d) Σ_{e|d} μ(e) p^(d/e).
fn gauss_count(p: u64, d: u32) -> u64 {
    fn mobius(n: u32) -> i64 {
        let (mut n, mut k, mut f) = (n, 0, 2);
        while f * f <= n {
            if n % f == 0 {
                n /= f;
                if n % f == 0 {
                    return 0;
                }
                k += 1;
            }
            f += 1;
        }
        if n > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }
    let s: i64 = (1..=d).filter(|e| d.is_multiple_of(*e)).map(|e| mobius(e) * (p as i64).pow(d / e)).sum();
    (s / d as i64) as u64
}

#[test]
fn irreducible_counts_follow_gauss() {
    for (p, max_d) in [(2u64, 5u32), (3, 3)] {
        for d in 1..=max_d {
            let count = Poly::all_up_to_degree(p, d)
                .into_iter()
                .filter(|f| f.degree() == Some(d as usize) && f.leading().is_some_and(|c| c.is_one()))
                .filter(|f| is_irreducible(f).unwrap())
                .count() as u64;
            assert_eq!(count, gauss_count(p, d), "F{p}, degree {d}");
        }
    }
}

#[test]
fn x2_plus_1_over_f2_is_a_square() {
    let f2 = Field::Fp(2);
    let f = Poly::from_ints(f2, &[1, 0, 1]);
    let g = Poly::from_ints(f2, &[1, 1]);
    assert_eq!(g.try_mul(&g).unwrap(), f);
    assert!(!is_irreducible(&f).unwrap());
}

#[test]
fn rational_fractions() {
    let loc = localize(make_poly_structure(Field::Q)).unwrap();
    let x = Element::Poly(Poly::from_ints(Field::Q, &[0, 1]));
    let x1 = Element::Poly(Poly::from_ints(Field::Q, &[1, 1]));
    let (p, q) = (loc.embed(&x), loc.embed(&x1));
    assert!(fraction_eq(&loc, &p, &q).unwrap().is_none());
    let (u, v) = comaximality_check(&loc, &p, &q).unwrap().expect("comaximal");
    // u·x + v·(x+1) = 1 must hold as fractions
    let sum = loc.add(&loc.mul(&u, &p).unwrap(), &loc.mul(&v, &q).unwrap()).unwrap();
    assert!(fraction_eq(&loc, &sum, &loc.one()).unwrap().is_some());
}

#[test]
fn separating_witnesses_on_f2f3_are_idempotents() {
    let ring = FiniteRing::product_of_fields(&[2, 3]).unwrap();
    let s = make_max_structure(ring.clone()).unwrap();
    let (l0, l1) = (Point::Index(0), Point::Index(1));
    let w = s.separating_witness(&l0, &l1).unwrap().expect("separated");
    let Element::Finite(i) = w else { panic!() };
    let c = ring.coords(i).unwrap();
    assert!(c.iter().zip([2u64, 3]).all(|(&x, p)| x * x % p == x), "{c:?}");
    assert!(c != [0, 0] && c != [1, 1]);
}

#[test]
fn truncations_of_c() {
    let s = truncate_c(2, 2).unwrap();
    let sp = s.lambda();
    assert_eq!(sp.finite_points().unwrap().len(), 3);
    let ring = FiniteRing::product_of_fields(&[2, 2, 2]).unwrap();
    assert_eq!(enumerate_maximal_ideals(&ring).unwrap().len(), 3);
    let a = Element::Finite(ring.index_of(&[0, 1, 1]).unwrap());
    assert_eq!(sp.show(&s.psi(&a).unwrap()), "{1}");
    let sp3 = omega_space(truncate_c(3, 2).unwrap().as_ref()).unwrap();
    assert_eq!(sp3.ultrafilters.len(), 4);
}

#[test]
fn f2f2f3_omega_is_discrete_on_three_points() {
    let s = make_max_structure(FiniteRing::product_of_fields(&[2, 2, 3]).unwrap()).unwrap();
    let sp = omega_space(s.as_ref()).unwrap();
    assert_eq!(sp.topology.len(), 3);
    let base: BTreeSet<u64> = sp.topology.base.iter().copied().collect();
    assert_eq!(base.len(), 8);
    assert_eq!(sp.topology.closed.len(), 8);
}

#[test]
fn homeomorphism_sizes() {
    for (primes, n) in [(vec![2u64, 3], 2), (vec![2, 2, 3], 3), (vec![7], 1)] {
        let s = make_max_structure(FiniteRing::product_of_fields(&primes).unwrap()).unwrap();
        let h = max_omega_homeomorphism(&omega_space(s.as_ref()).unwrap()).unwrap();
        assert!(h.passed());
        assert_eq!((h.maximal_ideals, h.points), (n, n));
    }
}

#[test]
fn maximal_ideal_is_prime_and_irreducible() {
    let ring = FiniteRing::product_of_fields(&[2, 3]).unwrap();
    let ideals = enumerate_ideals(&ring).unwrap();
    for m in enumerate_maximal_ideals(&ring).unwrap() {
        let c = irreducibility_classify(&ring, &ideals, &m);
        assert!(c.prime && c.strongly_irreducible && c.semi_strongly_irreducible);
    }
}

#[test]
fn sevens_on_powers_of_two_is_a_unit_under_density() {
    let x = PiecewiseSeq::with_block(Rat::one(), &IndexSet::powers_of_two(), Rat::from_int(7));
    assert_eq!(x.i_limit(NIdeal::DensityZero), Some(Rat::one()));
    assert_eq!(x.i_limit(NIdeal::FiniteSets), None);
    let inv = x.unit_inverse(NIdeal::DensityZero).unwrap().expect("unit");
    for n in 1..=64 {
        assert_eq!(&inv.value_at(n) * &x.value_at(n), Rat::one());
    }
}

#[test]
fn indicator_off_three() {
    let c = eventually_constant_c();
    let a = Element::Seq(PiecewiseSeq::indicator_off(3));
    let z = c.psi(&a).unwrap();
    assert_eq!(z, LambdaSubset::Seq { set: IndexSet::singleton(3), star: false });
    assert_eq!(PiecewiseSeq::indicator_off(3).value_at(3), Rat::zero());
}

#[test]
fn e_star_holds_the_tails() {
    let r = classify_ultrafilters_c(6).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.ultrafilters.last().map(String::as_str), Some("E_★"));
}
