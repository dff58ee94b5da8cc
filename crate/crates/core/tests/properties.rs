use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use transring::lambda::{LambdaSubset, Point};
use transring::localization::{fraction_eq, localize};
use transring::poly::{extended_gcd, Field, Poly};
use transring::ring::FiniteRing;
use transring::semitransition::*;
use transring::seq::{IndexSet, NIdeal, PiecewiseSeq, Query};
use transring::Rat;

fn index_set() -> impl Strategy<Value = IndexSet> {
    (1u64..=6, 1u64..=3, prop::collection::btree_set(1u64..=40, 0..5), prop::collection::btree_set(1u64..=40, 0..5))
        .prop_flat_map(|(m, e, plus, minus)| {
            let minus: BTreeSet<u64> = minus.difference(&plus).copied().collect();
            (
                prop::collection::btree_set(0..m, 0..=m as usize),
                prop::collection::btree_set(0..e, 0..=e as usize),
                Just((m, e, plus, minus)),
            )
        })
        .prop_map(|(res, exp_res, (m, e, plus, minus))| IndexSet::from_parts(m, res, e, exp_res, plus, minus).unwrap())
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rat::new(n, d))
}

fn fp_poly(p: u64) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..p as i64, 0..6).prop_map(move |c| Poly::from_ints(Field::Fp(p), &c))
}

fn q_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..4).prop_map(|c| Poly::new(Field::Q, c))
}

/// Roots by evaluating at every field element; the zero polynomial owns Λ.
fn roots_by_evaluation(f: &Poly, p: u64) -> LambdaSubset {
    if f.is_zero() {
        return LambdaSubset::All;
    }
    let roots: BTreeSet<Point> =
        (0..p).map(Rat::from_int).filter(|b| f.eval(b).is_zero()).map(Point::Scalar).collect();
    if roots.is_empty() {
        LambdaSubset::Empty
    } else {
        LambdaSubset::Finite(roots)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn index_set_operations_are_pointwise(a in index_set(), b in index_set()) {
        let (u, i, d, c) = (a.union(&b), a.intersection(&b), a.difference(&b), a.complement());
        for n in 1..=300u64 {
            let (x, y) = (a.contains(n), b.contains(n));
            prop_assert_eq!(u.contains(n), x || y);
            prop_assert_eq!(i.contains(n), x && y);
            prop_assert_eq!(d.contains(n), x && !y);
            prop_assert_eq!(c.contains(n), !x);
        }
        for k in [70u32, 71, 100, 101] {
            let q = Query::Pow2(k);
            prop_assert_eq!(u.contains_query(q), a.contains_query(q) || b.contains_query(q));
        }
    }

    #[test]
    fn density_counts_residues(a in index_set()) {
        prop_assert_eq!(a.density(), Rat::new(a.residues().len() as i64, a.modulus() as i64));
    }

    #[test]
    fn sequence_arithmetic_is_pointwise(s in index_set(), t in index_set(), v in prop::collection::vec(small_rat(), 4)) {
        let x = PiecewiseSeq::with_block(v[0].clone(), &s, v[1].clone());
        let y = PiecewiseSeq::with_block(v[2].clone(), &t, v[3].clone());
        let (sum, prod) = (&x + &y, &x * &y);
        for n in 1..=200u64 {
            prop_assert_eq!(sum.value_at(n), &x.value_at(n) + &y.value_at(n));
            prop_assert_eq!(prod.value_at(n), &x.value_at(n) * &y.value_at(n));
        }
    }

    #[test]
    fn f_map_turns_products_into_unions(seed in any::<u64>()) {
        for ideal in [NIdeal::FiniteSets, NIdeal::DensityZero] {
            let s = make_seq_structure(ideal, SeqClass::Piecewise);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b) = (s.sample(&mut rng), s.sample(&mut rng));
            let sp = s.lambda();
            let lhs = s.psi(&s.mul(&a, &b).unwrap()).unwrap();
            let rhs = sp.union(&s.psi(&a).unwrap(), &s.psi(&b).unwrap());
            prop_assert!(sp.set_eq(&lhs, &rhs));
        }
    }

    #[test]
    fn psi_on_fp_polys_is_the_root_set(p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>()) {
        let s = make_poly_structure(Field::Fp(p));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = s.sample(&mut rng);
        let Element::Poly(fp) = &f else { unreachable!() };
        let sp = s.lambda();
        prop_assert!(sp.set_eq(&s.psi(&f).unwrap(), &sp.normalize(&roots_by_evaluation(fp, p))));
    }

    #[test]
    fn intersection_witness_is_a_combination(f in fp_poly(3), g in fp_poly(3)) {
        let s = make_poly_structure(Field::Fp(3));
        let (a, b) = (Element::Poly(f), Element::Poly(g));
        let w = s.intersection_witness(&a, &b).unwrap();
        let combo = s.add(&s.mul(&w.u, &a).unwrap(), &s.mul(&w.v, &b).unwrap()).unwrap();
        prop_assert!(s.equal(&combo, &w.c).unwrap());
        let sp = s.lambda();
        let meet = sp.intersection(&s.psi(&a).unwrap(), &s.psi(&b).unwrap());
        prop_assert!(sp.set_eq(&s.psi(&w.c).unwrap(), &meet));
    }

    #[test]
    fn bezout_over_q(f in q_poly(), g in q_poly()) {
        prop_assume!(!f.is_zero() || !g.is_zero());
        let t = extended_gcd(&f, &g).unwrap();
        prop_assert!(t.d.divides(&f).unwrap() && t.d.divides(&g).unwrap());
        let combo = t.u.try_mul(&f).unwrap().try_add(&t.v.try_mul(&g).unwrap()).unwrap();
        prop_assert_eq!(combo, t.d);
    }

    #[test]
    fn max_psi_turns_products_into_unions(primes in prop::collection::vec(prop::sample::select(vec![2u64, 3, 5]), 1..=3), a in 0usize..1000, b in 0usize..1000) {
        let ring = FiniteRing::product_of_fields(&primes).unwrap();
        let (a, b) = (a % ring.order(), b % ring.order());
        let s = make_max_structure(ring.clone()).unwrap();
        let sp = s.lambda();
        let psi = |x: usize| s.psi(&Element::Finite(x)).unwrap();
        prop_assert!(sp.set_eq(&psi(ring.mul(a, b)), &sp.union(&psi(a), &psi(b))));
        prop_assert_eq!(psi(a).is_all(), a == ring.zero());
        prop_assert_eq!(psi(a).is_empty(), ring.is_unit(a));
    }

    #[test]
    fn localization_embeds_multiplicatively(seed in any::<u64>()) {
        let loc = localize(make_poly_structure(Field::Q)).unwrap();
        let base = loc.base().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (base.sample(&mut rng), base.sample(&mut rng));
        let lhs = loc.embed(&base.mul(&a, &b).unwrap());
        let rhs = loc.mul(&loc.embed(&a), &loc.embed(&b)).unwrap();
        prop_assert!(fraction_eq(&loc, &lhs, &rhs).unwrap().is_some());
        let p = loc.sample(&mut rng);
        prop_assert!(fraction_eq(&loc, &p, &p).unwrap().is_some());
    }
}
