use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Combination, Element, PmStatus, PrincipalWitness, SemiTransition, Structure};
use crate::error::{Error, Result};
use crate::lambda::{LambdaSpace, LambdaSubset, Point};
use crate::poly::{extended_gcd, roots, Field, Poly};
use crate::rat::Rat;

/// k[x] with ψ₁(f) = the zero set of f in k. Over F_p the point set carries
/// one extra point η lying only in ψ₁(0): with Λ = F_p alone, x^p − x would
/// vanish everywhere and ψ₁(a) = Λ would no longer single out a = 0.
#[derive(Debug)]
pub struct PolyStructure {
    field: Field,
    lambda: LambdaSpace,
}

pub fn make_poly_structure(field: Field) -> Structure {
    Arc::new(PolyStructure::new(field))
}

impl PolyStructure {
    pub fn new(field: Field) -> PolyStructure {
        PolyStructure { field, lambda: LambdaSpace::Field(field) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn get<'a>(&self, a: &'a Element) -> Result<&'a Poly> {
        match a {
            Element::Poly(p) if p.field() == self.field => Ok(p),
            Element::Poly(p) => Err(Error::FieldMismatch(p.field().to_string(), self.field.to_string())),
            other => Err(Error::ElementKind { expected: "poly", got: other.kind().into() }),
        }
    }

    fn wrap(p: Poly) -> Element {
        Element::Poly(p)
    }

    fn point_root(&self, l: &Point) -> Result<Option<Rat>> {
        if !self.lambda.has_point(l) {
            return Err(Error::UnknownPoint(format!("{l:?}")));
        }
        Ok(match l {
            Point::Scalar(a) => Some(a.clone()),
            _ => None,
        })
    }
}

impl SemiTransition for PolyStructure {
    fn name(&self) -> String {
        format!("{}[x]", self.field)
    }

    fn lambda(&self) -> &LambdaSpace {
        &self.lambda
    }

    fn accepts(&self, a: &Element) -> bool {
        self.get(a).is_ok()
    }

    fn zero(&self) -> Element {
        Self::wrap(Poly::zero(self.field))
    }

    fn one(&self) -> Element {
        Self::wrap(Poly::one(self.field))
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Self::wrap(self.get(a)?.try_add(self.get(b)?)?))
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Self::wrap(self.get(a)?.try_mul(self.get(b)?)?))
    }

    fn neg(&self, a: &Element) -> Result<Element> {
        Ok(Self::wrap(self.get(a)?.neg()))
    }

    fn pow(&self, a: &Element, k: u32) -> Result<Element> {
        Ok(Self::wrap(self.get(a)?.pow(k)))
    }

    fn psi(&self, a: &Element) -> Result<LambdaSubset> {
        let f = self.get(a)?;
        if f.is_zero() {
            return Ok(LambdaSubset::All);
        }
        let pts = roots(f)?.into_iter().map(Point::Scalar).collect();
        Ok(self.lambda.normalize(&LambdaSubset::Finite(pts)))
    }

    fn exponents(&self) -> (u32, u32) {
        (1, 1)
    }

    fn certifies_exponent(&self, m: u32) -> bool {
        m >= 1
    }

    fn intersection_witness(&self, a: &Element, b: &Element) -> Result<Combination> {
        let (f, g) = (self.get(a)?, self.get(b)?);
        if f.is_zero() && g.is_zero() {
            return Ok(Combination { c: self.zero(), u: self.one(), v: self.zero() });
        }
        let t = extended_gcd(f, g)?;
        Ok(Combination { c: Self::wrap(t.d), u: Self::wrap(t.u), v: Self::wrap(t.v) })
    }

    fn principal_witness(&self, a: &Element, b: &Element, m: u32, n: u32) -> Result<PrincipalWitness> {
        let (am, bn) = (self.get(a)?.pow(m), self.get(b)?.pow(n));
        let zero = Poly::zero(self.field);
        if am.is_zero() && bn.is_zero() {
            return Ok(PrincipalWitness {
                z: self.zero(),
                alpha: self.zero(),
                beta: self.zero(),
                ka: self.zero(),
                kb: self.zero(),
            });
        }
        let t = extended_gcd(&am, &bn)?;
        let (ka, r1) = am.divmod(&t.d)?;
        let (kb, r2) = bn.divmod(&t.d)?;
        debug_assert!(r1 == zero && r2 == zero);
        Ok(PrincipalWitness {
            z: Self::wrap(t.d),
            alpha: Self::wrap(t.u),
            beta: Self::wrap(t.v),
            ka: Self::wrap(ka),
            kb: Self::wrap(kb),
        })
    }

    fn comaximal_certificate(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        let (f, g) = (self.get(a)?, self.get(b)?);
        if f.is_zero() && g.is_zero() {
            return Ok(None);
        }
        let t = extended_gcd(f, g)?;
        Ok(t.d.is_one().then(|| (Self::wrap(t.u), Self::wrap(t.v))))
    }

    fn pm_status(&self) -> PmStatus {
        PmStatus::Refuted { witness: "the prime (0) lies in the maximal ideals (x) and (x - 1)".into() }
    }

    fn pm_witness(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        // in a domain cd = 0 forces c = 0 or d = 0, so one side must be a unit
        let (f, g) = (self.get(a)?, self.get(b)?);
        if f.is_constant() && !f.is_zero() {
            return Ok(Some((self.zero(), self.one())));
        }
        if g.is_constant() && !g.is_zero() {
            return Ok(Some((self.one(), self.zero())));
        }
        Ok(None)
    }

    fn separating_witness(&self, l1: &Point, l2: &Point) -> Result<Option<Element>> {
        let (r1, r2) = (self.point_root(l1)?, self.point_root(l2)?);
        Ok(match (r1, r2) {
            _ if l1 == l2 => None,
            (Some(a), _) | (None, Some(a)) => Some(Self::wrap(Poly::linear_root(self.field, &a))),
            (None, None) => None,
        })
    }

    fn disjoint_witness(&self, l: &Point, a: &Element) -> Result<Option<Element>> {
        let psi_a = self.psi(a)?;
        if self.lambda.contains(&psi_a, l) {
            return Err(Error::Precondition(format!("{} lies in ψ({})", self.lambda.label(l), self.show(a))));
        }
        Ok(match self.point_root(l)? {
            Some(r) => Some(Self::wrap(Poly::linear_root(self.field, &r))),
            // only ψ(0) contains η, and ψ(0) = Λ meets ψ(a) unless ψ(a) = ∅
            None => psi_a.is_empty().then(|| self.zero()),
        })
    }

    fn s_cancel(&self, x: &Element) -> Result<Option<Element>> {
        Ok(self.get(x)?.is_zero().then(|| self.one()))
    }

    fn elements(&self, bound: u32) -> Option<Vec<Element>> {
        match self.field {
            Field::Fp(p) => Some(Poly::all_up_to_degree(p, bound).into_iter().map(Self::wrap).collect()),
            Field::Q => None,
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Element {
        let f = match self.field {
            Field::Fp(p) => {
                let d = rng.gen_range(0..=4);
                Poly::new(self.field, (0..=d).map(|_| Rat::from_int(rng.gen_range(0..p))).collect())
            }
            Field::Q => {
                if rng.gen_bool(0.5) {
                    let c = Rat::new(rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1i64..=2));
                    let mut f = Poly::constant(self.field, c);
                    for _ in 0..rng.gen_range(0..=2) {
                        let r = Rat::new(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2));
                        f = &f * &Poly::linear_root(self.field, &r);
                    }
                    if rng.gen_bool(0.3) {
                        f = &f * &Poly::from_ints(self.field, &[rng.gen_range(1..=3), 0, 1]);
                    }
                    f
                } else {
                    let d = rng.gen_range(0..=3);
                    Poly::new(self.field, (0..=d).map(|_| Rat::from_int(rng.gen_range(-3i64..=3))).collect())
                }
            }
        };
        Self::wrap(f)
    }

    fn is_domain(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(c: &[i64]) -> Element {
        Element::Poly(Poly::from_ints(Field::Fp(2), c))
    }

    fn sc(n: i64) -> Point {
        Point::Scalar(Rat::from_int(n))
    }

    #[test]
    fn zero_sets_over_f2() {
        let s = PolyStructure::new(Field::Fp(2));
        assert_eq!(s.psi(&p2(&[0, 1, 1])).unwrap(), LambdaSubset::Finite([sc(0), sc(1)].into()));
        assert_eq!(s.psi(&s.one()).unwrap(), LambdaSubset::Empty);
        assert_eq!(s.psi(&s.zero()).unwrap(), LambdaSubset::All);
        assert_eq!(s.psi(&p2(&[1, 1, 1])).unwrap(), LambdaSubset::Empty);
    }

    #[test]
    fn frobenius_polynomial_is_not_all_of_lambda() {
        let s = PolyStructure::new(Field::Fp(2));
        let psi = s.psi(&p2(&[0, 1, 1])).unwrap();
        assert!(!psi.is_all());
        // on the bare field points it would be everything
        let bare = LambdaSpace::Finite(vec!["0".into(), "1".into()]);
        assert_eq!(bare.normalize(&LambdaSubset::Finite([Point::Index(0), Point::Index(1)].into())), LambdaSubset::All);
    }

    #[test]
    fn witnesses() {
        let s = PolyStructure::new(Field::Fp(2));
        let w = s.intersection_witness(&p2(&[0, 1]), &p2(&[1, 1])).unwrap();
        assert_eq!(w.c, s.one());
        assert_eq!(s.separating_witness(&sc(0), &sc(1)).unwrap(), Some(p2(&[0, 1])));
        assert_eq!(s.disjoint_witness(&Point::Generic, &p2(&[0, 1])).unwrap(), None);
        let q = PolyStructure::new(Field::Q);
        let x2m1 = Element::Poly(Poly::from_ints(Field::Q, &[-1, 0, 1]));
        let xm1 = Element::Poly(Poly::from_ints(Field::Q, &[-1, 1]));
        assert_eq!(q.intersection_witness(&x2m1, &xm1).unwrap().c, xm1);
    }
}
