use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Combination, Element, PmStatus, PrincipalWitness, SemiTransition, Structure};
use crate::error::{Error, Result};
use crate::lambda::{LambdaSpace, LambdaSubset, Point};

/// ℤ with ψ(0) = Λ and ψ(a) = ∅ otherwise.
#[derive(Debug)]
pub struct TrivialStructure {
    lambda: LambdaSpace,
}

pub fn make_trivial_structure(lambda: Vec<String>) -> Result<Structure> {
    Ok(Arc::new(TrivialStructure::new(lambda)?))
}

fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    let (g, x, y) = if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
    assert_eq!(&(a * &x) + &(b * &y), g, "Bezout identity");
    (g, x, y)
}

impl TrivialStructure {
    pub fn new(lambda: Vec<String>) -> Result<TrivialStructure> {
        if lambda.is_empty() {
            return Err(Error::Descriptor("the point set must be nonempty".into()));
        }
        Ok(TrivialStructure { lambda: LambdaSpace::Finite(lambda) })
    }

    fn get<'a>(&self, a: &'a Element) -> Result<&'a BigInt> {
        match a {
            Element::Int(n) => Ok(n),
            other => Err(Error::ElementKind { expected: "int", got: other.kind().into() }),
        }
    }

    fn wrap(n: BigInt) -> Element {
        Element::Int(n)
    }
}

impl SemiTransition for TrivialStructure {
    fn name(&self) -> String {
        "Z (trivial ψ)".into()
    }

    fn lambda(&self) -> &LambdaSpace {
        &self.lambda
    }

    fn accepts(&self, a: &Element) -> bool {
        matches!(a, Element::Int(_))
    }

    fn zero(&self) -> Element {
        Self::wrap(BigInt::zero())
    }

    fn one(&self) -> Element {
        Self::wrap(BigInt::one())
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Self::wrap(self.get(a)? + self.get(b)?))
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Self::wrap(self.get(a)? * self.get(b)?))
    }

    fn neg(&self, a: &Element) -> Result<Element> {
        Ok(Self::wrap(-self.get(a)?.clone()))
    }

    fn psi(&self, a: &Element) -> Result<LambdaSubset> {
        Ok(if self.get(a)?.is_zero() { LambdaSubset::All } else { LambdaSubset::Empty })
    }

    fn exponents(&self) -> (u32, u32) {
        (1, 1)
    }

    fn certifies_exponent(&self, m: u32) -> bool {
        m >= 1
    }

    fn intersection_witness(&self, a: &Element, b: &Element) -> Result<Combination> {
        let (g, x, y) = bezout(self.get(a)?, self.get(b)?);
        Ok(Combination { c: Self::wrap(g), u: Self::wrap(x), v: Self::wrap(y) })
    }

    fn principal_witness(&self, a: &Element, b: &Element, m: u32, n: u32) -> Result<PrincipalWitness> {
        let (am, bn) = (num_traits::pow(self.get(a)?.clone(), m as usize), num_traits::pow(self.get(b)?.clone(), n as usize));
        let (g, x, y) = bezout(&am, &bn);
        let (ka, kb) = if g.is_zero() { (BigInt::zero(), BigInt::zero()) } else { (&am / &g, &bn / &g) };
        Ok(PrincipalWitness {
            z: Self::wrap(g),
            alpha: Self::wrap(x),
            beta: Self::wrap(y),
            ka: Self::wrap(ka),
            kb: Self::wrap(kb),
        })
    }

    fn comaximal_certificate(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        let (g, x, y) = bezout(self.get(a)?, self.get(b)?);
        Ok(g.is_one().then(|| (Self::wrap(x), Self::wrap(y))))
    }

    fn pm_status(&self) -> PmStatus {
        PmStatus::Refuted { witness: "the prime (0) lies in the maximal ideals (2) and (3)".into() }
    }

    fn pm_witness(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        if self.get(a)?.abs().is_one() {
            return Ok(Some((self.zero(), self.one())));
        }
        if self.get(b)?.abs().is_one() {
            return Ok(Some((self.one(), self.zero())));
        }
        Ok(None)
    }

    fn separating_witness(&self, l1: &Point, l2: &Point) -> Result<Option<Element>> {
        for l in [l1, l2] {
            if !self.lambda.has_point(l) {
                return Err(Error::UnknownPoint(format!("{l:?}")));
            }
        }
        // every ψ value is ∅ or Λ
        Ok(None)
    }

    fn disjoint_witness(&self, l: &Point, a: &Element) -> Result<Option<Element>> {
        if !self.lambda.has_point(l) {
            return Err(Error::UnknownPoint(format!("{l:?}")));
        }
        if self.get(a)?.is_zero() {
            return Err(Error::Precondition(format!("{} lies in ψ(0)", self.lambda.label(l))));
        }
        Ok(Some(self.zero()))
    }

    fn s_cancel(&self, x: &Element) -> Result<Option<Element>> {
        Ok(self.get(x)?.is_zero().then(|| self.one()))
    }

    fn elements(&self, bound: u32) -> Option<Vec<Element>> {
        let b = bound as i64;
        Some((-b..=b).map(Element::int).collect())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Element {
        Element::int(if rng.gen_bool(0.1) { 0 } else { rng.gen_range(-30..=30) })
    }

    fn is_domain(&self) -> bool {
        true
    }

    fn nonzero_psi_empty(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_witness_for_four_and_six() {
        let s = TrivialStructure::new(vec!["p".into()]).unwrap();
        let w = s.intersection_witness(&Element::int(4), &Element::int(6)).unwrap();
        assert_eq!(w.c, Element::int(2));
        assert_eq!(s.psi(&w.c).unwrap(), LambdaSubset::Empty);
        assert_eq!(s.psi(&Element::int(5)).unwrap(), LambdaSubset::Empty);
        assert_eq!(s.psi(&Element::int(0)).unwrap(), LambdaSubset::All);
    }
}
