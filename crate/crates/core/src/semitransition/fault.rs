use rand_chacha::ChaCha8Rng;

use super::{Combination, Element, FiniteView, PmStatus, PrincipalWitness, SemiTransition, Structure};
use crate::error::Result;
use crate::lambda::{LambdaSpace, LambdaSubset, Point};

/// A structure whose ψ forgets one point of ψ(target). Everything else is
/// delegated, so any verifier that notices must be looking at ψ itself.
#[derive(Debug)]
pub struct PsiFault {
    inner: Structure,
    target: Element,
    drop: Point,
    view: Option<FiniteView>,
}

impl PsiFault {
    pub fn new(inner: Structure, target: Element, drop: Point) -> PsiFault {
        let view = match (inner.finite_view(), &target, &drop) {
            (Some(v), Element::Finite(i), Point::Index(j)) => {
                let mut v = v.clone();
                v.psi[*i] &= !(1u64 << j);
                Some(v)
            }
            _ => None,
        };
        PsiFault { inner, target, drop, view }
    }
}

impl SemiTransition for PsiFault {
    fn name(&self) -> String {
        format!("{} with ψ({}) missing {}", self.inner.name(), self.inner.show(&self.target), self.inner.lambda().label(&self.drop))
    }

    fn lambda(&self) -> &LambdaSpace {
        self.inner.lambda()
    }

    fn accepts(&self, a: &Element) -> bool {
        self.inner.accepts(a)
    }

    fn zero(&self) -> Element {
        self.inner.zero()
    }

    fn one(&self) -> Element {
        self.inner.one()
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.inner.add(a, b)
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.inner.mul(a, b)
    }

    fn neg(&self, a: &Element) -> Result<Element> {
        self.inner.neg(a)
    }

    fn pow(&self, a: &Element, k: u32) -> Result<Element> {
        self.inner.pow(a, k)
    }

    fn equal(&self, a: &Element, b: &Element) -> Result<bool> {
        self.inner.equal(a, b)
    }

    fn psi(&self, a: &Element) -> Result<LambdaSubset> {
        let p = self.inner.psi(a)?;
        if self.inner.equal(a, &self.target)? {
            let sp = self.inner.lambda();
            return Ok(sp.difference(&p, &sp.singleton(&self.drop)));
        }
        Ok(p)
    }

    fn exponents(&self) -> (u32, u32) {
        self.inner.exponents()
    }

    fn certifies_exponent(&self, m: u32) -> bool {
        self.inner.certifies_exponent(m)
    }

    fn intersection_witness(&self, a: &Element, b: &Element) -> Result<Combination> {
        self.inner.intersection_witness(a, b)
    }

    fn principal_witness(&self, a: &Element, b: &Element, m: u32, n: u32) -> Result<PrincipalWitness> {
        self.inner.principal_witness(a, b, m, n)
    }

    fn comaximal_certificate(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        self.inner.comaximal_certificate(a, b)
    }

    fn pm_status(&self) -> PmStatus {
        self.inner.pm_status()
    }

    fn pm_witness(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        self.inner.pm_witness(a, b)
    }

    fn separating_witness(&self, l1: &Point, l2: &Point) -> Result<Option<Element>> {
        self.inner.separating_witness(l1, l2)
    }

    fn disjoint_witness(&self, l: &Point, a: &Element) -> Result<Option<Element>> {
        self.inner.disjoint_witness(l, a)
    }

    fn s_cancel(&self, x: &Element) -> Result<Option<Element>> {
        self.inner.s_cancel(x)
    }

    fn elements(&self, bound: u32) -> Option<Vec<Element>> {
        self.inner.elements(bound)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Element {
        self.inner.sample(rng)
    }

    fn show(&self, a: &Element) -> String {
        self.inner.show(a)
    }

    fn finite_view(&self) -> Option<&FiniteView> {
        self.view.as_ref()
    }

    fn is_domain(&self) -> bool {
        self.inner.is_domain()
    }

    fn nonzero_psi_empty(&self) -> bool {
        self.inner.nonzero_psi_empty()
    }
}
