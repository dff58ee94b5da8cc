use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    expect_finite, Combination, Element, FiniteView, PmStatus, PrincipalWitness, SemiTransition, Structure,
};
use crate::error::{Error, Result};
use crate::lambda::{LambdaSpace, LambdaSubset, Point};
use crate::rat::FpElem;
use crate::ring::{
    enumerate_maximal_ideals, enumerate_prime_ideals, ideal_generated, is_principal, jacobson_radical,
    ElemSet, FiniteRing, RingIdeal,
};

/// A semiprimitive finite ring B with Λ = Max(B) and ψ(b) = 𝓜(b), the set of
/// maximal ideals containing b. Product-of-fields rings get closed-form
/// witnesses; table rings fall back to scans.
#[derive(Debug)]
pub struct MaxStructure {
    view: FiniteView,
    maximals: Vec<RingIdeal>,
    lambda: LambdaSpace,
    product: bool,
    name: String,
}

pub fn make_max_structure(ring: FiniteRing) -> Result<Structure> {
    Ok(Arc::new(MaxStructure::new(ring)?))
}

/// The (n+1)-fold product F_p × … × F_p with points 1..n and ★, a finite
/// window onto the eventually-constant sequence ring: coordinate n+1 plays
/// the limit.
pub fn truncate_c(n: usize, p: u64) -> Result<Structure> {
    if n == 0 {
        return Err(Error::Precondition("truncation length must be at least 1".into()));
    }
    let ring = FiniteRing::product_of_fields(&vec![p; n + 1])?;
    let mut labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    labels.push("★".into());
    let s = MaxStructure::new(ring)?.with_labels(labels)?.with_name(format!("C truncated to {n} over F{p}"));
    Ok(Arc::new(s))
}

fn inv_mod(x: u64, p: u64) -> u64 {
    FpElem::new(p, x as i64).expect("prime modulus").inv().expect("nonzero").value()
}

impl MaxStructure {
    pub fn new(ring: FiniteRing) -> Result<MaxStructure> {
        let (maximals, labels, product) = match ring.field_primes().map(|p| p.to_vec()) {
            Some(primes) => {
                if primes.len() > 64 {
                    return Err(Error::BoundExceeded { what: "maximal ideals", actual: primes.len(), bound: 64 });
                }
                let maximals: Vec<RingIdeal> = (0..primes.len())
                    .map(|i| {
                        let members = ring.elements().filter(|&a| ring.coords(a).expect("coords")[i] == 0);
                        RingIdeal::from_members_unchecked(ElemSet::from_iter(ring.order(), members))
                    })
                    .collect();
                let labels: Vec<String> = (0..primes.len())
                    .map(|i| {
                        let parts: Vec<String> = primes
                            .iter()
                            .enumerate()
                            .map(|(j, p)| if i == j { "0".to_string() } else { format!("F{p}") })
                            .collect();
                        parts.join("x")
                    })
                    .collect();
                (maximals, labels, true)
            }
            None => {
                let j = jacobson_radical(&ring)?;
                if j != RingIdeal::zero(&ring) {
                    return Err(Error::NotSemiprimitive(j.labels(&ring).join(", ")));
                }
                let maximals = enumerate_maximal_ideals(&ring)?;
                if maximals.len() > 64 {
                    return Err(Error::BoundExceeded { what: "maximal ideals", actual: maximals.len(), bound: 64 });
                }
                let labels = (0..maximals.len()).map(|i| format!("M{i}")).collect();
                (maximals, labels, false)
            }
        };
        let psi = ring
            .elements()
            .map(|a| {
                maximals
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| m.contains(a))
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        let name = format!("Max({})", ring.describe());
        Ok(MaxStructure {
            lambda: LambdaSpace::Finite(labels.clone()),
            view: FiniteView { ring, points: labels, psi },
            maximals,
            product,
            name,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<MaxStructure> {
        if labels.len() != self.maximals.len() {
            return Err(Error::Descriptor(format!(
                "{} labels for {} maximal ideals",
                labels.len(),
                self.maximals.len()
            )));
        }
        self.lambda = LambdaSpace::Finite(labels.clone());
        self.view.points = labels;
        Ok(self)
    }

    pub fn with_name(mut self, name: String) -> MaxStructure {
        self.name = name;
        self
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.view.ring
    }

    pub fn maximals(&self) -> &[RingIdeal] {
        &self.maximals
    }

    pub fn mask(&self, a: usize) -> u64 {
        self.view.psi[a]
    }

    fn idx(&self, a: &Element) -> Result<usize> {
        let i = expect_finite(a)?;
        if i >= self.view.ring.order() {
            return Err(Error::Precondition(format!("element #{i} outside a ring of order {}", self.view.ring.order())));
        }
        Ok(i)
    }

    fn point(&self, l: &Point) -> Result<usize> {
        match l {
            Point::Index(i) if *i < self.maximals.len() => Ok(*i),
            other => Err(Error::UnknownPoint(format!("{other:?}"))),
        }
    }

    fn primes(&self) -> &[u64] {
        self.view.ring.field_primes().expect("product ring")
    }

    fn coords(&self, a: usize) -> Vec<u64> {
        self.view.ring.coords(a).expect("product ring")
    }

    fn at_coords(&self, c: &[u64]) -> Element {
        Element::Finite(self.view.ring.index_of(c).expect("product ring"))
    }

    /// Element with 0 at the masked coordinates and 1 elsewhere.
    fn zero_on(&self, mask: u64) -> Element {
        let c: Vec<u64> = (0..self.primes().len()).map(|i| u64::from(mask >> i & 1 == 0)).collect();
        self.at_coords(&c)
    }

    fn first_element(&self, pred: impl Fn(usize) -> bool) -> Option<usize> {
        self.view.ring.elements().find(|&x| pred(x))
    }

    fn first_pair(&self, pred: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
        let r = &self.view.ring;
        r.elements().flat_map(|x| r.elements().map(move |y| (x, y))).find(|&(x, y)| pred(x, y))
    }
}

impl SemiTransition for MaxStructure {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn lambda(&self) -> &LambdaSpace {
        &self.lambda
    }

    fn accepts(&self, a: &Element) -> bool {
        self.idx(a).is_ok()
    }

    fn zero(&self) -> Element {
        Element::Finite(self.view.ring.zero())
    }

    fn one(&self) -> Element {
        Element::Finite(self.view.ring.one())
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Element::Finite(self.view.ring.add(self.idx(a)?, self.idx(b)?)))
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Element::Finite(self.view.ring.mul(self.idx(a)?, self.idx(b)?)))
    }

    fn neg(&self, a: &Element) -> Result<Element> {
        Ok(Element::Finite(self.view.ring.neg(self.idx(a)?)))
    }

    fn pow(&self, a: &Element, k: u32) -> Result<Element> {
        Ok(Element::Finite(self.view.ring.pow(self.idx(a)?, k)))
    }

    fn psi(&self, a: &Element) -> Result<LambdaSubset> {
        let m = self.mask(self.idx(a)?);
        let pts = (0..self.maximals.len()).filter(|i| m >> i & 1 == 1).map(Point::Index).collect();
        Ok(self.lambda.normalize(&LambdaSubset::Finite(pts)))
    }

    fn exponents(&self) -> (u32, u32) {
        (1, 1)
    }

    fn certifies_exponent(&self, m: u32) -> bool {
        // every element of a product of fields is an idempotent times a unit
        if self.product {
            return m >= 1;
        }
        (1..=super::MAX_EXPONENT).contains(&m)
    }

    fn intersection_witness(&self, a: &Element, b: &Element) -> Result<Combination> {
        let (a, b) = (self.idx(a)?, self.idx(b)?);
        if self.product {
            let (ca, cb) = (self.coords(a), self.coords(b));
            let (mut c, mut u, mut v) = (vec![], vec![], vec![]);
            for (i, &p) in self.primes().iter().enumerate() {
                let (x, y) = (ca[i], cb[i]);
                let (ui, vi) = if x != 0 {
                    (inv_mod(x, p), 0)
                } else if y != 0 {
                    (0, inv_mod(y, p))
                } else {
                    (0, 0)
                };
                c.push(u64::from(x != 0 || y != 0));
                u.push(ui);
                v.push(vi);
            }
            return Ok(Combination { c: self.at_coords(&c), u: self.at_coords(&u), v: self.at_coords(&v) });
        }
        let r = &self.view.ring;
        let target = self.mask(a) & self.mask(b);
        let (u, v) = self
            .first_pair(|u, v| self.mask(r.add(r.mul(u, a), r.mul(v, b))) == target)
            .ok_or_else(|| Error::Refutation(format!("no c in ({}, {}) with ψ(c) = ψ(a)∩ψ(b)", r.label(a), r.label(b))))?;
        let c = r.add(r.mul(u, a), r.mul(v, b));
        Ok(Combination { c: Element::Finite(c), u: Element::Finite(u), v: Element::Finite(v) })
    }

    fn principal_witness(&self, a: &Element, b: &Element, m: u32, n: u32) -> Result<PrincipalWitness> {
        let r = &self.view.ring;
        let (am, bn) = (r.pow(self.idx(a)?, m), r.pow(self.idx(b)?, n));
        if self.product {
            let (ca, cb) = (self.coords(am), self.coords(bn));
            let (mut z, mut al, mut be) = (vec![], vec![], vec![]);
            for (i, &p) in self.primes().iter().enumerate() {
                let (x, y) = (ca[i], cb[i]);
                z.push(u64::from(x != 0 || y != 0));
                al.push(if x != 0 { inv_mod(x, p) } else { 0 });
                be.push(if x == 0 && y != 0 { inv_mod(y, p) } else { 0 });
            }
            return Ok(PrincipalWitness {
                z: self.at_coords(&z),
                alpha: self.at_coords(&al),
                beta: self.at_coords(&be),
                ka: Element::Finite(am),
                kb: Element::Finite(bn),
            });
        }
        let ideal = ideal_generated(r, [am, bn]);
        let z = is_principal(r, &ideal)
            .ok_or_else(|| Error::Refutation(format!("({}^{m}, {}^{n}) is not principal", r.label(am), r.label(bn))))?;
        let (alpha, beta) = self
            .first_pair(|x, y| r.add(r.mul(x, am), r.mul(y, bn)) == z)
            .expect("z lies in the ideal");
        let ka = self.first_element(|k| r.mul(k, z) == am).expect("am lies in (z)");
        let kb = self.first_element(|k| r.mul(k, z) == bn).expect("bn lies in (z)");
        Ok(PrincipalWitness {
            z: Element::Finite(z),
            alpha: Element::Finite(alpha),
            beta: Element::Finite(beta),
            ka: Element::Finite(ka),
            kb: Element::Finite(kb),
        })
    }

    fn comaximal_certificate(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        let (a, b) = (self.idx(a)?, self.idx(b)?);
        if self.mask(a) & self.mask(b) != 0 {
            return Ok(None);
        }
        if self.product {
            let (ca, cb) = (self.coords(a), self.coords(b));
            let (mut x, mut y) = (vec![], vec![]);
            for (i, &p) in self.primes().iter().enumerate() {
                if ca[i] != 0 {
                    x.push(inv_mod(ca[i], p));
                    y.push(0);
                } else {
                    x.push(0);
                    y.push(inv_mod(cb[i], p));
                }
            }
            return Ok(Some((self.at_coords(&x), self.at_coords(&y))));
        }
        let r = &self.view.ring;
        Ok(self
            .first_pair(|x, y| r.add(r.mul(a, x), r.mul(b, y)) == r.one())
            .map(|(x, y)| (Element::Finite(x), Element::Finite(y))))
    }

    fn pm_status(&self) -> PmStatus {
        let r = &self.view.ring;
        let primes = match enumerate_prime_ideals(r) {
            Ok(p) => p,
            Err(e) => return PmStatus::Assumed { basis: format!("prime enumeration unavailable: {e}") },
        };
        for p in &primes {
            let above: Vec<usize> = (0..self.maximals.len()).filter(|&i| p.is_subset(&self.maximals[i])).collect();
            if above.len() != 1 {
                return PmStatus::Refuted {
                    witness: format!("prime {{{}}} lies in {} maximal ideals", p.labels(r).join(", "), above.len()),
                };
            }
        }
        PmStatus::Verified { how: format!("containment scan over {} prime ideals", primes.len()) }
    }

    fn pm_witness(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        let (a, b) = (self.idx(a)?, self.idx(b)?);
        if self.mask(a) & self.mask(b) != 0 {
            return Ok(None);
        }
        let r = &self.view.ring;
        if self.product {
            // c is 1 exactly where a vanishes, d = 1 - c
            let c = self.zero_on(!self.mask(a));
            let d = self.zero_on(self.mask(a));
            return Ok(Some((c, d)));
        }
        Ok(self
            .first_pair(|c, d| {
                r.mul(c, d) == r.zero() && self.mask(a) & self.mask(c) == 0 && self.mask(b) & self.mask(d) == 0
            })
            .map(|(c, d)| (Element::Finite(c), Element::Finite(d))))
    }

    fn separating_witness(&self, l1: &Point, l2: &Point) -> Result<Option<Element>> {
        let (i, j) = (self.point(l1)?, self.point(l2)?);
        if i == j {
            return Ok(None);
        }
        if self.product {
            return Ok(Some(self.zero_on(1 << i)));
        }
        Ok(self
            .first_element(|x| (self.mask(x) >> i & 1) != (self.mask(x) >> j & 1))
            .map(Element::Finite))
    }

    fn disjoint_witness(&self, l: &Point, a: &Element) -> Result<Option<Element>> {
        let (i, a) = (self.point(l)?, self.idx(a)?);
        if self.mask(a) >> i & 1 == 1 {
            return Err(Error::Precondition(format!("{} lies in ψ({})", self.view.points[i], self.view.ring.label(a))));
        }
        if self.product {
            return Ok(Some(self.zero_on(1 << i)));
        }
        Ok(self
            .first_element(|b| self.mask(b) >> i & 1 == 1 && self.mask(a) & self.mask(b) == 0)
            .map(Element::Finite))
    }

    fn s_cancel(&self, x: &Element) -> Result<Option<Element>> {
        let (r, x) = (&self.view.ring, self.idx(x)?);
        Ok(self.first_element(|u| self.mask(u) == 0 && r.mul(x, u) == r.zero()).map(Element::Finite))
    }

    fn elements(&self, _bound: u32) -> Option<Vec<Element>> {
        Some(self.view.ring.elements().map(Element::Finite).collect())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Element {
        Element::Finite(rng.gen_range(0..self.view.ring.order()))
    }

    fn show(&self, a: &Element) -> String {
        match self.idx(a) {
            Ok(i) => self.view.ring.label(i),
            Err(_) => a.to_string(),
        }
    }

    fn finite_view(&self) -> Option<&FiniteView> {
        Some(&self.view)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_on_f2_f3() {
        let ring = FiniteRing::product_of_fields(&[2, 3]).unwrap();
        let s = MaxStructure::new(ring.clone()).unwrap();
        let e10 = Element::Finite(ring.index_of(&[1, 0]).unwrap());
        // (1,0) lies in F2x0 = {(u, 0)}, the kernel of the second coordinate
        assert_eq!(s.psi(&e10).unwrap(), LambdaSubset::Finite([Point::Index(1)].into()));
        assert_eq!(s.view.points[1], "F2x0");
        assert_eq!(s.psi(&s.one()).unwrap(), LambdaSubset::Empty);
        assert_eq!(s.psi(&s.zero()).unwrap(), LambdaSubset::All);
    }

    #[test]
    fn separating_witnesses_are_idempotents() {
        let ring = FiniteRing::product_of_fields(&[2, 3]).unwrap();
        let s = MaxStructure::new(ring.clone()).unwrap();
        let w0 = s.separating_witness(&Point::Index(0), &Point::Index(1)).unwrap().unwrap();
        let w1 = s.separating_witness(&Point::Index(1), &Point::Index(0)).unwrap().unwrap();
        let (i0, i1) = (expect_finite(&w0).unwrap(), expect_finite(&w1).unwrap());
        assert!(ring.is_idempotent(i0) && ring.is_idempotent(i1) && i0 != i1);
        assert_eq!(ring.label(i0), "(0,1)");
    }

    #[test]
    fn non_semiprimitive_rejected() {
        let z4 = FiniteRing::integers_mod(4).unwrap();
        assert!(matches!(MaxStructure::new(z4), Err(Error::NotSemiprimitive(_))));
    }

    #[test]
    fn table_ring_matches_product_ring() {
        let prod = MaxStructure::new(FiniteRing::product_of_fields(&[2, 3]).unwrap()).unwrap();
        let z6 = MaxStructure::new(FiniteRing::integers_mod(6).unwrap()).unwrap();
        assert_eq!(z6.maximals.len(), 2);
        assert!(z6.pm_status().holds());
        let mut a: Vec<u32> = prod.view.psi.iter().map(|m| m.count_ones()).collect();
        let mut b: Vec<u32> = z6.view.psi.iter().map(|m| m.count_ones()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        for x in 0..6 {
            for y in 0..6 {
                let w = z6.intersection_witness(&Element::Finite(x), &Element::Finite(y)).unwrap();
                assert_eq!(z6.mask(expect_finite(&w.c).unwrap()), z6.mask(x) & z6.mask(y));
            }
        }
    }
}
