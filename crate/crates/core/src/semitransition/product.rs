use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use super::verify::{verify_transitional, TransitionalReport};
use super::{Combination, Element, PmStatus, PrincipalWitness, SemiTransition, Structure};
use crate::error::{Error, Result};
use crate::lambda::{LambdaSpace, LambdaSubset, Point};

/// Largest product ring enumerated for exhaustive runs.
const MAX_PRODUCT_ELEMENTS: usize = 1 << 14;

/// ∏ A_α over a finite family with Λ the disjoint union and ψ((a_α)) the
/// tagged union of the ψ_α(a_α). Witnesses are assembled componentwise.
#[derive(Debug)]
pub struct ProductStructure {
    parts: Vec<Structure>,
    m: u32,
    lambda: LambdaSpace,
}

pub fn product_structure(parts: Vec<Structure>, m: u32) -> Result<Structure> {
    Ok(Arc::new(ProductStructure::new(parts, m)?))
}

/// A product whose parts have each passed the transitional checks on the
/// given sample, together with the per-part reports.
pub fn product_transitional(
    parts: Vec<Structure>,
    m: u32,
    samples: usize,
    seed: u64,
) -> Result<(Structure, Vec<TransitionalReport>)> {
    let mut reports = vec![];
    for (i, p) in parts.iter().enumerate() {
        if let PmStatus::Refuted { witness } = p.pm_status() {
            return Err(Error::Uncertified(i, format!("{} is not a pm-ring: {witness}", p.name())));
        }
        let r = verify_transitional(p.as_ref(), samples, seed.wrapping_add(i as u64));
        if !r.passed() {
            return Err(Error::Uncertified(i, r.summary()));
        }
        reports.push(r);
    }
    Ok((product_structure(parts, m)?, reports))
}

impl ProductStructure {
    pub fn new(parts: Vec<Structure>, m: u32) -> Result<ProductStructure> {
        if parts.is_empty() {
            return Err(Error::Descriptor("a product needs at least one factor".into()));
        }
        if let Some(p) = parts.iter().find(|p| !p.certifies_exponent(m)) {
            return Err(Error::IncompatibleExponents(format!("{} does not certify m = {m}", p.name())));
        }
        let lambda = LambdaSpace::Disjoint(parts.iter().map(|p| p.lambda().clone()).collect());
        Ok(ProductStructure { parts, m, lambda })
    }

    pub fn parts(&self) -> &[Structure] {
        &self.parts
    }

    fn get<'a>(&self, a: &'a Element) -> Result<&'a [Element]> {
        match a {
            Element::Tuple(v) if v.len() == self.parts.len() => Ok(v),
            Element::Tuple(v) => Err(Error::Precondition(format!("tuple of length {} for {} factors", v.len(), self.parts.len()))),
            other => Err(Error::ElementKind { expected: "tuple", got: other.kind().into() }),
        }
    }

    fn map2(&self, a: &Element, b: &Element, f: impl Fn(&Structure, &Element, &Element) -> Result<Element>) -> Result<Element> {
        let (x, y) = (self.get(a)?, self.get(b)?);
        let v = self.parts.iter().zip(x).zip(y).map(|((p, x), y)| f(p, x, y)).collect::<Result<_>>()?;
        Ok(Element::Tuple(v))
    }

    /// The element equal to `x` in factor `i` and 1 elsewhere.
    pub fn pad(&self, i: usize, x: Element) -> Element {
        Element::Tuple(
            self.parts
                .iter()
                .enumerate()
                .map(|(j, p)| if j == i { x.clone() } else { p.one() })
                .collect(),
        )
    }

    fn tagged<'a>(&self, l: &'a Point) -> Result<(usize, &'a Point)> {
        match l {
            Point::Tagged(i, p) if *i < self.parts.len() => Ok((*i, p)),
            other => Err(Error::UnknownPoint(format!("{other:?}"))),
        }
    }

    fn split<T>(v: Vec<Option<(T, T)>>) -> Option<(Vec<T>, Vec<T>)> {
        let mut xs = vec![];
        let mut ys = vec![];
        for o in v {
            let (x, y) = o?;
            xs.push(x);
            ys.push(y);
        }
        Some((xs, ys))
    }
}

impl SemiTransition for ProductStructure {
    fn name(&self) -> String {
        let v: Vec<String> = self.parts.iter().map(|p| p.name()).collect();
        v.join(" × ")
    }

    fn lambda(&self) -> &LambdaSpace {
        &self.lambda
    }

    fn accepts(&self, a: &Element) -> bool {
        self.get(a).is_ok_and(|v| self.parts.iter().zip(v).all(|(p, x)| p.accepts(x)))
    }

    fn zero(&self) -> Element {
        Element::Tuple(self.parts.iter().map(|p| p.zero()).collect())
    }

    fn one(&self) -> Element {
        Element::Tuple(self.parts.iter().map(|p| p.one()).collect())
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.map2(a, b, |p, x, y| p.add(x, y))
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.map2(a, b, |p, x, y| p.mul(x, y))
    }

    fn neg(&self, a: &Element) -> Result<Element> {
        let v = self.parts.iter().zip(self.get(a)?).map(|(p, x)| p.neg(x)).collect::<Result<_>>()?;
        Ok(Element::Tuple(v))
    }

    fn pow(&self, a: &Element, k: u32) -> Result<Element> {
        let v = self.parts.iter().zip(self.get(a)?).map(|(p, x)| p.pow(x, k)).collect::<Result<_>>()?;
        Ok(Element::Tuple(v))
    }

    fn equal(&self, a: &Element, b: &Element) -> Result<bool> {
        let (x, y) = (self.get(a)?, self.get(b)?);
        for ((p, x), y) in self.parts.iter().zip(x).zip(y) {
            if !p.equal(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn psi(&self, a: &Element) -> Result<LambdaSubset> {
        let v = self.parts.iter().zip(self.get(a)?).map(|(p, x)| p.psi(x)).collect::<Result<_>>()?;
        Ok(self.lambda.normalize(&LambdaSubset::Product(v)))
    }

    fn exponents(&self) -> (u32, u32) {
        (self.m, self.m)
    }

    fn certifies_exponent(&self, m: u32) -> bool {
        self.parts.iter().all(|p| p.certifies_exponent(m))
    }

    fn intersection_witness(&self, a: &Element, b: &Element) -> Result<Combination> {
        let (x, y) = (self.get(a)?, self.get(b)?);
        let (mut c, mut u, mut v) = (vec![], vec![], vec![]);
        for ((p, x), y) in self.parts.iter().zip(x).zip(y) {
            let w = p.intersection_witness(x, y)?;
            c.push(w.c);
            u.push(w.u);
            v.push(w.v);
        }
        Ok(Combination { c: Element::Tuple(c), u: Element::Tuple(u), v: Element::Tuple(v) })
    }

    fn principal_witness(&self, a: &Element, b: &Element, m: u32, n: u32) -> Result<PrincipalWitness> {
        let (x, y) = (self.get(a)?, self.get(b)?);
        let mut parts: [Vec<Element>; 5] = Default::default();
        for ((p, x), y) in self.parts.iter().zip(x).zip(y) {
            let w = p.principal_witness(x, y, m, n)?;
            for (slot, e) in parts.iter_mut().zip([w.z, w.alpha, w.beta, w.ka, w.kb]) {
                slot.push(e);
            }
        }
        let [z, alpha, beta, ka, kb] = parts.map(Element::Tuple);
        Ok(PrincipalWitness { z, alpha, beta, ka, kb })
    }

    fn comaximal_certificate(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        let (x, y) = (self.get(a)?, self.get(b)?);
        let v = self.parts.iter().zip(x).zip(y).map(|((p, x), y)| p.comaximal_certificate(x, y)).collect::<Result<Vec<_>>>()?;
        Ok(Self::split(v).map(|(xs, ys)| (Element::Tuple(xs), Element::Tuple(ys))))
    }

    fn pm_status(&self) -> PmStatus {
        let mut assumed = vec![];
        for (i, p) in self.parts.iter().enumerate() {
            match p.pm_status() {
                PmStatus::Refuted { witness } => {
                    return PmStatus::Refuted { witness: format!("factor {i}: {witness}") };
                }
                PmStatus::Assumed { basis } => assumed.push(format!("factor {i}: {basis}")),
                PmStatus::Verified { .. } => {}
            }
        }
        if assumed.is_empty() {
            PmStatus::Verified { how: "every factor verified; a finite product of pm-rings is pm".into() }
        } else {
            PmStatus::Assumed { basis: assumed.join("; ") }
        }
    }

    fn pm_witness(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        let (x, y) = (self.get(a)?, self.get(b)?);
        let v = self.parts.iter().zip(x).zip(y).map(|((p, x), y)| p.pm_witness(x, y)).collect::<Result<Vec<_>>>()?;
        Ok(Self::split(v).map(|(cs, ds)| (Element::Tuple(cs), Element::Tuple(ds))))
    }

    fn separating_witness(&self, l1: &Point, l2: &Point) -> Result<Option<Element>> {
        let ((i, p), (j, q)) = (self.tagged(l1)?, self.tagged(l2)?);
        if i == j {
            return Ok(self.parts[i].separating_witness(p, q)?.map(|w| self.pad(i, w)));
        }
        Ok(Some(self.pad(i, self.parts[i].zero())))
    }

    fn disjoint_witness(&self, l: &Point, a: &Element) -> Result<Option<Element>> {
        let (i, p) = self.tagged(l)?;
        let x = &self.get(a)?[i];
        Ok(self.parts[i].disjoint_witness(p, x)?.map(|w| self.pad(i, w)))
    }

    fn s_cancel(&self, x: &Element) -> Result<Option<Element>> {
        let v = self.parts.iter().zip(self.get(x)?).map(|(p, x)| p.s_cancel(x)).collect::<Result<Vec<_>>>()?;
        Ok(v.into_iter().collect::<Option<Vec<_>>>().map(Element::Tuple))
    }

    fn elements(&self, bound: u32) -> Option<Vec<Element>> {
        let lists: Vec<Vec<Element>> = self.parts.iter().map(|p| p.elements(bound)).collect::<Option<_>>()?;
        let total = lists.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len()))?;
        if total > MAX_PRODUCT_ELEMENTS {
            return None;
        }
        let mut out: Vec<Vec<Element>> = vec![vec![]];
        for l in &lists {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    l.iter().map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x.clone());
                        v
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(Element::Tuple).collect())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Element {
        Element::Tuple(self.parts.iter().map(|p| p.sample(rng)).collect())
    }

    fn show(&self, a: &Element) -> String {
        match self.get(a) {
            Ok(v) => {
                let s: Vec<String> = self.parts.iter().zip(v).map(|(p, x)| p.show(x)).collect();
                format!("({})", s.join(", "))
            }
            Err(_) => a.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Field, Poly};
    use crate::rat::Rat;
    use crate::semitransition::make_poly_structure;

    #[test]
    fn tagged_roots() {
        let f2 = make_poly_structure(Field::Fp(2));
        let s = ProductStructure::new(vec![f2.clone(), f2], 1).unwrap();
        let x = Element::Poly(Poly::x(Field::Fp(2)));
        let x1 = Element::Poly(Poly::from_ints(Field::Fp(2), &[1, 1]));
        let psi = s.psi(&Element::Tuple(vec![x, x1])).unwrap();
        let zero_at_0 = Point::Tagged(0, Box::new(Point::Scalar(Rat::zero())));
        let one_at_1 = Point::Tagged(1, Box::new(Point::Scalar(Rat::one())));
        assert!(s.lambda().contains(&psi, &zero_at_0));
        assert!(s.lambda().contains(&psi, &one_at_1));
        assert!(!s.lambda().contains(&psi, &Point::Tagged(0, Box::new(Point::Scalar(Rat::one())))));
        assert_eq!(s.psi(&s.one()).unwrap(), LambdaSubset::Empty);
        assert_eq!(s.lambda().finite_points().unwrap().len(), 6);
    }
}
