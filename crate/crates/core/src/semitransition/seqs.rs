use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Combination, Element, PmStatus, PrincipalWitness, SemiTransition, Structure};
use crate::error::{Error, Result};
use crate::lambda::{LambdaSpace, LambdaSubset, Point};
use crate::rat::Rat;
use crate::seq::{IndexSet, NIdeal, PiecewiseSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeqClass {
    /// Sequences constant outside a finite set (the ring C at desk scale).
    EventuallyConstant,
    /// All representable I-convergent sequences (the ring A_I).
    Piecewise,
}

/// Sequences over ℕ with ψ = zero set, plus ★ when the I-limit is 0.
#[derive(Debug)]
pub struct SeqStructure {
    ideal: NIdeal,
    class: SeqClass,
    lambda: LambdaSpace,
}

pub fn make_seq_structure(ideal: NIdeal, class: SeqClass) -> Structure {
    Arc::new(SeqStructure::new(ideal, class))
}

pub fn eventually_constant_c() -> Structure {
    make_seq_structure(NIdeal::FiniteSets, SeqClass::EventuallyConstant)
}

fn indicator(set: &IndexSet) -> PiecewiseSeq {
    PiecewiseSeq::with_block(Rat::zero(), set, Rat::one())
}

impl SeqStructure {
    pub fn new(ideal: NIdeal, class: SeqClass) -> SeqStructure {
        let ideal = match class {
            SeqClass::EventuallyConstant => NIdeal::FiniteSets,
            SeqClass::Piecewise => ideal,
        };
        SeqStructure { ideal, class, lambda: LambdaSpace::NatStar }
    }

    pub fn ideal(&self) -> NIdeal {
        self.ideal
    }

    pub fn class(&self) -> SeqClass {
        self.class
    }

    fn get<'a>(&self, a: &'a Element) -> Result<&'a PiecewiseSeq> {
        match a {
            Element::Seq(s) => {
                if self.class == SeqClass::EventuallyConstant && !s.is_eventually_constant() {
                    return Err(Error::Precondition(format!("{s} is not eventually constant")));
                }
                if !s.is_i_convergent(self.ideal) {
                    return Err(Error::NoILimit(self.ideal.name().into()));
                }
                Ok(s)
            }
            other => Err(Error::ElementKind { expected: "seq", got: other.kind().into() }),
        }
    }

    fn limit(&self, s: &PiecewiseSeq) -> Rat {
        s.i_limit(self.ideal).expect("checked on entry")
    }

    fn wrap(s: PiecewiseSeq) -> Element {
        Element::Seq(s)
    }

    fn inverse(&self, s: &PiecewiseSeq) -> Result<Option<PiecewiseSeq>> {
        s.unit_inverse(self.ideal)
    }

    /// Which row of the comaximal sub-case table `pm_witness` uses for (a, b).
    pub fn pm_subcase(&self, a: &Element, b: &Element) -> Result<String> {
        let (x, y) = (self.get(a)?, self.get(b)?);
        let (lx, ly) = (self.limit(x), self.limit(y));
        if lx.is_zero() {
            return Ok(format!("{} (roles swapped)", self.pm_subcase(b, a)?));
        }
        let case = if ly.is_zero() { 2 } else { 1 };
        let sub = match (x.zero_set().is_empty(), y.zero_set().is_empty()) {
            (true, true) => 1,
            (true, false) => 2,
            (false, true) => 3,
            (false, false) => 4,
        };
        Ok(format!("case {case}, sub-case {sub}"))
    }
}

impl SemiTransition for SeqStructure {
    fn name(&self) -> String {
        match self.class {
            SeqClass::EventuallyConstant => "C (eventually constant sequences)".into(),
            SeqClass::Piecewise => format!("A_I with I = {}", self.ideal.name()),
        }
    }

    fn lambda(&self) -> &LambdaSpace {
        &self.lambda
    }

    fn accepts(&self, a: &Element) -> bool {
        self.get(a).is_ok()
    }

    fn zero(&self) -> Element {
        Self::wrap(PiecewiseSeq::zero())
    }

    fn one(&self) -> Element {
        Self::wrap(PiecewiseSeq::one())
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
        let (set, star) = self.get(a)?.f_map(self.ideal)?;
        Ok(self.lambda.normalize(&LambdaSubset::Seq { set, star }))
    }

    fn exponents(&self) -> (u32, u32) {
        (2, 2)
    }

    fn certifies_exponent(&self, m: u32) -> bool {
        m >= 1
    }

    fn intersection_witness(&self, a: &Element, b: &Element) -> Result<Combination> {
        let (x, y) = (self.get(a)?, self.get(b)?);
        let c = x.pow(2).try_add(&y.pow(2))?;
        Ok(Combination { c: Self::wrap(c), u: a.clone(), v: b.clone() })
    }

    fn principal_witness(&self, a: &Element, b: &Element, m: u32, n: u32) -> Result<PrincipalWitness> {
        let (am, bn) = (self.get(a)?.pow(m), self.get(b)?.pow(n));
        // with even exponents aᵐ + bⁿ is a sum of squares; otherwise square once more
        let (alpha, beta) = if m.is_multiple_of(2) && n.is_multiple_of(2) {
            (PiecewiseSeq::one(), PiecewiseSeq::one())
        } else {
            (am.clone(), bn.clone())
        };
        let z = alpha.try_mul(&am)?.try_add(&beta.try_mul(&bn)?)?;
        let zi = self
            .inverse(&z)?
            .ok_or_else(|| Error::Precondition(format!("{z} is not a unit, so ψ(a)∩ψ(b) ≠ ∅")))?;
        Ok(PrincipalWitness {
            ka: Self::wrap(am.try_mul(&zi)?),
            kb: Self::wrap(bn.try_mul(&zi)?),
            z: Self::wrap(z),
            alpha: Self::wrap(alpha),
            beta: Self::wrap(beta),
        })
    }

    fn comaximal_certificate(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        let (x, y) = (self.get(a)?, self.get(b)?);
        let z = x.pow(2).try_add(&y.pow(2))?;
        Ok(match self.inverse(&z)? {
            Some(zi) => Some((Self::wrap(x.try_mul(&zi)?), Self::wrap(y.try_mul(&zi)?))),
            None => None,
        })
    }

    fn pm_status(&self) -> PmStatus {
        PmStatus::Assumed {
            basis: "every prime ideal of a convergent-sequence ring lies in a unique fixed maximal ideal \
                    (single-index modification argument); spot-checked through the comaximal sub-case witnesses"
                .into(),
        }
    }

    fn pm_witness(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        if self.comaximal_certificate(a, b)?.is_none() {
            return Ok(None);
        }
        let (x, y) = (self.get(a)?, self.get(b)?);
        let (lx, ly) = (self.limit(x), self.limit(y));
        if lx.is_zero() {
            return Ok(self.pm_witness(b, a)?.map(|(c, d)| (d, c)));
        }
        let (zx, zy) = (x.zero_set(), y.zero_set());
        if !ly.is_zero() && !zx.is_empty() && zy.is_empty() {
            return Ok(self.pm_witness(b, a)?.map(|(c, d)| (d, c)));
        }
        let (c, d) = if zx.is_empty() && zy.is_empty() {
            let at1 = IndexSet::singleton(1);
            (indicator(&at1), indicator(&at1.complement()))
        } else if zx.is_empty() {
            match zy.first_non_member() {
                Some(m) => {
                    let at = IndexSet::singleton(m);
                    (indicator(&at), indicator(&at.complement()))
                }
                // b = 0, so a is a unit
                None => (PiecewiseSeq::zero(), PiecewiseSeq::one()),
            }
        } else {
            (indicator(&zx), indicator(&zx.complement()))
        };
        Ok(Some((Self::wrap(c), Self::wrap(d))))
    }

    fn separating_witness(&self, l1: &Point, l2: &Point) -> Result<Option<Element>> {
        for l in [l1, l2] {
            if !self.lambda.has_point(l) {
                return Err(Error::UnknownPoint(format!("{l:?}")));
            }
        }
        Ok(match (l1, l2) {
            _ if l1 == l2 => None,
            (Point::Nat(n), _) | (_, Point::Nat(n)) => Some(Self::wrap(PiecewiseSeq::indicator_off(*n))),
            _ => None,
        })
    }

    fn disjoint_witness(&self, l: &Point, a: &Element) -> Result<Option<Element>> {
        let psi_a = self.psi(a)?;
        if self.lambda.contains(&psi_a, l) {
            return Err(Error::Precondition(format!("{} lies in ψ({})", self.lambda.label(l), self.show(a))));
        }
        Ok(match l {
            Point::Nat(n) => Some(Self::wrap(PiecewiseSeq::indicator_off(*n))),
            Point::Star => Some(Self::wrap(indicator(&self.get(a)?.zero_set()))),
            other => return Err(Error::UnknownPoint(format!("{other:?}"))),
        })
    }

    fn s_cancel(&self, x: &Element) -> Result<Option<Element>> {
        Ok(self.get(x)?.is_zero().then(|| self.one()))
    }

    fn elements(&self, _bound: u32) -> Option<Vec<Element>> {
        None
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Element {
        Self::wrap(PiecewiseSeq::sample(rng, self.ideal, self.class == SeqClass::EventuallyConstant))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(default: i64, overrides: &[(u64, i64)]) -> Element {
        let ov: Vec<(u64, Rat)> = overrides.iter().map(|&(n, v)| (n, Rat::from_int(v))).collect();
        Element::Seq(PiecewiseSeq::constant(Rat::from_int(default)).with_overrides(&ov))
    }

    #[test]
    fn psi_values() {
        let s = SeqStructure::new(NIdeal::FiniteSets, SeqClass::EventuallyConstant);
        assert_eq!(s.psi(&s.one()).unwrap(), LambdaSubset::Empty);
        assert_eq!(
            s.psi(&seq(1, &[(1, 0)])).unwrap(),
            LambdaSubset::Seq { set: IndexSet::singleton(1), star: false }
        );
        assert_eq!(
            s.psi(&seq(0, &[(2, 5)])).unwrap(),
            LambdaSubset::Seq { set: IndexSet::cofinite([2]), star: true }
        );
    }

    #[test]
    fn sub_case_witnesses() {
        let s = SeqStructure::new(NIdeal::FiniteSets, SeqClass::EventuallyConstant);
        let cases = [
            (seq(2, &[]), seq(3, &[])),
            (seq(2, &[]), seq(3, &[(4, 0)])),
            (seq(2, &[(4, 0)]), seq(3, &[(1, 0)])),
            (seq(2, &[(4, 0)]), seq(0, &[(4, 1)])),
            (seq(0, &[(1, 1)]), seq(5, &[(1, 0)])),
        ];
        for (a, b) in cases {
            let (c, d) = s.pm_witness(&a, &b).unwrap().expect("comaximal");
            assert!(s.is_zero(&s.mul(&c, &d).unwrap()).unwrap());
            assert!(s.comaximal_certificate(&a, &c).unwrap().is_some(), "{a} {c}");
            assert!(s.comaximal_certificate(&b, &d).unwrap().is_some(), "{b} {d}");
        }
        assert_eq!(s.pm_subcase(&seq(2, &[]), &seq(3, &[(4, 0)])).unwrap(), "case 1, sub-case 2");
    }

    #[test]
    fn separation_uses_indicator_off() {
        let s = SeqStructure::new(NIdeal::FiniteSets, SeqClass::EventuallyConstant);
        let w = s.separating_witness(&Point::Nat(3), &Point::Nat(7)).unwrap().unwrap();
        assert_eq!(w, Element::Seq(PiecewiseSeq::indicator_off(3)));
    }
}
