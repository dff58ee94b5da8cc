use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::{LambdaSpace, LambdaSubset, Point};
use crate::poly::{extended_gcd, is_irreducible, roots, Field, Poly};
use crate::rat::Rat;
use crate::ring::{enumerate_maximal_ideals, enumerate_prime_ideals, is_pm_ring, RingIdeal};
use crate::semitransition::{
    Combination, Element, Fraction, PmStatus, PrincipalWitness, SemiTransition, Structure,
};

/// The ring of fractions A_S with S = {s : ψ(s) = ∅} and φ(a/s) = ψ(a).
#[derive(Debug)]
pub struct LocalizedStructure {
    base: Structure,
    pm: PmStatus,
}

pub fn localize(base: Structure) -> Result<Arc<LocalizedStructure>> {
    LocalizedStructure::new(base).map(Arc::new)
}

impl LocalizedStructure {
    pub fn new(base: Structure) -> Result<LocalizedStructure> {
        if let Err(e) = base.s_cancel(&base.zero()) {
            return Err(Error::UndecidableEquality(format!("{}: {e}", base.name())));
        }
        let pm = localized_pm(base.as_ref());
        Ok(LocalizedStructure { base, pm })
    }

    pub fn base(&self) -> &Structure {
        &self.base
    }

    /// i(a) = a/1.
    pub fn embed(&self, a: &Element) -> Element {
        Element::frac(a.clone(), self.base.one())
    }

    pub fn in_s(&self, s: &Element) -> Result<bool> {
        Ok(self.base.psi(s)?.is_empty())
    }

    pub fn fraction(&self, num: Element, den: Element) -> Result<Element> {
        if !self.in_s(&den)? {
            return Err(Error::Precondition(format!("denominator {} is not in S", self.base.show(&den))));
        }
        Ok(self.reduce(num, den))
    }

    fn get<'a>(&self, a: &'a Element) -> Result<&'a Fraction> {
        match a {
            Element::Frac(f) => Ok(f),
            other => Err(Error::ElementKind { expected: "frac", got: other.kind().into() }),
        }
    }

    /// gcd-reduced with monic denominator for polynomials; unchanged otherwise.
    fn reduce(&self, num: Element, den: Element) -> Element {
        if let (Element::Poly(n), Element::Poly(d)) = (&num, &den) {
            if n.is_zero() {
                return Element::frac(Element::Poly(Poly::zero(n.field())), Element::Poly(Poly::one(n.field())));
            }
            if let Ok(g) = extended_gcd(n, d) {
                if let (Ok((n2, _)), Ok((d2, _))) = (n.divmod(&g.d), d.divmod(&g.d)) {
                    let k = n.field();
                    let l = k.inv(d2.leading().expect("nonzero denominator")).expect("field");
                    return Element::frac(Element::Poly(n2.scale(&l)), Element::Poly(d2.scale(&l)));
                }
            }
        }
        Element::frac(num, den)
    }

    /// Some u ∈ S with (a·t − b·s)·u = 0, i.e. a/s = b/t.
    pub fn equality_witness(&self, p: &Element, q: &Element) -> Result<Option<Element>> {
        let (p, q) = (self.get(p)?, self.get(q)?);
        let b = &self.base;
        let x = b.sub(&b.mul(&p.num, &q.den)?, &b.mul(&q.num, &p.den)?)?;
        b.s_cancel(&x)
    }
}

fn localized_pm(base: &dyn SemiTransition) -> PmStatus {
    let base_pm = base.pm_status();
    if let PmStatus::Verified { .. } = base_pm {
        return PmStatus::Verified { how: "transferred from the pm base ring".into() };
    }
    if base.nonzero_psi_empty() {
        return PmStatus::Verified { how: "S = A ∖ {0}, so A_S is a field".into() };
    }
    if base.is_domain() {
        if let Some(w) = two_maximal_refutation(base) {
            return PmStatus::Refuted { witness: w };
        }
    }
    match base_pm {
        PmStatus::Assumed { basis } => PmStatus::Assumed { basis: format!("transferred from the base ({basis})") },
        _ => PmStatus::Assumed { basis: "base not pm; the transfer does not apply".into() },
    }
}

/// In a domain, (0) is prime; two non-units a/1, b/1 with disjoint φ are
/// comaximal and so lie in distinct maximal ideals, both containing (0).
fn two_maximal_refutation(base: &dyn SemiTransition) -> Option<String> {
    let sp = base.lambda();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let candidates: Vec<Point> = sp.finite_points().unwrap_or_else(|| (0..16).map(|_| sp.sample_point(&mut rng)).collect());
    for l1 in &candidates {
        for l2 in &candidates {
            if l1 == l2 {
                continue;
            }
            let Ok(Some(a)) = base.separating_witness(l1, l2) else { continue };
            let Ok(pa) = base.psi(&a) else { continue };
            let (inside, outside) = if sp.contains(&pa, l1) { (l1, l2) } else { (l2, l1) };
            let Ok(Some(b)) = base.disjoint_witness(outside, &a) else { continue };
            let Ok(pb) = base.psi(&b) else { continue };
            if sp.contains(&pb, outside) && sp.intersection(&pa, &pb).is_empty() && sp.contains(&pa, inside) {
                return Some(format!(
                    "(0) lies in distinct maximal ideals containing {}/1 and {}/1",
                    base.show(&a),
                    base.show(&b)
                ));
            }
        }
    }
    None
}

impl SemiTransition for LocalizedStructure {
    fn name(&self) -> String {
        format!("{} localized at S", self.base.name())
    }

    fn lambda(&self) -> &LambdaSpace {
        self.base.lambda()
    }

    fn accepts(&self, a: &Element) -> bool {
        match a {
            Element::Frac(f) => self.base.accepts(&f.num) && self.base.accepts(&f.den) && self.in_s(&f.den).unwrap_or(false),
            _ => false,
        }
    }

    fn zero(&self) -> Element {
        self.embed(&self.base.zero())
    }

    fn one(&self) -> Element {
        self.embed(&self.base.one())
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let (p, q) = (self.get(a)?, self.get(b)?);
        let r = &self.base;
        let num = r.add(&r.mul(&p.num, &q.den)?, &r.mul(&q.num, &p.den)?)?;
        Ok(self.reduce(num, r.mul(&p.den, &q.den)?))
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let (p, q) = (self.get(a)?, self.get(b)?);
        let r = &self.base;
        Ok(self.reduce(r.mul(&p.num, &q.num)?, r.mul(&p.den, &q.den)?))
    }

    fn neg(&self, a: &Element) -> Result<Element> {
        let p = self.get(a)?;
        Ok(Element::frac(self.base.neg(&p.num)?, p.den.clone()))
    }

    fn equal(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.equality_witness(a, b)?.is_some())
    }

    fn psi(&self, a: &Element) -> Result<LambdaSubset> {
        self.base.psi(&self.get(a)?.num)
    }

    fn exponents(&self) -> (u32, u32) {
        self.base.exponents()
    }

    fn certifies_exponent(&self, m: u32) -> bool {
        self.base.certifies_exponent(m)
    }

    fn intersection_witness(&self, a: &Element, b: &Element) -> Result<Combination> {
        let (p, q) = (self.get(a)?, self.get(b)?);
        let r = &self.base;
        let w = r.intersection_witness(&p.num, &q.num)?;
        Ok(Combination {
            c: self.embed(&w.c),
            u: self.embed(&r.mul(&w.u, &p.den)?),
            v: self.embed(&r.mul(&w.v, &q.den)?),
        })
    }

    fn principal_witness(&self, a: &Element, b: &Element, m: u32, n: u32) -> Result<PrincipalWitness> {
        let (p, q) = (self.get(a)?, self.get(b)?);
        let r = &self.base;
        let w = r.principal_witness(&p.num, &q.num, m, n)?;
        let (sm, tn) = (r.pow(&p.den, m)?, r.pow(&q.den, n)?);
        Ok(PrincipalWitness {
            z: self.embed(&w.z),
            alpha: self.embed(&r.mul(&w.alpha, &sm)?),
            beta: self.embed(&r.mul(&w.beta, &tn)?),
            ka: self.reduce(w.ka, sm),
            kb: self.reduce(w.kb, tn),
        })
    }

    /// Disjoint φ gives c = u·a + v·b with φ(c) = ∅, so c ∈ S and
    /// (a/s)(us/c) + (b/t)(vt/c) = 1.
    fn comaximal_certificate(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        let (p, q) = (self.get(a)?, self.get(b)?);
        let r = &self.base;
        let w = r.intersection_witness(&p.num, &q.num)?;
        if !self.in_s(&w.c)? {
            return Ok(None);
        }
        let x = self.reduce(r.mul(&w.u, &p.den)?, w.c.clone());
        let y = self.reduce(r.mul(&w.v, &q.den)?, w.c);
        Ok(Some((x, y)))
    }

    fn pm_status(&self) -> PmStatus {
        self.pm.clone()
    }

    /// Follows the transfer argument: with z the principal generator,
    /// ka·α + kb·β = 1 in A_S, and the base pm witness for that pair lifts.
    fn pm_witness(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>> {
        let (p, q) = (self.get(a)?, self.get(b)?);
        let r = &self.base;
        if self.base.nonzero_psi_empty() {
            let (za, zb) = (r.is_zero(&p.num)?, r.is_zero(&q.num)?);
            return Ok(match (za, zb) {
                (false, _) => Some((self.zero(), self.one())),
                (true, false) => Some((self.one(), self.zero())),
                _ => None,
            });
        }
        let (m, n) = r.exponents();
        let w = r.principal_witness(&p.num, &q.num, m, n)?;
        if !self.in_s(&w.z)? {
            return Ok(None);
        }
        let e1 = r.mul(&w.ka, &w.alpha)?;
        let e2 = r.mul(&w.kb, &w.beta)?;
        Ok(r.pm_witness(&e1, &e2)?.map(|(c, d)| (self.embed(&c), self.embed(&d))))
    }

    fn separating_witness(&self, l1: &Point, l2: &Point) -> Result<Option<Element>> {
        Ok(self.base.separating_witness(l1, l2)?.map(|a| self.embed(&a)))
    }

    fn disjoint_witness(&self, l: &Point, a: &Element) -> Result<Option<Element>> {
        Ok(self.base.disjoint_witness(l, &self.get(a)?.num)?.map(|b| self.embed(&b)))
    }

    fn s_cancel(&self, x: &Element) -> Result<Option<Element>> {
        Ok(self.base.s_cancel(&self.get(x)?.num)?.map(|u| self.embed(&u)))
    }

    fn elements(&self, bound: u32) -> Option<Vec<Element>> {
        let els = self.base.elements(bound)?;
        let dens: Vec<Element> = els.iter().filter(|s| self.in_s(s).unwrap_or(false)).cloned().collect();
        if els.len() * dens.len() > 4096 {
            return None;
        }
        Some(els.iter().flat_map(|a| dens.iter().map(move |s| Element::frac(a.clone(), s.clone()))).collect())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Element {
        let num = self.base.sample(rng);
        let den = if rng.gen_bool(0.3) {
            self.base.one()
        } else {
            (0..64)
                .map(|_| self.base.sample(rng))
                .find(|s| self.in_s(s).unwrap_or(false))
                .unwrap_or_else(|| self.base.one())
        };
        self.reduce(num, den)
    }

    fn show(&self, a: &Element) -> String {
        match a {
            Element::Frac(f) => format!("({})/({})", self.base.show(&f.num), self.base.show(&f.den)),
            other => other.to_string(),
        }
    }

    fn is_domain(&self) -> bool {
        self.base.is_domain()
    }

    fn nonzero_psi_empty(&self) -> bool {
        self.base.nonzero_psi_empty()
    }
}

/// a/s = b/t, with the cancelling u ∈ S when true.
pub fn fraction_eq(loc: &LocalizedStructure, p: &Element, q: &Element) -> Result<Option<Element>> {
    loc.equality_witness(p, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitCheck {
    pub unit: bool,
    pub inverse: Option<String>,
}

/// Units of A_S are exactly the fractions with φ = ∅; the inverse s/a is
/// re-multiplied before it is reported.
pub fn unit_check(loc: &LocalizedStructure, p: &Element) -> Result<(UnitCheck, Option<Element>)> {
    if !loc.psi(p)?.is_empty() {
        return Ok((UnitCheck { unit: false, inverse: None }, None));
    }
    let f = loc.get(p)?;
    let inv = loc.reduce(f.den.clone(), f.num.clone());
    if !loc.equal(&loc.mul(p, &inv)?, &loc.one())? {
        return Err(Error::Refutation(format!("{} · {} ≠ 1", loc.show(p), loc.show(&inv))));
    }
    Ok((UnitCheck { unit: true, inverse: Some(loc.show(&inv)) }, Some(inv)))
}

/// Comaximal exactly when φ(p) ∩ φ(q) = ∅; returns x, y with px + qy = 1,
/// re-multiplied.
pub fn comaximality_check(loc: &LocalizedStructure, p: &Element, q: &Element) -> Result<Option<(Element, Element)>> {
    let sp = loc.lambda();
    let disjoint = sp.intersection(&loc.psi(p)?, &loc.psi(q)?).is_empty();
    let cert = loc.comaximal_certificate(p, q)?;
    match (&cert, disjoint) {
        (Some((x, y)), true) => {
            let s = loc.add(&loc.mul(p, x)?, &loc.mul(q, y)?)?;
            if !loc.equal(&s, &loc.one())? {
                return Err(Error::Refutation(format!("p·x + q·y = {} ≠ 1", loc.show(&s))));
            }
        }
        (None, false) => {}
        _ => {
            return Err(Error::Refutation(format!(
                "comaximality of {} and {} disagrees with disjointness of φ",
                loc.show(p),
                loc.show(q)
            )))
        }
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub pairs: usize,
    pub equal_pairs: usize,
    pub failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// i(a) = i(b) ⇔ a = b on seeded pairs; a quarter of the pairs are
/// built equal so both directions are exercised.
pub fn embedding_check(loc: &LocalizedStructure, pairs: usize, seed: u64) -> EmbeddingReport {
    let base = loc.base();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = vec![];
    let mut equal_pairs = 0;
    for _ in 0..pairs {
        let a = base.sample(&mut rng);
        let b = if rng.gen_bool(0.25) {
            base.add(&a, &base.zero()).unwrap_or_else(|_| a.clone())
        } else {
            base.sample(&mut rng)
        };
        let run = || -> Result<(bool, bool)> {
            Ok((base.equal(&a, &b)?, fraction_eq(loc, &loc.embed(&a), &loc.embed(&b))?.is_some()))
        };
        match run() {
            Ok((x, y)) if x == y => equal_pairs += x as usize,
            Ok((x, _)) => failures.push(format!(
                "{} {} {} in A but not after embedding",
                base.show(&a),
                if x { "=" } else { "≠" },
                base.show(&b)
            )),
            Err(e) => failures.push(format!("{} vs {}: {e}", base.show(&a), base.show(&b))),
        }
    }
    EmbeddingReport { pairs, equal_pairs, failures }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferOutcome {
    /// Base pm, and A_S pm with the contraction criterion on every pair.
    Transferred,
    /// Base not pm; only the contraction criterion was checked.
    NotApplicable,
    /// Base not pm, yet A_S is pm: the hypothesis is not necessary.
    NonNecessity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmTransferReport {
    pub structure: String,
    pub base_pm: PmStatus,
    pub localized_pm: PmStatus,
    pub maximal_pairs: usize,
    pub criterion: Vec<String>,
    pub outcome: TransferOutcome,
    pub failures: Vec<String>,
}

impl PmTransferReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that a pm base gives a pm A_S, and the criterion
/// (M₁ ∩ A) + (M₂ ∩ A) = A on pairs of distinct maximal ideals of A_S.
/// Finite bases are exhaustive; ℚ[x] uses the contractions (x − β);
/// bases with S = A ∖ {0} localize to a field.
pub fn pm_transfer_check(base: &Structure, samples: usize, seed: u64) -> Result<PmTransferReport> {
    let loc = LocalizedStructure::new(base.clone())?;
    let base_pm = base.pm_status();
    let localized_pm = loc.pm_status();
    let mut failures = vec![];
    let mut criterion = vec![];
    let mut maximal_pairs = 0;
    let outcome;
    if let Some(view) = base.finite_view() {
        let ring = &view.ring;
        for s in ring.elements() {
            if base.psi(&Element::Finite(s))?.is_empty() != ring.is_unit(s) {
                failures.push(format!("S ≠ units at {}", ring.label(s)));
            }
        }
        // S consists of units, so i: A → A_S is onto and Max(A_S) = Max(A).
        for a in ring.elements() {
            for s in ring.elements().filter(|&s| ring.is_unit(s)) {
                let q = Element::frac(Element::Finite(a), Element::Finite(s));
                let inv = ring.inverse(s).expect("unit");
                if !loc.equal(&q, &loc.embed(&Element::Finite(ring.mul(a, inv))))? {
                    failures.push(format!("{a}/{s} is not in the image of i"));
                }
            }
        }
        let maximals = enumerate_maximal_ideals(ring)?;
        let base_is_pm = is_pm_ring(ring)?;
        if base_is_pm != base_pm.holds() {
            failures.push(format!("declared pm status {:?} disagrees with the prime scan", base_pm));
        }
        let whole = RingIdeal::whole(ring);
        for (i, m1) in maximals.iter().enumerate() {
            for m2 in &maximals[i + 1..] {
                maximal_pairs += 1;
                let sum = m1.sum(ring, m2);
                if sum == whole {
                    criterion.push(format!("{{{}}} + {{{}}} = A", m1.labels(ring).join(", "), m2.labels(ring).join(", ")));
                } else {
                    failures.push(format!("contractions {:?} and {:?} are not comaximal", m1.labels(ring), m2.labels(ring)));
                }
            }
        }
        // A_S ≅ A, so the pm property of A_S is the pm property of A.
        let primes = enumerate_prime_ideals(ring)?;
        let localized_is_pm = primes.iter().all(|p| maximals.iter().filter(|m| p.is_subset(m)).count() == 1);
        if base_is_pm && !localized_is_pm {
            failures.push("base is pm but A_S is not".into());
        }
        outcome = if base_is_pm { TransferOutcome::Transferred } else { TransferOutcome::NotApplicable };
    } else if base.nonzero_psi_empty() {
        if !matches!(localized_pm, PmStatus::Verified { .. }) {
            failures.push("A_S should be a field".into());
        }
        // spot-check that nonzero fractions are units
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let p = loc.sample(&mut rng);
            if loc.is_zero(&p)? {
                continue;
            }
            if let Err(e) = unit_check(&loc, &p) {
                failures.push(e.to_string());
            }
        }
        outcome = if base_pm.holds() { TransferOutcome::Transferred } else { TransferOutcome::NonNecessity };
    } else if let Some(field) = poly_field(base) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut betas = vec![];
        match field.points() {
            Some(pts) => {
                for (i, b1) in pts.iter().enumerate() {
                    betas.extend(pts[i + 1..].iter().map(|b2| (b1.clone(), b2.clone())).take(samples));
                }
            }
            None => {
                betas.push((Rat::zero(), Rat::one()));
                for _ in 0..samples {
                    let b1 = Rat::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4));
                    let b2 = Rat::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4));
                    betas.push((b1, b2));
                }
            }
        }
        for (b1, b2) in betas {
            if b1 == b2 {
                continue;
            }
            maximal_pairs += 1;
            let (f, g) = (Poly::linear_root(field, &b1), Poly::linear_root(field, &b2));
            let t = extended_gcd(&f, &g)?;
            if t.d.is_one() {
                criterion.push(format!("({f}) + ({g}) = A: ({})·({f}) + ({})·({g}) = 1", t.u, t.v));
            } else {
                failures.push(format!("({f}) + ({g}) ≠ A"));
            }
        }
        outcome = if base_pm.holds() { TransferOutcome::Transferred } else { TransferOutcome::NotApplicable };
    } else {
        return Err(Error::Precondition(format!("no maximal-ideal description for {}", base.name())));
    }
    if base_pm.holds() && !localized_pm.holds() {
        failures.push("pm did not transfer".into());
    }
    Ok(PmTransferReport {
        structure: base.name(),
        base_pm,
        localized_pm,
        maximal_pairs,
        criterion,
        outcome,
        failures,
    })
}

fn poly_field(base: &Structure) -> Option<Field> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    match base.sample(&mut rng) {
        Element::Poly(p) => Some(p.field()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnreachedMaximal {
    pub field: String,
    pub h: String,
    pub certificate: Vec<String>,
}

/// Over F_p[x] with ψ₁, the first monic irreducible h with no roots lies in
/// S; the maximal ideal (h) of A meets S, while every maximal ideal of A_S
/// is generated by some x − β and contracts to (x − β), which avoids S.
/// So (h) is not a contraction.
pub fn unreached_maximal_check(p: u64) -> Result<(Poly, UnreachedMaximal)> {
    let field = Field::fp(p)?;
    let base: Structure = crate::semitransition::make_poly_structure(field);
    let mut cert = vec![];
    for degree in 2..=8u32 {
        let start = p.pow(degree);
        for index in start..start * p {
            let h = Poly::from_index(p, index);
            if h.degree() != Some(degree as usize) || !roots(&h)?.is_empty() || !is_irreducible(&h)? {
                continue;
            }
            if !base.psi(&Element::Poly(h.clone()))?.is_empty() {
                return Err(Error::Refutation(format!("ψ({h}) should be empty")));
            }
            cert.push(format!("{h} is irreducible, so (h) is maximal in F{p}[x]"));
            cert.push(format!("{h} has no roots in F{p}, so h ∈ S"));
            for beta in field.points().expect("finite field") {
                let lin = Poly::linear_root(field, &beta);
                if base.psi(&Element::Poly(lin.clone()))?.is_empty() {
                    return Err(Error::Refutation(format!("{lin} lies in S")));
                }
                if h.eval(&beta) == Rat::zero() {
                    return Err(Error::Refutation(format!("{h} vanishes at {beta}")));
                }
                cert.push(format!("({lin}) avoids S and does not contain h"));
            }
            return Ok((h.clone(), UnreachedMaximal { field: format!("F{p}"), h: h.to_string(), certificate: cert }));
        }
    }
    Err(Error::BoundExceeded { what: "irreducible search degree", actual: 9, bound: 8 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semitransition::{make_max_structure, make_poly_structure, make_trivial_structure};
    use crate::ring::FiniteRing;

    fn q(c: &[i64]) -> Element {
        Element::Poly(Poly::from_ints(Field::Q, c))
    }

    fn qloc() -> LocalizedStructure {
        LocalizedStructure::new(make_poly_structure(Field::Q)).unwrap()
    }

    #[test]
    fn fraction_equality_over_q() {
        let l = qloc();
        let x1 = Element::frac(q(&[0, 1]), q(&[1]));
        let x2 = Element::frac(q(&[0, 2]), q(&[2]));
        assert!(fraction_eq(&l, &x1, &x2).unwrap().is_some());
        let x3 = Element::frac(q(&[1, 1]), q(&[1]));
        assert!(fraction_eq(&l, &x1, &x3).unwrap().is_none());
        let s = Element::frac(q(&[1, 0, 1]), q(&[1, 0, 1]));
        assert!(l.equal(&s, &l.one()).unwrap());
    }

    #[test]
    fn units_and_comaximality() {
        let l = qloc();
        let (u, inv) = unit_check(&l, &l.embed(&q(&[1, 0, 1]))).unwrap();
        assert!(u.unit);
        assert_eq!(inv.unwrap(), Element::frac(q(&[1]), q(&[1, 0, 1])));
        assert!(!unit_check(&l, &l.embed(&q(&[0, 1]))).unwrap().0.unit);
        assert!(comaximality_check(&l, &l.embed(&q(&[0, 1])), &l.embed(&q(&[1, 1]))).unwrap().is_some());
        assert!(comaximality_check(&l, &l.embed(&q(&[0, 1])), &l.embed(&q(&[0, 1]))).unwrap().is_none());
    }

    #[test]
    fn rational_localization_is_not_pm() {
        assert!(matches!(qloc().pm_status(), PmStatus::Refuted { .. }));
    }

    #[test]
    fn transfer_on_finite_and_integers() {
        let f = make_max_structure(FiniteRing::product_of_fields(&[2, 3]).unwrap()).unwrap();
        let r = pm_transfer_check(&f, 10, 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.outcome, TransferOutcome::Transferred);
        let z = make_trivial_structure(vec!["p".into()]).unwrap();
        let r = pm_transfer_check(&z, 50, 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.outcome, TransferOutcome::NonNecessity);
        assert!(!r.base_pm.holds());
    }

    #[test]
    fn unreached_maximals() {
        for (p, h) in [(2, vec![1, 1, 1]), (3, vec![1, 0, 1]), (5, vec![2, 0, 1])] {
            let (got, _) = unreached_maximal_check(p).unwrap();
            assert_eq!(got, Poly::from_ints(Field::fp(p).unwrap(), &h));
        }
    }
}
