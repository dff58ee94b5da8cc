//! φ-filters and φ-ideals on finite structures. Here S is the unit group, so
//! A_S = A and φ = ψ; filters are sets of ψ-bitmasks drawn from the image.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{enumerate_ideals, enumerate_maximal_ideals, enumerate_prime_ideals, FiniteRing, RingIdeal, ElemSet};
use crate::semitransition::{FiniteView, SemiTransition};

/// Filter membership is decided on image sets: any a with φ(a) = X stands
/// for X, since the intersection witness c is not unique.
pub const FILTER_READING: &str = "φ-filter membership is defined over image sets; any representative witness suffices";

#[derive(Clone, Debug)]
pub struct PhiLattice {
    name: String,
    view: FiniteView,
    image: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PhiFilter {
    pub members: BTreeSet<u64>,
}

impl PhiFilter {
    pub fn contains(&self, mask: u64) -> bool {
        self.members.contains(&mask)
    }

    pub fn is_subset(&self, other: &PhiFilter) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Intersection of all members; the generator of the filter.
    pub fn least(&self) -> u64 {
        self.members.iter().fold(u64::MAX, |acc, m| acc & m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ultrafilter {
    pub filter: PhiFilter,
    /// The minimal nonempty image set generating it.
    pub atom: u64,
    /// For each image set outside the filter, a member it misses.
    pub certificate: Vec<(u64, u64)>,
}

impl PhiLattice {
    pub fn new(s: &dyn SemiTransition) -> Result<PhiLattice> {
        let view = s
            .finite_view()
            .ok_or_else(|| Error::Precondition(format!("{} has no finite table", s.name())))?
            .clone();
        let image = view.image();
        Ok(PhiLattice { name: s.name(), view, image })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.view.ring
    }

    pub fn view(&self) -> &FiniteView {
        &self.view
    }

    /// Distinct φ values, ascending.
    pub fn image(&self) -> &[u64] {
        &self.image
    }

    pub fn phi(&self, a: usize) -> u64 {
        self.view.psi[a]
    }

    pub fn show(&self, mask: u64) -> String {
        self.view.show_mask(mask)
    }

    pub fn show_filter(&self, f: &PhiFilter) -> String {
        let v: Vec<String> = f.members.iter().map(|&m| self.show(m)).collect();
        format!("{{{}}}", v.join(", "))
    }

    pub fn show_ideal(&self, i: &RingIdeal) -> String {
        format!("{{{}}}", i.labels(self.ring()).join(", "))
    }

    /// The filter of image sets above `m`.
    pub fn up(&self, m: u64) -> PhiFilter {
        PhiFilter { members: self.image.iter().copied().filter(|&x| x & m == m).collect() }
    }

    /// Units are exactly the elements with φ = ∅.
    pub fn s_is_units(&self) -> Option<String> {
        let r = self.ring();
        r.elements()
            .find(|&a| (self.phi(a) == 0) != r.is_unit(a))
            .map(|a| format!("φ({}) = {} but unit = {}", r.label(a), self.show(self.phi(a)), r.is_unit(a)))
    }

    /// The first violated filter axiom, if any.
    pub fn filter_violation(&self, members: &BTreeSet<u64>) -> Option<String> {
        if members.is_empty() {
            return Some("empty family".into());
        }
        if members.contains(&0) {
            return Some("∅ is a member".into());
        }
        for &x in members {
            if self.image.binary_search(&x).is_err() {
                return Some(format!("{} is not an image set", self.show(x)));
            }
            for &y in members {
                if !members.contains(&(x & y)) {
                    return Some(format!("{} ∩ {} is missing", self.show(x), self.show(y)));
                }
            }
            for &c in &self.image {
                if c & x == x && !members.contains(&c) {
                    return Some(format!("superset {} of {} is missing", self.show(c), self.show(x)));
                }
            }
        }
        None
    }

    /// All φ-filters: a filter in a finite ∩-closed image is the up-set of
    /// its least member, so they are indexed by nonempty image sets.
    pub fn filters(&self) -> Vec<PhiFilter> {
        self.image.iter().filter(|&&m| m != 0).map(|&m| self.up(m)).collect()
    }
}

/// φ[I] = {φ(a) : a ∈ I}, with the filter axioms re-checked.
pub fn filter_of_ideal(lat: &PhiLattice, i: &RingIdeal) -> Result<PhiFilter> {
    if !i.is_proper(lat.ring()) {
        return Err(Error::ImproperIdeal(lat.show_ideal(i)));
    }
    let members: BTreeSet<u64> = i.members().iter().map(|a| lat.phi(a)).collect();
    if let Some(v) = lat.filter_violation(&members) {
        return Err(Error::Refutation(format!("φ[{}] is not a φ-filter: {v}", lat.show_ideal(i))));
    }
    Ok(PhiFilter { members })
}

/// φ⁻¹[F] = {a : φ(a) ∈ F}, checked to be an ideal.
pub fn ideal_of_filter(lat: &PhiLattice, f: &PhiFilter) -> Result<RingIdeal> {
    let r = lat.ring();
    let members = ElemSet::from_iter(r.order(), r.elements().filter(|&a| f.contains(lat.phi(a))));
    RingIdeal::new(r, members)
}

pub fn is_phi_ideal(lat: &PhiLattice, i: &RingIdeal) -> Result<bool> {
    let f = filter_of_ideal(lat, i)?;
    Ok(ideal_of_filter(lat, &f)? == *i)
}

/// Maximal φ-filters, one per atom of the image, each with a maximality
/// certificate.
pub fn enumerate_ultrafilters(lat: &PhiLattice) -> Result<Vec<Ultrafilter>> {
    let img = lat.image();
    for &x in img {
        for &y in img {
            if img.binary_search(&(x & y)).is_err() {
                return Err(Error::Refutation(format!(
                    "image not closed under intersection: {} ∩ {}",
                    lat.show(x),
                    lat.show(y)
                )));
            }
        }
    }
    let atoms: Vec<u64> = img
        .iter()
        .copied()
        .filter(|&a| a != 0 && !img.iter().any(|&b| b != 0 && b != a && b & a == b))
        .collect();
    let mut out = vec![];
    for a in atoms {
        let filter = lat.up(a);
        let mut certificate = vec![];
        for &x in img.iter().filter(|&&x| !filter.contains(x)) {
            let miss = filter
                .members
                .iter()
                .copied()
                .find(|&m| m & x == 0)
                .ok_or_else(|| Error::Refutation(format!("{} could extend the filter above {}", lat.show(x), lat.show(a))))?;
            certificate.push((x, miss));
        }
        out.push(Ultrafilter { filter, atom: a, certificate });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionReport {
    pub ideals: usize,
    pub proper_ideals: usize,
    pub phi_ideals: usize,
    pub filters: usize,
    pub failures: Vec<String>,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Monotonicity of both maps, I ⊆ φ⁻¹[φ[I]] with equality exactly on
/// φ-ideals, and φ[φ⁻¹[F]] = F.
pub fn adjunction_check(lat: &PhiLattice) -> Result<AdjunctionReport> {
    let r = lat.ring();
    let ideals = enumerate_ideals(r)?;
    let proper: Vec<&RingIdeal> = ideals.iter().filter(|i| i.is_proper(r)).collect();
    let mut failures = vec![];
    let mut images = vec![];
    let mut phi_ideals = 0;
    for i in &proper {
        let f = filter_of_ideal(lat, i)?;
        let back = ideal_of_filter(lat, &f)?;
        if !i.is_subset(&back) {
            failures.push(format!("{} ⊄ φ⁻¹[φ[I]]", lat.show_ideal(i)));
        }
        if back == **i {
            phi_ideals += 1;
        }
        if !is_phi_ideal(lat, &back)? {
            failures.push(format!("φ⁻¹[φ[{}]] is not a φ-ideal", lat.show_ideal(i)));
        }
        images.push(f);
    }
    for (a, i) in proper.iter().enumerate() {
        for (b, j) in proper.iter().enumerate() {
            if i.is_subset(j) && !images[a].is_subset(&images[b]) {
                failures.push(format!("φ[·] not monotone on {} ⊆ {}", lat.show_ideal(i), lat.show_ideal(j)));
            }
        }
    }
    let filters = lat.filters();
    let pre: Vec<RingIdeal> = filters.iter().map(|f| ideal_of_filter(lat, f)).collect::<Result<_>>()?;
    for (a, f) in filters.iter().enumerate() {
        if filter_of_ideal(lat, &pre[a])? != *f {
            failures.push(format!("φ[φ⁻¹[F]] ≠ F for F = {}", lat.show_filter(f)));
        }
        for (b, g) in filters.iter().enumerate() {
            if f.is_subset(g) && !pre[a].is_subset(&pre[b]) {
                failures.push(format!("φ⁻¹[·] not monotone on {} ⊆ {}", lat.show_filter(f), lat.show_filter(g)));
            }
        }
    }
    Ok(AdjunctionReport { ideals: ideals.len(), proper_ideals: proper.len(), phi_ideals, filters: filters.len(), failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub maximal_ideals: usize,
    pub ultrafilters: usize,
    /// (maximal ideal, generating atom of its ultrafilter)
    pub pairs: Vec<(String, String)>,
    pub failures: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// M ↦ φ[M] maps Max onto the ultrafilters, and φ⁻¹ inverts it.
pub fn bijection_check(lat: &PhiLattice) -> Result<BijectionReport> {
    let r = lat.ring();
    let maximals = enumerate_maximal_ideals(r)?;
    let ultras = enumerate_ultrafilters(lat)?;
    let mut failures = vec![];
    if let Some(w) = lat.s_is_units() {
        failures.push(format!("S is not the unit group: {w}"));
    }
    let mut hit = vec![false; ultras.len()];
    let mut pairs = vec![];
    for m in &maximals {
        let f = match filter_of_ideal(lat, m) {
            Ok(f) => f,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        match ultras.iter().position(|u| u.filter == f) {
            Some(k) => {
                if hit[k] {
                    failures.push(format!("two maximal ideals map to the ultrafilter above {}", lat.show(ultras[k].atom)));
                }
                hit[k] = true;
                pairs.push((lat.show_ideal(m), lat.show(ultras[k].atom)));
                if ideal_of_filter(lat, &f)? != *m {
                    failures.push(format!("φ⁻¹[φ[M]] ≠ M for M = {}", lat.show_ideal(m)));
                }
            }
            None => failures.push(format!("φ[{}] = {} is not an ultrafilter", lat.show_ideal(m), lat.show_filter(&f))),
        }
    }
    for (k, u) in ultras.iter().enumerate() {
        let i = ideal_of_filter(lat, &u.filter)?;
        if !maximals.contains(&i) {
            failures.push(format!("φ⁻¹ of the ultrafilter above {} is {} and not maximal", lat.show(u.atom), lat.show_ideal(&i)));
        } else if !hit[k] {
            failures.push(format!("ultrafilter above {} is not hit", lat.show(u.atom)));
        }
    }
    Ok(BijectionReport { maximal_ideals: maximals.len(), ultrafilters: ultras.len(), pairs, failures })
}

/// If φ(a) meets every member of φ[M] then a ∈ M.
pub fn absorption_check(lat: &PhiLattice, m: &RingIdeal, a: usize) -> Result<bool> {
    let f = filter_of_ideal(lat, m)?;
    let meets_all = f.members.iter().all(|&x| x & lat.phi(a) != 0);
    Ok(!meets_all || m.contains(a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn absorption_scan(lat: &PhiLattice) -> Result<ScanReport> {
    let r = lat.ring();
    let mut failures = vec![];
    let mut checked = 0;
    for m in enumerate_maximal_ideals(r)? {
        for a in r.elements() {
            checked += 1;
            if !absorption_check(lat, &m, a)? {
                failures.push(format!("φ({}) meets all of φ[{}] but {} ∉ M", r.label(a), lat.show_ideal(&m), r.label(a)));
            }
        }
    }
    Ok(ScanReport { checked, failures })
}

/// For every proper ideal I with I² a φ-ideal, I² = I.
pub fn square_ideal_check(lat: &PhiLattice) -> Result<ScanReport> {
    let r = lat.ring();
    let mut failures = vec![];
    let mut checked = 0;
    for i in enumerate_ideals(r)?.into_iter().filter(|i| i.is_proper(r)) {
        let sq = i.product(r, &i);
        if is_phi_ideal(lat, &sq)? {
            checked += 1;
            if sq != i {
                failures.push(format!("I² = {} is a φ-ideal but I = {}", lat.show_ideal(&sq), lat.show_ideal(&i)));
            }
        }
    }
    Ok(ScanReport { checked, failures })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducibility {
    pub prime: bool,
    pub strongly_irreducible: bool,
    pub semi_strongly_irreducible: bool,
}

impl Irreducibility {
    pub fn coincide(&self) -> bool {
        self.prime == self.strongly_irreducible && self.prime == self.semi_strongly_irreducible
    }
}

/// The three properties by a full scan over pairs of ideals. Prime uses the
/// ideal-wise form JK ⊆ I ⇒ J ⊆ I or K ⊆ I.
pub fn irreducibility_classify(ring: &FiniteRing, ideals: &[RingIdeal], i: &RingIdeal) -> Irreducibility {
    let proper = i.is_proper(ring);
    let pairs = || ideals.iter().flat_map(|j| ideals.iter().map(move |k| (j, k)));
    let prime = proper && pairs().all(|(j, k)| !j.product(ring, k).is_subset(i) || j.is_subset(i) || k.is_subset(i));
    let strongly = proper && pairs().all(|(j, k)| !j.intersection(k).is_subset(i) || j.is_subset(i) || k.is_subset(i));
    let semi = proper
        && pairs().all(|(j, k)| {
            !j.intersection(k).is_subset(i) || j.product(ring, j).is_subset(i) || k.product(ring, k).is_subset(i)
        });
    Irreducibility { prime, strongly_irreducible: strongly, semi_strongly_irreducible: semi }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    pub phi_ideals: Vec<(String, Irreducibility)>,
    pub exceptions: Vec<String>,
}

impl IrreducibilityReport {
    pub fn passed(&self) -> bool {
        self.exceptions.is_empty()
    }
}

/// On φ-ideals the three classifications coincide; each φ-ideal is also
/// checked to be the intersection of the primes containing it.
pub fn irreducibility_check(lat: &PhiLattice) -> Result<IrreducibilityReport> {
    let r = lat.ring();
    let ideals = enumerate_ideals(r)?;
    let primes = enumerate_prime_ideals(r)?;
    let candidates: Vec<&RingIdeal> = ideals.iter().filter(|i| i.is_proper(r)).collect();
    let rows: Vec<Result<Option<(String, Irreducibility, Vec<String>)>>> = candidates
        .par_iter()
        .map(|i| {
            if !is_phi_ideal(lat, i)? {
                return Ok(None);
            }
            let c = irreducibility_classify(r, &ideals, i);
            let mut ex = vec![];
            if !c.coincide() {
                ex.push(format!("{}: {c:?}", lat.show_ideal(i)));
            }
            let meet = primes
                .iter()
                .filter(|p| i.is_subset(p))
                .fold(RingIdeal::whole(r), |acc, p| acc.intersection(p));
            if meet != **i {
                ex.push(format!("{} is not the intersection of the primes above it", lat.show_ideal(i)));
            }
            Ok(Some((lat.show_ideal(i), c, ex)))
        })
        .collect();
    let mut phi_ideals = vec![];
    let mut exceptions = vec![];
    for row in rows {
        if let Some((name, c, ex)) = row? {
            phi_ideals.push((name, c));
            exceptions.extend(ex);
        }
    }
    Ok(IrreducibilityReport { phi_ideals, exceptions })
}

/// φ(a) ∪ φ(b) ∈ F ⇒ φ(a) ∈ F or φ(b) ∈ F, over image sets.
pub fn prime_filter_check(lat: &PhiLattice, f: &PhiFilter) -> bool {
    let img = lat.image();
    img.iter().all(|&x| img.iter().all(|&y| !f.contains(x | y) || f.contains(x) || f.contains(y)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDualityReport {
    pub prime_phi_ideals: usize,
    pub prime_filters: usize,
    pub failures: Vec<String>,
}

impl PrimeDualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Prime φ-ideals give prime filters and prime filters give prime φ-ideals.
pub fn prime_duality_check(lat: &PhiLattice) -> Result<PrimeDualityReport> {
    let r = lat.ring();
    let ideals = enumerate_ideals(r)?;
    let mut failures = vec![];
    let mut prime_phi_ideals = 0;
    for i in ideals.iter().filter(|i| i.is_proper(r)) {
        if is_phi_ideal(lat, i)? && irreducibility_classify(r, &ideals, i).prime {
            prime_phi_ideals += 1;
            let f = filter_of_ideal(lat, i)?;
            if !prime_filter_check(lat, &f) {
                failures.push(format!("φ[{}] is not a prime filter", lat.show_ideal(i)));
            }
        }
    }
    let mut prime_filters = 0;
    for f in lat.filters() {
        if !prime_filter_check(lat, &f) {
            continue;
        }
        prime_filters += 1;
        let p = ideal_of_filter(lat, &f)?;
        if !is_phi_ideal(lat, &p)? || !irreducibility_classify(r, &ideals, &p).prime {
            failures.push(format!("φ⁻¹[{}] = {} is not a prime φ-ideal", lat.show_filter(&f), lat.show_ideal(&p)));
        }
    }
    Ok(PrimeDualityReport { prime_phi_ideals, prime_filters, failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NthRootReport {
    pub n: u32,
    pub pairs: usize,
    pub failures: Vec<String>,
}

impl NthRootReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// IJ = I ∩ J for all φ-ideal pairs, after checking that every element
/// has an n-th root.
pub fn nth_root_product_check(lat: &PhiLattice, n: u32) -> Result<NthRootReport> {
    let r = lat.ring();
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let powers: BTreeSet<usize> = r.elements().map(|b| r.pow(b, n)).collect();
    if let Some(a) = r.elements().find(|a| !powers.contains(a)) {
        return Err(Error::NotNthRootRing { n, element: r.label(a) });
    }
    let mut phi = vec![];
    for i in enumerate_ideals(r)?.into_iter().filter(|i| i.is_proper(r)) {
        if is_phi_ideal(lat, &i)? {
            phi.push(i);
        }
    }
    let mut failures = vec![];
    for i in &phi {
        for j in &phi {
            if i.product(r, j) != i.intersection(j) {
                failures.push(format!("IJ ≠ I ∩ J for I = {}, J = {}", lat.show_ideal(i), lat.show_ideal(j)));
            }
        }
    }
    Ok(NthRootReport { n, pairs: phi.len() * phi.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semitransition::make_max_structure;

    fn lat(primes: &[u64]) -> PhiLattice {
        let s = make_max_structure(FiniteRing::product_of_fields(primes).unwrap()).unwrap();
        PhiLattice::new(s.as_ref()).unwrap()
    }

    #[test]
    fn filter_of_the_first_factor_kernel() {
        let l = lat(&[2, 3]);
        let r = l.ring();
        let m: Vec<RingIdeal> = enumerate_maximal_ideals(r).unwrap();
        let k = m.iter().find(|i| i.contains(r.index_of(&[0, 1]).unwrap())).unwrap();
        let f = filter_of_ideal(&l, k).unwrap();
        assert_eq!(f.members.len(), 2);
        assert!(f.contains(l.view().full_mask()));
        assert!(filter_of_ideal(&l, &RingIdeal::whole(r)).is_err());
        assert_eq!(filter_of_ideal(&l, &RingIdeal::zero(r)).unwrap().members.len(), 1);
    }

    #[test]
    fn counts_on_small_products() {
        assert_eq!(enumerate_ultrafilters(&lat(&[2, 3])).unwrap().len(), 2);
        assert_eq!(enumerate_ultrafilters(&lat(&[2, 2, 3])).unwrap().len(), 3);
        assert_eq!(enumerate_ultrafilters(&lat(&[5])).unwrap().len(), 1);
    }

    #[test]
    fn zero_ideal_of_two_fields_is_phi_but_not_prime() {
        let l = lat(&[2, 3]);
        let r = l.ring();
        let ideals = enumerate_ideals(r).unwrap();
        let z = RingIdeal::zero(r);
        assert!(is_phi_ideal(&l, &z).unwrap());
        let c = irreducibility_classify(r, &ideals, &z);
        assert!(!c.prime && !c.strongly_irreducible && !c.semi_strongly_irreducible);
    }

    #[test]
    fn nth_root_precondition() {
        assert!(nth_root_product_check(&lat(&[2, 2]), 2).unwrap().passed());
        assert!(nth_root_product_check(&lat(&[3, 3]), 3).unwrap().passed());
        match nth_root_product_check(&lat(&[3]), 2) {
            Err(Error::NotNthRootRing { element, .. }) => assert_eq!(element, "(2)"),
            other => panic!("{other:?}"),
        }
    }
}
