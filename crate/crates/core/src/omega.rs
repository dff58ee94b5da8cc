//! The space Ω of φ-ultrafilters on finite structures, its closed-base
//! topology, and the continuous extension of maps Λ → K.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::{
    enumerate_ultrafilters, filter_of_ideal, ideal_of_filter, is_phi_ideal, prime_filter_check, PhiLattice, Ultrafilter,
};
use crate::lambda::Point;
use crate::ring::{enumerate_ideals, enumerate_maximal_ideals, FiniteRing, RingIdeal};
use crate::semitransition::{expect_finite, make_max_structure, make_seq_structure, truncate_c, Element, SemiTransition, SeqClass, Structure};
use crate::seq::{NIdeal, PiecewiseSeq};

fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

/// A topology on at most 64 points given by a closed base; the closed sets
/// are all intersections of finite unions of base sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteTopology {
    pub labels: Vec<String>,
    pub base: Vec<u64>,
    pub closed: Vec<u64>,
}

impl FiniteTopology {
    pub fn from_closed_base(labels: Vec<String>, base: impl IntoIterator<Item = u64>) -> Result<FiniteTopology> {
        let n = labels.len();
        if n > 64 {
            return Err(Error::BoundExceeded { what: "topology points", actual: n, bound: 64 });
        }
        let full = mask_of(n);
        let base: BTreeSet<u64> = base.into_iter().map(|m| m & full).collect();
        let mut unions: BTreeSet<u64> = base.clone();
        unions.insert(0);
        close_under(&mut unions, |x, y| x | y);
        let mut closed = unions;
        closed.insert(full);
        close_under(&mut closed, |x, y| x & y);
        let t = FiniteTopology { labels, base: base.into_iter().collect(), closed: closed.into_iter().collect() };
        if let Some(v) = t.violation() {
            return Err(Error::Refutation(format!("generated family is not a topology: {v}")));
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn full(&self) -> u64 {
        mask_of(self.len())
    }

    pub fn is_closed(&self, m: u64) -> bool {
        self.closed.binary_search(&m).is_ok()
    }

    pub fn is_open(&self, m: u64) -> bool {
        self.is_closed(self.full() & !m)
    }

    pub fn opens(&self) -> Vec<u64> {
        self.closed.iter().map(|&c| self.full() & !c).collect()
    }

    pub fn closure(&self, m: u64) -> u64 {
        self.closed.iter().filter(|&&c| c & m == m).fold(self.full(), |acc, &c| acc & c)
    }

    pub fn show(&self, m: u64) -> String {
        let v: Vec<&str> = bits(m).filter(|&i| i < self.len()).map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", v.join(", "))
    }

    fn violation(&self) -> Option<String> {
        if !self.is_closed(0) || !self.is_closed(self.full()) {
            return Some("∅ or the whole space is not closed".into());
        }
        for &x in &self.closed {
            for &y in &self.closed {
                if !self.is_closed(x | y) || !self.is_closed(x & y) {
                    return Some(format!("{} and {}", self.show(x), self.show(y)));
                }
            }
        }
        None
    }

    /// Drops one base set and regenerates; used to inject faults.
    pub fn without_base_set(&self, m: u64) -> Result<FiniteTopology> {
        FiniteTopology::from_closed_base(self.labels.clone(), self.base.iter().copied().filter(|&b| b != m))
    }

    /// Smallest nonempty proper base set, ties broken by bitmask.
    pub fn smallest_proper_base_set(&self) -> Option<u64> {
        self.base
            .iter()
            .copied()
            .filter(|&b| b != 0 && b != self.full())
            .min_by_key(|&b| (b.count_ones(), b))
    }
}

fn close_under(set: &mut BTreeSet<u64>, op: impl Fn(u64, u64) -> u64) {
    let mut frontier: Vec<u64> = set.iter().copied().collect();
    while !frontier.is_empty() {
        let snapshot: Vec<u64> = set.iter().copied().collect();
        let mut next = vec![];
        for &x in &frontier {
            for &y in &snapshot {
                let z = op(x, y);
                if set.insert(z) {
                    next.push(z);
                }
            }
        }
        frontier = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuousMap {
    pub domain: FiniteTopology,
    pub codomain: FiniteTopology,
    pub map: Vec<usize>,
}

impl ContinuousMap {
    pub fn preimage(&self, m: u64) -> u64 {
        self.map.iter().enumerate().filter(|(_, &k)| m >> k & 1 == 1).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// A closed set of the codomain whose preimage is not closed.
    pub fn discontinuity(&self) -> Option<u64> {
        self.codomain.closed.iter().copied().find(|&c| !self.domain.is_closed(self.preimage(c)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failure: Option<String>, ok: String) -> Check {
        match failure {
            None => Check { name: name.into(), passed: true, detail: ok },
            Some(d) => Check { name: name.into(), passed: false, detail: d },
        }
    }
}

/// E_λ = {f(a) : λ ∈ f(a)}, returned as the enumerated ultrafilter it equals.
pub fn principal_ultrafilter(lat: &PhiLattice, ultras: &[Ultrafilter], point: usize) -> Result<usize> {
    let v = lat.view();
    if point >= v.points.len() {
        return Err(Error::UnknownPoint(format!("index {point}")));
    }
    let e: BTreeSet<u64> = lat.image().iter().copied().filter(|m| m >> point & 1 == 1).collect();
    ultras
        .iter()
        .position(|u| u.filter.members == e)
        .ok_or_else(|| Error::Refutation(format!("E_{} is not an ultrafilter", v.points[point])))
}

#[derive(Clone, Debug)]
pub struct OmegaSpace {
    pub lattice: PhiLattice,
    pub ultrafilters: Vec<Ultrafilter>,
    pub topology: FiniteTopology,
    /// i(λ) = index of E_λ.
    pub embedding: Vec<usize>,
    pub properties: Vec<Check>,
}

impl OmegaSpace {
    /// f̄(X) = {U : X ∈ U} as a mask over ultrafilters.
    pub fn bar(&self, x: u64) -> u64 {
        self.ultrafilters.iter().enumerate().filter(|(_, u)| u.filter.contains(x)).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// i(X) for X ⊆ Λ.
    pub fn embed_set(&self, x: u64) -> u64 {
        bits(x).fold(0, |acc, l| acc | 1 << self.embedding[l])
    }

    pub fn passed(&self) -> bool {
        self.properties.iter().all(|c| c.passed)
    }
}

/// Points are the ultrafilters, the closed base is {f̄(a)}, and properties
/// (1)–(6) are checked over the whole image.
pub fn omega_space(s: &dyn SemiTransition) -> Result<OmegaSpace> {
    let lattice = PhiLattice::new(s)?;
    let ultrafilters = enumerate_ultrafilters(&lattice)?;
    if ultrafilters.len() > 64 {
        return Err(Error::BoundExceeded { what: "ultrafilters", actual: ultrafilters.len(), bound: 64 });
    }
    let labels: Vec<String> = ultrafilters.iter().map(|u| format!("U{}", lattice.show(u.atom))).collect();
    let npoints = lattice.view().points.len();
    let embedding: Vec<usize> = (0..npoints).map(|l| principal_ultrafilter(&lattice, &ultrafilters, l)).collect::<Result<_>>()?;
    let mut sp = OmegaSpace {
        lattice,
        ultrafilters,
        topology: FiniteTopology { labels: vec![], base: vec![], closed: vec![] },
        embedding,
        properties: vec![],
    };
    let img: Vec<u64> = sp.lattice.image().to_vec();
    let base: Vec<u64> = img.iter().map(|&x| sp.bar(x)).collect();
    sp.topology = FiniteTopology::from_closed_base(labels, base.iter().copied())?;
    let lat = &sp.lattice;
    let full_lambda = lat.view().full_mask();
    let omega = sp.topology.full();

    let mut checks = vec![];
    let distinct: BTreeSet<usize> = sp.embedding.iter().copied().collect();
    checks.push(Check::new(
        "E_λ ultrafilters, injective",
        (distinct.len() != npoints).then(|| "two points share an ultrafilter".to_string()),
        format!("{npoints} points embed into {} ultrafilters", sp.ultrafilters.len()),
    ));
    checks.push(Check::new(
        "(1) f(a) ⊆ f̄(a)",
        img.iter().find(|&&x| sp.embed_set(x) & !sp.bar(x) != 0).map(|&x| format!("fails at {}", lat.show(x))),
        format!("{} image sets", img.len()),
    ));
    checks.push(Check::new(
        "(2) f̄(Λ) = Ω",
        (sp.bar(full_lambda) != omega).then(|| format!("f̄(Λ) = {}", sp.topology.show(sp.bar(full_lambda)))),
        "every ultrafilter contains Λ".into(),
    ));
    let mut meet = omega;
    let mut base_fail = None;
    for &x in &img {
        meet &= sp.bar(x);
        for &y in &img {
            if sp.bar(x) & sp.bar(y) != sp.bar(x & y) {
                base_fail = Some(format!("f̄({}) ∩ f̄({}) ≠ f̄ of the intersection", lat.show(x), lat.show(y)));
            }
        }
    }
    if meet != 0 && base_fail.is_none() {
        base_fail = Some("the base sets have a common point".into());
    }
    checks.push(Check::new("(3) closed base", base_fail, format!("{} base sets", sp.topology.base.len())));
    let whole_lambda = sp.embed_set(full_lambda);
    checks.push(Check::new(
        "(4) f̄(a) ∩ Λ = f(a)",
        img.iter().find(|&&x| sp.bar(x) & whole_lambda != sp.embed_set(x)).map(|&x| format!("fails at {}", lat.show(x))),
        "exhaustive".into(),
    ));
    checks.push(Check::new(
        "(5) f̄(a) = Cl(f(a))",
        img.iter()
            .find(|&&x| sp.topology.closure(sp.embed_set(x)) != sp.bar(x))
            .map(|&x| format!("fails at {}", lat.show(x))),
        "exhaustive".into(),
    ));
    let r = lat.ring();
    let reps: Vec<usize> = img.iter().map(|&x| lat.view().representative(x).expect("image")).collect();
    let mut six = None;
    'outer: for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            if sp.bar(img[i]) | sp.bar(img[j]) != sp.bar(lat.phi(r.mul(a, b))) {
                six = Some(format!("fails at a = {}, b = {}", r.label(a), r.label(b)));
                break 'outer;
            }
        }
    }
    checks.push(Check::new("(6) f̄(a) ∪ f̄(b) = f̄(ab)", six, format!("{} pairs", reps.len() * reps.len())));
    sp.properties = checks;
    Ok(sp)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatedPair {
    pub p: String,
    pub q: String,
    pub c: String,
    pub d: String,
    pub open_p: String,
    pub open_q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactHausdorffReport {
    pub points: usize,
    pub compact: Check,
    pub hausdorff: Check,
    pub separations: Vec<SeparatedPair>,
}

impl CompactHausdorffReport {
    pub fn passed(&self) -> bool {
        self.compact.passed && self.hausdorff.passed
    }
}

/// Compactness by extracting a finite subcover from the full open family;
/// Hausdorff by the recipe: for p ≠ q take f(a) ∈ p, f(b) ∈ q disjoint,
/// c, d with cd = 0 and (a, c) = (b, d) = A, then Ω ∖ f̄(c) and Ω ∖ f̄(d).
/// `topology` may differ from the space's own one.
pub fn compact_hausdorff_check(s: &dyn SemiTransition, sp: &OmegaSpace, topology: &FiniteTopology) -> Result<CompactHausdorffReport> {
    let full = topology.full();
    let opens = topology.opens();
    let mut cover = 0u64;
    let mut sub = vec![];
    for p in 0..topology.len() {
        if cover >> p & 1 == 1 {
            continue;
        }
        match opens.iter().copied().filter(|o| o >> p & 1 == 1).max_by_key(|o| o.count_ones()) {
            Some(o) => {
                cover |= o;
                sub.push(o);
            }
            None => break,
        }
    }
    let compact = Check::new(
        "compact",
        (cover != full).then(|| "the open family does not cover Ω".to_string()),
        format!("finite subcover of {} open sets", sub.len()),
    );

    let lat = &sp.lattice;
    let r = lat.ring();
    let mut separations = vec![];
    let mut failure = None;
    'pairs: for (i, up) in sp.ultrafilters.iter().enumerate() {
        for (j, uq) in sp.ultrafilters.iter().enumerate().skip(i + 1) {
            let (a, b) = (up.atom, uq.atom);
            let name = |k: usize| topology.labels[k].clone();
            let fail = |why: String| format!("{} and {} not separated: {why}", name(i), name(j));
            if a & b != 0 {
                failure = Some(fail("atoms meet".into()));
                break 'pairs;
            }
            let (ea, eb) = (
                Element::Finite(lat.view().representative(a).expect("image")),
                Element::Finite(lat.view().representative(b).expect("image")),
            );
            let Some((c, d)) = s.pm_witness(&ea, &eb)? else {
                failure = Some(fail("no c, d with cd = 0".into()));
                break 'pairs;
            };
            let (ci, di) = (expect_finite(&c)?, expect_finite(&d)?);
            let (fc, fd) = (lat.phi(ci), lat.phi(di));
            if r.mul(ci, di) != r.zero() || a & fc != 0 || b & fd != 0 || fc | fd != lat.view().full_mask() {
                failure = Some(fail(format!("c = {}, d = {} violate the witness conditions", r.label(ci), r.label(di))));
                break 'pairs;
            }
            let (op, oq) = (full & !sp.bar(fc), full & !sp.bar(fd));
            let why = if !topology.is_open(op) {
                Some(format!("Ω ∖ f̄({}) = {} is not open", r.label(ci), topology.show(op)))
            } else if !topology.is_open(oq) {
                Some(format!("Ω ∖ f̄({}) = {} is not open", r.label(di), topology.show(oq)))
            } else if op >> i & 1 == 0 || oq >> j & 1 == 0 || op & oq != 0 {
                Some("open sets do not separate".into())
            } else {
                None
            };
            if let Some(w) = why {
                failure = Some(fail(w));
                break 'pairs;
            }
            separations.push(SeparatedPair {
                p: name(i),
                q: name(j),
                c: r.label(ci),
                d: r.label(di),
                open_p: topology.show(op),
                open_q: topology.show(oq),
            });
        }
    }
    let hausdorff = Check::new("hausdorff", failure, format!("{} pairs separated", separations.len()));
    Ok(CompactHausdorffReport { points: topology.len(), compact, hausdorff, separations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomeomorphismReport {
    pub maximal_ideals: usize,
    pub points: usize,
    /// (maximal ideal, ultrafilter label)
    pub correspondence: Vec<(String, String)>,
    pub failures: Vec<String>,
}

impl HomeomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// M ↦ f[M] is a bijection Max(A) → Ω carrying 𝓜(a) onto f̄(a), and the
/// base families and generated closed families correspond both ways.
pub fn max_omega_homeomorphism(sp: &OmegaSpace) -> Result<HomeomorphismReport> {
    let lat = &sp.lattice;
    let r = lat.ring();
    let maximals = enumerate_maximal_ideals(r)?;
    let mut failures = vec![];
    let mut phi = vec![];
    let mut correspondence = vec![];
    for m in &maximals {
        let f = filter_of_ideal(lat, m)?;
        match sp.ultrafilters.iter().position(|u| u.filter == f) {
            Some(k) => {
                phi.push(k);
                correspondence.push((lat.show_ideal(m), sp.topology.labels[k].clone()));
            }
            None => failures.push(format!("f[{}] is not a point of Ω", lat.show_ideal(m))),
        }
    }
    let distinct: BTreeSet<usize> = phi.iter().copied().collect();
    if failures.is_empty() && (distinct.len() != phi.len() || phi.len() != sp.ultrafilters.len()) {
        failures.push(format!("{} maximal ideals against {} points", maximals.len(), sp.ultrafilters.len()));
    }
    if !failures.is_empty() {
        return Ok(HomeomorphismReport { maximal_ideals: maximals.len(), points: sp.ultrafilters.len(), correspondence, failures });
    }
    let hull = |a: usize| -> u64 { maximals.iter().enumerate().filter(|(_, m)| m.contains(a)).fold(0, |acc, (i, _)| acc | 1 << i) };
    let push = |m: u64| -> u64 { bits(m).fold(0, |acc, i| acc | 1 << phi[i]) };
    for a in r.elements() {
        if push(hull(a)) != sp.bar(lat.phi(a)) {
            failures.push(format!("φ(𝓜({})) ≠ f̄({})", r.label(a), r.label(a)));
        }
    }
    let labels: Vec<String> = maximals.iter().map(|m| lat.show_ideal(m)).collect();
    let max_top = FiniteTopology::from_closed_base(labels, r.elements().map(hull))?;
    let pushed: BTreeSet<u64> = max_top.closed.iter().map(|&c| push(c)).collect();
    let omega_closed: BTreeSet<u64> = sp.topology.closed.iter().copied().collect();
    if pushed != omega_closed {
        failures.push("closed families do not correspond".into());
    }
    Ok(HomeomorphismReport { maximal_ideals: maximals.len(), points: sp.ultrafilters.len(), correspondence, failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub ideal: String,
    pub phi_ideal: bool,
    pub criterion: bool,
    /// (a, b) with b ∈ I, 𝓜(b) ⊆ 𝓜(a), a ∉ I.
    pub witness: Option<(String, String)>,
}

impl CriterionReport {
    pub fn agrees(&self) -> bool {
        self.phi_ideal == self.criterion
    }
}

/// I is a φ-ideal iff 𝓜(b) ⊆ 𝓜(a) and b ∈ I force a ∈ I.
pub fn phi_ideal_criterion_check(lat: &PhiLattice, i: &RingIdeal) -> Result<CriterionReport> {
    let r = lat.ring();
    let maximals = enumerate_maximal_ideals(r)?;
    let hull = |a: usize| -> Vec<bool> { maximals.iter().map(|m| m.contains(a)).collect() };
    let mut witness = None;
    'scan: for b in i.members().iter() {
        let hb = hull(b);
        for a in r.elements() {
            if i.contains(a) {
                continue;
            }
            let ha = hull(a);
            if hb.iter().zip(&ha).all(|(x, y)| !x || *y) {
                witness = Some((r.label(a), r.label(b)));
                break 'scan;
            }
        }
    }
    Ok(CriterionReport {
        ideal: lat.show_ideal(i),
        phi_ideal: is_phi_ideal(lat, i)?,
        criterion: witness.is_none(),
        witness,
    })
}

pub fn phi_ideal_criterion_scan(lat: &PhiLattice) -> Result<Vec<CriterionReport>> {
    let r = lat.ring();
    enumerate_ideals(r)?
        .iter()
        .filter(|i| i.is_proper(r))
        .map(|i| phi_ideal_criterion_check(lat, i))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub bound: usize,
    pub label: String,
    pub ultrafilters: Vec<String>,
    pub minimal_members: Vec<String>,
    pub basis: String,
    pub failures: Vec<String>,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Ultrafilters of the eventually-constant ring, verified on the window
/// 1..n, ★. Every zero set missing ★ is finite, so an ultrafilter either
/// has a finite member, whose minimal members are singletons {k} (giving
/// E_k), or all its members contain ★ (giving E_★).
pub fn classify_ultrafilters_c(n: usize) -> Result<ClassificationReport> {
    let s = truncate_c(n, 2)?;
    let lat = PhiLattice::new(s.as_ref())?;
    let ultras = enumerate_ultrafilters(&lat)?;
    let points = &lat.view().points;
    let mut failures = vec![];
    let mut names = vec![];
    let mut minimal = vec![];
    for u in &ultras {
        match (0..points.len()).find(|&l| principal_ultrafilter(&lat, &ultras, l).ok().map(|k| ultras[k] == *u).unwrap_or(false)) {
            Some(l) => names.push(format!("E_{}", points[l])),
            None => failures.push(format!("ultrafilter above {} is not principal", lat.show(u.atom))),
        }
        if u.atom == 0 {
            failures.push("an ultrafilter has empty least member".into());
        }
        minimal.push(lat.show(u.atom));
    }
    let expected: Vec<String> = points.iter().map(|p| format!("E_{p}")).collect();
    if names != expected {
        failures.push(format!("found {names:?}"));
    }
    let star = n;
    let e_star = principal_ultrafilter(&lat, &ultras, star)?;
    for k in 1..=n {
        let tail = (k - 1..=n).fold(0u64, |acc, i| acc | 1 << i);
        if !ultras[e_star].filter.contains(tail) {
            failures.push(format!("E_★ misses {}", lat.show(tail)));
        }
    }
    // The full ring realizes every singleton {k} and the ★-tails.
    let c = make_seq_structure(NIdeal::FiniteSets, SeqClass::EventuallyConstant);
    for k in 1..=n as u64 {
        let a = Element::Seq(PiecewiseSeq::indicator_off(k));
        let z = c.psi(&a)?;
        let sp = c.lambda();
        if !sp.set_eq(&z, &sp.singleton(&Point::Nat(k))) {
            failures.push(format!("ψ of the indicator off {k} is {}", sp.show(&z)));
        }
    }
    Ok(ClassificationReport {
        bound: n,
        label: format!("verified to bound {n}"),
        ultrafilters: names,
        minimal_members: minimal,
        basis: "zero sets without ★ are finite, so an ultrafilter with such a member is fixed at the point of a minimal singleton member; otherwise every member contains ★".into(),
        failures,
    })
}

/// One instance of the extension theorem: σ on point indices of Λ, φ on
/// element indices of B.
#[derive(Clone, Debug)]
pub struct ExtensionInput {
    pub name: String,
    pub source: Structure,
    pub target: Structure,
    pub sigma: Vec<usize>,
    pub phi: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub name: String,
    pub checks: Vec<Check>,
    pub q_filters: Vec<String>,
    pub extension: Option<ContinuousMap>,
    /// Point pairs of K where no b₁..b₄ were found.
    pub annihilator_search_failures: Vec<String>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()
    }
}

/// Builds σ̄ : Ω_f(Λ) → K from q_p = {g(b) : σ⁻¹(g(b)) ∈ p} and checks every
/// step: φ a homomorphism, f∘φ = σ*∘g, σ continuous, each q_p a prime
/// g-filter with singleton intersection, σ̄∘i = σ, σ̄ continuous.
pub fn extend_map(input: &ExtensionInput) -> Result<ExtensionReport> {
    let sp = omega_space(input.source.as_ref())?;
    let la = &sp.lattice;
    let lb = PhiLattice::new(input.target.as_ref())?;
    let (ra, rb) = (la.ring(), lb.ring());
    let (nl, nk) = (la.view().points.len(), lb.view().points.len());
    if input.sigma.len() != nl || input.sigma.iter().any(|&k| k >= nk) {
        return Err(Error::Precondition("σ must map every point of Λ into K".into()));
    }
    if input.phi.len() != rb.order() || input.phi.iter().any(|&a| a >= ra.order()) {
        return Err(Error::Precondition("φ must map every element of B into A".into()));
    }
    let phi = &input.phi;
    let mut checks = vec![];
    checks.push(Check::new("homomorphism", homomorphism_failure(ra, rb, phi), format!("{}² pairs", rb.order())));

    let sigma_inv = |m: u64| -> u64 { (0..nl).filter(|&l| m >> input.sigma[l] & 1 == 1).fold(0, |acc, l| acc | 1 << l) };
    let square = rb.elements().find(|&b| la.phi(phi[b]) != sigma_inv(lb.phi(b))).map(|b| {
        format!(
            "b = {}: f(φ(b)) = {}, σ⁻¹(g(b)) = {}",
            rb.label(b),
            la.show(la.phi(phi[b])),
            la.show(sigma_inv(lb.phi(b)))
        )
    });
    checks.push(Check::new("commuting square", square, format!("all {} elements of B", rb.order())));

    let lambda_top = FiniteTopology::from_closed_base(la.view().points.clone(), la.image().iter().copied())?;
    let k_top = FiniteTopology::from_closed_base(lb.view().points.clone(), lb.image().iter().copied())?;
    let sigma_map = ContinuousMap { domain: lambda_top, codomain: k_top.clone(), map: input.sigma.clone() };
    checks.push(Check::new(
        "σ continuous",
        sigma_map.discontinuity().map(|c| format!("preimage of {} not closed", k_top.show(c))),
        "exhaustive over closed sets of K".into(),
    ));
    checks.push(Check::new(
        "K compact",
        (k_top.opens().iter().fold(0, |acc, o| acc | o) != k_top.full()).then(|| "no cover".to_string()),
        "finite, covered by its open family".into(),
    ));

    let mut q_filters = vec![];
    let mut filter_fail = None;
    let mut singleton_fail = None;
    let mut sigma_bar = vec![];
    for (pi, p) in sp.ultrafilters.iter().enumerate() {
        let members: BTreeSet<u64> = lb.image().iter().copied().filter(|&y| p.filter.contains(sigma_inv(y))).collect();
        let q = crate::filters::PhiFilter { members };
        q_filters.push(format!("q_{} = {}", sp.topology.labels[pi], lb.show_filter(&q)));
        if filter_fail.is_none() {
            if let Some(v) = lb.filter_violation(&q.members) {
                filter_fail = Some(format!("q_{}: {v}", sp.topology.labels[pi]));
            } else if !prime_filter_check(&lb, &q) {
                filter_fail = Some(format!("q_{} is not prime", sp.topology.labels[pi]));
            }
        }
        let meet = q.members.iter().fold(lb.view().full_mask(), |acc, m| acc & m);
        if meet.count_ones() == 1 {
            sigma_bar.push(meet.trailing_zeros() as usize);
        } else {
            singleton_fail.get_or_insert(format!("⋂ q_{} = {}", sp.topology.labels[pi], lb.show(meet)));
            sigma_bar.push(usize::MAX);
        }
    }
    checks.push(Check::new("q_p prime g-filters", filter_fail, format!("{} points of Ω", sp.ultrafilters.len())));
    let singleton_ok = singleton_fail.is_none();
    checks.push(Check::new("singleton intersections", singleton_fail, "every ⋂ q_p is one point".into()));

    let mut annihilator_search_failures = vec![];
    for k1 in 0..nk {
        for k2 in 0..nk {
            if k1 != k2 && annihilator_witness(input.target.as_ref(), &lb, k1, k2)?.is_none() {
                annihilator_search_failures.push(format!("{}, {}", lb.view().points[k1], lb.view().points[k2]));
            }
        }
    }

    let mut extension = None;
    if singleton_ok {
        let restriction = (0..nl).find(|&l| sigma_bar[sp.embedding[l]] != input.sigma[l]).map(|l| {
            format!("σ̄(E_{}) = {} but σ = {}", la.view().points[l], lb.view().points[sigma_bar[sp.embedding[l]]], lb.view().points[input.sigma[l]])
        });
        checks.push(Check::new("σ̄∘i = σ", restriction, format!("{nl} points")));
        let m = ContinuousMap { domain: sp.topology.clone(), codomain: k_top.clone(), map: sigma_bar };
        checks.push(Check::new(
            "σ̄ continuous",
            m.discontinuity().map(|c| format!("preimage of {} not closed", k_top.show(c))),
            "exhaustive over closed sets of K".into(),
        ));
        extension = Some(m);
    } else {
        checks.push(Check::new("σ̄∘i = σ", Some("σ̄ undefined".into()), String::new()));
        checks.push(Check::new("σ̄ continuous", Some("σ̄ undefined".into()), String::new()));
    }
    Ok(ExtensionReport { name: input.name.clone(), checks, q_filters, extension, annihilator_search_failures })
}

fn homomorphism_failure(ra: &FiniteRing, rb: &FiniteRing, phi: &[usize]) -> Option<String> {
    if phi[rb.one()] != ra.one() {
        return Some(format!("φ(1) = {}", ra.label(phi[rb.one()])));
    }
    for x in rb.elements() {
        for y in rb.elements() {
            if phi[rb.add(x, y)] != ra.add(phi[x], phi[y]) {
                return Some(format!("φ({} + {}) ≠ φ({}) + φ({})", rb.label(x), rb.label(y), rb.label(x), rb.label(y)));
            }
            if phi[rb.mul(x, y)] != ra.mul(phi[x], phi[y]) {
                return Some(format!("φ({}·{}) ≠ φ({})·φ({})", rb.label(x), rb.label(y), rb.label(x), rb.label(y)));
            }
        }
    }
    None
}

/// b₁ containing k₁ but not k₂, b₂ ∋ k₂ disjoint from b₁, and b₃ b₄ = 0
/// with (b₁, b₃) = (b₂, b₄) = B.
fn annihilator_witness(s: &dyn SemiTransition, lb: &PhiLattice, k1: usize, k2: usize) -> Result<Option<[usize; 4]>> {
    let r = lb.ring();
    let (l1, l2) = (Point::Index(k1), Point::Index(k2));
    let Some(b1) = s.separating_witness(&l1, &l2)? else { return Ok(None) };
    let b1i = expect_finite(&b1)?;
    let outside = if lb.phi(b1i) >> k1 & 1 == 1 { k2 } else { k1 };
    let Some(b2) = s.disjoint_witness(&Point::Index(outside), &b1)? else { return Ok(None) };
    let Some((b3, b4)) = s.pm_witness(&b1, &b2)? else { return Ok(None) };
    let [b1, b2, b3, b4] = [&b1, &b2, &b3, &b4].map(|e| expect_finite(e).expect("finite"));
    let ok = r.mul(b3, b4) == r.zero() && lb.phi(b1) & lb.phi(b3) == 0 && lb.phi(b2) & lb.phi(b4) == 0;
    Ok(ok.then_some([b1, b2, b3, b4]))
}

/// The three instances: diagonal into a point, F₂×F₃ → F₂×F₂×F₃ collapsing
/// the two F₂ points, and the identity.
pub fn extension_examples() -> Result<Vec<ExtensionInput>> {
    let f2f2 = FiniteRing::product_of_fields(&[2, 2])?;
    let f2 = FiniteRing::product_of_fields(&[2])?;
    let diag: Vec<usize> = f2.elements().map(|b| f2f2.index_of(&[b as u64, b as u64]).expect("coords")).collect();
    let f2f2f3 = FiniteRing::product_of_fields(&[2, 2, 3])?;
    let f2f3 = FiniteRing::product_of_fields(&[2, 3])?;
    let collapse: Vec<usize> = f2f3
        .elements()
        .map(|b| {
            let c = f2f3.coords(b).expect("coords");
            f2f2f3.index_of(&[c[0], c[0], c[1]]).expect("coords")
        })
        .collect();
    let id: Vec<usize> = f2f3.elements().collect();
    Ok(vec![
        ExtensionInput {
            name: "F2xF2 over F2, constant σ".into(),
            source: make_max_structure(f2f2)?,
            target: make_max_structure(f2)?,
            sigma: vec![0, 0],
            phi: diag,
        },
        ExtensionInput {
            name: "F2xF2xF3 over F2xF3, σ collapsing the F2 points".into(),
            source: make_max_structure(f2f2f3)?,
            target: make_max_structure(f2f3.clone())?,
            sigma: vec![0, 0, 1],
            phi: collapse,
        },
        ExtensionInput {
            name: "identity on F2xF3".into(),
            source: make_max_structure(f2f3.clone())?,
            target: make_max_structure(f2f3)?,
            sigma: vec![0, 1],
            phi: id,
        },
    ])
}

/// Replaces the first entry φ(b) that has another preimage-compatible value
/// (same f-image) by the smallest such value, so that only the homomorphism
/// property breaks.
pub fn corrupt_homomorphism(input: &ExtensionInput) -> Result<(ExtensionInput, String)> {
    let la = PhiLattice::new(input.source.as_ref())?;
    let ra = la.ring();
    for (b, &a) in input.phi.iter().enumerate() {
        if let Some(alt) = ra.elements().find(|&x| x != a && la.phi(x) == la.phi(a)) {
            let mut out = input.clone();
            out.phi[b] = alt;
            out.name = format!("{} with φ(#{b}) = {}", input.name, ra.label(alt));
            return Ok((out, format!("φ(#{b}) changed from {} to {}", ra.label(a), ra.label(alt))));
        }
    }
    Err(Error::Precondition("no entry of φ can be changed without changing f∘φ".into()))
}

/// A continuous candidate agreeing with σ̄ on the image of Λ agrees everywhere.
pub fn extension_unique(report: &ExtensionReport, sp: &OmegaSpace, candidate: &[usize]) -> Option<bool> {
    let m = report.extension.as_ref()?;
    let c = ContinuousMap { domain: m.domain.clone(), codomain: m.codomain.clone(), map: candidate.to_vec() };
    if c.discontinuity().is_some() || sp.embedding.iter().any(|&p| candidate[p] != m.map[p]) {
        return None;
    }
    Some(candidate == m.map.as_slice())
}

/// φ⁻¹ of each ultrafilter, for display.
pub fn ultrafilter_ideals(sp: &OmegaSpace) -> Result<Vec<String>> {
    sp.ultrafilters.iter().map(|u| ideal_of_filter(&sp.lattice, &u.filter).map(|i| sp.lattice.show_ideal(&i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(primes: &[u64]) -> (Structure, OmegaSpace) {
        let s = make_max_structure(FiniteRing::product_of_fields(primes).unwrap()).unwrap();
        let sp = omega_space(s.as_ref()).unwrap();
        (s, sp)
    }

    #[test]
    fn three_point_space_is_discrete() {
        let (_, sp) = space(&[2, 2, 3]);
        assert_eq!(sp.ultrafilters.len(), 3);
        assert_eq!(sp.topology.base.len(), 8);
        assert_eq!(sp.topology.closed.len(), 8);
        assert!(sp.passed(), "{:?}", sp.properties);
    }

    #[test]
    fn truncated_c_and_single_field() {
        let s = truncate_c(3, 2).unwrap();
        assert_eq!(omega_space(s.as_ref()).unwrap().ultrafilters.len(), 4);
        let (_, sp) = space(&[5]);
        assert_eq!(sp.ultrafilters.len(), 1);
    }

    #[test]
    fn hausdorff_fails_without_a_base_set() {
        let (s, sp) = space(&[2, 3]);
        assert!(compact_hausdorff_check(s.as_ref(), &sp, &sp.topology).unwrap().passed());
        let m = sp.topology.smallest_proper_base_set().unwrap();
        let t = sp.topology.without_base_set(m).unwrap();
        let r = compact_hausdorff_check(s.as_ref(), &sp, &t).unwrap();
        assert!(r.compact.passed);
        assert!(!r.hausdorff.passed);
    }

    #[test]
    fn closure_in_a_sierpinski_space() {
        let t = FiniteTopology::from_closed_base(vec!["a".into(), "b".into()], [0b01]).unwrap();
        assert_eq!(t.closed, vec![0, 0b01, 0b11]);
        assert_eq!(t.closure(0b10), 0b11);
        assert!(t.is_open(0b10));
    }
}
