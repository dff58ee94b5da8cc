use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Element, PmStatus, SemiTransition};
use crate::error::{Error, Result};
use crate::lambda::Point;

/// How condition (ii) of the transitional definition is read.
pub const TRANSITIONAL_READING: &str =
    "disjoint-witness condition read universally: every (λ, a) with λ ∉ ψ(a) must admit b with λ ∈ ψ(b) and ψ(a)∩ψ(b) = ∅";

/// Exhaustive runs with more elements than this are refused.
const MAX_EXHAUSTIVE_ELEMENTS: usize = 4096;

/// Failures kept verbatim in a report; the rest are only counted.
const MAX_LISTED_FAILURES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    /// Every ordered pair of elements under the size/degree bound.
    Exhaustive { bound: u32 },
    /// Seeded random pairs.
    Sample { pairs: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomFailure {
    /// "i", "ii", "iii" or "iii-principal".
    pub axiom: String,
    pub a: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    pub reason: String,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub structure: String,
    pub lambda: String,
    pub mode: Mode,
    pub elements_tested: usize,
    pub pairs_tested: usize,
    pub principal_checks: usize,
    pub exponents: (u32, u32),
    pub failure_count: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Axiom labels that failed at least once, in order.
    pub fn failed_axioms(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.failures.iter().map(|f| f.axiom.as_str()).collect();
        set.into_iter().map(String::from).collect()
    }
}

fn fail(axiom: &str, s: &dyn SemiTransition, a: &Element, b: Option<&Element>, reason: String, trace: Vec<String>) -> AxiomFailure {
    AxiomFailure { axiom: axiom.into(), a: s.show(a), b: b.map(|b| s.show(b)), reason, trace }
}

fn check_element(s: &dyn SemiTransition, a: &Element) -> Option<AxiomFailure> {
    let run = || -> Result<Option<String>> {
        let p = s.psi(a)?;
        let z = s.is_zero(a)?;
        Ok((p.is_all() != z).then(|| {
            if z {
                format!("ψ(0) = {} ≠ Λ", s.lambda().show(&p))
            } else {
                "ψ(a) = Λ for a nonzero a".to_string()
            }
        }))
    };
    match run() {
        Ok(None) => None,
        Ok(Some(reason)) => Some(fail("ii", s, a, None, reason, vec![])),
        Err(e) => Some(fail("ii", s, a, None, format!("evaluation error: {e}"), vec![])),
    }
}

fn check_pair(s: &dyn SemiTransition, a: &Element, b: &Element, (m, n): (u32, u32), principal: &mut usize) -> Vec<AxiomFailure> {
    let sp = s.lambda();
    let mut out = vec![];
    let show = |x: &crate::lambda::LambdaSubset| sp.show(x);
    let (pa, pb) = match (s.psi(a), s.psi(b)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => {
            out.push(fail("i", s, a, Some(b), format!("ψ undefined: {e}"), vec![]));
            return out;
        }
    };
    match s.mul(a, b).and_then(|ab| s.psi(&ab)) {
        Ok(pab) => {
            let u = sp.union(&pa, &pb);
            if !sp.set_eq(&pab, &u) {
                out.push(fail(
                    "i",
                    s,
                    a,
                    Some(b),
                    "ψ(ab) ≠ ψ(a) ∪ ψ(b)".into(),
                    vec![format!("ψ(a) = {}", show(&pa)), format!("ψ(b) = {}", show(&pb)), format!("ψ(ab) = {}", show(&pab))],
                ));
            }
        }
        Err(e) => out.push(fail("i", s, a, Some(b), format!("product not computable: {e}"), vec![])),
    }
    let meet = sp.intersection(&pa, &pb);
    let iii = || -> Result<Option<(String, Vec<String>)>> {
        let w = s.intersection_witness(a, b)?;
        let mut trace = vec![
            format!("c = {}", s.show(&w.c)),
            format!("u = {}", s.show(&w.u)),
            format!("v = {}", s.show(&w.v)),
        ];
        let comb = s.add(&s.mul(&w.u, a)?, &s.mul(&w.v, b)?)?;
        if !s.equal(&comb, &w.c)? {
            return Ok(Some((format!("u·a + v·b = {} ≠ c", s.show(&comb)), trace)));
        }
        let pc = s.psi(&w.c)?;
        trace.push(format!("ψ(a)∩ψ(b) = {}", show(&meet)));
        trace.push(format!("ψ(c) = {}", show(&pc)));
        if !sp.set_eq(&pc, &meet) {
            return Ok(Some(("ψ(c) ≠ ψ(a)∩ψ(b)".into(), trace)));
        }
        let psum = s.psi(&s.add(a, b)?)?;
        if !sp.is_subset(&pc, &psum) {
            trace.push(format!("ψ(a+b) = {}", show(&psum)));
            return Ok(Some(("ψ(c) ⊄ ψ(a+b)".into(), trace)));
        }
        Ok(None)
    };
    match iii() {
        Ok(None) => {}
        Ok(Some((reason, trace))) => out.push(fail("iii", s, a, Some(b), reason, trace)),
        Err(e) => out.push(fail("iii", s, a, Some(b), format!("no certified witness: {e}"), vec![])),
    }
    if meet.is_empty() {
        *principal += 1;
        let pr = || -> Result<Option<(String, Vec<String>)>> {
            let w = s.principal_witness(a, b, m, n)?;
            let (am, bn) = (s.pow(a, m)?, s.pow(b, n)?);
            let trace = vec![
                format!("(m, n) = ({m}, {n})"),
                format!("z = {}", s.show(&w.z)),
                format!("α = {}, β = {}", s.show(&w.alpha), s.show(&w.beta)),
                format!("ka = {}, kb = {}", s.show(&w.ka), s.show(&w.kb)),
            ];
            let z = s.add(&s.mul(&w.alpha, &am)?, &s.mul(&w.beta, &bn)?)?;
            if !s.equal(&z, &w.z)? {
                return Ok(Some(("α·aᵐ + β·bⁿ ≠ z".into(), trace)));
            }
            if !s.equal(&s.mul(&w.ka, &w.z)?, &am)? {
                return Ok(Some(("ka·z ≠ aᵐ".into(), trace)));
            }
            if !s.equal(&s.mul(&w.kb, &w.z)?, &bn)? {
                return Ok(Some(("kb·z ≠ bⁿ".into(), trace)));
            }
            Ok(None)
        };
        match pr() {
            Ok(None) => {}
            Ok(Some((reason, trace))) => out.push(fail("iii-principal", s, a, Some(b), reason, trace)),
            Err(e) => out.push(fail("iii-principal", s, a, Some(b), format!("no principal generator: {e}"), vec![])),
        }
    }
    out
}

/// Runs conditions (i)–(iii) over the pairs chosen by `mode`. Missing or
/// invalid witnesses are recorded as failures; the error case is reserved
/// for modes the structure cannot support.
pub fn verify_semitransition(s: &dyn SemiTransition, mode: Mode) -> Result<AxiomReport> {
    let (elements, pairs): (Vec<Element>, Vec<(Element, Element)>) = match &mode {
        Mode::Exhaustive { bound } => {
            let els = s
                .elements(*bound)
                .ok_or_else(|| Error::Precondition(format!("{} has no exhaustive element list", s.name())))?;
            if els.len() > MAX_EXHAUSTIVE_ELEMENTS {
                return Err(Error::BoundExceeded { what: "exhaustive elements", actual: els.len(), bound: MAX_EXHAUSTIVE_ELEMENTS });
            }
            let pairs = els.iter().flat_map(|a| els.iter().map(move |b| (a.clone(), b.clone()))).collect();
            (els, pairs)
        }
        Mode::Sample { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let pairs: Vec<(Element, Element)> = (0..*pairs).map(|_| (s.sample(&mut rng), s.sample(&mut rng))).collect();
            let mut seen = BTreeSet::new();
            let els = pairs
                .iter()
                .flat_map(|(a, b)| [a.clone(), b.clone()])
                .filter(|e| seen.insert(serde_json::to_string(e).expect("serializable")))
                .collect();
            (els, pairs)
        }
    };
    let exps = s.exponents();
    let mut failures: Vec<AxiomFailure> = vec![];
    let one = s.one();
    match s.psi(&one) {
        Ok(p) if p.is_empty() => {}
        Ok(p) => failures.push(fail("ii", s, &one, None, format!("ψ(1) = {} ≠ ∅", s.lambda().show(&p)), vec![])),
        Err(e) => failures.push(fail("ii", s, &one, None, format!("evaluation error: {e}"), vec![])),
    }
    failures.extend(check_element(s, &s.zero()));
    failures.extend(elements.par_iter().filter_map(|a| check_element(s, a)).collect::<Vec<_>>());
    let per_pair: Vec<(usize, Vec<AxiomFailure>)> = pairs
        .par_iter()
        .map(|(a, b)| {
            let mut principal = 0;
            let f = check_pair(s, a, b, exps, &mut principal);
            (principal, f)
        })
        .collect();
    let principal_checks = per_pair.iter().map(|(p, _)| p).sum();
    failures.extend(per_pair.into_iter().flat_map(|(_, f)| f));
    let failure_count = failures.len();
    failures.truncate(MAX_LISTED_FAILURES);
    Ok(AxiomReport {
        structure: s.name(),
        lambda: s.lambda().describe(),
        mode,
        elements_tested: elements.len(),
        pairs_tested: pairs.len(),
        principal_checks,
        exponents: exps,
        failure_count,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationRecord {
    pub l1: String,
    pub l2: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointRecord {
    pub point: String,
    pub a: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmRecord {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionalReport {
    pub structure: String,
    pub reading: String,
    pub pm: PmStatus,
    pub separations: Vec<SeparationRecord>,
    pub disjoint: Vec<DisjointRecord>,
    pub pm_witnesses: Vec<PmRecord>,
    pub inconclusive: Vec<String>,
    pub failures: Vec<String>,
    pub verdict: Verdict,
}

impl TransitionalReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn summary(&self) -> String {
        match self.verdict {
            Verdict::Pass => "transitional checks passed".into(),
            Verdict::Fail => match (&self.pm, self.failures.first()) {
                (PmStatus::Refuted { witness }, _) => format!("not a pm-ring: {witness}"),
                (_, Some(f)) => f.clone(),
                _ => "failed".into(),
            },
            Verdict::Inconclusive => format!("inconclusive: {}", self.inconclusive.first().cloned().unwrap_or_default()),
        }
    }
}

/// Separation and disjoint-witness checks (all point pairs when Λ is
/// finite, else `samples` draws), plus the pm witnesses c, d with cd = 0
/// on comaximal pairs.
pub fn verify_transitional(s: &dyn SemiTransition, samples: usize, seed: u64) -> TransitionalReport {
    let sp = s.lambda();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = vec![];
    let mut inconclusive = vec![];

    let point_pairs: Vec<(Point, Point)> = match sp.finite_points() {
        Some(pts) if pts.len() <= 64 => pts
            .iter()
            .flat_map(|a| pts.iter().filter(move |b| *b != a).map(move |b| (a.clone(), b.clone())))
            .collect(),
        _ => (0..samples)
            .filter_map(|_| {
                let (a, b) = (sp.sample_point(&mut rng), sp.sample_point(&mut rng));
                (a != b).then_some((a, b))
            })
            .collect(),
    };
    let mut separations = vec![];
    for (l1, l2) in &point_pairs {
        let (n1, n2) = (sp.label(l1), sp.label(l2));
        let w = match s.separating_witness(l1, l2) {
            Ok(w) => w,
            Err(e) => {
                failures.push(format!("separating {n1}, {n2}: {e}"));
                None
            }
        };
        match &w {
            Some(a) => match s.psi(a) {
                Ok(p) if sp.contains(&p, l1) != sp.contains(&p, l2) => {}
                Ok(p) => failures.push(format!("ψ({}) = {} does not separate {n1}, {n2}", s.show(a), sp.show(&p))),
                Err(e) => failures.push(format!("ψ({}) undefined: {e}", s.show(a))),
            },
            None => inconclusive.push(format!("no element separates {n1} and {n2}")),
        }
        separations.push(SeparationRecord { l1: n1, l2: n2, witness: w.map(|a| s.show(&a)) });
    }

    let small: Option<Vec<Element>> = s.elements(2).filter(|v| v.len() <= 64);
    let elements: Vec<Element> = small.clone().unwrap_or_else(|| (0..samples).map(|_| s.sample(&mut rng)).collect());
    let mut disjoint = vec![];
    for a in &elements {
        let Ok(pa) = s.psi(a) else {
            failures.push(format!("ψ({}) undefined", s.show(a)));
            continue;
        };
        let points: Vec<Point> = match sp.finite_points() {
            Some(pts) => pts.into_iter().filter(|l| !sp.contains(&pa, l)).collect(),
            None => (0..8).map(|_| sp.sample_point(&mut rng)).filter(|l| !sp.contains(&pa, l)).take(2).collect(),
        };
        for l in points {
            let w = match s.disjoint_witness(&l, a) {
                Ok(w) => w,
                Err(e) => {
                    failures.push(format!("disjoint witness for {} and {}: {e}", sp.label(&l), s.show(a)));
                    None
                }
            };
            match &w {
                Some(b) => match s.psi(b) {
                    Ok(pb) if sp.contains(&pb, &l) && sp.intersection(&pa, &pb).is_empty() => {}
                    Ok(pb) => failures.push(format!(
                        "ψ({}) = {} is not a disjoint witness for {} against ψ({}) = {}",
                        s.show(b),
                        sp.show(&pb),
                        sp.label(&l),
                        s.show(a),
                        sp.show(&pa)
                    )),
                    Err(e) => failures.push(format!("ψ({}) undefined: {e}", s.show(b))),
                },
                None => inconclusive.push(format!("no disjoint witness for {} against {}", sp.label(&l), s.show(a))),
            }
            disjoint.push(DisjointRecord { point: sp.label(&l), a: s.show(a), witness: w.map(|b| s.show(&b)) });
        }
    }

    let pairs: Vec<(Element, Element)> = match small {
        Some(els) => els.iter().flat_map(|a| els.iter().map(move |b| (a.clone(), b.clone()))).collect(),
        None => (0..samples).map(|_| (s.sample(&mut rng), s.sample(&mut rng))).collect(),
    };
    let checked: Vec<(Option<PmRecord>, Vec<String>, Vec<String>)> = pairs
        .par_iter()
        .map(|(a, b)| {
            let (mut f, mut inc) = (vec![], vec![]);
            let rec = pm_pair(s, a, b, &mut f, &mut inc);
            (rec, f, inc)
        })
        .collect();
    let mut pm_witnesses = vec![];
    for (rec, f, inc) in checked {
        pm_witnesses.extend(rec);
        failures.extend(f);
        inconclusive.extend(inc);
    }

    let pm = s.pm_status();
    let verdict = if !pm.holds() || !failures.is_empty() {
        Verdict::Fail
    } else if !inconclusive.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    TransitionalReport {
        structure: s.name(),
        reading: TRANSITIONAL_READING.into(),
        pm,
        separations,
        disjoint,
        pm_witnesses,
        inconclusive,
        failures,
        verdict,
    }
}

fn pm_pair(s: &dyn SemiTransition, a: &Element, b: &Element, failures: &mut Vec<String>, inconclusive: &mut Vec<String>) -> Option<PmRecord> {
    let mut run = || -> Result<Option<PmRecord>> {
        if s.comaximal_certificate(a, b)?.is_none() {
            return Ok(None);
        }
        let Some((c, d)) = s.pm_witness(a, b)? else {
            inconclusive.push(format!("no c, d with cd = 0 for comaximal {}, {}", s.show(a), s.show(b)));
            return Ok(None);
        };
        if !s.is_zero(&s.mul(&c, &d)?)? {
            failures.push(format!("cd ≠ 0 for c = {}, d = {}", s.show(&c), s.show(&d)));
        }
        for (x, y) in [(a, &c), (b, &d)] {
            match s.comaximal_certificate(x, y)? {
                Some((p, q)) => {
                    let one = s.add(&s.mul(x, &p)?, &s.mul(y, &q)?)?;
                    if !s.equal(&one, &s.one())? {
                        failures.push(format!("comaximality certificate for {}, {} does not sum to 1", s.show(x), s.show(y)));
                    }
                }
                None => failures.push(format!("({}, {}) is not the whole ring", s.show(x), s.show(y))),
            }
        }
        Ok(Some(PmRecord { a: s.show(a), b: s.show(b), c: s.show(&c), d: s.show(&d) }))
    };
    match run() {
        Ok(r) => r,
        Err(e) => {
            failures.push(format!("pm witness for {}, {}: {e}", s.show(a), s.show(b)));
            None
        }
    }
}
