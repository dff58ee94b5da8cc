//! The acceptance battery: one section per criterion, plus the fault
//! injections used by the negative suite.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::{
    adjunction_check, bijection_check, enumerate_ultrafilters, irreducibility_check, nth_root_product_check, PhiLattice,
};
use crate::lambda::Point;
use crate::localization::{embedding_check, localize, pm_transfer_check, unreached_maximal_check, TransferOutcome};
use crate::omega::{
    classify_ultrafilters_c, compact_hausdorff_check, corrupt_homomorphism, extend_map, extension_examples,
    max_omega_homeomorphism, omega_space, phi_ideal_criterion_scan,
};
use crate::poly::{Field, Poly};
use crate::rat::Rat;
use crate::report::{CheckOutcome, Report, Section};
use crate::ring::{enumerate_ideals, enumerate_maximal_ideals, FiniteRing};
use crate::semitransition::{
    make_max_structure, make_poly_structure, make_trivial_structure, product_structure, truncate_c,
    verify_semitransition, verify_transitional, Element, Mode, PmStatus, PsiFault, SemiTransition, SeqClass,
    SeqStructure, Structure,
};
use crate::seq::{IndexSet, NIdeal, PiecewiseSeq};

pub const SUITE_NAME: &str = "paper-suite";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// ψ(x) on F₂[x] forgets the root 0.
    DropRoot,
    /// The closed base of Ω over F₂×F₃ loses its smallest proper set.
    DropBaseSet,
    /// One entry of φ in the second extension example is changed.
    HomEntry,
}

impl Fault {
    pub const ALL: [Fault; 3] = [Fault::DropRoot, Fault::DropBaseSet, Fault::HomEntry];

    pub fn name(&self) -> &'static str {
        match self {
            Fault::DropRoot => "drop-root",
            Fault::DropBaseSet => "drop-base-set",
            Fault::HomEntry => "hom-entry",
        }
    }

    /// The one check of the fault battery this fault must flip.
    pub fn expected_check(&self) -> &'static str {
        match self {
            Fault::DropRoot => "ψ axioms on F2[x]",
            Fault::DropBaseSet => "Hausdorff on Ω(Max(F2xF3))",
            Fault::HomEntry => "extension: homomorphism",
        }
    }
}

impl std::str::FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fault> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Descriptor(format!("unknown fault {s:?} (drop-root, drop-base-set, hom-entry)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub name: String,
    pub seed: u64,
    /// Injected into the one criterion that exercises it.
    pub fault: Option<Fault>,
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { name: SUITE_NAME.into(), seed: 2024, fault: None, timing: false }
    }
}

pub const CRITERIA: [&str; 11] = [
    "1 axiom suite on F2[x] and F3[x]",
    "2 product with a max structure",
    "3 filter duality on F2xF2xF3",
    "4 irreducibility equivalence",
    "5 n-th root product",
    "6 localization of Q[x]",
    "7 pm transfer",
    "8 ideal-convergent sequences",
    "9 ultrafilter space",
    "10 extension theorem",
    "11 fault injection",
];

fn attempt(name: &str, f: impl FnOnce() -> Result<CheckOutcome>) -> CheckOutcome {
    f().unwrap_or_else(|e| CheckOutcome::error(name, e))
}

fn time_check(name: &str, elapsed: Duration, limit: Duration) -> CheckOutcome {
    CheckOutcome::new(name, elapsed < limit, format!("limit {} ms", limit.as_millis()))
}

fn f2_poly() -> Structure {
    make_poly_structure(Field::Fp(2))
}

fn x_over_f2() -> Element {
    Element::Poly(Poly::x(Field::Fp(2)))
}

fn max(primes: &[u64]) -> Result<Structure> {
    make_max_structure(FiniteRing::product_of_fields(primes)?)
}

/// The finite max structures every battery-wide criterion runs over.
pub fn finite_battery() -> Result<Vec<Structure>> {
    let mut out = vec![];
    for primes in [&[2u64][..], &[3], &[2, 2], &[2, 3], &[2, 2, 3], &[3, 5], &[2, 3, 5]] {
        out.push(max(primes)?);
    }
    out.push(truncate_c(3, 2)?);
    out.push(make_max_structure(FiniteRing::integers_mod(6)?)?);
    Ok(out)
}

/// Every product of 1 to 3 prime fields with primes ≤ 5, up to order of
/// factors.
pub fn small_products() -> Vec<Vec<u64>> {
    let ps = [2u64, 3, 5];
    let mut out = vec![];
    for i in 0..3 {
        out.push(vec![ps[i]]);
        for j in i..3 {
            out.push(vec![ps[i], ps[j]]);
            for k in j..3 {
                out.push(vec![ps[i], ps[j], ps[k]]);
            }
        }
    }
    out.sort_by_key(|v| (v.len(), v.clone()));
    out
}

pub fn axiom_check(name: &str, s: &dyn SemiTransition, mode: Mode) -> CheckOutcome {
    attempt(name, || {
        let r = verify_semitransition(s, mode)?;
        let detail = if r.passed() {
            format!("{} pairs, exponents {:?}, no failures", r.pairs_tested, r.exponents)
        } else {
            format!("{} failures in axioms {:?}", r.failure_count, r.failed_axioms())
        };
        Ok(CheckOutcome::new(name, r.passed(), detail).with_trace(&r))
    })
}

fn criterion_1(cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[0]);
    let t = Instant::now();
    let f2 = match cfg.fault {
        Some(Fault::DropRoot) => {
            std::sync::Arc::new(PsiFault::new(f2_poly(), x_over_f2(), Point::Scalar(Rat::zero()))) as Structure
        }
        _ => f2_poly(),
    };
    for (s, p, d, pairs) in [(f2, 2, 3, 256), (make_poly_structure(Field::Fp(3)), 3, 2, 729)] {
        let name = format!("F{p}[x] degree ≤ {d}");
        sec.push(attempt(&name, || {
            let r = verify_semitransition(s.as_ref(), Mode::Exhaustive { bound: d })?;
            let ok = r.passed() && r.pairs_tested == pairs && r.exponents == (1, 1);
            let detail = format!(
                "{} pairs (expected {pairs}), exponents {:?}, {} failures{}",
                r.pairs_tested,
                r.exponents,
                r.failure_count,
                if r.passed() { String::new() } else { format!(" in axioms {:?}", r.failed_axioms()) }
            );
            Ok(CheckOutcome::new(&name, ok, detail).with_trace(&r))
        }));
    }
    sec.push(time_check("time", t.elapsed(), Duration::from_secs(5)));
    sec
}

fn criterion_2(cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[1]);
    let s = max(&[3]).and_then(|m| product_structure(vec![f2_poly(), m], 1));
    match s {
        Ok(s) => {
            sec.push(axiom_check("exhaustive, degree ≤ 3", s.as_ref(), Mode::Exhaustive { bound: 3 }));
            sec.push(axiom_check("sampled", s.as_ref(), Mode::Sample { pairs: 500, seed: cfg.seed }));
        }
        Err(e) => sec.push(CheckOutcome::error("build", e)),
    }
    sec
}

fn criterion_3(_cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[2]);
    let t = Instant::now();
    let run = |sec: &mut Section| -> Result<()> {
        let s = max(&[2, 2, 3])?;
        let lat = PhiLattice::new(s.as_ref())?;
        let r = lat.ring();
        let ideals = enumerate_ideals(r)?;
        sec.push(CheckOutcome::new(
            "ideal count",
            r.order() == 12 && ideals.len() == 8,
            format!("order {}, {} ideals", r.order(), ideals.len()),
        ));
        let adj = adjunction_check(&lat)?;
        sec.push(
            CheckOutcome::new(
                "adjunction",
                adj.passed(),
                format!("{} ideals, {} φ-ideals, {} filters", adj.ideals, adj.phi_ideals, adj.filters),
            )
            .with_trace(&adj),
        );
        let ultras = enumerate_ultrafilters(&lat)?.len();
        let maximals = enumerate_maximal_ideals(r)?.len();
        sec.push(CheckOutcome::new(
            "ultrafilters = maximal ideals",
            ultras == 3 && maximals == 3,
            format!("{ultras} ultrafilters, {maximals} maximal ideals"),
        ));
        let b = bijection_check(&lat)?;
        sec.push(
            CheckOutcome::new("bijection", b.passed(), format!("{}↔{}", b.maximal_ideals, b.ultrafilters)).with_trace(&b),
        );
        Ok(())
    };
    if let Err(e) = run(&mut sec) {
        sec.push(CheckOutcome::error("filters", e));
    }
    sec.push(time_check("time", t.elapsed(), Duration::from_secs(1)));
    sec
}

fn criterion_4(_cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[3]);
    for primes in small_products() {
        let name = format!("{primes:?}");
        sec.push(attempt(&name, || {
            let s = max(&primes)?;
            let r = irreducibility_check(&PhiLattice::new(s.as_ref())?)?;
            Ok(CheckOutcome::new(&name, r.passed(), format!("{} φ-ideals, {} exceptions", r.phi_ideals.len(), r.exceptions.len()))
                .with_trace(&r))
        }));
    }
    sec
}

fn criterion_5(_cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[4]);
    for (primes, n) in [(vec![2u64, 2], 2u32), (vec![3, 3], 3)] {
        let name = format!("{primes:?}, n = {n}");
        sec.push(attempt(&name, || {
            let s = max(&primes)?;
            let r = nth_root_product_check(&PhiLattice::new(s.as_ref())?, n)?;
            Ok(CheckOutcome::new(&name, r.passed(), format!("IJ = I∩J on {} pairs", r.pairs)).with_trace(&r))
        }));
    }
    let name = "[3], n = 2 rejected";
    sec.push(attempt(name, || {
        let s = max(&[3])?;
        let lat = PhiLattice::new(s.as_ref())?;
        let two = lat.ring().label(lat.ring().index_of(&[2]).expect("coordinate"));
        Ok(match nth_root_product_check(&lat, 2) {
            Err(Error::NotNthRootRing { n: 2, element }) => {
                CheckOutcome::new(name, element == two, format!("no square root of {element}"))
            }
            Err(e) => CheckOutcome::error(name, e),
            Ok(_) => CheckOutcome::new(name, false, "precondition scan accepted F3 with n = 2"),
        })
    }));
    sec
}

fn criterion_6(cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[5]);
    match localize(make_poly_structure(Field::Q)) {
        Ok(l) => {
            sec.push(axiom_check("sampled axioms", l.as_ref(), Mode::Sample { pairs: 500, seed: cfg.seed }));
            let e = embedding_check(&l, 500, cfg.seed.wrapping_add(1));
            sec.push(
                CheckOutcome::new("embedding", e.passed(), format!("{} pairs, {} equal", e.pairs, e.equal_pairs)).with_trace(&e),
            );
        }
        Err(e) => sec.push(CheckOutcome::error("localize", e)),
    }
    let name = "unreached maximal ideal over F2";
    sec.push(attempt(name, || {
        let (h, r) = unreached_maximal_check(2)?;
        let ok = h == Poly::from_ints(Field::Fp(2), &[1, 1, 1]) && !r.certificate.is_empty();
        Ok(CheckOutcome::new(name, ok, format!("h = {}", r.h)).with_trace(&r))
    }));
    sec
}

fn criterion_7(cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[6]);
    match finite_battery() {
        Ok(battery) => {
            for s in battery {
                let name = s.name();
                sec.push(attempt(&name, || {
                    let r = pm_transfer_check(&s, 200, cfg.seed)?;
                    let ok = r.passed() && r.outcome == TransferOutcome::Transferred;
                    Ok(CheckOutcome::new(&name, ok, format!("{:?}, {} maximal pairs", r.outcome, r.maximal_pairs)).with_trace(&r))
                }));
            }
        }
        Err(e) => sec.push(CheckOutcome::error("battery", e)),
    }
    let name = "Z with trivial ψ";
    sec.push(attempt(name, || {
        let s = make_trivial_structure(vec!["λ".into()])?;
        let r = pm_transfer_check(&s, 200, cfg.seed)?;
        let ok = r.passed()
            && r.outcome == TransferOutcome::NonNecessity
            && matches!(r.base_pm, PmStatus::Refuted { .. })
            && r.localized_pm.holds()
            && s.nonzero_psi_empty();
        Ok(CheckOutcome::new(name, ok, format!("{:?}: base not pm, localization is a field", r.outcome)).with_trace(&r))
    }));
    sec
}

/// The sequence that is 7 at powers of two and 1 elsewhere.
pub fn sevens_on_powers_of_two() -> PiecewiseSeq {
    PiecewiseSeq::with_block(Rat::one(), &IndexSet::powers_of_two(), Rat::from_int(7))
}

pub fn i_limit_check(x: &PiecewiseSeq) -> CheckOutcome {
    let (f, d) = (x.i_limit(NIdeal::FiniteSets), x.i_limit(NIdeal::DensityZero));
    let show = |l: &Option<Rat>| l.as_ref().map_or("none".to_string(), |r| r.to_string());
    CheckOutcome::new(
        "i_limit",
        f.is_none() && d == Some(Rat::one()),
        format!("I_f limit {}, I_d limit {}", show(&f), show(&d)),
    )
}

/// Each unit verdict is re-multiplied to 1; each non-unit verdict must come
/// with a zero value or a zero limit.
pub fn unit_criterion_check(count: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut units, mut failures) = (0, vec![]);
    for i in 0..count {
        let ideal = if i % 2 == 0 { NIdeal::DensityZero } else { NIdeal::FiniteSets };
        let x = PiecewiseSeq::sample(&mut rng, ideal, false);
        let verdict = x.unit_inverse(ideal).and_then(|inv| Ok((inv, x.non_unit_reason(ideal)?)));
        match verdict {
            Ok((Some(inv), None)) if x.try_mul(&inv).map(|p| p == PiecewiseSeq::one()).unwrap_or(false) => units += 1,
            Ok((None, Some(_)))
                if !x.zero_set().is_empty() || x.i_limit(ideal).is_some_and(|l| l.is_zero()) => {}
            Ok(v) => failures.push(format!("{x} under {}: {v:?}", ideal.name())),
            Err(e) => failures.push(format!("{x}: {e}")),
        }
    }
    CheckOutcome::new(
        "unit criterion",
        failures.is_empty(),
        format!("{count} sequences, {units} units, {} failures", failures.len()),
    )
    .with_trace(&failures)
}

/// x² + y² as the intersection witness, and the comaximal sub-case table.
pub fn seq_witness_check(s: &SeqStructure, pairs: usize, seed: u64) -> CheckOutcome {
    let name = format!("witnesses on {}", s.name());
    attempt(&name, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = vec![];
        let mut subcases = std::collections::BTreeSet::new();
        for _ in 0..pairs {
            let (a, b) = (s.sample(&mut rng), s.sample(&mut rng));
            let w = s.intersection_witness(&a, &b)?;
            let sum = s.add(&s.mul(&a, &a)?, &s.mul(&b, &b)?)?;
            if w.c != sum || w.u != a || w.v != b {
                failures.push(format!("witness for ({a}, {b}) is not a² + b²"));
            }
            if let Some((c, d)) = s.pm_witness(&a, &b)? {
                subcases.insert(s.pm_subcase(&a, &b)?);
                let ok = s.is_zero(&s.mul(&c, &d)?)?
                    && s.comaximal_certificate(&a, &c)?.is_some()
                    && s.comaximal_certificate(&b, &d)?.is_some();
                if !ok {
                    failures.push(format!("pm witness ({c}, {d}) for ({a}, {b}) fails"));
                }
            }
        }
        Ok(CheckOutcome::new(
            &name,
            failures.is_empty(),
            format!("{pairs} pairs, sub-cases seen: {}", subcases.into_iter().collect::<Vec<_>>().join("; ")),
        )
        .with_trace(&failures))
    })
}

fn criterion_8(cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[7]);
    sec.push(i_limit_check(&sevens_on_powers_of_two()));
    sec.push(unit_criterion_check(200, cfg.seed));
    for ideal in [NIdeal::FiniteSets, NIdeal::DensityZero] {
        let s = SeqStructure::new(ideal, SeqClass::Piecewise);
        sec.push(axiom_check(
            &format!("sampled axioms under {}", ideal.name()),
            &s,
            Mode::Sample { pairs: 500, seed: cfg.seed },
        ));
        sec.push(seq_witness_check(&s, 200, cfg.seed));
        let t = verify_transitional(&s, 100, cfg.seed);
        sec.push(CheckOutcome::new(format!("transitional under {}", ideal.name()), t.passed(), t.summary()).with_trace(&t));
    }
    sec
}

pub fn omega_checks(s: &dyn SemiTransition, drop_base_set: bool) -> Vec<CheckOutcome> {
    let n = s.name();
    let run = || -> Result<Vec<CheckOutcome>> {
        let sp = omega_space(s)?;
        let mut out = vec![CheckOutcome::new(
            format!("properties (1)-(6) on Ω({n})"),
            sp.passed(),
            format!("{} ultrafilters", sp.ultrafilters.len()),
        )
        .with_trace(&sp.properties)];
        let topology = if drop_base_set {
            let m = sp
                .topology
                .smallest_proper_base_set()
                .ok_or_else(|| Error::Precondition("no proper base set to drop".into()))?;
            sp.topology.without_base_set(m)?
        } else {
            sp.topology.clone()
        };
        let ch = compact_hausdorff_check(s, &sp, &topology)?;
        out.push(CheckOutcome::new(format!("compact on Ω({n})"), ch.compact.passed, ch.compact.detail.clone()));
        out.push(
            CheckOutcome::new(format!("Hausdorff on Ω({n})"), ch.hausdorff.passed, ch.hausdorff.detail.clone())
                .with_trace(&ch.separations),
        );
        let h = max_omega_homeomorphism(&sp)?;
        out.push(
            CheckOutcome::new(format!("Max ≅ Ω({n})"), h.passed(), format!("{} maximal ideals", h.maximal_ideals)).with_trace(&h),
        );
        let crit = phi_ideal_criterion_scan(&sp.lattice)?;
        let bad: Vec<_> = crit.iter().filter(|c| !c.agrees()).collect();
        out.push(
            CheckOutcome::new(format!("φ-ideal criterion on {n}"), bad.is_empty(), format!("{} ideals", crit.len()))
                .with_trace(&bad),
        );
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![CheckOutcome::error(format!("Ω({n})"), e)])
}

fn criterion_9(cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[8]);
    match finite_battery() {
        Ok(battery) => {
            for s in battery {
                let faulty = cfg.fault == Some(Fault::DropBaseSet) && s.name() == "Max(F2xF3)";
                for c in omega_checks(s.as_ref(), faulty) {
                    sec.push(c);
                }
            }
        }
        Err(e) => sec.push(CheckOutcome::error("battery", e)),
    }
    let name = "ultrafilters of C at bound 10";
    sec.push(attempt(name, || {
        let r = classify_ultrafilters_c(10)?;
        let mut expected: Vec<String> = (1..=10).map(|k| format!("E_{k}")).collect();
        expected.push("E_★".into());
        Ok(CheckOutcome::new(name, r.passed() && r.ultrafilters == expected, format!("{} ({})", r.ultrafilters.join(", "), r.label))
            .with_trace(&r))
    }));
    sec
}

pub fn extension_checks(fault: bool) -> Result<Vec<(String, Vec<CheckOutcome>, Duration)>> {
    let mut out = vec![];
    for (i, mut ex) in extension_examples()?.into_iter().enumerate() {
        if fault && i == 1 {
            ex = corrupt_homomorphism(&ex)?.0;
        }
        let t = Instant::now();
        let r = extend_map(&ex)?;
        let elapsed = t.elapsed();
        let mut checks: Vec<CheckOutcome> =
            r.checks.iter().map(|c| CheckOutcome::new(format!("extension: {}", c.name), c.passed, c.detail.clone())).collect();
        checks.push(
            CheckOutcome::new(
                "extension: annihilator search",
                r.annihilator_search_failures.is_empty(),
                format!("{} pairs without b1..b4", r.annihilator_search_failures.len()),
            )
            .with_trace(&r.annihilator_search_failures),
        );
        out.push((r.name, checks, elapsed));
    }
    Ok(out)
}

fn criterion_10(cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[9]);
    match extension_checks(cfg.fault == Some(Fault::HomEntry)) {
        Ok(examples) => {
            for (name, checks, elapsed) in examples {
                let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                let detail = if failed.is_empty() {
                    format!("{} checks", checks.len())
                } else {
                    format!("failed: {}", failed.join(", "))
                };
                sec.push(CheckOutcome::new(&name, failed.is_empty(), detail).with_trace(&checks));
                sec.push(time_check(&format!("time for {name}"), elapsed, Duration::from_secs(1)));
            }
        }
        Err(e) => sec.push(CheckOutcome::error("extension examples", e)),
    }
    sec
}

/// The checks every fault is measured against. A clean run passes all of
/// them; each fault must flip exactly its expected check.
pub fn fault_battery(fault: Option<Fault>) -> Vec<CheckOutcome> {
    let mut out = vec![];
    let poly = match fault {
        Some(Fault::DropRoot) => {
            std::sync::Arc::new(PsiFault::new(f2_poly(), x_over_f2(), Point::Scalar(Rat::zero()))) as Structure
        }
        _ => f2_poly(),
    };
    out.push(axiom_check("ψ axioms on F2[x]", poly.as_ref(), Mode::Exhaustive { bound: 2 }));
    match max(&[2, 3]) {
        Ok(s) => out.extend(omega_checks(s.as_ref(), fault == Some(Fault::DropBaseSet))),
        Err(e) => out.push(CheckOutcome::error("Ω(F2xF3)", e)),
    }
    match extension_checks(fault == Some(Fault::HomEntry)) {
        Ok(ex) => out.extend(ex.into_iter().nth(1).map(|(_, c, _)| c).unwrap_or_default()),
        Err(e) => out.push(CheckOutcome::error("extension", e)),
    }
    out
}

fn criterion_11(_cfg: &SuiteConfig) -> Section {
    let mut sec = Section::new(CRITERIA[10]);
    let clean = fault_battery(None);
    let clean_failed: Vec<&str> = clean.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    sec.push(CheckOutcome::new(
        "clean run",
        clean_failed.is_empty(),
        format!("{} checks, failing: {clean_failed:?}", clean.len()),
    ));
    for fault in Fault::ALL {
        let run = fault_battery(Some(fault));
        let flipped: Vec<&CheckOutcome> =
            run.iter().zip(&clean).filter(|(r, c)| r.passed != c.passed || r.name != c.name).map(|(r, _)| r).collect();
        let names: Vec<&str> = flipped.iter().map(|c| c.name.as_str()).collect();
        let ok = run.len() == clean.len() && names == [fault.expected_check()] && !flipped[0].detail.is_empty();
        let witness = flipped.first().map(|c| c.detail.clone()).unwrap_or_default();
        sec.push(
            CheckOutcome::new(fault.name(), ok, format!("flipped {names:?}: {witness}"))
                .with_trace(&flipped.iter().map(|c| (&c.name, &c.trace)).collect::<Vec<_>>()),
        );
    }
    sec
}

pub fn run_criterion(i: usize, cfg: &SuiteConfig) -> Section {
    let t = Instant::now();
    let mut sec = match i {
        1 => criterion_1(cfg),
        2 => criterion_2(cfg),
        3 => criterion_3(cfg),
        4 => criterion_4(cfg),
        5 => criterion_5(cfg),
        6 => criterion_6(cfg),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        9 => criterion_9(cfg),
        10 => criterion_10(cfg),
        11 => criterion_11(cfg),
        _ => panic!("criteria are numbered 1 to {}", CRITERIA.len()),
    };
    if cfg.timing {
        sec.elapsed_ms = Some(t.elapsed().as_millis() as u64);
    }
    sec
}

pub fn suite(cfg: &SuiteConfig) -> Result<Report> {
    if cfg.name != SUITE_NAME {
        return Err(Error::Precondition(format!("unknown suite {:?}; the only suite is {SUITE_NAME}", cfg.name)));
    }
    let t = Instant::now();
    let mut report = Report::new("suite", cfg, cfg.seed);
    for i in 1..=CRITERIA.len() {
        report.push(run_criterion(i, cfg));
    }
    if cfg.timing {
        report.wall_time_ms = Some(t.elapsed().as_millis() as u64);
    }
    Ok(report)
}
