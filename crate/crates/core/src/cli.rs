//! The `transring` command-line front end.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::descriptor::{parse_json, parse_structure, StructureDescriptor};
use crate::error::{Error, Result};
use crate::filters::{
    adjunction_check, bijection_check, irreducibility_check, nth_root_product_check, prime_duality_check, PhiLattice,
    FILTER_READING,
};
use crate::localization::{embedding_check, localize, pm_transfer_check, unreached_maximal_check};
use crate::omega::{extend_map, ExtensionInput};
use crate::poly::Field;
use crate::report::{CheckOutcome, Report, Section};
use crate::semitransition::{verify_transitional, Mode, SeqClass, SeqStructure, TRANSITIONAL_READING};
use crate::seq::{NIdeal, PiecewiseSeq};
use crate::suite::{
    axiom_check, i_limit_check, omega_checks, seq_witness_check, sevens_on_powers_of_two, suite, unit_criterion_check,
    Fault, SuiteConfig, SUITE_NAME,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "transring", version, about = "Check semi-transition maps, φ-filters and Ω on computable rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// Write the JSON report here; the text rendering goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Record wall times (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealArg {
    Finite,
    Density,
}

impl From<IdealArg> for NIdeal {
    fn from(i: IdealArg) -> NIdeal {
        match i {
            IdealArg::Finite => NIdeal::FiniteSets,
            IdealArg::Density => NIdeal::DensityZero,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassArg {
    Piecewise,
    EventuallyConstant,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Check the semi-transition axioms, and optionally the transitional ones.
    Verify {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        /// Degree bound for exhaustive runs over F_p[x].
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// Pair count for sampled runs.
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        pairs: u64,
        /// Also check separation, disjoint witnesses and pm witnesses.
        #[arg(long)]
        transitional: bool,
    },
    /// φ-filter / φ-ideal checks on a finite structure.
    Filters {
        #[arg(long)]
        structure: PathBuf,
        /// all, adjunction, bijection, irreducibility, duality or nth-root:N
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// Localize at S = {a : ψ(a) = ∅} and check the result.
    Localize {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        pairs: u64,
    },
    /// The ring of I-convergent sequences.
    Seq {
        #[arg(long, value_enum, default_value = "density")]
        ideal: IdealArg,
        #[arg(long, value_enum, default_value = "piecewise")]
        class: ClassArg,
        /// A sequence to inspect (JSON blocks); defaults to 7 on powers of two, 1 elsewhere.
        #[arg(long)]
        sequence: Option<PathBuf>,
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        pairs: u64,
        /// Sequences for the unit criterion.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        units: u64,
    },
    /// The ultrafilter space Ω, and optionally the extension of σ.
    Omega {
        #[arg(long)]
        structure: PathBuf,
        /// σ (point indices), φ (element indices of B) and B's descriptor.
        #[arg(long, num_args = 3, value_names = ["SIGMA", "PHI", "TARGET"])]
        extend: Option<Vec<PathBuf>>,
    },
    /// Run the acceptance battery.
    Suite {
        #[arg(default_value = SUITE_NAME)]
        name: String,
        /// Corrupt one input to watch exactly one section fail.
        #[arg(long, value_parser = parse_fault)]
        fault: Option<Fault>,
    },
}

fn parse_fault(s: &str) -> std::result::Result<Fault, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Serialize)]
struct Config<'a> {
    #[serde(flatten)]
    command: &'a Command,
    seed: u64,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Descriptor(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<StructureDescriptor> {
    parse_structure(&read(path)?).map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Error::Parse { line, column, message: format!("{}: {message}", path.display()) }
        }
        other => other,
    })
}

fn section(name: &str, checks: Vec<CheckOutcome>) -> Section {
    let mut s = Section::new(name);
    for c in checks {
        s.push(c);
    }
    s
}

pub fn verify_sections(
    desc: &StructureDescriptor,
    mode: ModeArg,
    bound: u32,
    pairs: u64,
    transitional: bool,
    seed: u64,
) -> Result<Vec<Section>> {
    let s = desc.build()?;
    let mode = match mode {
        ModeArg::Exhaustive => Mode::Exhaustive { bound },
        ModeArg::Sample => Mode::Sample { pairs: pairs as usize, seed },
    };
    if matches!(mode, Mode::Exhaustive { .. }) && s.elements(bound).is_none() {
        return Err(Error::Precondition(format!("{} has no exhaustive enumeration; use --mode sample", s.name())));
    }
    let mut out = vec![section("semi-transition axioms", vec![axiom_check(&s.name(), s.as_ref(), mode)])];
    if transitional {
        let t = verify_transitional(s.as_ref(), pairs as usize, seed);
        let c = CheckOutcome::new(format!("{} ({TRANSITIONAL_READING})", s.name()), t.passed(), t.summary()).with_trace(&t);
        out.push(section("transitional", vec![c]));
    }
    Ok(out)
}

pub fn filter_sections(desc: &StructureDescriptor, check: &str) -> Result<Vec<Section>> {
    let s = desc.build()?;
    let lat = PhiLattice::new(s.as_ref())?;
    let nth = match check.strip_prefix("nth-root:") {
        Some(n) => Some(n.parse::<u32>().map_err(|_| Error::Descriptor(format!("bad root degree in {check:?}")))?),
        None => None,
    };
    let want = |c: &str| check == "all" || check == c;
    if nth.is_none() && !["all", "adjunction", "bijection", "irreducibility", "duality"].contains(&check) {
        return Err(Error::Descriptor(format!("unknown check {check:?}")));
    }
    let mut checks = vec![CheckOutcome::new("reading", true, FILTER_READING)];
    if want("adjunction") {
        let r = adjunction_check(&lat)?;
        checks.push(
            CheckOutcome::new("adjunction", r.passed(), format!("{} ideals, {} φ-ideals, {} filters", r.ideals, r.phi_ideals, r.filters))
                .with_trace(&r),
        );
    }
    if want("bijection") {
        let r = bijection_check(&lat)?;
        checks.push(CheckOutcome::new("bijection", r.passed(), format!("{}↔{}", r.maximal_ideals, r.ultrafilters)).with_trace(&r));
    }
    if want("irreducibility") {
        let r = irreducibility_check(&lat)?;
        checks.push(
            CheckOutcome::new("irreducibility", r.passed(), format!("{} φ-ideals, {} exceptions", r.phi_ideals.len(), r.exceptions.len()))
                .with_trace(&r),
        );
    }
    if want("duality") {
        let r = prime_duality_check(&lat)?;
        checks.push(
            CheckOutcome::new("prime duality", r.passed(), format!("{} prime φ-ideals, {} prime filters", r.prime_phi_ideals, r.prime_filters))
                .with_trace(&r),
        );
    }
    if let Some(n) = nth {
        let c = match nth_root_product_check(&lat, n) {
            Ok(r) => CheckOutcome::new(format!("nth-root:{n}"), r.passed(), format!("IJ = I∩J on {} pairs", r.pairs)).with_trace(&r),
            Err(e @ Error::NotNthRootRing { .. }) => CheckOutcome::new(format!("nth-root:{n}"), false, e.to_string()),
            Err(e) => return Err(e),
        };
        checks.push(c);
    }
    Ok(vec![section(&format!("filters on {}", s.name()), checks)])
}

pub fn localize_sections(desc: &StructureDescriptor, pairs: u64, seed: u64) -> Result<Vec<Section>> {
    let base = desc.build()?;
    let loc = localize(base.clone())?;
    let mut checks = vec![axiom_check("sampled axioms", loc.as_ref(), Mode::Sample { pairs: pairs as usize, seed })];
    let e = embedding_check(&loc, pairs as usize, seed.wrapping_add(1));
    checks.push(CheckOutcome::new("embedding", e.passed(), format!("{} pairs, {} equal", e.pairs, e.equal_pairs)).with_trace(&e));
    let t = pm_transfer_check(&base, pairs as usize, seed)?;
    checks.push(CheckOutcome::new("pm transfer", t.passed(), format!("{:?}", t.outcome)).with_trace(&t));
    if let StructureDescriptor::Poly { field: Field::Fp(p) } = *desc {
        let (_, u) = unreached_maximal_check(p)?;
        checks.push(CheckOutcome::new("unreached maximal ideal", true, format!("h = {}", u.h)).with_trace(&u));
    }
    Ok(vec![section(&format!("localization of {}", base.name()), checks)])
}

pub fn seq_sections(
    ideal: NIdeal,
    class: SeqClass,
    sequence: Option<&PiecewiseSeq>,
    pairs: u64,
    units: u64,
    seed: u64,
) -> Result<Vec<Section>> {
    let mut checks = vec![];
    match sequence {
        None => checks.push(i_limit_check(&sevens_on_powers_of_two())),
        Some(x) => {
            let show = |i: NIdeal| x.i_limit(i).map_or("none".to_string(), |r| r.to_string());
            let mut detail = format!("I_f limit {}, I_d limit {}", show(NIdeal::FiniteSets), show(NIdeal::DensityZero));
            if x.is_i_convergent(ideal) {
                let (z, star) = x.f_map(ideal)?;
                match x.non_unit_reason(ideal)? {
                    Some(why) => detail += &format!("; not a unit ({why})"),
                    None => detail += "; a unit",
                }
                detail += &format!("; f = {z:?}{}", if star { " ∪ {★}" } else { "" });
            }
            checks.push(CheckOutcome::new("sequence", true, detail));
        }
    }
    checks.push(unit_criterion_check(units as usize, seed));
    let s = SeqStructure::new(ideal, class);
    checks.push(axiom_check("sampled axioms", &s, Mode::Sample { pairs: pairs as usize, seed }));
    checks.push(seq_witness_check(&s, pairs as usize, seed));
    let t = verify_transitional(&s, pairs.min(200) as usize, seed);
    checks.push(CheckOutcome::new("transitional", t.passed(), t.summary()).with_trace(&t));
    Ok(vec![section(&crate::semitransition::SemiTransition::name(&s), checks)])
}

/// σ on point indices, φ on element indices of B, and B.
pub struct Extension {
    pub sigma: Vec<usize>,
    pub phi: Vec<usize>,
    pub target: StructureDescriptor,
}

pub fn omega_sections(desc: &StructureDescriptor, extend: Option<&Extension>) -> Result<Vec<Section>> {
    let s = desc.build()?;
    let mut out = vec![section(&format!("Ω({})", s.name()), omega_checks(s.as_ref(), false))];
    if let Some(ext) = extend {
        let target = ext.target.build()?;
        let input = ExtensionInput {
            name: format!("{} over {}", s.name(), target.name()),
            source: s.clone(),
            target,
            sigma: ext.sigma.clone(),
            phi: ext.phi.clone(),
        };
        let r = extend_map(&input)?;
        let mut checks: Vec<CheckOutcome> = r.checks.iter().map(|c| CheckOutcome::new(&c.name, c.passed, &c.detail)).collect();
        checks.push(
            CheckOutcome::new(
                "annihilator search",
                r.annihilator_search_failures.is_empty(),
                format!("{} pairs without b1..b4", r.annihilator_search_failures.len()),
            )
            .with_trace(&r),
        );
        out.push(section("extension", checks));
    }
    Ok(out)
}

/// Dispatches one command. Errors are input problems: unreadable or
/// malformed files, invalid descriptors, unsatisfied preconditions.
pub fn run(cli: &Cli) -> Result<Report> {
    let t = Instant::now();
    let seed = cli.common.seed;
    let config = Config { command: &cli.command, seed };
    let (name, sections) = match &cli.command {
        Command::Verify { structure, mode, bound, pairs, transitional } => {
            ("verify", verify_sections(&load(structure)?, *mode, *bound, *pairs, *transitional, seed)?)
        }
        Command::Filters { structure, check } => ("filters", filter_sections(&load(structure)?, check)?),
        Command::Localize { structure, pairs } => ("localize", localize_sections(&load(structure)?, *pairs, seed)?),
        Command::Seq { ideal, class, sequence, pairs, units } => {
            let class = match class {
                ClassArg::Piecewise => SeqClass::Piecewise,
                ClassArg::EventuallyConstant => SeqClass::EventuallyConstant,
            };
            let x: Option<PiecewiseSeq> = match sequence {
                Some(path) => Some(parse_json(&read(path)?)?),
                None => None,
            };
            ("seq", seq_sections((*ideal).into(), class, x.as_ref(), *pairs, *units, seed)?)
        }
        Command::Omega { structure, extend } => {
            let ext = match extend.as_deref() {
                Some([sigma, phi, target]) => Some(Extension {
                    sigma: parse_json(&read(sigma)?)?,
                    phi: parse_json(&read(phi)?)?,
                    target: load(target)?,
                }),
                _ => None,
            };
            ("omega", omega_sections(&load(structure)?, ext.as_ref())?)
        }
        Command::Suite { name, fault } => {
            let cfg = SuiteConfig { name: name.clone(), seed, fault: *fault, timing: cli.common.timing };
            return suite(&cfg);
        }
    };
    let mut report = Report::new(name, &config, seed);
    for s in sections {
        report.push(s);
    }
    if cli.common.timing {
        report.wall_time_ms = Some(t.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("TRANSRING_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Descriptor(format!("TRANSRING_THREADS must be a positive integer, got {v:?}")))?;
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Parses arguments, runs, prints the text report and returns the exit code.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let outcome = std::panic::catch_unwind(|| run(&cli));
    let report = match outcome {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
        Err(_) => {
            eprintln!("internal error");
            return EXIT_INTERNAL;
        }
    };
    print!("{}", report.to_text());
    if let Some(path) = &cli.common.out {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INTERNAL;
        }
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
