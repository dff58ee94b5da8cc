//! The triple (A, Λ, ψ): ring elements, the semi-transition map, and the
//! per-instance witness strategies the axiom verifiers consume.

mod element;
mod fault;
mod max;
mod polys;
mod product;
mod seqs;
mod trivial;
mod verify;

use std::fmt;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::{LambdaSpace, LambdaSubset, Point};
use crate::ring::FiniteRing;

pub use element::{Element, Fraction};
pub use fault::PsiFault;
pub use max::{make_max_structure, truncate_c, MaxStructure};
pub use polys::{make_poly_structure, PolyStructure};
pub use product::{product_structure, product_transitional, ProductStructure};
pub use seqs::{make_seq_structure, eventually_constant_c, SeqClass, SeqStructure};
pub use trivial::{make_trivial_structure, TrivialStructure};
pub use verify::{
    verify_semitransition, verify_transitional, AxiomFailure, AxiomReport, Mode, SeparationRecord,
    TransitionalReport, DisjointRecord, PmRecord, Verdict, TRANSITIONAL_READING,
};

/// Largest exponent a bounded principality search will try.
pub const MAX_EXPONENT: u32 = 4;

pub type Structure = Arc<dyn SemiTransition>;

/// A certified member of the ideal (a, b): `c = u·a + v·b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Combination {
    pub c: Element,
    pub u: Element,
    pub v: Element,
}

/// A generator z of (aᵐ, bⁿ) with both inclusions certified:
/// `z = α·aᵐ + β·bⁿ`, `aᵐ = ka·z`, `bⁿ = kb·z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrincipalWitness {
    pub z: Element,
    pub alpha: Element,
    pub beta: Element,
    pub ka: Element,
    pub kb: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PmStatus {
    /// Every prime ideal lies in a unique maximal ideal, confirmed by scan.
    Verified { how: String },
    /// Taken from a known argument and only spot-checked.
    Assumed { basis: String },
    /// A prime ideal inside two maximal ideals.
    Refuted { witness: String },
}

impl PmStatus {
    pub fn holds(&self) -> bool {
        !matches!(self, PmStatus::Refuted { .. })
    }
}

/// The ring elements, ψ, and witnesses, all exact. Ring operations return
/// `Result` only to report ill-typed elements.
pub trait SemiTransition: Send + Sync {
    fn name(&self) -> String;

    fn lambda(&self) -> &LambdaSpace;

    /// Whether `a` is an element of this ring.
    fn accepts(&self, a: &Element) -> bool;

    fn zero(&self) -> Element;
    fn one(&self) -> Element;
    fn add(&self, a: &Element, b: &Element) -> Result<Element>;
    fn mul(&self, a: &Element, b: &Element) -> Result<Element>;
    fn neg(&self, a: &Element) -> Result<Element>;

    fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.add(a, &self.neg(b)?)
    }

    fn pow(&self, a: &Element, k: u32) -> Result<Element> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    fn equal(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(a == b)
    }

    fn is_zero(&self, a: &Element) -> Result<bool> {
        self.equal(a, &self.zero())
    }

    fn psi(&self, a: &Element) -> Result<LambdaSubset>;

    /// The exponent pair (m, n) used for the principality clause.
    fn exponents(&self) -> (u32, u32);

    /// Whether ψ(a)∩ψ(b) = ∅ makes (aᵐ, bᵐ) principal for this m.
    fn certifies_exponent(&self, m: u32) -> bool {
        (1..=MAX_EXPONENT).contains(&m)
    }

    /// c ∈ (a, b) with ψ(c) = ψ(a)∩ψ(b).
    fn intersection_witness(&self, a: &Element, b: &Element) -> Result<Combination>;

    /// Generator of (aᵐ, bⁿ), required when ψ(a)∩ψ(b) = ∅.
    fn principal_witness(&self, a: &Element, b: &Element, m: u32, n: u32) -> Result<PrincipalWitness>;

    /// x, y with a·x + b·y = 1, when a and b are comaximal.
    fn comaximal_certificate(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>>;

    fn pm_status(&self) -> PmStatus;

    /// For comaximal a, b: c, d with cd = 0 and (a, c) = (b, d) = A.
    fn pm_witness(&self, a: &Element, b: &Element) -> Result<Option<(Element, Element)>>;

    /// a with ψ(a) containing exactly one of the two points.
    fn separating_witness(&self, l1: &Point, l2: &Point) -> Result<Option<Element>>;

    /// For λ ∉ ψ(a): b with λ ∈ ψ(b) and ψ(a)∩ψ(b) = ∅.
    fn disjoint_witness(&self, l: &Point, a: &Element) -> Result<Option<Element>>;

    /// Some u with ψ(u) = ∅ and x·u = 0, if one exists.
    fn s_cancel(&self, x: &Element) -> Result<Option<Element>>;

    /// Every element under the bound, when the ring admits exhaustive runs.
    fn elements(&self, bound: u32) -> Option<Vec<Element>>;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Element;

    fn show(&self, a: &Element) -> String {
        a.to_string()
    }

    /// Tables and ψ bitmasks, for finite rings whose Λ fits in 64 points.
    fn finite_view(&self) -> Option<&FiniteView> {
        None
    }

    fn is_domain(&self) -> bool {
        false
    }

    /// Whether ψ(a) = ∅ for every nonzero a, so that S = A ∖ {0}.
    fn nonzero_psi_empty(&self) -> bool {
        false
    }
}

impl fmt::Debug for dyn SemiTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SemiTransition({})", self.name())
    }
}

/// A finite ring with ψ tabulated as bitmasks over at most 64 points.
#[derive(Clone, Debug)]
pub struct FiniteView {
    pub ring: FiniteRing,
    pub points: Vec<String>,
    pub psi: Vec<u64>,
}

impl FiniteView {
    pub fn full_mask(&self) -> u64 {
        mask_of(self.points.len())
    }

    /// Distinct values of ψ, ascending.
    pub fn image(&self) -> Vec<u64> {
        let mut v = self.psi.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The lowest-index element with the given ψ value.
    pub fn representative(&self, mask: u64) -> Option<usize> {
        self.psi.iter().position(|&m| m == mask)
    }

    pub fn show_mask(&self, mask: u64) -> String {
        if mask == 0 {
            return "∅".into();
        }
        let v: Vec<&str> = (0..self.points.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.points[i].as_str())
            .collect();
        format!("{{{}}}", v.join(", "))
    }
}

pub(crate) fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn expect_finite(a: &Element) -> Result<usize> {
    match a {
        Element::Finite(i) => Ok(*i),
        other => Err(Error::ElementKind { expected: "finite", got: other.kind().into() }),
    }
}
