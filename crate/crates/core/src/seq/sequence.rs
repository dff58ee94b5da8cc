//! Piecewise-constant rational sequences over a finite partition of ℕ, and
//! the two decidable ideals of ℕ used for I-convergence.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::indexset::IndexSet;
use crate::error::{Error, Result};
use crate::rat::Rat;

/// Default cap on the number of blocks produced by ring operations.
pub const DEFAULT_BLOCK_BOUND: usize = 64;

/// A nontrivial admissible ideal of subsets of ℕ with decidable membership
/// on [`IndexSet`]s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NIdeal {
    /// I_f: the finite sets.
    FiniteSets,
    /// I_d: the sets of natural density zero.
    DensityZero,
}

impl NIdeal {
    pub fn is_small(&self, s: &IndexSet) -> bool {
        match self {
            NIdeal::FiniteSets => s.is_finite(),
            NIdeal::DensityZero => s.residues().is_empty(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NIdeal::FiniteSets => "I_f",
            NIdeal::DensityZero => "I_d",
        }
    }
}

impl FromStr for NIdeal {
    type Err = Error;

    fn from_str(s: &str) -> Result<NIdeal> {
        match s {
            "finite" | "finite_sets" | "I_f" => Ok(NIdeal::FiniteSets),
            "density_zero" | "density" | "I_d" => Ok(NIdeal::DensityZero),
            _ => Err(Error::Descriptor(format!("unknown ideal of N: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub set: IndexSet,
    pub value: Rat,
}

/// A sequence constant on each block of a finite partition of ℕ. Blocks are
/// nonempty, carry distinct values, and are sorted by value.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeq")]
pub struct PiecewiseSeq {
    blocks: Vec<Block>,
}

#[derive(Deserialize)]
struct RawSeq {
    blocks: Vec<Block>,
}

impl TryFrom<RawSeq> for PiecewiseSeq {
    type Error = Error;

    fn try_from(raw: RawSeq) -> Result<PiecewiseSeq> {
        PiecewiseSeq::from_blocks(raw.blocks.into_iter().map(|b| (b.set, b.value)).collect())
    }
}

impl PiecewiseSeq {
    /// Validates that the sets partition ℕ, then merges equal values.
    pub fn from_blocks(blocks: Vec<(IndexSet, Rat)>) -> Result<PiecewiseSeq> {
        let mut union = IndexSet::empty();
        for (i, (s, _)) in blocks.iter().enumerate() {
            if !union.is_disjoint(s) {
                return Err(Error::NotAPartition(format!(
                    "block {i} overlaps an earlier block at {}",
                    union.intersection(s).first_member().unwrap_or(0)
                )));
            }
            union = union.union(s);
        }
        if let Some(n) = union.first_non_member() {
            return Err(Error::NotAPartition(format!("index {n} is not covered")));
        }
        Ok(PiecewiseSeq::normalized(blocks))
    }

    fn normalized(blocks: Vec<(IndexSet, Rat)>) -> PiecewiseSeq {
        let mut by_value: BTreeMap<Rat, IndexSet> = BTreeMap::new();
        for (s, v) in blocks {
            if s.is_empty() {
                continue;
            }
            let merged = match by_value.remove(&v) {
                Some(t) => t.union(&s),
                None => s,
            };
            by_value.insert(v, merged);
        }
        PiecewiseSeq {
            blocks: by_value
                .into_iter()
                .map(|(value, set)| Block { set, value })
                .collect(),
        }
    }

    pub fn constant(v: Rat) -> PiecewiseSeq {
        PiecewiseSeq {
            blocks: vec![Block {
                set: IndexSet::all(),
                value: v,
            }],
        }
    }

    pub fn zero() -> PiecewiseSeq {
        PiecewiseSeq::constant(Rat::zero())
    }

    pub fn one() -> PiecewiseSeq {
        PiecewiseSeq::constant(Rat::one())
    }

    /// `value` on `set`, `default` elsewhere.
    pub fn with_block(default: Rat, set: &IndexSet, value: Rat) -> PiecewiseSeq {
        PiecewiseSeq::normalized(vec![(set.complement(), default), (set.clone(), value)])
    }

    /// Replaces the values at finitely many indices.
    pub fn with_overrides(&self, overrides: &[(u64, Rat)]) -> PiecewiseSeq {
        let mut out = self.clone();
        for (n, v) in overrides {
            out = out.assign(&IndexSet::singleton(*n), v.clone());
        }
        out
    }

    /// Sets the value on `set` to `v`, keeping everything else.
    pub fn assign(&self, set: &IndexSet, v: Rat) -> PiecewiseSeq {
        let mut blocks: Vec<(IndexSet, Rat)> = self
            .blocks
            .iter()
            .map(|b| (b.set.difference(set), b.value.clone()))
            .collect();
        blocks.push((set.clone(), v));
        PiecewiseSeq::normalized(blocks)
    }

    /// 0 at `n`, 1 elsewhere.
    pub fn indicator_off(n: u64) -> PiecewiseSeq {
        PiecewiseSeq::one().with_overrides(&[(n, Rat::zero())])
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn value_at(&self, n: u64) -> Rat {
        self.blocks
            .iter()
            .find(|b| b.set.contains(n))
            .map(|b| b.value.clone())
            .expect("blocks cover N")
    }

    pub fn set_of_value(&self, v: &Rat) -> IndexSet {
        self.blocks
            .iter()
            .find(|b| &b.value == v)
            .map(|b| b.set.clone())
            .unwrap_or_else(IndexSet::empty)
    }

    pub fn zero_set(&self) -> IndexSet {
        self.set_of_value(&Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        *self == PiecewiseSeq::zero()
    }

    pub fn is_eventually_constant(&self) -> bool {
        self.blocks.iter().all(|b| b.set.is_finite() || b.set.is_cofinite())
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> PiecewiseSeq {
        PiecewiseSeq::normalized(
            self.blocks
                .iter()
                .map(|b| (b.set.clone(), f(&b.value)))
                .collect(),
        )
    }

    fn combine(
        &self,
        other: &PiecewiseSeq,
        f: impl Fn(&Rat, &Rat) -> Rat,
        bound: usize,
    ) -> Result<PiecewiseSeq> {
        let mut blocks = vec![];
        for a in &self.blocks {
            for b in &other.blocks {
                let s = a.set.intersection(&b.set);
                if !s.is_empty() {
                    blocks.push((s, f(&a.value, &b.value)));
                }
            }
        }
        let out = PiecewiseSeq::normalized(blocks);
        if out.blocks.len() > bound {
            return Err(Error::BlockBound(out.blocks.len(), bound));
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &PiecewiseSeq) -> Result<PiecewiseSeq> {
        self.combine(other, |a, b| a + b, DEFAULT_BLOCK_BOUND)
    }

    pub fn try_mul(&self, other: &PiecewiseSeq) -> Result<PiecewiseSeq> {
        self.combine(other, |a, b| a * b, DEFAULT_BLOCK_BOUND)
    }

    pub fn neg(&self) -> PiecewiseSeq {
        self.map(|v| -v)
    }

    pub fn scale(&self, c: &Rat) -> PiecewiseSeq {
        self.map(|v| v * c)
    }

    pub fn pow(&self, k: u32) -> PiecewiseSeq {
        self.map(|v| v.pow(k))
    }

    /// The value `v` whose exception set is small, if any. Nontriviality of
    /// the ideal makes it unique.
    pub fn i_limit(&self, ideal: NIdeal) -> Option<Rat> {
        let mut hits = self
            .blocks
            .iter()
            .filter(|b| ideal.is_small(&b.set.complement()));
        let first = hits.next().map(|b| b.value.clone());
        assert!(hits.next().is_none(), "two I-limits under a nontrivial ideal");
        first
    }

    pub fn is_i_convergent(&self, ideal: NIdeal) -> bool {
        self.i_limit(ideal).is_some()
    }

    fn limit_or_err(&self, ideal: NIdeal) -> Result<Rat> {
        self.i_limit(ideal).ok_or_else(|| Error::NoILimit(ideal.name().into()))
    }

    /// `Some(inverse)` iff the sequence is a unit of A_I; the inverse is
    /// certified by re-multiplication.
    pub fn unit_inverse(&self, ideal: NIdeal) -> Result<Option<PiecewiseSeq>> {
        let lim = self.limit_or_err(ideal)?;
        if lim.is_zero() || self.blocks.iter().any(|b| b.value.is_zero()) {
            return Ok(None);
        }
        let inv = self.map(|v| v.recip().expect("nonzero"));
        assert!(&inv * self == PiecewiseSeq::one(), "blockwise reciprocal is an inverse");
        Ok(Some(inv))
    }

    pub fn is_unit(&self, ideal: NIdeal) -> Result<bool> {
        Ok(self.unit_inverse(ideal)?.is_some())
    }

    /// Why a sequence is not a unit: the first zero index, or a zero limit.
    pub fn non_unit_reason(&self, ideal: NIdeal) -> Result<Option<String>> {
        let lim = self.limit_or_err(ideal)?;
        if let Some(n) = self.zero_set().first_member() {
            return Ok(Some(format!("x_{n} = 0")));
        }
        if lim.is_zero() {
            return Ok(Some(format!("{}-limit is 0", ideal.name())));
        }
        Ok(None)
    }

    /// Zero set, and whether the limit point is adjoined (limit zero).
    pub fn f_map(&self, ideal: NIdeal) -> Result<(IndexSet, bool)> {
        let lim = self.limit_or_err(ideal)?;
        Ok((self.zero_set(), lim.is_zero()))
    }

    /// Random member of A_I: a main value on a large set with small carve-outs
    /// (finite sets, and for I_d also sparse sets of powers of two).
    pub fn sample(rng: &mut ChaCha8Rng, ideal: NIdeal, eventually_constant: bool) -> PiecewiseSeq {
        const VALUES: [(i64, i64); 8] = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1), (3, 2), (5, 1)];
        let pick = |rng: &mut ChaCha8Rng| {
            let (n, d) = VALUES[rng.gen_range(0..VALUES.len())];
            Rat::new(n, d)
        };
        let main = if rng.gen_bool(0.3) { Rat::zero() } else { pick(rng) };
        let mut x = PiecewiseSeq::constant(main);
        if !eventually_constant && rng.gen_bool(0.3) {
            // a residue pattern on which the main value persists keeps the limit
            let m = rng.gen_range(2..=4);
            let r = rng.gen_range(0..m);
            let set = IndexSet::residue_class(m, r).intersection(&IndexSet::finite(1..=12));
            x = x.assign(&set, pick(rng));
        }
        for _ in 0..rng.gen_range(0..=3) {
            let set = if ideal == NIdeal::DensityZero && !eventually_constant && rng.gen_bool(0.3) {
                let m = rng.gen_range(1..=3);
                IndexSet::powers_of_two().intersection(&IndexSet::residue_class(m, rng.gen_range(0..m)))
            } else {
                IndexSet::finite((0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=12)))
            };
            x = x.assign(&set, pick(rng));
        }
        x
    }
}

macro_rules! seq_op {
    ($tr:ident, $method:ident, $try:ident) => {
        impl std::ops::$tr<&PiecewiseSeq> for &PiecewiseSeq {
            type Output = PiecewiseSeq;
            fn $method(self, rhs: &PiecewiseSeq) -> PiecewiseSeq {
                self.$try(rhs).expect("sequence block bound")
            }
        }
    };
}

seq_op!(Add, add, try_add);
seq_op!(Mul, mul, try_mul);

impl std::ops::Sub<&PiecewiseSeq> for &PiecewiseSeq {
    type Output = PiecewiseSeq;
    fn sub(self, rhs: &PiecewiseSeq) -> PiecewiseSeq {
        self + &rhs.neg()
    }
}

impl fmt::Display for PiecewiseSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [b] = self.blocks.as_slice() {
            return write!(f, "const {}", b.value);
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{} on {}", b.value, b.set))
            .collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

impl fmt::Debug for PiecewiseSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seven_on_powers() -> PiecewiseSeq {
        PiecewiseSeq::with_block(Rat::one(), &IndexSet::powers_of_two(), Rat::from_int(7))
    }

    #[test]
    fn partition_is_checked() {
        let evens = IndexSet::residue_class(2, 0);
        let odds = IndexSet::residue_class(2, 1);
        assert!(PiecewiseSeq::from_blocks(vec![(evens.clone(), Rat::one())]).is_err());
        assert!(PiecewiseSeq::from_blocks(vec![
            (evens.clone(), Rat::one()),
            (IndexSet::all(), Rat::zero())
        ])
        .is_err());
        let s = PiecewiseSeq::from_blocks(vec![(evens, Rat::one()), (odds, Rat::one())]).unwrap();
        assert_eq!(s, PiecewiseSeq::one());
    }

    #[test]
    fn blockwise_product() {
        let evens = IndexSet::residue_class(2, 0);
        let x = PiecewiseSeq::with_block(Rat::from_int(2), &evens, Rat::one());
        let y = PiecewiseSeq::with_block(Rat::one(), &evens, Rat::zero());
        let z = &x * &y;
        assert_eq!(z, PiecewiseSeq::with_block(Rat::from_int(2), &evens, Rat::zero()));
        assert_eq!(&x * &PiecewiseSeq::one(), x);
        assert_eq!(&x + &PiecewiseSeq::zero(), x);
    }

    #[test]
    fn limits_separate_the_ideals() {
        let x = seven_on_powers();
        assert_eq!(x.i_limit(NIdeal::DensityZero), Some(Rat::one()));
        assert_eq!(x.i_limit(NIdeal::FiniteSets), None);
        assert_eq!(PiecewiseSeq::constant(Rat::from_int(5)).i_limit(NIdeal::FiniteSets), Some(Rat::from_int(5)));
        let alternating = PiecewiseSeq::with_block(Rat::one(), &IndexSet::residue_class(2, 0), Rat::zero());
        assert_eq!(alternating.i_limit(NIdeal::DensityZero), None);
        assert!(alternating.f_map(NIdeal::DensityZero).is_err());
    }

    #[test]
    fn unit_criterion() {
        let two = PiecewiseSeq::constant(Rat::from_int(2));
        assert_eq!(two.unit_inverse(NIdeal::FiniteSets).unwrap(), Some(PiecewiseSeq::constant(Rat::new(1, 2))));
        let off1 = PiecewiseSeq::indicator_off(1);
        assert!(!off1.is_unit(NIdeal::FiniteSets).unwrap());
        assert_eq!(off1.non_unit_reason(NIdeal::FiniteSets).unwrap().unwrap(), "x_1 = 0");
        assert!(seven_on_powers().is_unit(NIdeal::DensityZero).unwrap());
        assert!(seven_on_powers().is_unit(NIdeal::FiniteSets).is_err());
    }

    #[test]
    fn zero_set_map() {
        assert_eq!(PiecewiseSeq::one().f_map(NIdeal::FiniteSets).unwrap(), (IndexSet::empty(), false));
        let x = PiecewiseSeq::constant(Rat::from_int(5)).with_overrides(&[(3, Rat::zero())]);
        assert_eq!(x.f_map(NIdeal::FiniteSets).unwrap(), (IndexSet::singleton(3), false));
        let tail_zero = PiecewiseSeq::zero().with_overrides(&[(1, Rat::one())]);
        assert_eq!(tail_zero.f_map(NIdeal::FiniteSets).unwrap(), (IndexSet::cofinite([1]), true));
    }

    #[test]
    fn json_format() {
        let j = r#"{"blocks":[{"set":{"mod":2,"res":[0],"plus":[],"minus":[],"sparse":[]},"value":"1/2"},
                              {"set":{"mod":2,"res":[1]},"value":3}]}"#;
        let s: PiecewiseSeq = serde_json::from_str(j).unwrap();
        assert_eq!(s.value_at(4), Rat::new(1, 2));
        assert_eq!(s.value_at(5), Rat::from_int(3));
        let back: PiecewiseSeq = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
