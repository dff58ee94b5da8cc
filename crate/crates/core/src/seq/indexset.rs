//! Decidable subsets of ℕ = {1, 2, ...}: a periodic residue pattern,
//! XOR-toggled on a periodic family of powers of two, with finite
//! corrections.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Largest accepted correction point.
pub const MAX_CORRECTION: u64 = 1 << 40;
/// Largest modulus produced by the algebra.
pub const MAX_MODULUS: u64 = 1 << 20;

/// A membership query. Powers of two beyond `u64` are addressed by exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    Num(u64),
    Pow2(u32),
}

impl Query {
    fn normalize(self) -> Query {
        match self {
            Query::Pow2(k) if k < 63 => Query::Num(1 << k),
            q => q,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawIndexSet", into = "RawIndexSet")]
pub struct IndexSet {
    modulus: u64,
    residues: BTreeSet<u64>,
    exp_mod: u64,
    exp_res: BTreeSet<u64>,
    plus: BTreeSet<u64>,
    minus: BTreeSet<u64>,
}

fn pow_mod(mut base: u64, mut k: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while k > 0 {
        if k & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        k >>= 1;
    }
    acc
}

fn order_of_two(odd: u64) -> u64 {
    if odd == 1 {
        return 1;
    }
    let mut x = 2 % odd;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % odd;
        k += 1;
    }
    k
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let high: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&d| d * d != n).collect();
    out.extend(high);
    out
}

fn bitlen(n: u64) -> u32 {
    64 - n.leading_zeros()
}

impl IndexSet {
    fn raw(
        modulus: u64,
        residues: BTreeSet<u64>,
        exp_mod: u64,
        exp_res: BTreeSet<u64>,
        plus: BTreeSet<u64>,
        minus: BTreeSet<u64>,
    ) -> IndexSet {
        IndexSet {
            modulus,
            residues,
            exp_mod,
            exp_res,
            plus,
            minus,
        }
    }

    /// Builds a set from arbitrary parts and brings it into normal form.
    pub fn from_parts(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        exp_mod: u64,
        exp_res: impl IntoIterator<Item = u64>,
        plus: impl IntoIterator<Item = u64>,
        minus: impl IntoIterator<Item = u64>,
    ) -> Result<IndexSet> {
        let bad = |m: String| Err(Error::Descriptor(m));
        if modulus == 0 || modulus > MAX_MODULUS {
            return bad(format!("modulus {modulus} outside 1..={MAX_MODULUS}"));
        }
        if exp_mod == 0 || exp_mod > MAX_MODULUS {
            return bad(format!("exponent modulus {exp_mod} outside 1..={MAX_MODULUS}"));
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        let exp_res: BTreeSet<u64> = exp_res.into_iter().collect();
        let plus: BTreeSet<u64> = plus.into_iter().collect();
        let minus: BTreeSet<u64> = minus.into_iter().collect();
        if let Some(r) = residues.iter().find(|&&r| r >= modulus) {
            return bad(format!("residue {r} not below modulus {modulus}"));
        }
        if let Some(r) = exp_res.iter().find(|&&r| r >= exp_mod) {
            return bad(format!("exponent residue {r} not below {exp_mod}"));
        }
        if let Some(n) = plus.iter().chain(&minus).find(|&&n| n == 0 || n > MAX_CORRECTION) {
            return bad(format!("correction point {n} outside 1..={MAX_CORRECTION}"));
        }
        if let Some(n) = plus.intersection(&minus).next() {
            return bad(format!("{n} is both added and removed"));
        }
        let s = IndexSet::raw(modulus, residues, exp_mod, exp_res, plus, minus);
        Ok(IndexSet::canonical(&[&s], |bits| bits[0]))
    }

    pub fn empty() -> IndexSet {
        IndexSet::raw(1, BTreeSet::new(), 1, BTreeSet::new(), BTreeSet::new(), BTreeSet::new())
    }

    pub fn all() -> IndexSet {
        IndexSet::raw(1, [0].into(), 1, BTreeSet::new(), BTreeSet::new(), BTreeSet::new())
    }

    pub fn finite(points: impl IntoIterator<Item = u64>) -> IndexSet {
        let mut s = IndexSet::empty();
        s.plus = points.into_iter().filter(|&n| n > 0).collect();
        assert!(s.plus.iter().all(|&n| n <= MAX_CORRECTION), "point beyond correction bound");
        s
    }

    pub fn singleton(n: u64) -> IndexSet {
        IndexSet::finite([n])
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> IndexSet {
        IndexSet::finite(excluded).complement()
    }

    /// `{n : n ≡ r (mod m)}`
    pub fn residue_class(m: u64, r: u64) -> IndexSet {
        IndexSet::from_parts(m, [r % m], 1, [], [], []).expect("valid residue class")
    }

    pub fn powers_of_two() -> IndexSet {
        IndexSet::raw(1, BTreeSet::new(), 1, [0].into(), BTreeSet::new(), BTreeSet::new())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn plus(&self) -> &BTreeSet<u64> {
        &self.plus
    }

    pub fn minus(&self) -> &BTreeSet<u64> {
        &self.minus
    }

    pub fn has_sparse(&self) -> bool {
        !self.exp_res.is_empty()
    }

    fn base_query(&self, q: Query) -> bool {
        match q.normalize() {
            Query::Num(n) => {
                let periodic = self.residues.contains(&(n % self.modulus));
                let sparse = n.is_power_of_two()
                    && self
                        .exp_res
                        .contains(&(n.trailing_zeros() as u64 % self.exp_mod));
                periodic ^ sparse
            }
            Query::Pow2(k) => {
                let periodic = self.residues.contains(&pow_mod(2, k as u64, self.modulus));
                periodic ^ self.exp_res.contains(&(k as u64 % self.exp_mod))
            }
        }
    }

    pub fn contains_query(&self, q: Query) -> bool {
        match q.normalize() {
            Query::Num(0) => false,
            Query::Num(n) if self.plus.contains(&n) => true,
            Query::Num(n) if self.minus.contains(&n) => false,
            q => self.base_query(q),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.contains_query(Query::Num(n))
    }

    /// Exponent from which the powers-of-two pattern is purely periodic.
    fn stable_exponent(&self) -> u32 {
        let v2 = self.modulus.trailing_zeros();
        let corr = self
            .plus
            .iter()
            .chain(&self.minus)
            .map(|&n| bitlen(n))
            .max()
            .unwrap_or(0);
        v2.max(corr)
    }

    /// Normal form of the set `{n : f(bits of n in each operand)}`.
    fn canonical(ops: &[&IndexSet], f: impl Fn(&[bool]) -> bool) -> IndexSet {
        let mem = |q: Query| {
            let bits: Vec<bool> = ops.iter().map(|s| s.contains_query(q)).collect();
            f(&bits)
        };
        let m0 = ops.iter().fold(1u64, |acc, s| acc.lcm(&s.modulus));
        assert!(m0 <= MAX_MODULUS, "index-set modulus {m0} exceeds {MAX_MODULUS}");
        let k0 = ops.iter().map(|s| s.stable_exponent()).max().unwrap_or(0);

        // residue pattern, sampled far beyond every correction at non-powers of two
        let far = MAX_CORRECTION * 2;
        let pattern: Vec<bool> = (0..m0)
            .map(|r| {
                let mut n = far - far % m0 + m0 + r;
                while n.is_power_of_two() {
                    n += m0;
                }
                mem(Query::Num(n))
            })
            .collect();
        let modulus = divisors(m0)
            .into_iter()
            .find(|&d| (0..m0 as usize).all(|r| pattern[r] == pattern[r % d as usize]))
            .expect("m0 divides itself");
        let residues: BTreeSet<u64> = (0..modulus).filter(|&r| pattern[r as usize]).collect();
        let periodic = |q: Query| match q.normalize() {
            Query::Num(n) => residues.contains(&(n % modulus)),
            Query::Pow2(k) => residues.contains(&pow_mod(2, k as u64, modulus)),
        };

        // toggles on powers of two, periodic in the exponent from k0 on
        let odd = m0 >> m0.trailing_zeros();
        let lc = ops
            .iter()
            .fold(order_of_two(odd), |acc, s| acc.lcm(&s.exp_mod));
        assert!(lc <= MAX_MODULUS, "exponent period {lc} exceeds {MAX_MODULUS}");
        let mut toggles = vec![false; lc as usize];
        for k in k0 as u64..k0 as u64 + lc {
            let q = Query::Pow2(k as u32);
            toggles[(k % lc) as usize] = mem(q) ^ periodic(q);
        }
        let exp_mod = divisors(lc)
            .into_iter()
            .find(|&d| (0..lc as usize).all(|j| toggles[j] == toggles[j % d as usize]))
            .expect("lc divides itself");
        let exp_res: BTreeSet<u64> = (0..exp_mod).filter(|&j| toggles[j as usize]).collect();

        let mut out = IndexSet::raw(modulus, residues, exp_mod, exp_res, BTreeSet::new(), BTreeSet::new());
        let mut cands: BTreeSet<u64> = ops
            .iter()
            .flat_map(|s| s.plus.iter().chain(&s.minus).copied())
            .collect();
        cands.extend((0..k0).map(|k| 1u64 << k));
        for n in cands {
            let want = mem(Query::Num(n));
            let have = out.base_query(Query::Num(n));
            if want && !have {
                out.plus.insert(n);
            } else if !want && have {
                out.minus.insert(n);
            }
        }
        out
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet::canonical(&[self, other], |b| b[0] || b[1])
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet::canonical(&[self, other], |b| b[0] && b[1])
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet::canonical(&[self, other], |b| b[0] && !b[1])
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet::canonical(&[self], |b| !b[0])
    }

    pub fn is_empty(&self) -> bool {
        *self == IndexSet::empty()
    }

    pub fn is_all(&self) -> bool {
        *self == IndexSet::all()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty() && self.exp_res.is_empty()
    }

    pub fn is_cofinite(&self) -> bool {
        self.complement().is_finite()
    }

    /// Members of a finite set, ascending.
    pub fn finite_members(&self) -> Option<Vec<u64>> {
        self.is_finite().then(|| self.plus.iter().copied().collect())
    }

    /// Natural density: the sparse family and finite corrections contribute 0.
    pub fn density(&self) -> Rat {
        Rat::new(self.residues.len() as i64, self.modulus as i64)
    }

    pub fn first_member(&self) -> Option<u64> {
        if self.is_empty() {
            return None;
        }
        (1..).find(|&n| self.contains(n))
    }

    /// Least element not in the set, if any.
    pub fn first_non_member(&self) -> Option<u64> {
        self.complement().first_member()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawSparse {
    Named(Vec<String>),
    Periodic { exp_mod: u64, exp_res: Vec<u64> },
}

#[derive(Serialize, Deserialize)]
struct RawIndexSet {
    #[serde(rename = "mod")]
    modulus: u64,
    res: Vec<u64>,
    #[serde(default)]
    plus: Vec<u64>,
    #[serde(default)]
    minus: Vec<u64>,
    #[serde(default = "no_sparse")]
    sparse: RawSparse,
}

fn no_sparse() -> RawSparse {
    RawSparse::Named(vec![])
}

impl TryFrom<RawIndexSet> for IndexSet {
    type Error = Error;

    fn try_from(raw: RawIndexSet) -> Result<IndexSet> {
        let (exp_mod, exp_res) = match raw.sparse {
            RawSparse::Named(names) => {
                if let Some(n) = names.iter().find(|n| n.as_str() != "powers_of_two") {
                    return Err(Error::Descriptor(format!("unknown sparse family {n:?}")));
                }
                (1, if names.is_empty() { vec![] } else { vec![0] })
            }
            RawSparse::Periodic { exp_mod, exp_res } => (exp_mod, exp_res),
        };
        IndexSet::from_parts(raw.modulus, raw.res, exp_mod, exp_res, raw.plus, raw.minus)
    }
}

impl From<IndexSet> for RawIndexSet {
    fn from(s: IndexSet) -> RawIndexSet {
        let sparse = if s.exp_res.is_empty() {
            RawSparse::Named(vec![])
        } else if s.exp_mod == 1 {
            RawSparse::Named(vec!["powers_of_two".into()])
        } else {
            RawSparse::Periodic {
                exp_mod: s.exp_mod,
                exp_res: s.exp_res.into_iter().collect(),
            }
        };
        RawIndexSet {
            modulus: s.modulus,
            res: s.residues.into_iter().collect(),
            plus: s.plus.into_iter().collect(),
            minus: s.minus.into_iter().collect(),
            sparse,
        }
    }
}

fn join(xs: impl IntoIterator<Item = u64>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = self.finite_members() {
            return write!(f, "{{{}}}", join(m));
        }
        let mut parts = vec![];
        if self.residues.len() as u64 == self.modulus {
            parts.push("N".to_string());
        } else if !self.residues.is_empty() {
            parts.push(format!("{{n = {} mod {}}}", join(self.residues.iter().copied()), self.modulus));
        }
        if !self.exp_res.is_empty() {
            let s = if self.exp_mod == 1 {
                "2^k".to_string()
            } else {
                format!("2^k (k = {} mod {})", join(self.exp_res.iter().copied()), self.exp_mod)
            };
            parts.push(if parts.is_empty() { s } else { format!("xor {s}") });
        }
        if !self.plus.is_empty() {
            parts.push(format!("+ {{{}}}", join(self.plus.iter().copied())));
        }
        if !self.minus.is_empty() {
            parts.push(format!("\\ {{{}}}", join(self.minus.iter().copied())));
        }
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prefix(s: &IndexSet, n: u64) -> Vec<u64> {
        (1..=n).filter(|&i| s.contains(i)).collect()
    }

    #[test]
    fn boolean_examples() {
        let evens = IndexSet::residue_class(2, 0);
        let odds = IndexSet::residue_class(2, 1);
        assert!(evens.intersection(&odds).is_empty());
        assert!(evens.union(&odds).is_all());
        let threes = IndexSet::residue_class(3, 0);
        assert!(IndexSet::powers_of_two().intersection(&threes).is_empty());
        let p2_one_mod_three = IndexSet::powers_of_two().intersection(&IndexSet::residue_class(3, 1));
        assert_eq!(prefix(&p2_one_mod_three, 300), vec![1, 4, 16, 64, 256]);
        assert!(p2_one_mod_three.contains_query(Query::Pow2(200)));
        assert!(!p2_one_mod_three.contains_query(Query::Pow2(201)));
    }

    #[test]
    fn modulus_is_minimized() {
        let a = IndexSet::residue_class(4, 1).union(&IndexSet::residue_class(4, 3));
        assert_eq!(a, IndexSet::residue_class(2, 1));
        assert_eq!(a.modulus(), 2);
    }

    #[test]
    fn densities() {
        assert_eq!(IndexSet::residue_class(4, 0).density(), Rat::new(1, 4));
        assert_eq!(IndexSet::powers_of_two().density(), Rat::zero());
        assert_eq!(IndexSet::all().density(), Rat::one());
        assert_eq!(IndexSet::cofinite([3, 5]).density(), Rat::one());
    }

    #[test]
    fn evens_minus_powers_of_two() {
        let s = IndexSet::residue_class(2, 0).difference(&IndexSet::powers_of_two());
        assert_eq!(prefix(&s, 12), vec![6, 10, 12]);
        assert_eq!(s.complement().complement(), s);
        assert!(!s.contains_query(Query::Pow2(100)));
    }

    #[test]
    fn finite_and_cofinite() {
        let s = IndexSet::cofinite([3]);
        assert!(s.is_cofinite() && !s.is_finite());
        assert_eq!(s.complement().finite_members(), Some(vec![3]));
        assert_eq!(IndexSet::finite([2, 7]).to_string(), "{2,7}");
        assert_eq!(s.first_non_member(), Some(3));
    }

    #[test]
    fn json_roundtrip() {
        let s: IndexSet =
            serde_json::from_str(r#"{"mod":2,"res":[0],"plus":[],"minus":[],"sparse":[]}"#).unwrap();
        assert_eq!(s, IndexSet::residue_class(2, 0));
        let p: IndexSet = serde_json::from_str(r#"{"mod":1,"res":[],"sparse":["powers_of_two"]}"#).unwrap();
        assert_eq!(p, IndexSet::powers_of_two());
        let q = p.intersection(&IndexSet::residue_class(3, 1));
        let back: IndexSet = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<IndexSet>(r#"{"mod":2,"res":[2]}"#).is_err());
    }
}
