//! Ideal lattices of finite rings by principal-ideal sum closure.

use std::collections::{BTreeSet, VecDeque};

use super::bitset::ElemSet;
use super::finite::FiniteRing;
use crate::error::{Error, Result};

/// Default cap on candidate ideals generated during enumeration.
pub const DEFAULT_IDEAL_BOUND: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingIdeal {
    members: ElemSet,
}

impl RingIdeal {
    /// Wraps a member set after checking the ideal axioms.
    pub fn new(ring: &FiniteRing, members: ElemSet) -> Result<RingIdeal> {
        let ideal = RingIdeal { members };
        match ideal.closure_violation(ring) {
            None => Ok(ideal),
            Some(w) => Err(Error::Precondition(format!("not an ideal: {w}"))),
        }
    }

    pub(crate) fn from_members_unchecked(members: ElemSet) -> RingIdeal {
        RingIdeal { members }
    }

    pub fn zero(ring: &FiniteRing) -> RingIdeal {
        RingIdeal {
            members: ElemSet::from_iter(ring.order(), [ring.zero()]),
        }
    }

    pub fn whole(ring: &FiniteRing) -> RingIdeal {
        RingIdeal {
            members: ElemSet::full(ring.order()),
        }
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subset(&self, other: &RingIdeal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_proper(&self, ring: &FiniteRing) -> bool {
        !self.contains(ring.one())
    }

    pub fn intersection(&self, other: &RingIdeal) -> RingIdeal {
        RingIdeal {
            members: self.members.intersection(&other.members),
        }
    }

    pub fn sum(&self, ring: &FiniteRing, other: &RingIdeal) -> RingIdeal {
        let mut out = ElemSet::empty(ring.order());
        for a in self.members.iter() {
            for b in other.members.iter() {
                out.insert(ring.add(a, b));
            }
        }
        RingIdeal { members: out }
    }

    /// The ideal generated by all products `ab` with `a ∈ self`, `b ∈ other`.
    pub fn product(&self, ring: &FiniteRing, other: &RingIdeal) -> RingIdeal {
        let mut gens = BTreeSet::new();
        for a in self.members.iter() {
            for b in other.members.iter() {
                gens.insert(ring.mul(a, b));
            }
        }
        ideal_generated(ring, gens)
    }

    /// Returns a description of the first failed closure law, if any.
    pub fn closure_violation(&self, ring: &FiniteRing) -> Option<String> {
        if !self.contains(ring.zero()) {
            return Some("zero is missing".into());
        }
        for a in self.members.iter() {
            for b in self.members.iter() {
                if !self.contains(ring.sub(a, b)) {
                    return Some(format!("{} - {} escapes", ring.label(a), ring.label(b)));
                }
            }
            for r in ring.elements() {
                if !self.contains(ring.mul(r, a)) {
                    return Some(format!("{} * {} escapes", ring.label(r), ring.label(a)));
                }
            }
        }
        None
    }

    pub fn labels(&self, ring: &FiniteRing) -> Vec<String> {
        self.members.iter().map(|a| ring.label(a)).collect()
    }
}

pub fn principal_ideal(ring: &FiniteRing, a: usize) -> RingIdeal {
    RingIdeal {
        members: ElemSet::from_iter(ring.order(), ring.elements().map(|r| ring.mul(r, a))),
    }
}

pub fn ideal_generated(ring: &FiniteRing, gens: impl IntoIterator<Item = usize>) -> RingIdeal {
    let mut acc = RingIdeal::zero(ring);
    for g in gens {
        if !acc.contains(g) {
            acc = acc.sum(ring, &principal_ideal(ring, g));
        }
    }
    acc
}

/// Lowest-index generator `z` with `(z) = I`, if any.
pub fn is_principal(ring: &FiniteRing, ideal: &RingIdeal) -> Option<usize> {
    ideal
        .members
        .iter()
        .find(|&z| principal_ideal(ring, z) == *ideal)
}

/// All ideals, sorted by member bitmask. Product-of-fields rings use the
/// coordinate description; other rings use [`enumerate_ideals_generic`].
pub fn enumerate_ideals(ring: &FiniteRing) -> Result<Vec<RingIdeal>> {
    enumerate_ideals_bounded(ring, DEFAULT_IDEAL_BOUND)
}

pub fn enumerate_ideals_bounded(ring: &FiniteRing, bound: usize) -> Result<Vec<RingIdeal>> {
    let Some(primes) = ring.field_primes() else {
        return enumerate_ideals_generic(ring, bound);
    };
    let k = primes.len();
    if k >= usize::BITS as usize || (1usize << k) > bound {
        return Err(Error::BoundExceeded {
            what: "ideal candidates",
            actual: if k >= 64 { usize::MAX } else { 1 << k },
            bound,
        });
    }
    let mut out: Vec<RingIdeal> = (0..1usize << k)
        .map(|support| {
            let members = ring.elements().filter(|&a| {
                let c = ring.coords(a).expect("product ring has coordinates");
                c.iter().enumerate().all(|(i, &x)| x == 0 || support & (1 << i) != 0)
            });
            RingIdeal {
                members: ElemSet::from_iter(ring.order(), members),
            }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Every ideal is a finite sum of principal ideals, so the lattice is the
/// closure of the principal ideals under pairwise sums.
pub fn enumerate_ideals_generic(ring: &FiniteRing, bound: usize) -> Result<Vec<RingIdeal>> {
    let principals: BTreeSet<RingIdeal> =
        ring.elements().map(|a| principal_ideal(ring, a)).collect();
    let principals: Vec<RingIdeal> = principals.into_iter().collect();
    let mut seen: BTreeSet<RingIdeal> = principals.iter().cloned().collect();
    let mut queue: VecDeque<RingIdeal> = principals.iter().cloned().collect();
    let mut candidates = seen.len();
    while let Some(i) = queue.pop_front() {
        for p in &principals {
            if p.is_subset(&i) {
                continue;
            }
            let s = i.sum(ring, p);
            candidates += 1;
            if candidates > bound.saturating_mul(principals.len().max(1)) {
                return Err(Error::BoundExceeded {
                    what: "ideal candidates",
                    actual: candidates,
                    bound,
                });
            }
            if seen.insert(s.clone()) {
                if seen.len() > bound {
                    return Err(Error::BoundExceeded {
                        what: "ideals",
                        actual: seen.len(),
                        bound,
                    });
                }
                queue.push_back(s);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

pub fn is_prime_ideal(ring: &FiniteRing, ideal: &RingIdeal) -> bool {
    ideal.is_proper(ring)
        && ring.elements().all(|a| {
            ideal.contains(a)
                || ring
                    .elements()
                    .all(|b| !ideal.contains(ring.mul(a, b)) || ideal.contains(b))
        })
}

pub fn enumerate_prime_ideals(ring: &FiniteRing) -> Result<Vec<RingIdeal>> {
    if ring.field_primes().is_some() {
        // every prime of a finite product of fields is a coordinate kernel
        return enumerate_maximal_ideals(ring);
    }
    Ok(enumerate_ideals(ring)?
        .into_iter()
        .filter(|i| is_prime_ideal(ring, i))
        .collect())
}

pub fn enumerate_maximal_ideals(ring: &FiniteRing) -> Result<Vec<RingIdeal>> {
    let ideals = enumerate_ideals(ring)?;
    Ok(maximal_among(ring, &ideals))
}

pub(crate) fn maximal_among(ring: &FiniteRing, ideals: &[RingIdeal]) -> Vec<RingIdeal> {
    let proper: Vec<&RingIdeal> = ideals.iter().filter(|i| i.is_proper(ring)).collect();
    proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j != *i && i.is_subset(j)))
        .map(|i| (*i).clone())
        .collect()
}

pub fn jacobson_radical(ring: &FiniteRing) -> Result<RingIdeal> {
    let maximals = enumerate_maximal_ideals(ring)?;
    let mut it = maximals.into_iter();
    let first = it.next().ok_or(Error::NoMaximalIdeal)?;
    Ok(it.fold(first, |acc, m| acc.intersection(&m)))
}

pub fn is_semiprimitive(ring: &FiniteRing) -> Result<bool> {
    Ok(jacobson_radical(ring)? == RingIdeal::zero(ring))
}

pub fn is_pm_ring(ring: &FiniteRing) -> Result<bool> {
    let maximals = enumerate_maximal_ideals(ring)?;
    let primes = enumerate_prime_ideals(ring)?;
    Ok(primes
        .iter()
        .all(|p| maximals.iter().filter(|m| p.is_subset(m)).count() == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(r: &FiniteRing, coords: &[&[u64]]) -> RingIdeal {
        RingIdeal::from_members_unchecked(ElemSet::from_iter(
            r.order(),
            coords.iter().map(|c| r.index_of(c).unwrap()),
        ))
    }

    #[test]
    fn f2_f3_lattice() {
        let r = FiniteRing::product_of_fields(&[2, 3]).unwrap();
        let ideals = enumerate_ideals(&r).unwrap();
        assert_eq!(ideals.len(), 4);
        assert!(ideals.iter().all(|i| i.closure_violation(&r).is_none()));
        let maximals = enumerate_maximal_ideals(&r).unwrap();
        let f2_zero = set(&r, &[&[0, 0], &[1, 0]]);
        let zero_f3 = set(&r, &[&[0, 0], &[0, 1], &[0, 2]]);
        assert_eq!(maximals, {
            let mut v = vec![f2_zero, zero_f3];
            v.sort();
            v
        });
        assert_eq!(enumerate_prime_ideals(&r).unwrap(), maximals);
        assert!(is_semiprimitive(&r).unwrap());
        assert!(is_pm_ring(&r).unwrap());
    }

    #[test]
    fn generic_enumeration_matches_structural() {
        for primes in [&[2u64, 3][..], &[2, 2, 3], &[5], &[3, 3]] {
            let r = FiniteRing::product_of_fields(primes).unwrap();
            let a = enumerate_ideals(&r).unwrap();
            let b = enumerate_ideals_generic(&r, DEFAULT_IDEAL_BOUND).unwrap();
            assert_eq!(a, b, "{primes:?}");
            assert_eq!(a.len(), 1 << primes.len());
            let scanned: Vec<_> = a.iter().filter(|i| is_prime_ideal(&r, i)).cloned().collect();
            assert_eq!(scanned, enumerate_prime_ideals(&r).unwrap());
        }
    }

    #[test]
    fn z4_is_local_not_semiprimitive() {
        let r = FiniteRing::integers_mod(4).unwrap();
        let ideals = enumerate_ideals(&r).unwrap();
        assert_eq!(ideals.len(), 3);
        assert_eq!(jacobson_radical(&r).unwrap().members().iter().collect::<Vec<_>>(), vec![0, 2]);
        assert!(!is_semiprimitive(&r).unwrap());
        assert!(is_pm_ring(&r).unwrap());
    }

    #[test]
    fn field_f7_has_prime_zero() {
        let r = FiniteRing::product_of_fields(&[7]).unwrap();
        assert_eq!(enumerate_prime_ideals(&r).unwrap(), vec![RingIdeal::zero(&r)]);
    }

    #[test]
    fn generated_and_principal() {
        let r = FiniteRing::product_of_fields(&[2, 3]).unwrap();
        let whole = ideal_generated(&r, [r.index_of(&[1, 0]).unwrap(), r.index_of(&[0, 1]).unwrap()]);
        assert_eq!(whole, RingIdeal::whole(&r));
        // lowest-index generator of the whole ring is (1,1)
        assert_eq!(is_principal(&r, &whole), Some(r.index_of(&[1, 1]).unwrap()));
        assert_eq!(ideal_generated(&r, []), RingIdeal::zero(&r));
        assert_eq!(ideal_generated(&r, [r.one()]), whole);
    }
}
