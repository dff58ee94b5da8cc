//! Finite commutative unital rings given by operation tables or as a product
//! of prime fields.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::is_prime;

/// Largest ring order accepted by [`ring_from_descriptor`].
pub const MAX_RING_ORDER: usize = 1 << 16;

/// JSON ingest format for finite rings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    ProductOfFields {
        primes: Vec<u64>,
    },
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        neg: Vec<usize>,
        labels: Vec<String>,
    },
    /// Elements are coordinate tuples in mixed radix, first coordinate most
    /// significant.
    Product { primes: Vec<u64>, strides: Vec<usize> },
}

/// A validated finite commutative ring with identity. Elements are the
/// indices `0..order()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    repr: Repr,
    order: usize,
    zero: usize,
    one: usize,
}

pub fn ring_from_descriptor(desc: &RingDescriptor) -> Result<FiniteRing> {
    match desc {
        RingDescriptor::ProductOfFields { primes } => FiniteRing::product_of_fields(primes),
        RingDescriptor::Tables { add, mul, labels } => {
            FiniteRing::from_tables(add.clone(), mul.clone(), labels.clone())
        }
    }
}

impl FiniteRing {
    pub fn product_of_fields(primes: &[u64]) -> Result<FiniteRing> {
        if primes.is_empty() {
            return Err(Error::Descriptor("empty prime list".into()));
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        let mut order: usize = 1;
        for &p in primes {
            order = order.saturating_mul(p as usize);
            if order > MAX_RING_ORDER {
                return Err(Error::BoundExceeded {
                    what: "ring order",
                    actual: order,
                    bound: MAX_RING_ORDER,
                });
            }
        }
        let mut strides = vec![1usize; primes.len()];
        for i in (0..primes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * primes[i + 1] as usize;
        }
        let one = strides.iter().sum();
        Ok(FiniteRing {
            repr: Repr::Product {
                primes: primes.to_vec(),
                strides,
            },
            order,
            zero: 0,
            one,
        })
    }

    /// Validates explicit tables by a full axiom scan.
    pub fn from_tables(
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<FiniteRing> {
        let n = add.len();
        if n == 0 {
            return Err(Error::Descriptor("empty tables".into()));
        }
        if n > MAX_RING_ORDER {
            return Err(Error::BoundExceeded {
                what: "ring order",
                actual: n,
                bound: MAX_RING_ORDER,
            });
        }
        if mul.len() != n || add.iter().chain(&mul).any(|row| row.len() != n) {
            return Err(Error::Descriptor(format!("tables must both be {n}x{n}")));
        }
        if let Some((i, j)) = cells(n).find(|&(i, j)| add[i][j] >= n || mul[i][j] >= n) {
            return Err(Error::RingAxiom {
                axiom: "closure",
                witness: format!("entry ({i},{j}) out of range"),
            });
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::Descriptor("label count differs from ring order".into()));
            }
        }
        let viol = |axiom: &'static str, witness: String| Err(Error::RingAxiom { axiom, witness });

        if let Some((a, b)) = cells(n).find(|&(a, b)| add[a][b] != add[b][a]) {
            return viol("additive commutativity", format!("a={a}, b={b}"));
        }
        if let Some((a, b)) = cells(n).find(|&(a, b)| mul[a][b] != mul[b][a]) {
            return viol("multiplicative commutativity", format!("a={a}, b={b}"));
        }
        let zero = match (0..n).find(|&z| (0..n).all(|a| add[z][a] == a)) {
            Some(z) => z,
            None => return viol("additive identity", "no element z with z+a=a".into()),
        };
        let one = match (0..n).find(|&u| (0..n).all(|a| mul[u][a] == a)) {
            Some(u) => u,
            None => return viol("multiplicative identity", "no element u with u*a=a".into()),
        };
        let mut neg = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| add[a][b] == zero) {
                Some(b) => neg[a] = b,
                None => return viol("additive inverse", format!("a={a}")),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return viol("additive associativity", format!("a={a}, b={b}, c={c}"));
                    }
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return viol(
                            "multiplicative associativity",
                            format!("a={a}, b={b}, c={c}"),
                        );
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return viol("distributivity", format!("a={a}, b={b}, c={c}"));
                    }
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("e{i}")).collect());
        Ok(FiniteRing {
            repr: Repr::Tables {
                add,
                mul,
                neg,
                labels,
            },
            order: n,
            zero,
            one,
        })
    }

    /// Tables of ℤ/n, useful for non-semiprimitive examples.
    pub fn integers_mod(n: usize) -> Result<FiniteRing> {
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteRing::from_tables(add, mul, Some(labels))
    }

    /// Expands any ring into explicit tables (used to cross-check the
    /// product construction against the table validator).
    pub fn to_tables(&self) -> RingDescriptor {
        let n = self.order;
        RingDescriptor::Tables {
            add: (0..n).map(|a| (0..n).map(|b| self.add(a, b)).collect()).collect(),
            mul: (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect(),
            labels: Some((0..n).map(|a| self.label(a)).collect()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn field_primes(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Product { primes, .. } => Some(primes),
            Repr::Tables { .. } => None,
        }
    }

    pub fn coords(&self, a: usize) -> Option<Vec<u64>> {
        match &self.repr {
            Repr::Product { primes, strides } => Some(
                primes
                    .iter()
                    .zip(strides)
                    .map(|(&p, &s)| ((a / s) as u64) % p)
                    .collect(),
            ),
            Repr::Tables { .. } => None,
        }
    }

    pub fn index_of(&self, coords: &[u64]) -> Option<usize> {
        match &self.repr {
            Repr::Product { primes, strides } if coords.len() == primes.len() => Some(
                coords
                    .iter()
                    .zip(primes)
                    .zip(strides)
                    .map(|((&c, &p), &s)| (c % p) as usize * s)
                    .sum(),
            ),
            _ => None,
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Tables { add, .. } => add[a][b],
            Repr::Product { primes, strides } => primes
                .iter()
                .zip(strides)
                .map(|(&p, &s)| {
                    let (x, y) = ((a / s) as u64 % p, (b / s) as u64 % p);
                    ((x + y) % p) as usize * s
                })
                .sum(),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Tables { mul, .. } => mul[a][b],
            Repr::Product { primes, strides } => primes
                .iter()
                .zip(strides)
                .map(|(&p, &s)| {
                    let (x, y) = ((a / s) as u64 % p, (b / s) as u64 % p);
                    ((x * y) % p) as usize * s
                })
                .sum(),
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        match &self.repr {
            Repr::Tables { neg, .. } => neg[a],
            Repr::Product { primes, strides } => primes
                .iter()
                .zip(strides)
                .map(|(&p, &s)| {
                    let x = (a / s) as u64 % p;
                    ((p - x) % p) as usize * s
                })
                .sum(),
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn label(&self, a: usize) -> String {
        match &self.repr {
            Repr::Tables { labels, .. } => labels[a].clone(),
            Repr::Product { .. } => {
                let c = self.coords(a).unwrap_or_default();
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn describe(&self) -> String {
        match &self.repr {
            Repr::Product { primes, .. } => {
                let f: Vec<String> = primes.iter().map(|p| format!("F{p}")).collect();
                f.join("x")
            }
            Repr::Tables { .. } => format!("table ring of order {}", self.order),
        }
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn cells(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_f2_f3_has_order_six() {
        let r = FiniteRing::product_of_fields(&[2, 3]).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.label(r.one()), "(1,1)");
        let a = r.index_of(&[1, 2]).unwrap();
        assert_eq!(r.coords(r.mul(a, a)).unwrap(), vec![1, 1]);
        assert_eq!(r.coords(r.neg(a)).unwrap(), vec![1, 1]);
    }

    #[test]
    fn product_expands_to_valid_tables() {
        let r = FiniteRing::product_of_fields(&[2, 2, 3]).unwrap();
        assert_eq!(r.order(), 12);
        let t = ring_from_descriptor(&r.to_tables()).unwrap();
        assert_eq!(t.order(), 12);
        assert_eq!(t.zero(), r.zero());
        assert_eq!(t.one(), r.one());
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(t.add(a, b), r.add(a, b));
                assert_eq!(t.mul(a, b), r.mul(a, b));
            }
        }
    }

    #[test]
    fn f2_from_tables() {
        let d: RingDescriptor = serde_json::from_str(
            r#"{"kind":"tables","add":[[0,1],[1,0]],"mul":[[0,0],[0,1]]}"#,
        )
        .unwrap();
        let r = ring_from_descriptor(&d).unwrap();
        assert_eq!((r.order(), r.zero(), r.one()), (2, 0, 1));
    }

    #[test]
    fn non_prime_rejected() {
        let err = FiniteRing::product_of_fields(&[2, 4]).unwrap_err();
        assert_eq!(err, Error::NotPrime(4));
    }

    #[test]
    fn broken_tables_name_the_axiom() {
        // multiplication table of F2 with 1*1 = 0: no identity
        let err = FiniteRing::from_tables(
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0], vec![0, 0]],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::RingAxiom { axiom: "multiplicative identity", .. }));

        let err = FiniteRing::from_tables(
            vec![vec![0, 1], vec![0, 0]],
            vec![vec![0, 0], vec![0, 1]],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::RingAxiom { axiom: "additive commutativity", .. }));
    }
}
