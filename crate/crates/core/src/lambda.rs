//! Point sets Λ and finitely described subsets of them.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::poly::Field;
use crate::rat::Rat;
use crate::seq::IndexSet;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    /// The i-th point of an explicitly listed space.
    Index(usize),
    /// A field element.
    Scalar(Rat),
    /// The extra point of a finite field's space, lying only in ψ(0).
    Generic,
    /// An index n ≥ 1 of a sequence.
    Nat(u64),
    /// The limit point of ℕ ∪ {★}.
    Star,
    /// A point of the i-th summand of a disjoint union.
    Tagged(usize, Box<Point>),
}

/// A subset of Λ. Values returned by [`LambdaSpace`] operations are in the
/// canonical form for that space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaSubset {
    Empty,
    All,
    Finite(BTreeSet<Point>),
    Cofinite(BTreeSet<Point>),
    Seq { set: IndexSet, star: bool },
    Product(Vec<LambdaSubset>),
}

impl LambdaSubset {
    pub fn is_empty(&self) -> bool {
        *self == LambdaSubset::Empty
    }

    pub fn is_all(&self) -> bool {
        *self == LambdaSubset::All
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaSpace {
    /// Points `Index(0..n)` with display labels.
    Finite(Vec<String>),
    /// Points of a field: `Scalar(0..p)` plus `Generic` for F_p, all of ℚ for Q.
    Field(Field),
    /// ℕ ∪ {★}.
    NatStar,
    /// Disjoint union; points are `Tagged(i, p)`.
    Disjoint(Vec<LambdaSpace>),
}

enum Canon {
    Set(BTreeSet<Point>),
    CoQ(bool, BTreeSet<Point>),
    Seq(IndexSet, bool),
    Parts(Vec<LambdaSubset>),
}

impl LambdaSpace {
    /// Every point, when Λ is finite.
    pub fn finite_points(&self) -> Option<Vec<Point>> {
        match self {
            LambdaSpace::Finite(labels) => Some((0..labels.len()).map(Point::Index).collect()),
            LambdaSpace::Field(Field::Fp(p)) => {
                let mut v: Vec<Point> = (0..*p).map(|a| Point::Scalar(Rat::from_int(a))).collect();
                v.push(Point::Generic);
                Some(v)
            }
            LambdaSpace::Field(Field::Q) | LambdaSpace::NatStar => None,
            LambdaSpace::Disjoint(parts) => {
                let mut out = vec![];
                for (i, s) in parts.iter().enumerate() {
                    out.extend(s.finite_points()?.into_iter().map(|p| Point::Tagged(i, Box::new(p))));
                }
                Some(out)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_points().is_some()
    }

    pub fn has_point(&self, p: &Point) -> bool {
        match (self, p) {
            (LambdaSpace::Finite(l), Point::Index(i)) => *i < l.len(),
            (LambdaSpace::Field(Field::Fp(q)), Point::Scalar(a)) => {
                a.is_integer() && a.to_i64().is_some_and(|v| v >= 0 && (v as u64) < *q)
            }
            (LambdaSpace::Field(Field::Fp(_)), Point::Generic) => true,
            (LambdaSpace::Field(Field::Q), Point::Scalar(_)) => true,
            (LambdaSpace::NatStar, Point::Nat(n)) => *n >= 1,
            (LambdaSpace::NatStar, Point::Star) => true,
            (LambdaSpace::Disjoint(parts), Point::Tagged(i, q)) => {
                parts.get(*i).is_some_and(|s| s.has_point(q))
            }
            _ => false,
        }
    }

    pub fn label(&self, p: &Point) -> String {
        match (self, p) {
            (LambdaSpace::Finite(l), Point::Index(i)) if *i < l.len() => l[*i].clone(),
            (_, Point::Index(i)) => format!("#{i}"),
            (_, Point::Scalar(a)) => a.to_string(),
            (_, Point::Generic) => "η".into(),
            (_, Point::Nat(n)) => n.to_string(),
            (_, Point::Star) => "★".into(),
            (LambdaSpace::Disjoint(parts), Point::Tagged(i, q)) => match parts.get(*i) {
                Some(s) => format!("{}@{i}", s.label(q)),
                None => format!("?@{i}"),
            },
            (_, Point::Tagged(i, q)) => format!("{q:?}@{i}"),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            LambdaSpace::Finite(l) => format!("{{{}}}", l.join(", ")),
            LambdaSpace::Field(Field::Fp(p)) => format!("F{p} ∪ {{η}}"),
            LambdaSpace::Field(Field::Q) => "Q".into(),
            LambdaSpace::NatStar => "N ∪ {★}".into(),
            LambdaSpace::Disjoint(parts) => {
                let v: Vec<String> = parts.iter().map(|s| s.describe()).collect();
                v.join(" ⊔ ")
            }
        }
    }

    /// A point drawn for sampled checks; finite spaces draw uniformly.
    pub fn sample_point(&self, rng: &mut ChaCha8Rng) -> Point {
        match self {
            LambdaSpace::Field(Field::Q) => Point::Scalar(Rat::new(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=3))),
            LambdaSpace::NatStar => {
                if rng.gen_bool(0.15) {
                    Point::Star
                } else {
                    Point::Nat(rng.gen_range(1..=16))
                }
            }
            LambdaSpace::Disjoint(parts) => {
                let i = rng.gen_range(0..parts.len());
                Point::Tagged(i, Box::new(parts[i].sample_point(rng)))
            }
            _ => {
                let pts = self.finite_points().expect("finite space");
                pts[rng.gen_range(0..pts.len())].clone()
            }
        }
    }

    fn canon(&self, s: &LambdaSubset) -> Canon {
        use LambdaSubset as L;
        match self {
            LambdaSpace::Finite(_) | LambdaSpace::Field(Field::Fp(_)) => {
                let all = || self.finite_points().expect("finite").into_iter().collect::<BTreeSet<_>>();
                Canon::Set(match s {
                    L::Empty => BTreeSet::new(),
                    L::All => all(),
                    L::Finite(f) => f.clone(),
                    L::Cofinite(f) => all().difference(f).cloned().collect(),
                    other => panic!("subset {other:?} does not live in {}", self.describe()),
                })
            }
            LambdaSpace::Field(Field::Q) => match s {
                L::Empty => Canon::CoQ(false, BTreeSet::new()),
                L::All => Canon::CoQ(true, BTreeSet::new()),
                L::Finite(f) => Canon::CoQ(false, f.clone()),
                L::Cofinite(f) => Canon::CoQ(true, f.clone()),
                other => panic!("subset {other:?} does not live in Q"),
            },
            LambdaSpace::NatStar => match s {
                L::Empty => Canon::Seq(IndexSet::empty(), false),
                L::All => Canon::Seq(IndexSet::all(), true),
                L::Seq { set, star } => Canon::Seq(set.clone(), *star),
                L::Finite(f) | L::Cofinite(f) => {
                    let nats = IndexSet::finite(f.iter().filter_map(|p| match p {
                        Point::Nat(n) => Some(*n),
                        _ => None,
                    }));
                    let star = f.contains(&Point::Star);
                    if matches!(s, L::Finite(_)) {
                        Canon::Seq(nats, star)
                    } else {
                        Canon::Seq(nats.complement(), !star)
                    }
                }
                other => panic!("subset {other:?} does not live in N ∪ {{★}}"),
            },
            LambdaSpace::Disjoint(parts) => Canon::Parts(match s {
                L::Empty => vec![L::Empty; parts.len()],
                L::All => vec![L::All; parts.len()],
                L::Product(v) if v.len() == parts.len() => {
                    v.iter().zip(parts).map(|(x, sp)| sp.normalize(x)).collect()
                }
                L::Finite(f) | L::Cofinite(f) => {
                    let mut per: Vec<BTreeSet<Point>> = vec![BTreeSet::new(); parts.len()];
                    for p in f {
                        if let Point::Tagged(i, q) = p {
                            per[*i].insert((**q).clone());
                        }
                    }
                    per.into_iter()
                        .zip(parts)
                        .map(|(set, sp)| {
                            let fin = sp.normalize(&L::Finite(set));
                            if matches!(s, L::Finite(_)) {
                                fin
                            } else {
                                sp.complement(&fin)
                            }
                        })
                        .collect()
                }
                other => panic!("subset {other:?} does not live in {}", self.describe()),
            }),
        }
    }

    fn uncanon(&self, c: Canon) -> LambdaSubset {
        use LambdaSubset as L;
        match c {
            Canon::Set(s) => {
                if s.is_empty() {
                    L::Empty
                } else if s.len() == self.finite_points().map_or(0, |p| p.len()) {
                    L::All
                } else {
                    L::Finite(s)
                }
            }
            Canon::CoQ(false, s) if s.is_empty() => L::Empty,
            Canon::CoQ(false, s) => L::Finite(s),
            Canon::CoQ(true, s) if s.is_empty() => L::All,
            Canon::CoQ(true, s) => L::Cofinite(s),
            Canon::Seq(set, star) => {
                if set.is_empty() && !star {
                    L::Empty
                } else if set.is_all() && star {
                    L::All
                } else {
                    L::Seq { set, star }
                }
            }
            Canon::Parts(v) => {
                if v.iter().all(|x| x.is_empty()) {
                    L::Empty
                } else if v.iter().all(|x| x.is_all()) {
                    L::All
                } else {
                    L::Product(v)
                }
            }
        }
    }

    pub fn normalize(&self, s: &LambdaSubset) -> LambdaSubset {
        self.uncanon(self.canon(s))
    }

    pub fn singleton(&self, p: &Point) -> LambdaSubset {
        self.normalize(&LambdaSubset::Finite([p.clone()].into()))
    }

    pub fn complement(&self, s: &LambdaSubset) -> LambdaSubset {
        let c = match self.canon(s) {
            Canon::Set(x) => {
                let all: BTreeSet<Point> = self.finite_points().expect("finite").into_iter().collect();
                Canon::Set(all.difference(&x).cloned().collect())
            }
            Canon::CoQ(co, x) => Canon::CoQ(!co, x),
            Canon::Seq(x, star) => Canon::Seq(x.complement(), !star),
            Canon::Parts(v) => Canon::Parts(match self {
                LambdaSpace::Disjoint(parts) => v.iter().zip(parts).map(|(x, sp)| sp.complement(x)).collect(),
                _ => unreachable!(),
            }),
        };
        self.uncanon(c)
    }

    fn binop(&self, a: &LambdaSubset, b: &LambdaSubset, union: bool) -> LambdaSubset {
        let c = match (self.canon(a), self.canon(b)) {
            (Canon::Set(x), Canon::Set(y)) => Canon::Set(if union {
                x.union(&y).cloned().collect()
            } else {
                x.intersection(&y).cloned().collect()
            }),
            (Canon::CoQ(cx, x), Canon::CoQ(cy, y)) => {
                let diff = |p: &BTreeSet<Point>, q: &BTreeSet<Point>| p.difference(q).cloned().collect();
                match (cx, cy, union) {
                    (false, false, true) => Canon::CoQ(false, x.union(&y).cloned().collect()),
                    (false, false, false) => Canon::CoQ(false, x.intersection(&y).cloned().collect()),
                    (true, true, true) => Canon::CoQ(true, x.intersection(&y).cloned().collect()),
                    (true, true, false) => Canon::CoQ(true, x.union(&y).cloned().collect()),
                    (false, true, true) => Canon::CoQ(true, diff(&y, &x)),
                    (true, false, true) => Canon::CoQ(true, diff(&x, &y)),
                    (false, true, false) => Canon::CoQ(false, diff(&x, &y)),
                    (true, false, false) => Canon::CoQ(false, diff(&y, &x)),
                }
            }
            (Canon::Seq(x, sx), Canon::Seq(y, sy)) => {
                if union {
                    Canon::Seq(x.union(&y), sx || sy)
                } else {
                    Canon::Seq(x.intersection(&y), sx && sy)
                }
            }
            (Canon::Parts(x), Canon::Parts(y)) => Canon::Parts(match self {
                LambdaSpace::Disjoint(parts) => x
                    .iter()
                    .zip(&y)
                    .zip(parts)
                    .map(|((p, q), sp)| sp.binop(p, q, union))
                    .collect(),
                _ => unreachable!(),
            }),
            _ => unreachable!("operands normalized in the same space"),
        };
        self.uncanon(c)
    }

    pub fn union(&self, a: &LambdaSubset, b: &LambdaSubset) -> LambdaSubset {
        self.binop(a, b, true)
    }

    pub fn intersection(&self, a: &LambdaSubset, b: &LambdaSubset) -> LambdaSubset {
        self.binop(a, b, false)
    }

    pub fn difference(&self, a: &LambdaSubset, b: &LambdaSubset) -> LambdaSubset {
        self.intersection(a, &self.complement(b))
    }

    pub fn is_subset(&self, a: &LambdaSubset, b: &LambdaSubset) -> bool {
        self.difference(a, b).is_empty()
    }

    pub fn set_eq(&self, a: &LambdaSubset, b: &LambdaSubset) -> bool {
        self.normalize(a) == self.normalize(b)
    }

    pub fn contains(&self, s: &LambdaSubset, p: &Point) -> bool {
        match (self, self.canon(s)) {
            (_, Canon::Set(x)) => x.contains(p),
            (_, Canon::CoQ(co, x)) => co != x.contains(p),
            (_, Canon::Seq(x, star)) => match p {
                Point::Nat(n) => x.contains(*n),
                Point::Star => star,
                _ => false,
            },
            (LambdaSpace::Disjoint(parts), Canon::Parts(v)) => match p {
                Point::Tagged(i, q) => parts.get(*i).is_some_and(|sp| sp.contains(&v[*i], q)),
                _ => false,
            },
            _ => false,
        }
    }

    /// Tags a subset of the i-th summand as a subset of the disjoint union.
    pub fn inject(&self, i: usize, s: &LambdaSubset) -> LambdaSubset {
        match self {
            LambdaSpace::Disjoint(parts) => {
                let mut v = vec![LambdaSubset::Empty; parts.len()];
                v[i] = s.clone();
                self.normalize(&LambdaSubset::Product(v))
            }
            _ => panic!("inject needs a disjoint union"),
        }
    }

    pub fn show(&self, s: &LambdaSubset) -> String {
        let s = self.normalize(s);
        let list = |f: &BTreeSet<Point>| f.iter().map(|p| self.label(p)).collect::<Vec<_>>().join(", ");
        match &s {
            LambdaSubset::Empty => "∅".into(),
            LambdaSubset::All => "Λ".into(),
            LambdaSubset::Finite(f) => format!("{{{}}}", list(f)),
            LambdaSubset::Cofinite(f) => format!("Λ \\ {{{}}}", list(f)),
            LambdaSubset::Seq { set, star } => {
                if *star {
                    format!("{set} ∪ {{★}}")
                } else {
                    set.to_string()
                }
            }
            LambdaSubset::Product(v) => match self {
                LambdaSpace::Disjoint(parts) => {
                    let shown: Vec<String> = v
                        .iter()
                        .zip(parts)
                        .enumerate()
                        .map(|(i, (x, sp))| format!("{}@{i}", sp.show(x)))
                        .collect();
                    shown.join(" ⊔ ")
                }
                _ => format!("{s:?}"),
            },
        }
    }
}

impl fmt::Display for LambdaSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> Point {
        Point::Scalar(Rat::from_int(n))
    }

    #[test]
    fn finite_field_space_has_generic_point() {
        let sp = LambdaSpace::Field(Field::Fp(2));
        assert_eq!(sp.finite_points().unwrap().len(), 3);
        let s = LambdaSubset::Finite([sc(0), sc(1)].into());
        assert_eq!(sp.complement(&s), LambdaSubset::Finite([Point::Generic].into()));
        assert_eq!(sp.union(&s, &sp.complement(&s)), LambdaSubset::All);
    }

    #[test]
    fn rational_space_cofinite_algebra() {
        let sp = LambdaSpace::Field(Field::Q);
        let a = LambdaSubset::Finite([sc(0), sc(1)].into());
        let co = sp.complement(&a);
        assert_eq!(co, LambdaSubset::Cofinite([sc(0), sc(1)].into()));
        assert!(sp.contains(&co, &sc(5)));
        assert_eq!(sp.intersection(&a, &co), LambdaSubset::Empty);
        let b = LambdaSubset::Finite([sc(1)].into());
        assert_eq!(sp.union(&sp.complement(&b), &a), LambdaSubset::All);
        assert!(sp.is_subset(&b, &a));
    }

    #[test]
    fn nat_star_space() {
        let sp = LambdaSpace::NatStar;
        let s = LambdaSubset::Seq { set: IndexSet::cofinite([1]), star: true };
        assert!(sp.contains(&s, &Point::Star));
        assert!(!sp.contains(&s, &Point::Nat(1)));
        assert_eq!(sp.union(&s, &sp.singleton(&Point::Nat(1))), LambdaSubset::All);
        assert_eq!(sp.show(&sp.singleton(&Point::Nat(3))), "{3}");
    }

    #[test]
    fn disjoint_union() {
        let sp = LambdaSpace::Disjoint(vec![LambdaSpace::Field(Field::Fp(2)), LambdaSpace::Field(Field::Fp(2))]);
        let a = sp.inject(0, &LambdaSubset::Finite([sc(0)].into()));
        let b = sp.inject(1, &LambdaSubset::Finite([sc(1)].into()));
        let u = sp.union(&a, &b);
        assert!(sp.contains(&u, &Point::Tagged(0, Box::new(sc(0)))));
        assert!(!sp.contains(&u, &Point::Tagged(1, Box::new(sc(0)))));
        assert_eq!(sp.intersection(&a, &b), LambdaSubset::Empty);
        assert_eq!(sp.finite_points().unwrap().len(), 6);
        assert_eq!(sp.show(&u), "{0}@0 ⊔ {1}@1");
    }
}
