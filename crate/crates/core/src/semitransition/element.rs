use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::poly::Poly;
use crate::seq::PiecewiseSeq;

/// An element of one of the supported rings. Which variants are valid is
/// decided by the structure (`SemiTransition::accepts`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Poly(Poly),
    Seq(PiecewiseSeq),
    Int(#[serde(with = "bigint_str")] BigInt),
    /// Table index in a finite ring.
    Finite(usize),
    Tuple(Vec<Element>),
    Frac(Box<Fraction>),
}

/// num/den, with ψ(den) = ∅ in the base ring.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    pub num: Element,
    pub den: Element,
}

impl Element {
    pub fn kind(&self) -> &'static str {
        match self {
            Element::Poly(_) => "poly",
            Element::Seq(_) => "seq",
            Element::Int(_) => "int",
            Element::Finite(_) => "finite",
            Element::Tuple(_) => "tuple",
            Element::Frac(_) => "frac",
        }
    }

    pub fn int(n: i64) -> Element {
        Element::Int(BigInt::from(n))
    }

    pub fn frac(num: Element, den: Element) -> Element {
        Element::Frac(Box::new(Fraction { num, den }))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Poly(p) => write!(f, "{p}"),
            Element::Seq(s) => write!(f, "{s}"),
            Element::Int(n) => write!(f, "{n}"),
            Element::Finite(i) => write!(f, "#{i}"),
            Element::Tuple(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            Element::Frac(fr) => write!(f, "({})/({})", fr.num, fr.den),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(BigInt::from(n)),
            Raw::Str(s) => s.trim().parse().map_err(|_| D::Error::custom(format!("bad integer {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Field;

    #[test]
    fn json_round_trip() {
        let e = Element::Tuple(vec![
            Element::Poly(Poly::from_ints(Field::Fp(2), &[0, 1])),
            Element::int(-12),
            Element::frac(Element::Finite(3), Element::Finite(1)),
        ]);
        let s = serde_json::to_string(&e).unwrap();
        let back: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let n: Element = serde_json::from_str(r#"{"int": 7}"#).unwrap();
        assert_eq!(n, Element::int(7));
    }
}
