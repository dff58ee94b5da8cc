//! JSON descriptors for structures, as read by the command-line tool.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::localization::localize;
use crate::poly::Field;
use crate::ring::{ring_from_descriptor, FiniteRing, RingDescriptor};
use crate::semitransition::{
    make_max_structure, make_poly_structure, make_seq_structure, make_trivial_structure, product_structure,
    truncate_c, SeqClass, Structure,
};
use crate::seq::NIdeal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StructureDescriptor {
    /// F[x] with ψ = roots (plus the generic point over F_p).
    Poly { field: Field },
    /// ψ = maximal ideals containing a, over a finite ring.
    Max { ring: RingDescriptor },
    /// Shorthand for `Max` over a product of prime fields.
    ProductOfFields { primes: Vec<u64> },
    /// Shorthand for `Max` over explicit tables.
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    /// ℤ with ψ(0) = Λ and ψ(a) = ∅ otherwise.
    Trivial {
        #[serde(default = "default_points")]
        points: Vec<String>,
    },
    /// F_p^(n+1) with points 1..n and ★.
    TruncatedC {
        n: usize,
        #[serde(default = "default_p")]
        p: u64,
    },
    Seq {
        ideal: NIdeal,
        #[serde(default = "default_class")]
        class: SeqClass,
    },
    Product {
        parts: Vec<StructureDescriptor>,
        #[serde(default = "default_exponent")]
        exponent: u32,
    },
    Localized { base: Box<StructureDescriptor> },
}

fn default_points() -> Vec<String> {
    vec!["λ".into()]
}

fn default_p() -> u64 {
    2
}

fn default_class() -> SeqClass {
    SeqClass::Piecewise
}

fn default_exponent() -> u32 {
    1
}

impl StructureDescriptor {
    pub fn build(&self) -> Result<Structure> {
        let max = |d: &RingDescriptor| -> Result<Structure> { make_max_structure(ring_from_descriptor(d)?) };
        match self {
            StructureDescriptor::Poly { field } => Ok(make_poly_structure(*field)),
            StructureDescriptor::Max { ring } => max(ring),
            StructureDescriptor::ProductOfFields { primes } => make_max_structure(FiniteRing::product_of_fields(primes)?),
            StructureDescriptor::Tables { add, mul, labels } => {
                max(&RingDescriptor::Tables { add: add.clone(), mul: mul.clone(), labels: labels.clone() })
            }
            StructureDescriptor::Trivial { points } => make_trivial_structure(points.clone()),
            StructureDescriptor::TruncatedC { n, p } => truncate_c(*n, *p),
            StructureDescriptor::Seq { ideal, class } => Ok(make_seq_structure(*ideal, *class)),
            StructureDescriptor::Product { parts, exponent } => {
                product_structure(parts.iter().map(|p| p.build()).collect::<Result<_>>()?, *exponent)
            }
            StructureDescriptor::Localized { base } => Ok(localize(base.build()?)?),
        }
    }
}

/// Deserializes JSON, reporting the position of the first error.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        if e.line() == 0 {
            // serde loses the position inside internally tagged enums
            return Error::Descriptor(message);
        }
        Error::Parse { line: e.line(), column: e.column(), message }
    })
}

pub fn parse_structure(text: &str) -> Result<StructureDescriptor> {
    parse_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_each_kind() {
        for text in [
            r#"{"kind":"poly","field":"F2"}"#,
            r#"{"kind":"poly","field":"Q"}"#,
            r#"{"kind":"product_of_fields","primes":[2,2,3]}"#,
            r#"{"kind":"max","ring":{"kind":"product_of_fields","primes":[3]}}"#,
            r#"{"kind":"trivial"}"#,
            r#"{"kind":"truncated_c","n":3}"#,
            r#"{"kind":"seq","ideal":"density_zero"}"#,
            r#"{"kind":"product","parts":[{"kind":"poly","field":"F2"},{"kind":"product_of_fields","primes":[3]}]}"#,
            r#"{"kind":"localized","base":{"kind":"poly","field":"Q"}}"#,
        ] {
            let d = parse_structure(text).unwrap();
            d.build().unwrap_or_else(|e| panic!("{text}: {e}"));
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        match parse_structure("{\"kind\":\"poly\",\n \"field\": }") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 11)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn composite_modulus_is_rejected() {
        let d = parse_structure(r#"{"kind":"product_of_fields","primes":[4]}"#).unwrap();
        assert_eq!(d.build().unwrap_err(), Error::NotPrime(4));
    }
}
