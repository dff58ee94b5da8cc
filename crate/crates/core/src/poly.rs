//! Univariate polynomials over a prime field or ℚ.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{is_prime, FpElem, Rat};

/// Default degree cap for irreducibility testing.
pub const DEFAULT_IRREDUCIBILITY_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Fp(u64),
    Q,
}

impl Field {
    pub fn fp(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Fp(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Fp(p) => *p,
            Field::Q => 0,
        }
    }

    /// Canonical representative of `r` in this field (residues in `[0, p)`).
    pub fn reduce(&self, r: &Rat) -> Rat {
        match self {
            Field::Q => r.clone(),
            Field::Fp(p) => FpElem::from_rat(*p, r)
                .expect("denominator divisible by the characteristic")
                .to_rat(),
        }
    }

    pub fn add(&self, a: &Rat, b: &Rat) -> Rat {
        self.reduce(&(a + b))
    }

    pub fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        self.reduce(&(a - b))
    }

    pub fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &Rat) -> Option<Rat> {
        match self {
            Field::Q => a.recip(),
            Field::Fp(p) => FpElem::from_rat(*p, a)?.inv().map(|e| e.to_rat()),
        }
    }

    /// All field points, for finite fields.
    pub fn points(&self) -> Option<Vec<Rat>> {
        match self {
            Field::Fp(p) => Some((0..*p).map(Rat::from_int).collect()),
            Field::Q => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "F{p}"),
            Field::Q => f.write_str("Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s {
            "Q" | "QQ" => Ok(Field::Q),
            _ => {
                let p = s
                    .strip_prefix('F')
                    .and_then(|d| d.parse::<u64>().ok())
                    .ok_or_else(|| Error::Descriptor(format!("unknown field {s:?}")))?;
                Field::fp(p)
            }
        }
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Field, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A polynomial with coefficients listed constant term first. The leading
/// coefficient is nonzero unless the polynomial is zero (empty list).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoly")]
pub struct Poly {
    field: Field,
    coeffs: Vec<Rat>,
}

#[derive(Deserialize)]
struct RawPoly {
    field: Field,
    coeffs: Vec<Rat>,
}

impl TryFrom<RawPoly> for Poly {
    type Error = Error;

    fn try_from(raw: RawPoly) -> Result<Poly> {
        if let Field::Fp(p) = raw.field {
            if let Some(c) = raw.coeffs.iter().find(|c| FpElem::from_rat(p, c).is_none()) {
                return Err(Error::Descriptor(format!("coefficient {c} not defined mod {p}")));
            }
        }
        Ok(Poly::new(raw.field, raw.coeffs))
    }
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<Rat>) -> Poly {
        let mut coeffs: Vec<Rat> = coeffs.iter().map(|c| field.reduce(c)).collect();
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field, Rat::one())
    }

    pub fn constant(field: Field, c: Rat) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: Field) -> Poly {
        Poly::from_ints(field, &[0, 1])
    }

    /// `x - a`
    pub fn linear_root(field: Field, a: &Rat) -> Poly {
        Poly::new(field, vec![-a, Rat::one()])
    }

    /// The polynomial over F_p whose coefficients are the base-p digits of
    /// `index` (constant term least significant).
    pub fn from_index(p: u64, mut index: u64) -> Poly {
        let mut coeffs = vec![];
        while index > 0 {
            coeffs.push(Rat::from_int(index % p));
            index /= p;
        }
        Poly::new(Field::Fp(p), coeffs)
    }

    /// All polynomials over F_p of degree ≤ `d`, including zero, in index order.
    pub fn all_up_to_degree(p: u64, d: u32) -> Vec<Poly> {
        (0..p.pow(d + 1)).map(|i| Poly::from_index(p, i)).collect()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rat::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        Ok(Poly::new(self.field, coeffs))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(Poly::new(self.field, coeffs))
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(self.field), |acc, _| &acc * self)
    }

    /// `f = q·g + r` with `deg r < deg g`.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.check(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = self
            .field
            .inv(g.leading().expect("nonzero divisor"))
            .expect("leading coefficient invertible");
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len().saturating_sub(dg)];
        while r.len() > dg && !r.is_empty() {
            let shift = r.len() - 1 - dg;
            let c = self.field.mul(r.last().expect("nonempty"), &lead_inv);
            for (j, gc) in g.coeffs.iter().enumerate() {
                r[shift + j] = self.field.sub(&r[shift + j], &self.field.mul(&c, gc));
            }
            q[shift] = c;
            while r.last().is_some_and(Rat::is_zero) {
                r.pop();
            }
        }
        Ok((Poly::new(self.field, q), Poly::new(self.field, r)))
    }

    pub fn divides(&self, f: &Poly) -> Result<bool> {
        Ok(f.divmod(self)?.1.is_zero())
    }

    /// Scalar multiple with leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, a: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        self.field.reduce(&acc)
    }

    /// Index of an F_p polynomial (inverse of [`Poly::from_index`]).
    pub fn index(&self) -> Option<u64> {
        let Field::Fp(p) = self.field else { return None };
        let mut idx = 0u64;
        for c in self.coeffs.iter().rev() {
            idx = idx.checked_mul(p)?.checked_add(c.to_i64()? as u64)?;
        }
        Some(idx)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutTriple {
    pub d: Poly,
    pub u: Poly,
    pub v: Poly,
}

/// Monic gcd `d` with `d = u·f + v·g`, checked by re-multiplication.
pub fn extended_gcd(f: &Poly, g: &Poly) -> Result<BezoutTriple> {
    f.check(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let k = f.field;
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(k), Poly::zero(k));
    let (mut t0, mut t1) = (Poly::zero(k), Poly::one(k));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = k.inv(r0.leading().expect("gcd is nonzero")).expect("invertible");
    let out = BezoutTriple {
        d: r0.scale(&l),
        u: s0.scale(&l),
        v: t0.scale(&l),
    };
    assert_eq!(&(&out.u * f) + &(&out.v * g), out.d, "Bezout identity");
    assert!(out.d.divides(f)? && out.d.divides(g)?, "gcd divides both inputs");
    Ok(out)
}

/// The zero set of a nonzero polynomial in its field: exhaustive over F_p,
/// rational roots over ℚ. Sorted ascending.
pub fn roots(f: &Poly) -> Result<Vec<Rat>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = match f.field {
        Field::Fp(p) => (0..p)
            .map(Rat::from_int)
            .filter(|a| f.eval(a).is_zero())
            .collect(),
        Field::Q => rational_roots(f)?,
    };
    out.sort();
    debug_assert!(out.iter().all(|a| f.eval(a).is_zero()));
    Ok(out)
}

/// Integer coefficients of a nonzero multiple of `f` with content 1.
fn primitive_integer_coeffs(f: &Poly) -> Vec<BigInt> {
    let l = f
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| (c * &Rat::from_int(l.clone())).numer().clone())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

const MAX_ROOT_COEFF: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&n| n <= MAX_ROOT_COEFF).ok_or(Error::BoundExceeded {
        what: "coefficient size for rational roots",
        actual: usize::MAX,
        bound: MAX_ROOT_COEFF as usize,
    })?;
    let mut small = vec![];
    let mut large = vec![];
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn rational_roots(f: &Poly) -> Result<Vec<Rat>> {
    let ints = primitive_integer_coeffs(f);
    let shift = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    let mut out = vec![];
    if shift > 0 {
        out.push(Rat::zero());
    }
    let ints = &ints[shift..];
    if ints.len() == 1 {
        return Ok(out);
    }
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last().expect("nonempty"))?;
    let mut cands = std::collections::BTreeSet::new();
    for &p in &ps {
        for &q in &qs {
            cands.insert(Rat::new(p, q));
            cands.insert(Rat::new(-(p as i64), q));
        }
    }
    out.extend(cands.into_iter().filter(|a| f.eval(a).is_zero()));
    Ok(out)
}

/// Irreducibility by trial division over F_p; over ℚ by the rational-root
/// test up to degree 3 and by reduction modulo small primes beyond, with an
/// explicit inconclusive error when neither settles it.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    is_irreducible_bounded(f, DEFAULT_IRREDUCIBILITY_DEGREE)
}

pub fn is_irreducible_bounded(f: &Poly, max_degree: usize) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => {
            return Err(Error::Precondition(format!("{f} has degree < 1")));
        }
        Some(d) => d,
    };
    if d > max_degree {
        return Err(Error::BoundExceeded {
            what: "degree for irreducibility",
            actual: d,
            bound: max_degree,
        });
    }
    if d == 1 {
        return Ok(true);
    }
    match f.field {
        Field::Fp(p) => Ok(!has_monic_factor_fp(f, p, d / 2)),
        Field::Q => {
            if !rational_roots(f)?.is_empty() {
                return Ok(false);
            }
            if d <= 3 {
                return Ok(true);
            }
            let ints = primitive_integer_coeffs(f);
            let lead = ints.last().expect("nonempty").clone();
            for p in (2u64..200).filter(|&p| is_prime(p)) {
                if (&lead % BigInt::from(p)).is_zero() {
                    continue;
                }
                let reduced = Poly::new(Field::Fp(p), ints.iter().map(|c| Rat::from_int(c.clone())).collect());
                if reduced.degree() == Some(d) && !has_monic_factor_fp(&reduced, p, d / 2) {
                    return Ok(true);
                }
            }
            Err(Error::Inconclusive(f.to_string()))
        }
    }
}

fn has_monic_factor_fp(f: &Poly, p: u64, max_deg: usize) -> bool {
    (1..=max_deg).any(|k| {
        let base = p.pow(k as u32);
        (0..base).any(|low| {
            let g = Poly::from_index(p, base + low);
            g.divides(f).expect("same field")
        })
    })
}

/// Total order used for deterministic reports: by field, degree, then
/// coefficients from the top.
impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! poly_op {
    ($tr:ident, $method:ident, $try:ident) => {
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$try(rhs).expect("polynomials over the same field")
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = self.field == Field::Q && c.numer().is_negative();
            let mag = if neg { c.abs() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match i {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !mag.is_one() {
                        f.write_str(&coeff)?;
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(c: &[i64]) -> Poly {
        Poly::from_ints(Field::Fp(2), c)
    }

    fn q(c: &[i64]) -> Poly {
        Poly::from_ints(Field::Q, c)
    }

    #[test]
    fn f2_arithmetic() {
        let x1 = f2(&[1, 1]);
        assert_eq!(&x1 * &x1, f2(&[1, 0, 1]));
        assert_eq!(&x1 + &Poly::zero(Field::Fp(2)), x1);
        let (quo, rem) = f2(&[1, 0, 1]).divmod(&x1).unwrap();
        assert_eq!((quo, rem), (x1, Poly::zero(Field::Fp(2))));
        assert_eq!(f2(&[1, 1, 1]).to_string(), "x^2 + x + 1");
    }

    #[test]
    fn errors() {
        assert_eq!(f2(&[1]).divmod(&Poly::zero(Field::Fp(2))).unwrap_err(), Error::DivisionByZero);
        assert!(matches!(f2(&[1]).try_add(&q(&[1])), Err(Error::FieldMismatch(..))));
        let z = Poly::zero(Field::Q);
        assert_eq!(extended_gcd(&z, &z).unwrap_err(), Error::GcdOfZeros);
        assert_eq!(roots(&z).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn gcd_examples() {
        let b = extended_gcd(&f2(&[0, 1]), &f2(&[1, 1])).unwrap();
        assert_eq!(b.d, Poly::one(Field::Fp(2)));
        assert_eq!((b.u, b.v), (Poly::one(Field::Fp(2)), Poly::one(Field::Fp(2))));

        let b = extended_gcd(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap();
        assert_eq!(b.d, q(&[-1, 1]));

        let f = q(&[2, 0, 4]);
        assert_eq!(extended_gcd(&f, &f).unwrap().d, f.monic());
    }

    #[test]
    fn root_examples() {
        assert_eq!(roots(&f2(&[0, 1, 1])).unwrap(), vec![Rat::zero(), Rat::one()]);
        assert!(roots(&Poly::from_ints(Field::Fp(3), &[1, 0, 1])).unwrap().is_empty());
        assert!(roots(&f2(&[1])).unwrap().is_empty());
        // 6x^2 - x - 1 = (3x + 1)(2x - 1)
        assert_eq!(roots(&q(&[-1, -1, 6])).unwrap(), vec![Rat::new(-1, 3), Rat::new(1, 2)]);
        let half_x = Poly::new(Field::Q, vec![Rat::zero(), Rat::new(1, 2)]);
        assert_eq!(roots(&half_x).unwrap(), vec![Rat::zero()]);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&f2(&[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&f2(&[1, 0, 1])).unwrap());
        assert!(is_irreducible(&f2(&[0, 1])).unwrap());
        assert!(is_irreducible(&q(&[0, 1])).unwrap());
        assert!(is_irreducible(&q(&[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&q(&[-2, 1, 1])).unwrap());
        // x^4 + x + 1 is irreducible mod 2
        assert!(is_irreducible(&q(&[1, 1, 0, 0, 1])).unwrap());
        // (x^2+1)(x^2+2) has no rational roots and factors modulo every prime
        // tried, so the answer is inconclusive rather than a guess
        assert!(matches!(is_irreducible(&q(&[2, 0, 3, 0, 1])), Err(Error::Inconclusive(_))));
        let big = Poly::from_ints(Field::Fp(2), &[1; 10]);
        assert!(matches!(is_irreducible(&big), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn index_roundtrip() {
        for i in 0..81 {
            assert_eq!(Poly::from_index(3, i).index(), Some(i));
        }
        assert_eq!(Poly::all_up_to_degree(2, 3).len(), 16);
    }

    #[test]
    fn json_format() {
        let p: Poly = serde_json::from_str(r#"{"field":"F2","coeffs":[1,1,1]}"#).unwrap();
        assert_eq!(p, f2(&[1, 1, 1]));
        let r: Poly = serde_json::from_str(r#"{"field":"F3","coeffs":[4,0,0]}"#).unwrap();
        assert_eq!(r, Poly::one(Field::Fp(3)));
        let back: Poly = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Poly>(r#"{"field":"F4","coeffs":[1]}"#).is_err());
    }
}
