//! Commutative rings behind one value type.
//!
//! A [`RingValue`] is an integer, an element of a prime field `Z/p` or a
//! sparse multivariate polynomial over the integers. Every value knows its
//! [`Ring`]; arithmetic between different rings is an error rather than an
//! implicit coercion.

mod poly;
mod prime;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use poly::{Exponents, MultiPoly, Variables};
pub use prime::is_probable_prime;

use crate::error::{Error, Result};

/// Default modulus for randomized checks over a prime field.
pub const DEFAULT_PRIME: u64 = 1_000_003;

#[derive(Clone, Debug, Eq)]
pub struct PrimeField {
    modulus: Arc<BigUint>,
}

impl PrimeField {
    pub fn new(p: BigUint) -> Result<Self> {
        if !is_probable_prime(&p) {
            return Err(Error::InvalidModulus(p.to_string()));
        }
        Ok(PrimeField {
            modulus: Arc::new(p),
        })
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(BigUint::from(p))
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn element(&self, value: &BigInt) -> FieldElement {
        let m = BigInt::from_biguint(Sign::Plus, (*self.modulus).clone());
        let r = value.mod_floor(&m);
        FieldElement {
            residue: r.to_biguint().expect("mod_floor is non-negative"),
            field: self.clone(),
        }
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus
    }
}

impl Hash for PrimeField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
    }
}

/// Residue class modulo a prime, always stored reduced into `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    residue: BigUint,
    field: PrimeField,
}

impl FieldElement {
    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    fn with(&self, residue: BigUint) -> Self {
        FieldElement {
            residue,
            field: self.field.clone(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut r = &self.residue + &other.residue;
        if r >= *self.field.modulus {
            r -= &*self.field.modulus;
        }
        self.with(r)
    }

    fn neg(&self) -> Self {
        if self.residue.is_zero() {
            self.clone()
        } else {
            self.with(&*self.field.modulus - &self.residue)
        }
    }

    fn mul(&self, other: &Self) -> Self {
        self.with((&self.residue * &other.residue) % &*self.field.modulus)
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inverse(&self) -> Result<Self> {
        if self.residue.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = &*self.field.modulus;
        Ok(self.with(self.residue.modpow(&(p - 2u32), p)))
    }
}

/// Descriptor of the ring a value lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integer,
    PrimeField(PrimeField),
    Polynomial(Variables),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(Ring::PrimeField(PrimeField::from_u64(p)?))
    }

    pub fn polynomial<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Ring::Polynomial(Variables::new(names)?))
    }

    /// Short tag used in documents: `int`, `mod_p` or `poly`.
    pub fn tag(&self) -> &'static str {
        match self {
            Ring::Integer => "int",
            Ring::PrimeField(_) => "mod_p",
            Ring::Polynomial(_) => "poly",
        }
    }

    pub fn zero(&self) -> RingValue {
        self.from_bigint(&BigInt::zero())
    }

    pub fn one(&self) -> RingValue {
        self.from_bigint(&BigInt::one())
    }

    pub fn from_int(&self, k: i64) -> RingValue {
        self.from_bigint(&BigInt::from(k))
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_bigint(&self, k: &BigInt) -> RingValue {
        match self {
            Ring::Integer => RingValue::Int(k.clone()),
            Ring::PrimeField(f) => RingValue::Mod(f.element(k)),
            Ring::Polynomial(v) => RingValue::Poly(MultiPoly::constant(v, k.clone())),
        }
    }

    /// Whether every nonzero element has an inverse or exact quotients are
    /// otherwise computable (all supported rings are integral domains).
    pub fn has_exact_division(&self) -> bool {
        true
    }

    /// Parses an entry: a decimal integer for `int`/`mod_p`, polynomial
    /// text for `poly`.
    pub fn parse_value(&self, text: &str) -> Result<RingValue> {
        match self {
            Ring::Polynomial(v) => Ok(RingValue::Poly(MultiPoly::parse(text, v)?)),
            _ => {
                let k: BigInt = text
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("not a decimal integer: {text:?}")))?;
                Ok(self.from_bigint(&k))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integer => f.write_str("int"),
            Ring::PrimeField(p) => write!(f, "mod_p({})", p.modulus()),
            Ring::Polynomial(v) => write!(f, "poly{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingValue {
    Int(BigInt),
    Mod(FieldElement),
    Poly(MultiPoly),
}

impl From<i64> for RingValue {
    fn from(k: i64) -> Self {
        RingValue::Int(BigInt::from(k))
    }
}

impl From<BigInt> for RingValue {
    fn from(k: BigInt) -> Self {
        RingValue::Int(k)
    }
}

impl From<MultiPoly> for RingValue {
    fn from(p: MultiPoly) -> Self {
        RingValue::Poly(p)
    }
}

impl RingValue {
    pub fn ring(&self) -> Ring {
        match self {
            RingValue::Int(_) => Ring::Integer,
            RingValue::Mod(x) => Ring::PrimeField(x.field.clone()),
            RingValue::Poly(p) => Ring::Polynomial(p.vars().clone()),
        }
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        match (self, other) {
            (RingValue::Int(_), RingValue::Int(_)) => true,
            (RingValue::Mod(a), RingValue::Mod(b)) => a.field == b.field,
            (RingValue::Poly(a), RingValue::Poly(b)) => a.vars() == b.vars(),
            _ => false,
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::RingMismatch {
            left: self.ring().to_string(),
            right: other.ring().to_string(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => Ok(RingValue::Int(a + b)),
            (RingValue::Mod(a), RingValue::Mod(b)) if a.field == b.field => {
                Ok(RingValue::Mod(a.add(b)))
            }
            (RingValue::Poly(a), RingValue::Poly(b)) => Ok(RingValue::Poly(a.add(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => Ok(RingValue::Int(a - b)),
            (RingValue::Mod(a), RingValue::Mod(b)) if a.field == b.field => {
                Ok(RingValue::Mod(a.add(&b.neg())))
            }
            (RingValue::Poly(a), RingValue::Poly(b)) => Ok(RingValue::Poly(a.sub(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => Ok(RingValue::Int(a * b)),
            (RingValue::Mod(a), RingValue::Mod(b)) if a.field == b.field => {
                Ok(RingValue::Mod(a.mul(b)))
            }
            (RingValue::Poly(a), RingValue::Poly(b)) => Ok(RingValue::Poly(a.mul(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            RingValue::Int(a) => RingValue::Int(-a),
            RingValue::Mod(a) => RingValue::Mod(a.neg()),
            RingValue::Poly(a) => RingValue::Poly(a.neg()),
        }
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Over `Z/p` this multiplies by the inverse; over the integers and
    /// polynomials it fails with [`Error::InexactDivision`] when the
    /// divisor does not divide `self`.
    pub fn try_div_exact(&self, divisor: &Self) -> Result<Self> {
        match (self, divisor) {
            (RingValue::Int(a), RingValue::Int(b)) => {
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(RingValue::Int(q))
                } else {
                    Err(Error::InexactDivision(format!("{a} / {b}")))
                }
            }
            (RingValue::Mod(a), RingValue::Mod(b)) if a.field == b.field => {
                Ok(RingValue::Mod(a.mul(&b.inverse()?)))
            }
            (RingValue::Poly(a), RingValue::Poly(b)) => Ok(RingValue::Poly(a.exact_div(b)?)),
            _ => Err(self.mismatch(divisor)),
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        match self {
            RingValue::Int(a) => RingValue::Int(num_traits::pow::Pow::pow(a, k)),
            RingValue::Mod(a) => {
                RingValue::Mod(a.with(a.residue.modpow(&BigUint::from(k), &a.field.modulus)))
            }
            RingValue::Poly(a) => RingValue::Poly(a.pow(k)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Int(a) => a.is_zero(),
            RingValue::Mod(a) => a.residue.is_zero(),
            RingValue::Poly(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingValue::Int(a) => a.is_one(),
            RingValue::Mod(a) => a.residue.is_one(),
            RingValue::Poly(a) => a.is_one(),
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            RingValue::Int(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        match self {
            RingValue::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Canonical text: decimal for integers, the least non-negative residue
    /// for `Z/p`, canonical polynomial text otherwise.
    pub fn to_text(&self) -> String {
        match self {
            RingValue::Int(a) => a.to_string(),
            RingValue::Mod(a) => a.residue.to_string(),
            RingValue::Poly(p) => p.to_text(),
        }
    }

    /// Whether the value is `-1` in its ring.
    pub fn is_minus_one(&self) -> bool {
        self.neg().is_one()
    }

    /// True for integers below zero; always false for other rings.
    pub fn is_negative_int(&self) -> bool {
        matches!(self, RingValue::Int(a) if a.is_negative())
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Evaluates `p` at `point` by substitution. All point entries must share
/// one ring; integer coefficients are mapped into it canonically.
pub fn poly_eval(p: &MultiPoly, point: &[RingValue]) -> Result<RingValue> {
    if point.len() != p.vars().len() {
        return Err(Error::Arity {
            expected: p.vars().len(),
            got: point.len(),
        });
    }
    let ring = match point.first() {
        Some(v) => v.ring(),
        // No variables: the value is the constant term, read as an integer.
        None => Ring::Integer,
    };
    if let Some(bad) = point.iter().find(|v| !v.same_ring(&point[0])) {
        return Err(point[0].mismatch(bad));
    }
    p.evaluate_with(
        point,
        ring.zero(),
        ring.one(),
        |c| ring.from_bigint(c),
        |a, b| a.try_mul(b),
        |a, b| a.try_add(b),
    )
}

pub(crate) fn sum<'a, I>(ring: &Ring, values: I) -> Result<RingValue>
where
    I: IntoIterator<Item = &'a RingValue>,
{
    values
        .into_iter()
        .try_fold(ring.zero(), |acc, v| acc.try_add(v))
}

pub(crate) fn product<'a, I>(ring: &Ring, values: I) -> Result<RingValue>
where
    I: IntoIterator<Item = &'a RingValue>,
{
    values
        .into_iter()
        .try_fold(ring.one(), |acc, v| acc.try_mul(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_product() {
        let a = RingValue::from(7);
        let b = RingValue::from(-3);
        assert_eq!(a.try_mul(&b).unwrap(), RingValue::from(-21));
    }

    #[test]
    fn prime_field_wraps() {
        let f = Ring::prime_field(7).unwrap();
        let s = f.from_int(5).try_add(&f.from_int(4)).unwrap();
        assert_eq!(s, f.from_int(2));
        assert_eq!(f.from_int(-1).to_text(), "6");
        assert_eq!(
            f.from_int(3).try_sub(&f.from_int(5)).unwrap(),
            f.from_int(5)
        );
        assert_eq!(
            f.from_int(3).try_div_exact(&f.from_int(5)).unwrap(),
            f.from_int(2)
        );
        assert_eq!(
            f.from_int(3).try_div_exact(&f.zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn composite_modulus_is_rejected() {
        for bad in [0u64, 1, 4, 9, 561, 1_000_001] {
            assert!(Ring::prime_field(bad).is_err(), "{bad}");
        }
        assert!(Ring::prime_field(2).is_ok());
        assert!(Ring::prime_field(DEFAULT_PRIME).is_ok());
    }

    #[test]
    fn mixing_rings_fails() {
        let f7 = Ring::prime_field(7).unwrap();
        let f11 = Ring::prime_field(11).unwrap();
        let int = RingValue::from(1);
        assert_eq!(int.try_add(&f7.one()).unwrap_err().code(), "ring-mismatch");
        assert_eq!(
            f7.one().try_mul(&f11.one()).unwrap_err().code(),
            "ring-mismatch"
        );
        let poly = Ring::polynomial(["x"]).unwrap().one();
        assert_eq!(poly.try_sub(&int).unwrap_err().code(), "ring-mismatch");
    }

    #[test]
    fn integer_exact_division() {
        let a = RingValue::from(12);
        assert_eq!(
            a.try_div_exact(&RingValue::from(-4)).unwrap(),
            RingValue::from(-3)
        );
        assert_eq!(
            a.try_div_exact(&RingValue::from(5)).unwrap_err().code(),
            "inexact-division"
        );
    }

    #[test]
    fn evaluation_examples() {
        let ring = Ring::polynomial(["x", "y"]).unwrap();
        let Ring::Polynomial(vars) = &ring else {
            unreachable!()
        };
        let p = MultiPoly::parse("x^2 + y", vars).unwrap();
        let v = poly_eval(&p, &[RingValue::from(3), RingValue::from(4)]).unwrap();
        assert_eq!(v, RingValue::from(13));

        let q = MultiPoly::parse("3*x*y - 2*y + 11", vars).unwrap();
        let at_zero = poly_eval(&q, &[RingValue::from(0), RingValue::from(0)]).unwrap();
        assert_eq!(at_zero, RingValue::Int(q.constant_term()));

        let f5 = Ring::prime_field(5).unwrap();
        let r = MultiPoly::parse("x*y - 1", vars).unwrap();
        let v = poly_eval(&r, &[f5.from_int(2), f5.from_int(3)]).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.ring(), f5);

        assert_eq!(
            poly_eval(&p, &[RingValue::from(1)]).unwrap_err().code(),
            "arity-mismatch"
        );
        assert_eq!(
            poly_eval(&p, &[RingValue::from(1), f5.one()])
                .unwrap_err()
                .code(),
            "ring-mismatch"
        );
    }

    #[test]
    fn parse_value_per_ring() {
        assert_eq!(
            Ring::Integer.parse_value("-42").unwrap(),
            RingValue::from(-42)
        );
        let f = Ring::prime_field(11).unwrap();
        assert_eq!(f.parse_value("13").unwrap().to_text(), "2");
        assert!(Ring::Integer.parse_value("x").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(RingValue::from(-2).pow(5), RingValue::from(-32));
        let f = Ring::prime_field(7).unwrap();
        assert_eq!(f.from_int(3).pow(6), f.one());
        assert!(RingValue::from(9).pow(0).is_one());
    }
}
