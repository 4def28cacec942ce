//! Exact scalars over three families of ordered fields.
//!
//! * `Q`, the rationals;
//! * towers `Q(sqrt d1)...(sqrt dk)` where each radicand is a positive
//!   non-square of the preceding level, embedded in the reals with every root
//!   positive;
//! * `Q(eps)`, rational functions in one variable ordered as germs at `0+`,
//!   which makes `eps` a positive infinitesimal.
//!
//! A [`Scalar`] carries its [`FieldSpec`]. Arithmetic between different specs
//! is an error: the `try_*` methods report it, the operator impls panic. Use
//! [`Scalar::embed`] to move a value into an extension of its field.

mod parse;
pub(crate) mod poly;
mod ratfunc;
mod tower;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

pub(crate) use poly::Poly;
use ratfunc::RatFunc;
use tower::Coords;

/// Hard limit on the number of square roots a tower may carry. Element size
/// is `2^depth` rationals.
pub const MAX_TOWER_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("field spec mismatch: {left} vs {right}")]
    SpecMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} has no square root in an ordered field")]
    NoRealRoot(String),
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("invalid radicand {radicand}: {reason}")]
    InvalidRadicand { radicand: String, reason: String },
    #[error("tower depth {depth} exceeds the cap of {cap} adjunctions")]
    DepthCap { depth: usize, cap: usize },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T, E = ScalarError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rationals,
    Tower,
    Infinitesimal,
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum SpecRepr {
    /// Radicand `i` is stored at level `i`, i.e. with `2^i` coordinates.
    Algebraic(Vec<Coords>),
    Infinitesimal,
}

/// Declares the ordered field a scalar lives in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec(Arc<SpecRepr>);

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec(Arc::new(SpecRepr::Algebraic(Vec::new())))
    }

    pub fn infinitesimal() -> Self {
        FieldSpec(Arc::new(SpecRepr::Infinitesimal))
    }

    /// Builds a tower from radicands, each given as a scalar of the tower built
    /// so far.
    pub fn tower(radicands: &[Scalar]) -> Result<Self> {
        let mut spec = FieldSpec::rationals();
        for r in radicands {
            spec = spec.adjoin(r)?;
        }
        Ok(spec)
    }

    pub fn kind(&self) -> FieldKind {
        match &*self.0 {
            SpecRepr::Algebraic(r) if r.is_empty() => FieldKind::Rationals,
            SpecRepr::Algebraic(_) => FieldKind::Tower,
            SpecRepr::Infinitesimal => FieldKind::Infinitesimal,
        }
    }

    /// Number of adjoined square roots (0 for `Q` and `Q(eps)`).
    pub fn depth(&self) -> usize {
        match &*self.0 {
            SpecRepr::Algebraic(r) => r.len(),
            SpecRepr::Infinitesimal => 0,
        }
    }

    pub fn is_archimedean(&self) -> bool {
        self.kind() != FieldKind::Infinitesimal
    }

    fn radicand_coords(&self) -> &[Coords] {
        match &*self.0 {
            SpecRepr::Algebraic(r) => r,
            SpecRepr::Infinitesimal => &[],
        }
    }

    /// The spec obtained by keeping the first `depth` radicands.
    pub fn truncated(&self, depth: usize) -> FieldSpec {
        match &*self.0 {
            SpecRepr::Algebraic(r) => FieldSpec(Arc::new(SpecRepr::Algebraic(r[..depth.min(r.len())].to_vec()))),
            SpecRepr::Infinitesimal => self.clone(),
        }
    }

    /// The `k`-th radicand (zero-based) as a scalar of the level below it.
    pub fn radicand(&self, k: usize) -> Option<Scalar> {
        let coords = self.radicand_coords().get(k)?.clone();
        Some(Scalar {
            spec: self.truncated(k),
            value: Value::Tower(coords),
        })
    }

    pub fn radicands(&self) -> Vec<Scalar> {
        (0..self.depth()).filter_map(|k| self.radicand(k)).collect()
    }

    /// Adjoins `sqrt(radicand)`. The radicand must live in `self`, be positive
    /// and not already be a square.
    pub fn adjoin(&self, radicand: &Scalar) -> Result<FieldSpec> {
        let reject = |reason: &str| ScalarError::InvalidRadicand {
            radicand: radicand.to_string(),
            reason: reason.to_string(),
        };
        let SpecRepr::Algebraic(rads) = &*self.0 else {
            return Err(ScalarError::UnsupportedExtension(
                "square roots cannot be adjoined to Q(eps)".into(),
            ));
        };
        self.check_same(&radicand.spec)?;
        if rads.len() >= MAX_TOWER_DEPTH {
            return Err(ScalarError::DepthCap {
                depth: rads.len() + 1,
                cap: MAX_TOWER_DEPTH,
            });
        }
        if radicand.signum() != Ordering::Greater {
            return Err(reject("radicand must be positive"));
        }
        if radicand.sqrt_in_field()?.is_some() {
            return Err(reject("radicand is already a square at its level"));
        }
        let Value::Tower(c) = &radicand.value else { unreachable!() };
        let mut next = rads.clone();
        next.push(c.clone());
        Ok(FieldSpec(Arc::new(SpecRepr::Algebraic(next))))
    }

    /// Whether every scalar of `self` is also a scalar of `other`.
    pub fn is_subfield_of(&self, other: &FieldSpec) -> bool {
        match (&*self.0, &*other.0) {
            (SpecRepr::Algebraic(a), SpecRepr::Algebraic(b)) => b.len() >= a.len() && b[..a.len()] == a[..],
            (SpecRepr::Infinitesimal, SpecRepr::Infinitesimal) => true,
            _ => false,
        }
    }

    /// The smaller of two comparable specs' common extension.
    pub fn join(&self, other: &FieldSpec) -> Result<FieldSpec> {
        if self.is_subfield_of(other) {
            Ok(other.clone())
        } else if other.is_subfield_of(self) {
            Ok(self.clone())
        } else {
            Err(self.mismatch(other))
        }
    }

    fn mismatch(&self, other: &FieldSpec) -> ScalarError {
        ScalarError::SpecMismatch {
            left: self.to_string(),
            right: other.to_string(),
        }
    }

    pub(crate) fn check_same(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(self.mismatch(other))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            SpecRepr::Infinitesimal => write!(f, "Q(eps)"),
            SpecRepr::Algebraic(_) => {
                write!(f, "Q")?;
                for r in self.radicands() {
                    write!(f, "(sqrt({r}))")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Tower(Coords),
    Eps(RatFunc),
}

/// Magnitude classes relative to the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MagnitudeClass {
    Zero,
    Infinitesimal,
    Medial,
    Infinite,
}

impl MagnitudeClass {
    /// Membership in the additive group of infinitesimals (zero included).
    pub fn is_infinitesimal_or_zero(self) -> bool {
        matches!(self, MagnitudeClass::Zero | MagnitudeClass::Infinitesimal)
    }
}

/// An exact element of a declared ordered field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    spec: FieldSpec,
    value: Value,
}

impl Scalar {
    pub fn from_rational(spec: &FieldSpec, q: BigRational) -> Scalar {
        let value = match &*spec.0 {
            SpecRepr::Algebraic(r) => Value::Tower(tower::from_rational(q, r.len())),
            SpecRepr::Infinitesimal => Value::Eps(RatFunc::from_rational(q)),
        };
        Scalar {
            spec: spec.clone(),
            value,
        }
    }

    pub fn from_int(spec: &FieldSpec, n: i64) -> Scalar {
        Self::from_rational(spec, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(spec: &FieldSpec, n: i64, d: i64) -> Scalar {
        Self::from_rational(spec, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero(spec: &FieldSpec) -> Scalar {
        Self::from_int(spec, 0)
    }

    pub fn one(spec: &FieldSpec) -> Scalar {
        Self::from_int(spec, 1)
    }

    /// The infinitesimal generator of `Q(eps)`.
    pub fn eps(spec: &FieldSpec) -> Result<Scalar> {
        match spec.kind() {
            FieldKind::Infinitesimal => Ok(Scalar {
                spec: spec.clone(),
                value: Value::Eps(RatFunc::eps()),
            }),
            _ => Err(ScalarError::UnsupportedExtension(format!("eps is not an element of {spec}"))),
        }
    }

    /// The positive root of the `k`-th radicand (zero-based).
    pub fn sqrt_generator(spec: &FieldSpec, k: usize) -> Result<Scalar> {
        let depth = spec.depth();
        if spec.kind() == FieldKind::Infinitesimal || k >= depth {
            return Err(ScalarError::UnsupportedExtension(format!(
                "{spec} has no radicand number {}",
                k + 1
            )));
        }
        let mut c = tower::zero(depth);
        c[1 << k] = BigRational::one();
        Ok(Scalar {
            spec: spec.clone(),
            value: Value::Tower(c),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Tower(c) => tower::is_zero(c),
            Value::Eps(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(&self.spec)
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Tower(c) => tower::as_rational(c).cloned(),
            Value::Eps(r) => r.as_rational(),
        }
    }

    fn combine(&self, other: &Scalar, op: &str) -> Result<()> {
        self.spec.check_same(&other.spec).map_err(|e| match e {
            ScalarError::SpecMismatch { left, right } => ScalarError::SpecMismatch {
                left: format!("{left} ({op})"),
                right,
            },
            e => e,
        })
    }

    /// Numerator and monic denominator of a `Q(eps)` element.
    pub(crate) fn eps_fraction(&self) -> Option<(&Poly, &Poly)> {
        match &self.value {
            Value::Eps(r) => Some((r.num(), r.den())),
            Value::Tower(_) => None,
        }
    }

    fn with_value(&self, value: Value) -> Scalar {
        Scalar {
            spec: self.spec.clone(),
            value,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, "+")?;
        Ok(self.with_value(match (&self.value, &other.value) {
            (Value::Tower(a), Value::Tower(b)) => Value::Tower(tower::add(a, b)),
            (Value::Eps(a), Value::Eps(b)) => Value::Eps(a.add(b)),
            _ => unreachable!("specs agree"),
        }))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, "-")?;
        Ok(self.with_value(match (&self.value, &other.value) {
            (Value::Tower(a), Value::Tower(b)) => Value::Tower(tower::sub(a, b)),
            (Value::Eps(a), Value::Eps(b)) => Value::Eps(a.sub(b)),
            _ => unreachable!("specs agree"),
        }))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, "*")?;
        Ok(self.with_value(match (&self.value, &other.value) {
            (Value::Tower(a), Value::Tower(b)) => {
                let rads = self.spec.radicand_coords();
                Value::Tower(tower::mul(a, b, rads, rads.len()))
            }
            (Value::Eps(a), Value::Eps(b)) => Value::Eps(a.mul(b)),
            _ => unreachable!("specs agree"),
        }))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, "/")?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        let value = match &self.value {
            Value::Tower(a) => {
                let rads = self.spec.radicand_coords();
                Value::Tower(tower::inv(a, rads, rads.len()).ok_or(ScalarError::DivisionByZero)?)
            }
            Value::Eps(a) => Value::Eps(a.inv().ok_or(ScalarError::DivisionByZero)?),
        };
        Ok(self.with_value(value))
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Sign in the field's order.
    pub fn signum(&self) -> Ordering {
        match &self.value {
            Value::Tower(a) => {
                let rads = self.spec.radicand_coords();
                tower::signum(a, rads, rads.len())
            }
            Value::Eps(r) => r.signum(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Total order of the field; errors on mismatched specs.
    pub fn compare(&self, other: &Scalar) -> Result<Ordering> {
        Ok(self.try_sub(other)?.signum())
    }

    /// The non-negative square root if it exists without extending the field.
    pub fn sqrt_in_field(&self) -> Result<Option<Scalar>> {
        let Value::Tower(a) = &self.value else {
            return Err(ScalarError::UnsupportedExtension(
                "square roots are not supported over Q(eps)".into(),
            ));
        };
        if self.is_negative() {
            return Err(ScalarError::NoRealRoot(self.to_string()));
        }
        let rads = self.spec.radicand_coords();
        Ok(tower::sqrt(a, rads, rads.len()).map(|r| self.with_value(Value::Tower(r)).abs()))
    }

    /// Returns a spec containing `sqrt(self)` and that root, which is
    /// non-negative. The spec gains one radicand exactly when `self` is not a
    /// square at its level.
    pub fn sqrt_adjoin(&self) -> Result<(FieldSpec, Scalar)> {
        if let Some(root) = self.sqrt_in_field()? {
            return Ok((self.spec.clone(), root));
        }
        let depth = self.spec.depth();
        // Rationals get their square part pulled out: sqrt(8) = 2 sqrt(2).
        let (coeff, radicand) = match self.as_rational() {
            Some(q) => {
                let (s, m) = tower::split_square_factor(&q);
                (
                    Scalar::from_rational(&self.spec, s),
                    Scalar::from_rational(&self.spec, BigRational::from_integer(m)),
                )
            }
            None => (Scalar::one(&self.spec), self.clone()),
        };
        let spec = self.spec.adjoin(&radicand)?;
        let root = &coeff.embed(&spec)? * &Scalar::sqrt_generator(&spec, depth)?;
        debug_assert_eq!(root.square(), self.embed(&spec)?);
        Ok((spec, root))
    }

    /// Like [`Scalar::sqrt_adjoin`] but refuses towers deeper than `cap`.
    pub fn sqrt_adjoin_capped(&self, cap: usize) -> Result<(FieldSpec, Scalar)> {
        let (spec, root) = self.sqrt_adjoin()?;
        if spec.depth() > cap && spec.depth() > self.spec.depth() {
            return Err(ScalarError::DepthCap { depth: spec.depth(), cap });
        }
        Ok((spec, root))
    }

    /// Moves the value into an extension of its field.
    pub fn embed(&self, target: &FieldSpec) -> Result<Scalar> {
        if &self.spec == target {
            return Ok(self.clone());
        }
        if !self.spec.is_subfield_of(target) {
            return Err(self.spec.mismatch(target));
        }
        let Value::Tower(c) = &self.value else { unreachable!("Q(eps) has no proper extensions here") };
        Ok(Scalar {
            spec: target.clone(),
            value: Value::Tower(tower::lift(c, target.depth())),
        })
    }

    /// `eps`-adic valuation over `Q(eps)`; `0` for non-zero scalars of
    /// Archimedean fields, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.value {
            Value::Tower(c) if tower::is_zero(c) => None,
            Value::Tower(_) => Some(0),
            Value::Eps(r) => r.valuation(),
        }
    }

    pub fn classify_magnitude(&self) -> MagnitudeClass {
        match self.valuation() {
            None => MagnitudeClass::Zero,
            Some(v) if v > 0 => MagnitudeClass::Infinitesimal,
            Some(0) => MagnitudeClass::Medial,
            Some(_) => MagnitudeClass::Infinite,
        }
    }

    /// The unique rational infinitely close to `self` over `Q(eps)` (finite
    /// elements only); the rational value itself over `Q`.
    pub fn standard_part(&self) -> Option<BigRational> {
        match &self.value {
            Value::Tower(c) => tower::as_rational(c).cloned(),
            Value::Eps(r) => r.standard_part(),
        }
    }

    /// Multiplies by `eps^k` (negative `k` divides).
    pub fn shift_eps(&self, k: i64) -> Result<Scalar> {
        let Value::Eps(r) = &self.value else {
            return Err(ScalarError::UnsupportedExtension(format!("no eps in {}", self.spec)));
        };
        let mono = Poly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        let one = Poly::constant(BigRational::one());
        let factor = if k >= 0 { RatFunc::new(mono, one) } else { RatFunc::new(one, mono) };
        Ok(self.with_value(Value::Eps(r.mul(&factor))))
    }

    /// Parses the scalar text grammar within `spec`.
    pub fn parse(text: &str, spec: &FieldSpec) -> Result<Scalar> {
        parse::parse(text, spec)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.spec)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.with_value(match &self.value {
            Value::Tower(a) => Value::Tower(tower::neg(a)),
            Value::Eps(a) => Value::Eps(a.neg()),
        })
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Exact sum of an iterator of scalars of `spec`.
pub fn sum<'a>(spec: &FieldSpec, items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    items.into_iter().fold(Scalar::zero(spec), |acc, x| &acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn compare_rationals() {
        let a = Scalar::from_ratio(&q(), 1, 3);
        let b = Scalar::from_ratio(&q(), 2, 5);
        assert_eq!(a.compare(&b), Ok(Ordering::Less));
    }

    #[test]
    fn compare_sqrt2_with_seven_fifths() {
        let (spec, s2) = Scalar::from_int(&q(), 2).sqrt_adjoin().unwrap();
        let r = Scalar::from_ratio(&spec, 7, 5);
        assert_eq!(s2.compare(&r), Ok(Ordering::Greater));
        // squared comparison agrees
        assert_eq!(s2.square().compare(&r.square()), Ok(Ordering::Greater));
    }

    #[test]
    fn eps_below_every_positive_rational() {
        let spec = FieldSpec::infinitesimal();
        let e = Scalar::eps(&spec).unwrap();
        let tiny = Scalar::from_ratio(&spec, 1, 1_000_000);
        assert_eq!(e.compare(&tiny), Ok(Ordering::Less));
        assert!(e.is_positive());
    }

    #[test]
    fn mismatched_specs_are_rejected() {
        let a = Scalar::from_int(&q(), 1);
        let b = Scalar::from_int(&FieldSpec::infinitesimal(), 1);
        assert!(matches!(a.compare(&b), Err(ScalarError::SpecMismatch { .. })));
        assert!(matches!(a.try_add(&b), Err(ScalarError::SpecMismatch { .. })));
    }

    #[test]
    fn sqrt_adjoin_perfect_square_keeps_spec() {
        let (spec, r) = Scalar::from_ratio(&q(), 9, 4).sqrt_adjoin().unwrap();
        assert_eq!(spec, q());
        assert_eq!(r, Scalar::from_ratio(&q(), 3, 2));
    }

    #[test]
    fn sqrt_adjoin_two_extends() {
        let two = Scalar::from_int(&q(), 2);
        let (spec, r) = two.sqrt_adjoin().unwrap();
        assert_eq!(spec.kind(), FieldKind::Tower);
        assert_eq!(spec.depth(), 1);
        assert_eq!(r.square(), two.embed(&spec).unwrap());
        assert!(r.is_positive());
    }

    #[test]
    fn sqrt_adjoin_negative_fails() {
        let m = Scalar::from_int(&q(), -1);
        assert!(matches!(m.sqrt_adjoin(), Err(ScalarError::NoRealRoot(_))));
    }

    #[test]
    fn sqrt_adjoin_over_eps_is_unsupported() {
        let spec = FieldSpec::infinitesimal();
        let e = Scalar::eps(&spec).unwrap();
        assert!(matches!(e.sqrt_adjoin(), Err(ScalarError::UnsupportedExtension(_))));
    }

    #[test]
    fn sqrt_of_eight_pulls_out_square() {
        let (spec, r) = Scalar::from_int(&q(), 8).sqrt_adjoin().unwrap();
        assert_eq!(spec.radicand(0).unwrap(), Scalar::from_int(&q(), 2));
        assert_eq!(r.to_string(), "2*sqrt1");
    }

    #[test]
    fn radicand_validation() {
        assert!(matches!(
            q().adjoin(&Scalar::from_int(&q(), 4)),
            Err(ScalarError::InvalidRadicand { .. })
        ));
        assert!(matches!(
            q().adjoin(&Scalar::from_int(&q(), -2)),
            Err(ScalarError::InvalidRadicand { .. })
        ));
        let s2 = q().adjoin(&Scalar::from_int(&q(), 2)).unwrap();
        // 8 = (2 sqrt 2)^2 is a square in Q(sqrt 2)
        assert!(s2.adjoin(&Scalar::from_int(&s2, 8)).is_err());
        assert!(s2.adjoin(&Scalar::from_int(&s2, 3)).is_ok());
    }

    #[test]
    fn magnitude_classes() {
        let spec = FieldSpec::infinitesimal();
        let e = Scalar::eps(&spec).unwrap();
        let one = Scalar::one(&spec);
        let two = Scalar::from_int(&spec, 2);
        assert_eq!((&two + &e).classify_magnitude(), MagnitudeClass::Medial);
        assert_eq!((&e / &(&one + &e)).classify_magnitude(), MagnitudeClass::Infinitesimal);
        assert_eq!(Scalar::zero(&spec).classify_magnitude(), MagnitudeClass::Zero);
        assert_eq!(e.inv().unwrap().classify_magnitude(), MagnitudeClass::Infinite);
        assert_eq!(Scalar::from_ratio(&q(), 1, 1000).classify_magnitude(), MagnitudeClass::Medial);
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let (spec, s2) = Scalar::from_int(&q(), 2).sqrt_adjoin().unwrap();
        let (spec3, s3) = Scalar::from_int(&spec, 3).sqrt_adjoin().unwrap();
        let s2e = s2.embed(&spec3).unwrap();
        assert_eq!((&s2e * &s3).square(), Scalar::from_int(&spec3, 6));
        assert!(s3.embed(&spec).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let spec = FieldSpec::infinitesimal();
        let x = &Scalar::eps(&spec).unwrap() + &Scalar::from_int(&spec, 3);
        assert_eq!(x.pow(3), &(&x * &x) * &x);
        assert!(x.pow(0).is_one());
    }
}
