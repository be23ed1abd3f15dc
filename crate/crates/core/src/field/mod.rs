//! Exact scalar fields: the rationals, prime fields and towers of simple
//! algebraic extensions.
//!
//! A [`Field`] is a cheap, shareable descriptor; every [`FieldElement`] carries
//! the descriptor it belongs to, so mixing elements of different fields is
//! detected at runtime. Extensions nest: an element of `K(θ)` is a coefficient
//! vector over `K`, always reduced modulo the minimal polynomial of `θ`.

mod factor;
mod unipoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub use factor::{find_irreducible, Factorization};
pub(crate) use unipoly::format_terms;
pub use unipoly::UniPoly;

#[derive(Debug)]
enum FieldKind {
    Rationals,
    Prime(u64),
    Extension {
        base: Field,
        modulus: UniPoly,
        name: Arc<str>,
    },
}

/// Descriptor of a computable field.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldKind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldKind::Rationals, FieldKind::Rationals) => true,
            (FieldKind::Prime(p), FieldKind::Prime(q)) => p == q,
            (
                FieldKind::Extension {
                    base: b1,
                    modulus: m1,
                    ..
                },
                FieldKind::Extension {
                    base: b2,
                    modulus: m2,
                    ..
                },
            ) => b1 == b2 && m1.coeffs() == m2.coeffs(),
            _ => false,
        }
    }
}

impl Eq for Field {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    /// The prime field with `p` elements; `p` must be a prime below 2^62.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 62 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// Adjoins a root of `modulus` to `self`.
    ///
    /// The modulus must be monic of degree at least two and pass the
    /// irreducibility check available for the base field: complete over
    /// finite fields, root search plus the degree ≤ 3 criterion over ℚ.
    pub fn extension(&self, modulus: UniPoly, name: &str) -> Result<Field> {
        if modulus.field() != self {
            return Err(Error::DescriptorMismatch(
                "minimal polynomial lives over another field".into(),
            ));
        }
        let deg = modulus.degree().unwrap_or(0);
        if deg < 2 {
            return Err(Error::InvalidModulus(format!(
                "{modulus} has degree below 2"
            )));
        }
        if !modulus.leading().is_one() {
            return Err(Error::InvalidModulus(format!("{modulus} is not monic")));
        }
        factor::check_irreducible(&modulus)?;
        Ok(self.extension_unchecked(modulus, name))
    }

    /// Adjoins a root of a modulus already known to be irreducible.
    pub(crate) fn extension_unchecked(&self, modulus: UniPoly, name: &str) -> Field {
        debug_assert!(modulus.leading().is_one());
        Field(Arc::new(FieldKind::Extension {
            base: self.clone(),
            modulus,
            name: Arc::from(name),
        }))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(*self.0, FieldKind::Rationals)
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Characteristic of the field, zero for extensions of ℚ.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { base, .. } => base.characteristic(),
        }
    }

    /// Degree over the prime field (ℚ or 𝔽_p).
    pub fn absolute_degree(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { base, modulus, .. } => {
                base.absolute_degree() * modulus.degree().unwrap_or(1)
            }
            _ => 1,
        }
    }

    /// Degree of the topmost extension level (1 for prime fields).
    pub fn relative_degree(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { modulus, .. } => modulus.degree().unwrap_or(1),
            _ => 1,
        }
    }

    /// Number of extension levels above the prime field.
    pub fn depth(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { base, .. } => 1 + base.depth(),
            _ => 0,
        }
    }

    /// Number of elements, `None` in characteristic zero.
    pub fn order(&self) -> Option<BigUint> {
        let p = self.characteristic();
        if p == 0 {
            None
        } else {
            Some(BigUint::from(p).pow(self.absolute_degree() as u32))
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldKind::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&UniPoly> {
        match &*self.0 {
            FieldKind::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match &*self.0 {
            FieldKind::Extension { name, .. } => Some(name),
            _ => None,
        }
    }

    /// True if `self` is `other` or an extension tower built on top of it.
    pub fn contains_subfield(&self, other: &Field) -> bool {
        if self == other {
            return true;
        }
        match self.base() {
            Some(b) => b.contains_subfield(other),
            None => false,
        }
    }

    pub fn zero(&self) -> FieldElement {
        let value = match &*self.0 {
            FieldKind::Rationals => Value::Rational(BigRational::zero()),
            FieldKind::Prime(_) => Value::Residue(0),
            FieldKind::Extension { base, modulus, .. } => {
                Value::Vector(vec![base.zero(); modulus.degree().unwrap()])
            }
        };
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let value = match &*self.0 {
            FieldKind::Rationals => Value::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => Value::Residue(reduce_bigint(n, *p)),
            FieldKind::Extension { base, modulus, .. } => {
                let mut v = vec![base.zero(); modulus.degree().unwrap()];
                v[0] = base.from_bigint(n);
                Value::Vector(v)
            }
        };
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    /// Image of a rational number; fails when the denominator vanishes in
    /// positive characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        if self.is_rationals() {
            return Ok(FieldElement {
                field: self.clone(),
                value: Value::Rational(q.clone()),
            });
        }
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        n.checked_div(&d)
    }

    /// The adjoined root of the top extension level.
    pub fn generator(&self) -> Option<FieldElement> {
        match &*self.0 {
            FieldKind::Extension { base, modulus, .. } => {
                let mut v = vec![base.zero(); modulus.degree().unwrap()];
                v[1] = base.one();
                Some(FieldElement {
                    field: self.clone(),
                    value: Value::Vector(v),
                })
            }
            _ => None,
        }
    }

    /// Builds an element of an extension from its coordinates over the base.
    pub fn from_coords(&self, coords: Vec<FieldElement>) -> Result<FieldElement> {
        let (base, modulus) = match &*self.0 {
            FieldKind::Extension { base, modulus, .. } => (base, modulus),
            _ => {
                return Err(Error::DescriptorMismatch(format!(
                    "{self} has no coordinate representation"
                )))
            }
        };
        if coords.iter().any(|c| c.field() != base) {
            return Err(Error::DescriptorMismatch(
                "coordinates must live in the base field".into(),
            ));
        }
        let poly = UniPoly::new(base.clone(), coords, "t");
        let reduced = poly.rem(modulus);
        Ok(self.element_of_base_poly(&reduced))
    }

    /// Class of a polynomial over the base, already reduced.
    pub(crate) fn element_of_base_poly(&self, poly: &UniPoly) -> FieldElement {
        let (base, modulus) = match &*self.0 {
            FieldKind::Extension { base, modulus, .. } => (base, modulus),
            _ => unreachable!("element_of_base_poly on a prime field"),
        };
        let deg = modulus.degree().unwrap();
        let mut v = poly.coeffs().to_vec();
        debug_assert!(v.len() <= deg);
        v.resize(deg, base.zero());
        FieldElement {
            field: self.clone(),
            value: Value::Vector(v),
        }
    }

    /// Element number `n` in a fixed enumeration of a finite field.
    pub fn element_from_index(&self, n: &BigUint) -> FieldElement {
        match &*self.0 {
            FieldKind::Rationals => self.from_bigint(&BigInt::from(n.clone())),
            FieldKind::Prime(p) => FieldElement {
                field: self.clone(),
                value: Value::Residue((n % BigUint::from(*p)).to_u64().unwrap()),
            },
            FieldKind::Extension { base, modulus, .. } => {
                let q = base.order().expect("enumeration of an infinite field");
                let mut rest = n.clone();
                let mut v = Vec::new();
                for _ in 0..modulus.degree().unwrap() {
                    let (quo, r) = rest.div_rem(&q);
                    v.push(base.element_from_index(&r));
                    rest = quo;
                }
                FieldElement {
                    field: self.clone(),
                    value: Value::Vector(v),
                }
            }
        }
    }

    /// Uniform element of a finite field; over ℚ a small random fraction.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        match &*self.0 {
            FieldKind::Rationals => {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = if rng.gen_bool(0.7) {
                    1
                } else {
                    rng.gen_range(1..=5)
                };
                FieldElement {
                    field: self.clone(),
                    value: Value::Rational(BigRational::new(n.into(), d.into())),
                }
            }
            FieldKind::Prime(p) => FieldElement {
                field: self.clone(),
                value: Value::Residue(rng.gen_range(0..*p)),
            },
            FieldKind::Extension { base, modulus, .. } => FieldElement {
                field: self.clone(),
                value: Value::Vector(
                    (0..modulus.degree().unwrap())
                        .map(|_| base.random_element(rng))
                        .collect(),
                ),
            },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.random_element(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
            FieldKind::Extension {
                base,
                modulus,
                name,
            } => write!(f, "{base}[{name}]/({})", modulus.with_var(name)),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

#[derive(Clone, Debug, PartialEq)]
enum Value {
    Rational(BigRational),
    Residue(u64),
    Vector(Vec<FieldElement>),
}

/// An element of a [`Field`] in canonical form.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for FieldElement {}

/// Binary operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic entry point: validates descriptors before combining.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if a.field != b.field {
        return Err(Error::DescriptorMismatch(format!(
            "{} vs {}",
            a.field, b.field
        )));
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Vector(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_one(),
            Value::Residue(r) => *r == 1,
            Value::Vector(v) => v[0].is_one() && v[1..].iter().all(|c| c.is_zero()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.value {
            Value::Residue(r) => Some(*r),
            _ => None,
        }
    }

    /// Coordinates over the base field of an extension element.
    pub fn coords(&self) -> Option<&[FieldElement]> {
        match &self.value {
            Value::Vector(v) => Some(v),
            _ => None,
        }
    }

    /// True for negative rationals; used only for pretty printing.
    pub(crate) fn prints_negative(&self) -> bool {
        matches!(&self.value, Value::Rational(q) if q.is_negative())
    }

    fn same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(q) => Value::Rational(q.recip()),
            Value::Residue(r) => {
                let p = self.field.characteristic();
                Value::Residue(inv_mod(*r, p).ok_or(Error::DivisionByZero)?)
            }
            Value::Vector(v) => {
                let modulus = self.field.modulus().unwrap();
                let a = UniPoly::new(self.field.base().unwrap().clone(), v.clone(), "t");
                let (g, s, _) = a.ext_gcd(modulus);
                // g is a nonzero constant because the modulus is irreducible
                let ginv = g.coeff(0).inv()?;
                let s = s.scale(&ginv).rem(modulus);
                return Ok(self.field.element_of_base_poly(&s));
            }
        };
        Ok(FieldElement {
            field: self.field.clone(),
            value,
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other);
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.pow_big(&BigUint::from(e))
    }

    pub fn pow_big(&self, e: &BigUint) -> FieldElement {
        let mut result = self.field.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = &result * &result;
            if e.bit(i) {
                result = &result * self;
            }
        }
        result
    }

    /// The unique p-th root in a finite field of characteristic p.
    pub fn frobenius_root(&self) -> FieldElement {
        let p = self.field.characteristic();
        assert!(p != 0, "p-th roots are only defined here for finite fields");
        let n = self.field.absolute_degree() as u32;
        if n == 1 {
            return self.clone();
        }
        self.pow_big(&BigUint::from(p).pow(n - 1))
    }

    /// Embeds `self` into `target`, which must be a tower over `self.field()`.
    pub fn lift_into(&self, target: &Field) -> Result<FieldElement> {
        if &self.field == target {
            return Ok(self.clone());
        }
        match target.base() {
            Some(base) => {
                let inner = self.lift_into(base)?;
                let deg = target.relative_degree();
                let mut v = vec![base.zero(); deg];
                v[0] = inner;
                Ok(FieldElement {
                    field: target.clone(),
                    value: Value::Vector(v),
                })
            }
            None => Err(Error::DescriptorMismatch(format!(
                "{} does not embed into {}",
                self.field, target
            ))),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        let value = match (&self.value, &rhs.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.characteristic();
                Value::Residue(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Value::Vector(a), Value::Vector(b)) => {
                Value::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!(),
        };
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(-a),
            Value::Residue(a) => {
                let p = self.field.characteristic();
                Value::Residue(if *a == 0 { 0 } else { p - a })
            }
            Value::Vector(a) => Value::Vector(a.iter().map(|x| -x).collect()),
        };
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        let value = match (&self.value, &rhs.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Residue(a), Value::Residue(b)) => {
                Value::Residue(mul_mod(*a, *b, self.field.characteristic()))
            }
            (Value::Vector(a), Value::Vector(b)) => {
                let base = self.field.base().unwrap();
                let pa = UniPoly::new(base.clone(), a.clone(), "t");
                let pb = UniPoly::new(base.clone(), b.clone(), "t");
                let prod = pa.mul(&pb).rem(self.field.modulus().unwrap());
                return self.field.element_of_base_poly(&prod);
            }
            _ => unreachable!(),
        };
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Residue(r) => write!(f, "{r}"),
            Value::Vector(v) => {
                write!(f, "[")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}
