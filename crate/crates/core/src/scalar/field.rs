//! The number field K = Q(sqrt2, sqrt3, omega).
//!
//! Elements are stored as coordinates in the Q-basis
//! `[1, √2, √3, √6, ω, √2ω, √3ω, √6ω]`. Most values met in practice are
//! rational, so the representation keeps a dedicated rational variant and
//! only boxes the full coordinate vector when an irrational part appears.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{rat, Rational, ScalarError};

/// Names of the basis vectors, in serialization order.
pub const BASIS_NAMES: [&str; 8] = ["1", "√2", "√3", "√6", "ω", "√2ω", "√3ω", "√6ω"];

// Products of the biquadratic basis {1, √2, √3, √6}: (scale, index).
const BIQUAD: [[(i64, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (2, 0), (1, 3), (2, 2)],
    [(1, 2), (1, 3), (3, 0), (3, 1)],
    [(1, 3), (2, 2), (3, 1), (6, 0)],
];

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(Rational),
    Gen(Box<[Rational; 8]>),
}

/// An element of K. Canonical: the rational variant is used exactly when all
/// irrational coordinates vanish, so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem(Repr);

fn zero8() -> [Rational; 8] {
    std::array::from_fn(|_| Rational::zero())
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem(Repr::Rat(Rational::zero()))
    }

    pub fn one() -> Self {
        FieldElem(Repr::Rat(Rational::one()))
    }

    pub fn from_rational(q: Rational) -> Self {
        FieldElem(Repr::Rat(q))
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem(Repr::Rat(Rational::from_integer(BigInt::from(n))))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        FieldElem(Repr::Rat(rat(n, d)))
    }

    /// Builds an element from its eight coordinates.
    pub fn from_coords(c: [Rational; 8]) -> Self {
        FieldElem(Repr::Gen(Box::new(c))).normalized()
    }

    fn basis(k: usize) -> Self {
        let mut c = zero8();
        c[k] = Rational::one();
        Self::from_coords(c)
    }

    pub fn sqrt2() -> Self {
        Self::basis(1)
    }

    pub fn sqrt3() -> Self {
        Self::basis(2)
    }

    pub fn sqrt6() -> Self {
        Self::basis(3)
    }

    /// Primitive cube root of unity, ω² + ω + 1 = 0.
    pub fn omega() -> Self {
        Self::basis(4)
    }

    /// The imaginary unit i = (2ω + 1)/√3.
    pub fn imag_unit() -> Self {
        // (2ω+1)/√3 = (2ω+1)·√3/3
        let mut c = zero8();
        c[2] = rat(1, 3);
        c[6] = rat(2, 3);
        Self::from_coords(c)
    }

    pub fn coords(&self) -> [Rational; 8] {
        match &self.0 {
            Repr::Rat(q) => {
                let mut c = zero8();
                c[0] = q.clone();
                c
            }
            Repr::Gen(c) => (**c).clone(),
        }
    }

    fn normalized(self) -> Self {
        match self.0 {
            Repr::Gen(c) if c[1..].iter().all(Zero::is_zero) => {
                let [q, ..] = *c;
                FieldElem(Repr::Rat(q))
            }
            r => FieldElem(r),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Gen(_) => None,
        }
    }

    /// Returns the value as an integer when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.as_integer().and_then(|n| n.to_i64())
    }

    /// True when the element lies in the real subfield Q(√2, √3).
    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Rat(_) => true,
            Repr::Gen(c) => c[4..].iter().all(Zero::is_zero),
        }
    }

    /// Complex conjugation: fixes √2, √3 and sends ω to ω² = -1 - ω.
    pub fn conj(&self) -> Self {
        match &self.0 {
            Repr::Rat(_) => self.clone(),
            Repr::Gen(c) => {
                let mut out = zero8();
                for k in 0..4 {
                    out[k] = &c[k] - &c[k + 4];
                    out[k + 4] = -&c[k + 4];
                }
                Self::from_coords(out)
            }
        }
    }

    /// Real part, an element of Q(√2, √3).
    pub fn re(&self) -> Self {
        // a + bω = (a - b/2) + i·(√3 b/2)
        match &self.0 {
            Repr::Rat(_) => self.clone(),
            Repr::Gen(c) => {
                let half = rat(1, 2);
                let mut out = zero8();
                for k in 0..4 {
                    out[k] = &c[k] - &(&c[k + 4] * &half);
                }
                Self::from_coords(out)
            }
        }
    }

    /// Imaginary part y with self = re + i·y, y in Q(√2, √3).
    pub fn im(&self) -> Self {
        match &self.0 {
            Repr::Rat(_) => Self::zero(),
            Repr::Gen(c) => {
                let mut b = zero8();
                b[..4].clone_from_slice(&c[4..]);
                let b = Self::from_coords(b);
                &(&b * &Self::sqrt3()) * &Self::frac(1, 2)
            }
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Repr::Rat(q) = &self.0 {
            return Ok(FieldElem(Repr::Rat(q.recip())));
        }
        let c = self.coords();
        let a: [Rational; 4] = std::array::from_fn(|k| c[k].clone());
        let b: [Rational; 4] = std::array::from_fn(|k| c[k + 4].clone());
        // (a + bω)(a - b - bω) = a² - ab + b²
        let norm = bq_add(&bq_sub(&bq_mul(&a, &a), &bq_mul(&a, &b)), &bq_mul(&b, &b));
        let ninv = bq_inv(&norm);
        let re = bq_mul(&bq_sub(&a, &b), &ninv);
        let om = bq_mul(&bq_neg(&b), &ninv);
        let mut out = zero8();
        out[..4].clone_from_slice(&re);
        out[4..].clone_from_slice(&om);
        Ok(Self::from_coords(out))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sign of a rational value; None for irrational elements.
    pub fn rational_sign(&self) -> Option<Ordering> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                Ordering::Equal
            } else if q.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        })
    }

    /// Coordinates as "p/q" strings in basis order.
    pub fn to_strings(&self) -> [String; 8] {
        let c = self.coords();
        std::array::from_fn(|k| format!("{}/{}", c[k].numer(), c[k].denom()))
    }

    pub fn from_strings<S: AsRef<str>>(parts: &[S]) -> Result<Self, ScalarError> {
        if parts.len() != 8 {
            return Err(ScalarError::Parse(format!(
                "expected 8 coordinates, got {}",
                parts.len()
            )));
        }
        let mut c = zero8();
        for (slot, s) in c.iter_mut().zip(parts) {
            *slot = parse_rational(s.as_ref())?;
        }
        Ok(Self::from_coords(c))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

fn bq_mul(a: &[Rational; 4], b: &[Rational; 4]) -> [Rational; 4] {
    let mut out: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let (s, t) = BIQUAD[i][j];
            out[t] += x * y * Rational::from_integer(s.into());
        }
    }
    out
}

fn bq_add(a: &[Rational; 4], b: &[Rational; 4]) -> [Rational; 4] {
    std::array::from_fn(|k| &a[k] + &b[k])
}

fn bq_sub(a: &[Rational; 4], b: &[Rational; 4]) -> [Rational; 4] {
    std::array::from_fn(|k| &a[k] - &b[k])
}

fn bq_neg(a: &[Rational; 4]) -> [Rational; 4] {
    std::array::from_fn(|k| -&a[k])
}

// Inverse in Q(√2,√3): write x = p + q√3 with p, q in Q(√2).
fn bq_inv(x: &[Rational; 4]) -> [Rational; 4] {
    let conj3: [Rational; 4] = [x[0].clone(), x[1].clone(), -&x[2], -&x[3]];
    let n = bq_mul(x, &conj3); // lies in Q(√2)
    debug_assert!(n[2].is_zero() && n[3].is_zero());
    let (r, s) = (&n[0], &n[1]);
    let d = r * r - s * s * rat(2, 1);
    let n_inv = [r / &d, -(s / &d), Rational::zero(), Rational::zero()];
    bq_mul(&conj3, &n_inv)
}

impl Default for FieldElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for FieldElem {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => FieldElem(Repr::Rat(a + b)),
            _ => {
                let (a, b) = (self.coords(), rhs.coords());
                FieldElem::from_coords(std::array::from_fn(|k| &a[k] + &b[k]))
            }
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => FieldElem(Repr::Rat(a - b)),
            _ => {
                let (a, b) = (self.coords(), rhs.coords());
                FieldElem::from_coords(std::array::from_fn(|k| &a[k] - &b[k]))
            }
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => FieldElem(Repr::Rat(a * b)),
            (Repr::Rat(a), Repr::Gen(c)) | (Repr::Gen(c), Repr::Rat(a)) => {
                if a.is_zero() {
                    return FieldElem::zero();
                }
                FieldElem::from_coords(std::array::from_fn(|k| &c[k] * a))
            }
            (Repr::Gen(x), Repr::Gen(y)) => {
                let mut out = zero8();
                for (i, a) in x.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in y.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let (s, t) = BIQUAD[i % 4][j % 4];
                        let v = a * b * Rational::from_integer(s.into());
                        match (i >= 4, j >= 4) {
                            (false, false) => out[t] += v,
                            (true, true) => {
                                // ω² = -1 - ω
                                out[t] -= &v;
                                out[t + 4] -= v;
                            }
                            _ => out[t + 4] += v,
                        }
                    }
                }
                FieldElem::from_coords(out)
            }
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    /// Panics on division by zero; use [`FieldElem::inv`] for a fallible path.
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.inv().expect("division by zero in K")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match &self.0 {
            Repr::Rat(q) => FieldElem(Repr::Rat(-q)),
            Repr::Gen(c) => FieldElem(Repr::Gen(Box::new(std::array::from_fn(|k| -&c[k])))),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &FieldElem) {
        if rhs.is_zero() {
            return;
        }
        if let (Repr::Rat(a), Repr::Rat(b)) = (&mut self.0, &rhs.0) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &FieldElem) {
        if rhs.is_zero() {
            return;
        }
        if let (Repr::Rat(a), Repr::Rat(b)) = (&mut self.0, &rhs.0) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, rhs: &FieldElem) {
        *self = &*self * rhs;
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(q) => write!(f, "{q}"),
            Repr::Gen(c) => {
                let mut first = true;
                for (k, q) in c.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    if k == 0 {
                        write!(f, "{q}")?;
                    } else if q.is_one() {
                        write!(f, "{}", BASIS_NAMES[k])?;
                    } else {
                        write!(f, "({q}){}", BASIS_NAMES[k])?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        FieldElem::from_strings(&parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_relations() {
        assert_eq!(FieldElem::sqrt2() * FieldElem::sqrt3(), FieldElem::sqrt6());
        let w = FieldElem::omega();
        assert_eq!(&w * &w, -FieldElem::one() - w.clone());
        assert_eq!(w.pow(3), FieldElem::one());
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let two_w_plus_one = FieldElem::omega() * FieldElem::from_int(2) + FieldElem::one();
        assert_eq!(&two_w_plus_one * &two_w_plus_one, FieldElem::from_int(-3));
        let i = two_w_plus_one / FieldElem::sqrt3();
        assert_eq!(i, FieldElem::imag_unit());
        assert_eq!(&i * &i, FieldElem::from_int(-1));
    }

    #[test]
    fn inverses() {
        assert_eq!(FieldElem::one().inv().unwrap(), FieldElem::one());
        assert_eq!(
            FieldElem::sqrt2().inv().unwrap(),
            FieldElem::sqrt2() * FieldElem::frac(1, 2)
        );
        let one_plus_w = FieldElem::one() + FieldElem::omega();
        assert_eq!(one_plus_w.inv().unwrap(), -FieldElem::omega());
        assert_eq!(FieldElem::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn real_and_imaginary_parts() {
        let i = FieldElem::imag_unit();
        let z = FieldElem::sqrt2() + &i * &FieldElem::sqrt6();
        assert_eq!(z.re(), FieldElem::sqrt2());
        assert_eq!(z.im(), FieldElem::sqrt6());
        assert_eq!(z.conj(), FieldElem::sqrt2() - &i * &FieldElem::sqrt6());
        assert!(FieldElem::sqrt6().is_real());
        assert!(!i.is_real());
    }

    #[test]
    fn string_round_trip() {
        let z = FieldElem::frac(-3, 7) + FieldElem::omega() * FieldElem::sqrt6();
        let s = z.to_strings();
        assert_eq!(s[0], "-3/7");
        assert_eq!(s[7], "1/1");
        assert_eq!(FieldElem::from_strings(&s).unwrap(), z);
        let json = serde_json::to_string(&FieldElem::one()).unwrap();
        assert_eq!(json, r#"["1/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1"]"#);
    }
}
