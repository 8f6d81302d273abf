//! Exact ground fields: the rationals and prime fields `F_p` with `p < 2^31`.
//!
//! A [`Scalar`] carries enough information to do arithmetic on its own
//! (prime-field elements remember their modulus), so matrices and polynomials
//! can be manipulated without threading a field handle through every call.
//! Mixing scalars of different fields is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Parses `q`, `Q`, `fp:<p>` or a bare prime.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("fp:")
            .or_else(|| s.strip_prefix("F_"))
            .or_else(|| s.strip_prefix("GF"))
            .unwrap_or(s);
        match digits.parse::<u32>() {
            Ok(p) => FieldSpec::prime(p),
            Err(_) => Err(Error::InvalidField(format!("unrecognized field `{s}`"))),
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Modular {
                value: 0,
                modulus: *p,
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
        }
    }

    /// Builds `num/den`; fails when the denominator vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            FieldSpec::Prime(p) => {
                let n = reduce_bigint(num, *p);
                let d = reduce_bigint(den, *p);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                let n = Scalar::Modular {
                    value: n,
                    modulus: *p,
                };
                let d = Scalar::Modular {
                    value: d,
                    modulus: *p,
                };
                Ok(n * d.inv())
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::Prime(p), Scalar::Modular { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u32) -> u32 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() {
        r + BigInt::from(p)
    } else {
        r
    };
    r.to_u32().expect("residue fits in u32")
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element in canonical form: a reduced fraction, or a residue in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Rational(r.recip())
            }
            Scalar::Modular { value, modulus } => {
                assert!(*value != 0, "inverse of zero");
                // Fermat: a^(p-2)
                Scalar::Modular {
                    value: pow_mod(*value, modulus - 2, *modulus),
                    modulus: *modulus,
                }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Canonical rendering used in reports: `a`, `-a`, `a/b` or a residue.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn pow_mod(base: u32, mut e: u32, m: u32) -> u32 {
    let m64 = m as u64;
    let mut b = base as u64 % m64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m64;
        }
        b = b * b % m64;
        e >>= 1;
    }
    acc as u32
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only for deterministic sorting.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => a.cmp(b),
            (Scalar::Rational(_), _) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

fn mismatch() -> ! {
    panic!("arithmetic on scalars from different fields")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                if p != q {
                    mismatch()
                }
                let s = *a as u64 + *b as u64;
                Scalar::Modular {
                    value: (s % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                if p != q {
                    mismatch()
                }
                let s = *a as u64 + (*p - *b) as u64;
                Scalar::Modular {
                    value: (s % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                if p != q {
                    mismatch()
                }
                let s = *a as u64 * *b as u64;
                Scalar::Modular {
                    value: (s % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let two = f.from_i64(2);
        let three = f.from_i64(3);
        assert!((&two + &three).is_zero());
        assert_eq!(&two * &three, f.from_i64(1));
        assert_eq!(two.inv(), three);
        assert_eq!(-&two, three);
        assert_eq!(f.from_i64(-1), f.from_i64(4));
    }

    #[test]
    fn rationals_are_reduced() {
        let q = FieldSpec::Rationals;
        let a = q.from_ratio(&BigInt::from(2), &BigInt::from(4)).unwrap();
        assert_eq!(a.to_string(), "1/2");
        assert_eq!((&a + &a).to_string(), "1");
        assert_eq!(q.from_i64(-3).to_string(), "-3");
    }

    #[test]
    fn ratio_in_prime_field() {
        let f = FieldSpec::prime(101).unwrap();
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(&half * &f.from_i64(2), f.one());
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(101)).is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(FieldSpec::prime(100).is_err());
        assert!(FieldSpec::parse("fp:101").is_ok());
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
    }
}
