//! Coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    /// Field of characteristic `p`; `0` selects the rationals.
    pub fn from_characteristic(p: u64) -> Result<Self> {
        if p == 0 {
            return Ok(FieldSpec::Rationals);
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("modulus {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Coeff::Modular { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Coeff::Modular {
                value: n.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let r = n.mod_floor(&m);
                Coeff::Modular {
                    value: r.to_u32().expect("residue fits"),
                    modulus: *p,
                }
            }
        }
    }

    /// `num / den` in the field; `None` when `den` vanishes in the field.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Option<Coeff> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return None;
        }
        Some(self.from_bigint(num).mul(&d.inv()))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Modular residues carry their modulus so arithmetic needs no context;
/// mixing elements of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Coeff::Rational(_) => FieldSpec::Rationals,
            Coeff::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) if a.is_integer() && b.is_integer() => {
                Coeff::Rational(BigRational::from_integer(a.numer() + b.numer()))
            }
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q }) => {
                debug_assert_eq!(p, q);
                let s = *a as u64 + *b as u64;
                let p64 = *p as u64;
                Coeff::Modular {
                    value: if s >= p64 { (s - p64) as u32 } else { s as u32 },
                    modulus: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) if a.is_integer() && b.is_integer() => {
                Coeff::Rational(BigRational::from_integer(a.numer() * b.numer()))
            }
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q }) => {
                debug_assert_eq!(p, q);
                Coeff::Modular {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Coeff::Rational(a) => Coeff::Rational(a.recip()),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        }
    }

    pub fn div(&self, other: &Coeff) -> Coeff {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u64) -> Coeff {
        match self {
            Coeff::Rational(a) => {
                let mut acc = BigRational::one();
                let mut base = a.clone();
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc *= &base;
                    }
                    base = &base * &base;
                    e >>= 1;
                }
                Coeff::Rational(acc)
            }
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: pow_mod(*value as u64, e, *modulus as u64) as u32,
                modulus: *modulus,
            },
        }
    }

    /// True when the canonical rendering of the coefficient starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Rational(a) => a.is_negative(),
            Coeff::Modular { .. } => false,
        }
    }

    pub fn abs(&self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(a.abs()),
            m => m.clone(),
        }
    }

    pub fn denominator(&self) -> BigInt {
        match self {
            Coeff::Rational(a) => a.denom().clone(),
            Coeff::Modular { .. } => BigInt::one(),
        }
    }

    pub fn numerator(&self) -> BigInt {
        match self {
            Coeff::Rational(a) => a.numer().clone(),
            Coeff::Modular { value, .. } => BigInt::from(*value),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(a) if a.is_integer() => write!(f, "{}", a.numer()),
            Coeff::Rational(a) => write!(f, "{}/{}", a.numer(), a.denom()),
            Coeff::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_validation() {
        assert_eq!(FieldSpec::from_characteristic(0).unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::from_characteristic(2).unwrap(), FieldSpec::Prime(2));
        assert!(FieldSpec::from_characteristic(4).is_err());
        assert!(FieldSpec::from_characteristic(1).is_err());
        assert!(FieldSpec::from_characteristic(1 << 31).is_err());
        assert!(FieldSpec::from_characteristic(2147483647).is_ok());
    }

    #[test]
    fn modular_arithmetic() {
        let f = FieldSpec::Prime(7);
        let a = f.from_i64(3);
        let b = f.from_i64(-2);
        assert_eq!(a.add(&b), f.from_i64(1));
        assert_eq!(a.mul(&b), f.from_i64(1));
        assert_eq!(a.inv(), f.from_i64(5));
        assert_eq!(a.pow(6), f.one());
        assert!(f.fraction(&BigInt::from(1), &BigInt::from(14)).is_none());
    }

    #[test]
    fn large_modulus_does_not_overflow() {
        let f = FieldSpec::Prime(2147483647);
        let a = f.from_i64(-1);
        assert_eq!(a.mul(&a), f.one());
        assert_eq!(a.add(&a), f.from_i64(-2));
    }

    #[test]
    fn rational_display() {
        let f = FieldSpec::Rationals;
        let half = f.fraction(&BigInt::from(1), &BigInt::from(-2)).unwrap();
        assert_eq!(half.to_string(), "-1/2");
        assert!(half.is_negative());
        assert_eq!(half.mul(&f.from_i64(-4)).to_string(), "2");
    }
}
