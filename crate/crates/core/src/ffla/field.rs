use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// The prime field `GF(p)`. Elements are plain `u32` values in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p as u64))
        }
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }

    pub fn check(self, value: u64) -> Result<u32> {
        if value < self.p as u64 {
            Ok(value as u32)
        } else {
            Err(Error::EntryOutOfRange { value, p: self.p })
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A single element of `GF(p)` that carries its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FFScalar {
    field: PrimeField,
    value: u32,
}

impl FFScalar {
    pub fn new(field: PrimeField, value: u64) -> Self {
        Self {
            field,
            value: (value % field.modulus() as u64) as u32,
        }
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn inv(self) -> Option<Self> {
        self.field
            .inv(self.value)
            .map(|value| Self { value, ..self })
    }

    fn same_field(self, rhs: Self) {
        assert_eq!(self.field, rhs.field, "scalars from different fields");
    }
}

impl Add for FFScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.same_field(rhs);
        Self {
            value: self.field.add(self.value, rhs.value),
            ..self
        }
    }
}

impl Sub for FFScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(rhs);
        Self {
            value: self.field.sub(self.value, rhs.value),
            ..self
        }
    }
}

impl Mul for FFScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(rhs);
        Self {
            value: self.field.mul(self.value, rhs.value),
            ..self
        }
    }
}

impl Neg for FFScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: self.field.neg(self.value),
            ..self
        }
    }
}

impl fmt::Display for FFScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
