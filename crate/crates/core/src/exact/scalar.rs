use std::fmt;

use crate::error::{Error, Result};

/// A validated prime modulus below 2^16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub const MAX: u64 = u16::MAX as u64;

    pub fn new(p: u64) -> Result<Self> {
        if p > Self::MAX {
            return Err(Error::PrimeTooLarge(p));
        }
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces any signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// `acc + a * b`
    #[inline]
    pub fn mul_add(self, acc: u32, a: u32, b: u32) -> u32 {
        ((acc as u64 + a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.0) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0 as u64 - 2))
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue modulo a prime, carrying its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    modulus: Prime,
}

// Arithmetic returns `Result` because mixed moduli are an error, so these cannot be the operator traits.
#[allow(clippy::should_implement_trait)]
impl Scalar {
    pub fn new(value: i64, modulus: Prime) -> Self {
        Scalar { value: modulus.reduce(value), modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: Scalar) -> Result<Prime> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), other.modulus.get()));
        }
        Ok(self.modulus)
    }

    pub fn add(self, other: Scalar) -> Result<Scalar> {
        let p = self.check(other)?;
        Ok(Scalar { value: p.add(self.value, other.value), modulus: p })
    }

    pub fn sub(self, other: Scalar) -> Result<Scalar> {
        let p = self.check(other)?;
        Ok(Scalar { value: p.sub(self.value, other.value), modulus: p })
    }

    pub fn mul(self, other: Scalar) -> Result<Scalar> {
        let p = self.check(other)?;
        Ok(Scalar { value: p.mul(self.value, other.value), modulus: p })
    }

    pub fn div(self, other: Scalar) -> Result<Scalar> {
        let p = self.check(other)?;
        let inv = p.inv(other.value)?;
        Ok(Scalar { value: p.mul(self.value, inv), modulus: p })
    }

    pub fn neg(self) -> Scalar {
        Scalar { value: self.modulus.neg(self.value), modulus: self.modulus }
    }

    pub fn inv(self) -> Result<Scalar> {
        Ok(Scalar { value: self.modulus.inv(self.value)?, modulus: self.modulus })
    }

    pub fn pow(self, exp: u64) -> Scalar {
        Scalar { value: self.modulus.pow(self.value, exp), modulus: self.modulus }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}
