//! Prime field GF(p) and small modular helpers.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `None` when `a ≡ 0`.
pub fn mod_inv(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(mod_pow(a, p - 2, p))
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group of GF(p).
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// An element of GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpOp {
    Add,
    Mul,
    Inv,
    Neg,
}

impl Fp {
    pub fn new(value: u64, modulus: u32) -> Result<Self> {
        if !is_prime(modulus as u64) {
            return Err(Error::NotPrime(modulus as u64));
        }
        Ok(Fp {
            value: (value % modulus as u64) as u32,
            modulus,
        })
    }

    pub fn from_i64(value: i64, modulus: u32) -> Result<Self> {
        Fp::new(value.rem_euclid(modulus as i64) as u64, modulus)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    fn same(self, other: Fp) -> Result<u64> {
        if self.modulus != other.modulus {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        } else {
            Ok(self.modulus as u64)
        }
    }

    pub fn add(self, other: Fp) -> Result<Fp> {
        let p = self.same(other)?;
        Ok(Fp {
            value: ((self.value as u64 + other.value as u64) % p) as u32,
            modulus: self.modulus,
        })
    }

    pub fn mul(self, other: Fp) -> Result<Fp> {
        let p = self.same(other)?;
        Ok(Fp {
            value: ((self.value as u64 * other.value as u64) % p) as u32,
            modulus: self.modulus,
        })
    }

    pub fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn inv(self) -> Result<Fp> {
        let v = mod_inv(self.value as u64, self.modulus as u64)
            .ok_or(Error::DivisionByZero(self.modulus))?;
        Ok(Fp {
            value: v as u32,
            modulus: self.modulus,
        })
    }

    pub fn pow(self, e: u64) -> Fp {
        Fp {
            value: mod_pow(self.value as u64, e, self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }

    /// Binary operations ignore `b` for the unary ops.
    pub fn apply(self, b: Fp, op: FpOp) -> Result<Fp> {
        match op {
            FpOp::Add => self.add(b),
            FpOp::Mul => self.mul(b),
            FpOp::Inv => self.inv(),
            FpOp::Neg => Ok(self.neg()),
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
