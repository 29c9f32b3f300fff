use std::fmt;

use serde::{Deserialize, Serialize};

use super::LinalgError;

/// The coefficient ring Z/m for a prime power m = p^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus {
    m: u64,
    p: u64,
    k: u32,
}

impl Modulus {
    /// Largest supported modulus; products of two residues must fit in a `u64`.
    pub const MAX: u64 = 1 << 31;

    pub fn new(m: u64) -> Result<Self, LinalgError> {
        if m < 2 || m > Self::MAX {
            return Err(LinalgError::InvalidModulus(m));
        }
        let p = smallest_prime_factor(m);
        let mut rest = m;
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(LinalgError::InvalidModulus(m));
        }
        Ok(Modulus { m, p, k })
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn is_field(&self) -> bool {
        self.k == 1
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.m
    }

    #[inline]
    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.m as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.m
    }

    /// p-adic valuation of a residue; zero has valuation k.
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.m;
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    #[inline]
    pub fn is_unit(&self, a: u64) -> bool {
        a % self.p != 0
    }

    /// p^e as an integer (e ≤ k).
    pub fn p_pow(&self, e: u32) -> u64 {
        self.p.pow(e)
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let (mut old_r, mut r) = (a as i64, self.m as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        Some(self.from_i64(old_s))
    }

    /// Writes a nonzero residue as `p^v * u` with `u` a unit; returns `(v, u)`.
    pub fn split(&self, a: u64) -> (u32, u64) {
        let v = self.valuation(a);
        if v == self.k {
            return (v, 0);
        }
        // any u with p^v u ≡ a works; take the integer quotient
        (v, (a % self.m) / self.p_pow(v))
    }

    /// Exact division of `a` by `p^v`, assuming `p^v | a` as residues.
    pub fn div_p_pow(&self, a: u64, v: u32) -> u64 {
        debug_assert!(self.valuation(a) >= v);
        (a % self.m) / self.p_pow(v)
    }

    /// Additive order of a residue, a power of p.
    pub fn additive_order(&self, a: u64) -> u64 {
        self.p_pow(self.k - self.valuation(a))
    }

    pub fn ensure_same(&self, other: &Modulus) -> Result<(), LinalgError> {
        if self != other {
            Err(LinalgError::ModulusMismatch {
                left: self.m,
                right: other.m,
            })
        } else {
            Ok(())
        }
    }
}

impl TryFrom<u64> for Modulus {
    type Error = LinalgError;

    fn try_from(m: u64) -> Result<Self, Self::Error> {
        Modulus::new(m)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.m
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.m)
    }
}

fn smallest_prime_factor(m: u64) -> u64 {
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return d;
        }
        d += 1;
    }
    m
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u64,
    modulus: Modulus,
}

impl Scalar {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        Scalar {
            value: modulus.from_i64(value),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn add(self, other: Scalar) -> Result<Scalar, LinalgError> {
        self.modulus.ensure_same(&other.modulus)?;
        Ok(Scalar {
            value: self.modulus.add(self.value, other.value),
            modulus: self.modulus,
        })
    }

    pub fn mul(self, other: Scalar) -> Result<Scalar, LinalgError> {
        self.modulus.ensure_same(&other.modulus)?;
        Ok(Scalar {
            value: self.modulus.mul(self.value, other.value),
            modulus: self.modulus,
        })
    }

    pub fn neg(self) -> Scalar {
        Scalar {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }

    pub fn inverse(self) -> Option<Scalar> {
        self.modulus.inverse(self.value).map(|value| Scalar {
            value,
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus.m)
    }
}
