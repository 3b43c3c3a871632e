//! Lattice points, the exponent `b`, and the generalized gcd.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::factor::factor_u64;
use super::sieve::SpfSieve;
use crate::error::{Error, Result};

/// A point `(r, s)` of `ℕ × ℕ`; both coordinates are at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    r: u64,
    s: u64,
}

impl LatticePoint {
    pub fn new(r: u64, s: u64) -> Result<Self> {
        if r == 0 || s == 0 {
            return Err(Error::ZeroCoordinate { r, s });
        }
        Ok(Self { r, s })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// The point shifted by `(dr, ds)`, if it stays in the lattice.
    pub fn offset(&self, dr: i64, ds: i64) -> Option<Self> {
        let r = self.r.checked_add_signed(dr)?;
        let s = self.s.checked_add_signed(ds)?;
        Self::new(r, s).ok()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.s)
    }
}

/// The exponent `b ≥ 1` of the curves of sight `y = a·x^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Exponent(u32);

impl Exponent {
    pub const ONE: Self = Self(1);
    pub const TWO: Self = Self(2);

    pub fn new(b: u32) -> Result<Self> {
        if b == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(Self(b))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `k^b`, or `None` on overflow.
    pub fn checked_pow(self, k: u64) -> Option<u64> {
        k.checked_pow(self.0)
    }

    /// `b + 1` as a real, the argument at which the densities' zeta values live.
    pub fn zeta_argument(self) -> f64 {
        f64::from(self.0) + 1.0
    }
}

impl TryFrom<u32> for Exponent {
    type Error = Error;

    fn try_from(b: u32) -> Result<Self> {
        Self::new(b)
    }
}

impl From<Exponent> for u32 {
    fn from(b: Exponent) -> u32 {
        b.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Assembles `gcd_b` from the prime factorization of `g = gcd(r, s)`: each
/// prime `q` contributes `q^{min(v_q(r), ⌊v_q(s)/b⌋)}`.
fn assemble(r: u64, s: u64, b: u32, primes: impl Iterator<Item = (u64, u32)>) -> u64 {
    let mut k = 1u64;
    for (q, _) in primes {
        let e = valuation(r, q).min(valuation(s, q) / b);
        k *= q.pow(e);
    }
    k
}

/// `gcd_b(r, s) = max{k : k | r and k^b | s}`.
///
/// Every admissible `k` divides `gcd(r, s)`, so only that gcd is factored.
pub fn gcd_b(p: LatticePoint, b: Exponent) -> u64 {
    gcd_b_raw(p.r, p.s, b.0)
}

/// [`gcd_b`] on raw coordinates, rejecting zeros.
pub fn try_gcd_b(r: u64, s: u64, b: u32) -> Result<u64> {
    Ok(gcd_b(LatticePoint::new(r, s)?, Exponent::new(b)?))
}

pub(crate) fn gcd_b_raw(r: u64, s: u64, b: u32) -> u64 {
    let g = r.gcd(&s);
    if g == 1 || b == 1 {
        return g;
    }
    assemble(r, s, b, factor_u64(g).into_iter())
}

/// True iff `gcd_b(p) = 1`, i.e. `p` is the first lattice point on its curve
/// of sight from the origin.
pub fn is_b_visible(p: LatticePoint, b: Exponent) -> bool {
    gcd_b(p, b) == 1
}

/// `gcd_b` for all points with `r ≤ bound`, backed by a smallest-prime-factor
/// table so that window scans never call the general factorizer.
#[derive(Clone, Debug)]
pub struct GcdB {
    b: u32,
    sieve: SpfSieve,
}

impl GcdB {
    pub fn new(b: Exponent, bound: u64) -> Self {
        Self {
            b: b.0,
            sieve: SpfSieve::new(bound.max(1) as usize),
        }
    }

    pub fn exponent(&self) -> Exponent {
        Exponent(self.b)
    }

    pub fn sieve(&self) -> &SpfSieve {
        &self.sieve
    }

    /// `gcd_b(r, s)`; requires `1 ≤ r ≤ bound` and `s ≥ 1`.
    #[inline]
    pub fn eval(&self, r: u64, s: u64) -> u64 {
        debug_assert!(r >= 1 && s >= 1 && r as usize <= self.sieve.bound());
        let g = r.gcd(&s);
        if g == 1 || self.b == 1 {
            return g;
        }
        assemble(r, s, self.b, self.sieve.factor(g))
    }
}
