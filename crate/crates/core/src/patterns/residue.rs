use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BPattern, PatternError};
use crate::arith::factor::is_prime_u64;
use crate::arith::{primes_up_to, Exponent};
use crate::error::{Error, Result};

/// The class of `(r, s)` modulo `(m, m^b)`: `r ≡ a (mod m)`, `s ≡ c (mod m^b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResiduePair {
    pub modulus: u64,
    pub a: u64,
    pub c: u64,
}

/// A circle chosen to represent one residue class of a complete rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub residue: (u64, u64),
    pub cell: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Realizability {
    /// One missing residue pair per prime `p ≤ w`.
    Realizable { missing: Vec<ResiduePair> },
    /// The circles cover every pair modulo `(prime, prime^b)`; one circle
    /// per pair is listed.
    NotRealizable {
        prime: u64,
        representatives: Vec<Representative>,
    },
}

impl Realizability {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Realizability::Realizable { .. })
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `p^b`, or `None` when it exceeds `u64`.
fn prime_power(p: u64, b: Exponent) -> Option<u64> {
    b.checked_pow(p)
}

/// First circle in each residue class modulo `(p, p^b)`.
fn classes(points: &[(u64, u64)], p: u64, pb: u64) -> BTreeMap<(u64, u64), (u64, u64)> {
    let mut seen = BTreeMap::new();
    for &(r, s) in points {
        seen.entry((r % p, s % pb)).or_insert((r, s));
    }
    seen
}

/// True iff `{(r mod p, s mod p^b)}` covers all `p^{b+1}` residue pairs.
pub fn contains_complete_rectangle(points: &[(u64, u64)], p: u64, b: Exponent) -> Result<bool> {
    check_prime(p)?;
    let Some(pb) = prime_power(p, b) else {
        return Ok(false);
    };
    let needed = pb.checked_mul(p);
    if needed.is_none_or(|n| (points.len() as u64) < n) {
        return Ok(false);
    }
    Ok(classes(points, p, pb).len() as u64 == needed.expect("checked above"))
}

/// The residue pair `(r_p, s_p)` congruent to no point, smallest in `(s_p, r_p)` order.
pub fn find_missing_residue(points: &[(u64, u64)], p: u64, b: Exponent) -> Result<ResiduePair> {
    check_prime(p)?;
    let pb = prime_power(p, b);
    let taken: HashSet<(u64, u64)> = points.iter().map(|&(r, s)| (r % p, pb.map_or(s, |m| s % m))).collect();
    // At most |points| classes are taken, so this stops within |points| + 1 rows.
    let mut c = 0u64;
    loop {
        if pb.is_some_and(|m| c >= m) {
            return Err(PatternError::CompleteRectangle { prime: p }.into());
        }
        if let Some(a) = (0..p).find(|&a| !taken.contains(&(a, c))) {
            return Ok(ResiduePair { modulus: p, a, c });
        }
        c += 1;
    }
}

/// Decides realizability by checking the circles modulo `(p, p^b)` for every
/// prime `p ≤ w`; larger primes cannot have all their residues among `1..=w`.
pub fn is_realizable(pattern: &BPattern) -> Realizability {
    let circles = pattern.circles();
    let b = pattern.b();
    let verdicts: Vec<std::result::Result<ResiduePair, u64>> = primes_up_to(pattern.width())
        .par_iter()
        .map(|&p| match find_missing_residue(&circles, p, b) {
            Ok(pair) => Ok(pair),
            Err(_) => Err(p),
        })
        .collect();
    let mut missing = Vec::with_capacity(verdicts.len());
    for v in verdicts {
        match v {
            Ok(pair) => missing.push(pair),
            Err(p) => {
                let pb = prime_power(p, b).expect("complete rectangles have p^b ≤ |circles|");
                let representatives = classes(&circles, p, pb)
                    .into_iter()
                    .map(|(residue, cell)| Representative { residue, cell })
                    .collect();
                return Realizability::NotRealizable {
                    prime: p,
                    representatives,
                };
            }
        }
    }
    Realizability::Realizable { missing }
}
