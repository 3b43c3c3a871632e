use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::crt::decimal;
use super::{BPattern, Cell};
use crate::arith::factor::{is_probable_prime, trial_divide};
use crate::arith::Exponent;

/// Trial-division bound for the gcd of each translated cell.
pub const DEFAULT_VERIFY_BOUND: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellStatus {
    Visible,
    /// `prime` divides `u + r` and `prime^b` divides `v + s`.
    Invisible {
        #[serde(with = "decimal")]
        prime: BigUint,
    },
    /// `gcd(u + r, v + s)` kept this composite part after trial division.
    Unverified {
        #[serde(with = "decimal")]
        cofactor: BigUint,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellVerdict {
    pub r: u64,
    pub s: u64,
    pub expected: Cell,
    #[serde(flatten)]
    pub status: CellStatus,
    /// `gcd_b(u + r, v + s)` when the gcd factored completely.
    #[serde(with = "decimal::option")]
    pub gcd_b: Option<BigUint>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    #[serde(with = "decimal")]
    pub u: BigUint,
    #[serde(with = "decimal")]
    pub v: BigUint,
    /// Verdicts for the circles and crosses, row-major from `s = 1`.
    pub cells: Vec<CellVerdict>,
}

impl Verification {
    /// Every marked cell confirmed, none left unverified.
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.ok)
    }

    pub fn unverified(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| matches!(c.status, CellStatus::Unverified { .. }))
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellVerdict> {
        self.cells
            .iter()
            .filter(|c| !c.ok && !matches!(c.status, CellStatus::Unverified { .. }))
    }
}

fn valuation(n: &BigUint, q: &BigUint) -> u32 {
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (quot, rem) = n.div_rem(q);
        if !rem.is_zero() {
            return e;
        }
        n = quot;
        e += 1;
    }
}

/// Checks one translated cell `(x, y) = (u + r, v + s)`, both positive,
/// through `G = gcd(x, y)`; `x` itself is never factored.
fn classify(
    x: &BigUint,
    y: &BigUint,
    b: Exponent,
    planted: Option<&BigUint>,
    bound: u64,
) -> (CellStatus, Option<BigUint>) {
    let bb = b.get();
    if let Some(q) = planted {
        if (x % q).is_zero() && (y % q.pow(bb)).is_zero() {
            let gcd_b = classify(x, y, b, None, bound).1;
            return (CellStatus::Invisible { prime: q.clone() }, gcd_b);
        }
    }
    let g = x.gcd(y);
    let (small, mut rest) = trial_divide(&g, bound);
    let mut primes: Vec<BigUint> = small.into_iter().map(|(p, _)| BigUint::from(p)).collect();
    if !rest.is_one() && is_probable_prime(&rest) {
        primes.push(std::mem::replace(&mut rest, BigUint::one()));
    }
    let mut witness = None;
    let mut k = BigUint::one();
    for q in &primes {
        let e = valuation(x, q).min(valuation(y, q) / bb);
        if e > 0 {
            witness.get_or_insert_with(|| q.clone());
            k *= q.pow(e);
        }
    }
    match (witness, rest.is_one()) {
        (Some(q), complete) => (CellStatus::Invisible { prime: q }, complete.then_some(k)),
        (None, true) => (CellStatus::Visible, Some(k)),
        (None, false) => (CellStatus::Unverified { cofactor: rest }, None),
    }
}

/// Verifies `(u, v) + P` cell by cell. `planted` maps crosses to the prime
/// planted there, enabling the fast path; it may be empty.
pub fn verify_realization(
    pattern: &BPattern,
    u: &BigUint,
    v: &BigUint,
    planted: &HashMap<(u64, u64), BigUint>,
    bound: u64,
) -> Verification {
    let b = pattern.b();
    let marked: Vec<((u64, u64), Cell)> = pattern.cells().filter(|&(_, c)| c != Cell::Blank).collect();
    let cells = marked
        .par_iter()
        .map(|&((r, s), expected)| {
            let x = u + r;
            let y = v + s;
            let (status, gcd_b) = classify(&x, &y, b, planted.get(&(r, s)), bound);
            let ok = matches!(
                (expected, &status),
                (Cell::Circle, CellStatus::Visible) | (Cell::Cross, CellStatus::Invisible { .. })
            );
            CellVerdict {
                r,
                s,
                expected,
                status,
                gcd_b,
                ok,
            }
        })
        .collect();
    Verification {
        u: u.clone(),
        v: v.clone(),
        cells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::try_gcd_b;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn matches_direct_gcd_b() {
        let b = Exponent::TWO;
        let pattern = BPattern::filled(b, 3, 3, Cell::Circle).unwrap();
        for u in 0..40u64 {
            for v in 0..40u64 {
                let ver = verify_realization(&pattern, &big(u), &big(v), &HashMap::new(), 1000);
                for c in &ver.cells {
                    let k = try_gcd_b(u + c.r, v + c.s, 2).unwrap();
                    assert_eq!(c.gcd_b, Some(big(k)));
                    assert_eq!(c.ok, k == 1);
                }
            }
        }
    }

    #[test]
    fn blank_pattern_is_vacuous() {
        let pattern = BPattern::filled(Exponent::TWO, 2, 3, Cell::Blank).unwrap();
        let ver = verify_realization(&pattern, &big(17), &big(4), &HashMap::new(), 100);
        assert!(ver.cells.is_empty());
        assert!(ver.passed());
    }

    #[test]
    fn large_prime_gcd_is_decided() {
        // gcd is the prime 2^61 − 1, far beyond the trial bound.
        let q = big((1 << 61) - 1);
        let pattern = BPattern::filled(Exponent::ONE, 1, 1, Cell::Cross).unwrap();
        let ver = verify_realization(&pattern, &(&q * 3u32 - 1u32), &(&q * 5u32 - 1u32), &HashMap::new(), 100);
        assert!(ver.passed());
        assert_eq!(ver.cells[0].gcd_b, Some(q));
    }

    #[test]
    fn composite_cofactor_is_unverified() {
        let p = big(1_000_000_007);
        let q = big(998_244_353);
        let n = &p * &q;
        let pattern = BPattern::filled(Exponent::ONE, 1, 1, Cell::Circle).unwrap();
        let ver = verify_realization(&pattern, &(&n - 1u32), &(&n * 2u32 - 1u32), &HashMap::new(), 1000);
        assert_eq!(ver.unverified(), 1);
        assert!(!ver.passed());
        assert_eq!(ver.failures().count(), 0);
    }
}
