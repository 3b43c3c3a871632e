use std::collections::HashMap;
use std::time::Duration;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::crt::{decimal, Congruence, CongruenceSystem, Origin};
use super::verify::{verify_realization, Verification, DEFAULT_VERIFY_BOUND};
use super::{is_realizable, BPattern, PatternError, Realizability};
use crate::arith::factor::{factor_big, factor_u64, is_prime_u64};

#[derive(Clone, Debug, PartialEq)]
pub struct RealizeOptions {
    /// Primes up to this bound are found by trial division before Pollard rho.
    pub trial_bound: u64,
    /// Time allowed for splitting each `u + r` beyond trial division.
    pub factor_budget: Duration,
    /// Trial-division bound used by the final verification.
    pub verify_bound: u64,
    /// Takes the `t`-th positive solution `u₀ + t·U` of the `u`-congruences.
    pub class_index: u64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self {
            trial_bound: 10_000_000,
            factor_budget: Duration::from_secs(5),
            verify_bound: DEFAULT_VERIFY_BOUND,
            class_index: 0,
        }
    }
}

/// A translate `(u, v)` realizing a pattern, with the congruences it solves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    #[serde(with = "decimal")]
    pub u: BigUint,
    #[serde(with = "decimal")]
    pub v: BigUint,
    /// Product of the moduli constraining `u`.
    #[serde(with = "decimal")]
    pub u_modulus: BigUint,
    /// Product of `m^b` over all moduli.
    #[serde(with = "decimal")]
    pub v_modulus: BigUint,
    pub system: CongruenceSystem,
}

impl Realization {
    pub fn planted(&self) -> HashMap<(u64, u64), BigUint> {
        self.system.planted().map(|(cell, q)| (cell, q.clone())).collect()
    }

    pub fn verify(&self, pattern: &BPattern, bound: u64) -> Verification {
        verify_realization(pattern, &self.u, &self.v, &self.planted(), bound)
    }
}

fn next_prime_after(n: u64) -> u64 {
    (n + 1..).find(|&q| is_prime_u64(q)).expect("primes are unbounded")
}

/// Prime factors and unsplit composite cofactors of `n`.
fn factor_translate(n: &BigUint, opts: &RealizeOptions) -> (Vec<BigUint>, Vec<BigUint>) {
    if let Some(small) = n.to_u64() {
        return (
            factor_u64(small).into_iter().map(|(p, _)| p.into()).collect(),
            Vec::new(),
        );
    }
    let f = factor_big(n, opts.trial_bound, opts.factor_budget);
    (f.primes.into_iter().map(|(p, _)| p).collect(), f.unfactored)
}

fn smallest_positive(residue: BigUint, modulus: &BigUint) -> BigUint {
    if residue.is_zero() {
        modulus.clone()
    } else {
        residue
    }
}

/// Builds a realization from three families of congruences:
///
/// 1. for each prime `p ≤ w`, `(u, v) ≡ (−r_p, −s_p) mod (p, p^b)` with
///    `(r_p, s_p)` a class holding no circle;
/// 2. for each cross `(i, j)`, a fresh prime `Q > w` and
///    `(u, v) ≡ (−i, −j) mod (Q, Q^b)`;
/// 3. after fixing `u`, `v ≡ 0 mod q^b` for every other prime `q | u + r`.
///
/// A cofactor of `u + r` that does not split within the budget is used whole
/// in family 3; its primes all exceed `w`, so the argument is unchanged. The
/// result is verified before it is returned.
pub fn realize(pattern: &BPattern, opts: &RealizeOptions) -> Result<Realization, PatternError> {
    let missing = match is_realizable(pattern) {
        Realizability::Realizable { missing } => missing,
        Realizability::NotRealizable { prime, .. } => return Err(PatternError::NotRealizable { prime }),
    };
    let b = pattern.b();
    let bb = b.get();
    let mut system = CongruenceSystem::new(b);
    let mut known: Vec<BigUint> = Vec::new();

    for pair in &missing {
        let p = BigUint::from(pair.modulus);
        let pb = p.pow(bb);
        system.push(Congruence {
            origin: Origin::MissingResidue { a: pair.a, c: pair.c },
            u_residue: Some((&p - pair.a % &p) % &p),
            v_residue: (&pb - pair.c % &pb) % &pb,
            modulus: p.clone(),
        })?;
        known.push(p);
    }

    let mut q = pattern.width();
    for (r, s) in pattern.crosses() {
        q = next_prime_after(q);
        let qb = BigUint::from(q).pow(bb);
        system.push(Congruence {
            origin: Origin::Cross { r, s },
            modulus: q.into(),
            u_residue: Some((q - r).into()),
            v_residue: qb - s,
        })?;
        known.push(q.into());
    }

    let (u0, u_modulus) = system.solve_u()?;
    let u = smallest_positive(u0, &u_modulus) + &u_modulus * opts.class_index;

    for r in 1..=pattern.width() {
        let n = &u + r;
        let (primes, cofactors) = factor_translate(&n, opts);
        for q in primes.iter().filter(|q| !known.contains(q)) {
            system.push(Congruence {
                origin: Origin::Cofactor { r, prime: true },
                modulus: q.clone(),
                u_residue: None,
                v_residue: BigUint::zero(),
            })?;
        }
        for mut c in cofactors {
            for q in known.iter().chain(&primes) {
                while (&c % q).is_zero() {
                    c /= q;
                }
            }
            if !c.is_one() {
                system.push(Congruence {
                    origin: Origin::Cofactor { r, prime: false },
                    modulus: c,
                    u_residue: None,
                    v_residue: BigUint::zero(),
                })?;
            }
        }
    }

    let (v0, v_modulus) = system.solve_v()?;
    let v = smallest_positive(v0, &v_modulus);
    let realization = Realization {
        u,
        v,
        u_modulus,
        v_modulus,
        system,
    };
    let check = realization.verify(pattern, opts.verify_bound);
    if !check.passed() {
        return Err(PatternError::VerificationFailed {
            failures: check.failures().count(),
            unverified: check.unverified(),
        });
    }
    Ok(realization)
}

#[cfg(test)]
fn pairwise_coprime(system: &CongruenceSystem) -> bool {
    let m = &system.congruences;
    use num_integer::Integer;
    (0..m.len()).all(|i| (i + 1..m.len()).all(|j| m[i].modulus.gcd(&m[j].modulus).is_one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Exponent;
    use crate::patterns::Cell;

    #[test]
    fn single_cross() {
        let p = BPattern::filled(Exponent::TWO, 1, 1, Cell::Cross).unwrap();
        let real = realize(&p, &RealizeOptions::default()).unwrap();
        assert_eq!((real.u, real.v), (BigUint::from(1u32), BigUint::from(3u32)));
    }

    #[test]
    fn all_crosses_two_by_four() {
        let p = BPattern::filled(Exponent::TWO, 2, 4, Cell::Cross).unwrap();
        let real = realize(&p, &RealizeOptions::default()).unwrap();
        assert!(pairwise_coprime(&real.system));
        let planted: Vec<u64> = real.system.planted().map(|(_, q)| q.to_u64().unwrap()).collect();
        assert_eq!(planted, vec![3, 5, 7, 11, 13, 17, 19, 23]);
        assert!(real.verify(&p, 1000).passed());
    }

    #[test]
    fn lonesome_b2() {
        let p = BPattern::lonesome(Exponent::TWO);
        let real = realize(&p, &RealizeOptions::default()).unwrap();
        let ver = real.verify(&p, DEFAULT_VERIFY_BOUND);
        assert!(ver.passed());
        assert_eq!(ver.unverified(), 0);
        assert!(pairwise_coprime(&real.system));
    }

    #[test]
    fn unrealizable_is_refused() {
        let p = BPattern::fenced(Exponent::TWO, 4, 4).unwrap();
        assert_eq!(
            realize(&p, &RealizeOptions::default()),
            Err(PatternError::NotRealizable { prime: 2 })
        );
    }
}
