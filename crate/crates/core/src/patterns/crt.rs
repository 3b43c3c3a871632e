use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::PatternError;
use crate::arith::Exponent;

/// Serializes big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(D::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(n: &Option<BigUint>, ser: S) -> Result<S::Ok, S::Error> {
            match n {
                Some(n) => ser.collect_str(n),
                None => ser.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<BigUint>, D::Error> {
            Option::<String>::deserialize(de)?
                .map(|t| t.parse().map_err(D::Error::custom))
                .transpose()
        }
    }
}

/// Why a congruence was imposed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum Origin {
    /// `(u, v) ≡ (−a, −c)` keeps every circle off the class `(a, c)` mod `(p, p^b)`.
    MissingResidue { a: u64, c: u64 },
    /// `(u, v) ≡ (−r, −s)` plants the prime at the cross `(r, s)`.
    Cross { r: u64, s: u64 },
    /// `v ≡ 0 (mod m^b)` for a factor `m` of `u + r`; `prime` is false when
    /// `m` is a cofactor that was not split.
    Cofactor { r: u64, prime: bool },
}

/// `u ≡ u_residue (mod m)` (when present) and `v ≡ v_residue (mod m^b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    #[serde(flatten)]
    pub origin: Origin,
    #[serde(with = "decimal")]
    pub modulus: BigUint,
    #[serde(with = "decimal::option")]
    pub u_residue: Option<BigUint>,
    #[serde(with = "decimal")]
    pub v_residue: BigUint,
}

/// Congruences on `(u, v)` with pairwise coprime moduli `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceSystem {
    pub b: Exponent,
    pub congruences: Vec<Congruence>,
}

/// Smallest nonnegative `x` with `x ≡ a_i (mod m_i)` for pairwise coprime
/// `m_i`, together with `Π m_i`.
pub fn crt(pairs: &[(BigUint, BigUint)]) -> Result<(BigUint, BigUint), PatternError> {
    let mut x = BigUint::zero();
    let mut modulus = BigUint::one();
    for (a, m) in pairs {
        let inverse = (&modulus % m).modinv(m).ok_or_else(|| PatternError::ModuliNotCoprime {
            left: modulus.to_string(),
            right: m.to_string(),
        })?;
        // x + M·t ≡ a (mod m)  ⇔  t ≡ (a − x)·M⁻¹ (mod m).
        let diff = (a % m + m - &x % m) % m;
        let t = diff * inverse % m;
        x += &modulus * t;
        modulus *= m;
    }
    Ok((x, modulus))
}

impl CongruenceSystem {
    pub fn new(b: Exponent) -> Self {
        Self {
            b,
            congruences: Vec::new(),
        }
    }

    /// Adds a congruence after checking its modulus against all others.
    pub fn push(&mut self, c: Congruence) -> Result<(), PatternError> {
        if let Some(other) = self.congruences.iter().find(|o| !o.modulus.gcd(&c.modulus).is_one()) {
            return Err(PatternError::ModuliNotCoprime {
                left: other.modulus.to_string(),
                right: c.modulus.to_string(),
            });
        }
        self.congruences.push(c);
        Ok(())
    }

    /// `(u mod U, U)` over the congruences that constrain `u`.
    pub fn solve_u(&self) -> Result<(BigUint, BigUint), PatternError> {
        let pairs: Vec<_> = self
            .congruences
            .iter()
            .filter_map(|c| c.u_residue.clone().map(|a| (a, c.modulus.clone())))
            .collect();
        crt(&pairs)
    }

    /// `(v mod V, V)` over all congruences, each taken modulo `m^b`.
    pub fn solve_v(&self) -> Result<(BigUint, BigUint), PatternError> {
        let pairs: Vec<_> = self
            .congruences
            .iter()
            .map(|c| (c.v_residue.clone(), c.modulus.pow(self.b.get())))
            .collect();
        crt(&pairs)
    }

    /// The prime planted at each cross, keyed by cell.
    pub fn planted(&self) -> impl Iterator<Item = ((u64, u64), &BigUint)> {
        self.congruences.iter().filter_map(|c| match c.origin {
            Origin::Cross { r, s } => Some(((r, s), &c.modulus)),
            _ => None,
        })
    }
}
