//! Tabulated arithmetic functions on `1..=N` and their Dirichlet convolution.

use std::ops::{Add, Index, Mul};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::sieve::{mobius_sieve, phi_sieve};
use super::zeta::zeta_exact;
use crate::error::{Error, Result};

/// Values of an arithmetic function on `1..=N`, indexed from 1.
///
/// Integer-valued functions use `ArithTable<i64>` so every downstream count
/// stays exact; any ring-like value type (reals, complex numbers) also works
/// with [`dirichlet_convolve`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArithTable<T = i64> {
    values: Vec<T>,
}

impl<T> ArithTable<T> {
    /// `values[0]` becomes `f(1)`.
    pub fn from_values(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyTable);
        }
        Ok(Self { values })
    }

    pub fn from_fn(bound: usize, mut f: impl FnMut(usize) -> T) -> Result<Self> {
        Self::from_values((1..=bound).map(&mut f).collect())
    }

    /// Largest `n` the table covers.
    pub fn bound(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, n: usize) -> Option<&T> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// The raw values, `f(1)` first.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> ArithTable<U> {
        ArithTable {
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Restriction to `1..=bound`.
    pub fn truncate(&self, bound: usize) -> Result<Self>
    where
        T: Clone,
    {
        if bound > self.bound() {
            return Err(Error::TableTooShort {
                available: self.bound(),
                requested: bound,
            });
        }
        Self::from_values(self.values[..bound].to_vec())
    }
}

impl<T> Index<usize> for ArithTable<T> {
    type Output = T;

    fn index(&self, n: usize) -> &T {
        assert!(n >= 1, "arithmetic functions start at n = 1");
        &self.values[n - 1]
    }
}

/// `(f ∗ g)(n) = Σ_{d | n} f(d)·g(n/d)` on the shared range.
pub fn dirichlet_convolve<T>(f: &ArithTable<T>, g: &ArithTable<T>) -> Result<ArithTable<T>>
where
    T: Copy + Zero + Add<Output = T> + Mul<Output = T>,
{
    if f.bound() != g.bound() {
        return Err(Error::BoundMismatch {
            left: f.bound(),
            right: g.bound(),
        });
    }
    let n = f.bound();
    let mut out = vec![T::zero(); n];
    for d in 1..=n {
        let fd = f.values[d - 1];
        if fd.is_zero() {
            continue;
        }
        for m in 1..=n / d {
            out[d * m - 1] = out[d * m - 1] + fd * g.values[m - 1];
        }
    }
    ArithTable::from_values(out)
}

/// The arithmetic functions used throughout, each with its tabulation and,
/// where one exists, a closed form for `ζ_f(s) = Σ f(n) n^{-s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArithFunction {
    /// `u(n) = 1`.
    Unit,
    /// `f(n) = k` at `n = k`, zero elsewhere.
    Indicator(u64),
    /// `⌊1/n⌋`, the identity of Dirichlet convolution.
    FloorInverse,
    /// Euler's totient.
    Phi,
    /// Möbius μ.
    Mobius,
    /// `f(n) = n`; unbounded, fails the mean-value growth condition.
    Linear,
}

impl ArithFunction {
    pub fn name(&self) -> String {
        match self {
            Self::Unit => "unit".into(),
            Self::Indicator(k) => format!("indicator-{k}"),
            Self::FloorInverse => "floor-inverse".into(),
            Self::Phi => "phi".into(),
            Self::Mobius => "mobius".into(),
            Self::Linear => "linear".into(),
        }
    }

    /// Parses `unit`, `indicator-<k>`, `floor-inverse`, `phi`, `mobius`, `linear`.
    pub fn parse(name: &str) -> Result<Self> {
        let f = match name {
            "unit" | "u" => Self::Unit,
            "floor-inverse" | "e" => Self::FloorInverse,
            "phi" => Self::Phi,
            "mobius" | "mu" => Self::Mobius,
            "linear" => Self::Linear,
            other => match other.strip_prefix("indicator-") {
                Some(k) => match k.parse::<u64>() {
                    Ok(k) if k >= 1 => Self::Indicator(k),
                    _ => return Err(Error::InvalidArgument(format!("bad indicator index in {other:?}"))),
                },
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown arithmetic function {other:?}; expected one of unit, indicator-<k>, floor-inverse, phi, mobius, linear"
                    )))
                }
            },
        };
        Ok(f)
    }

    pub fn table(&self, bound: usize) -> ArithTable<i64> {
        assert!(bound >= 1, "table bound must be at least 1");
        match *self {
            Self::Unit => ArithTable::from_fn(bound, |_| 1),
            Self::Indicator(k) => ArithTable::from_fn(bound, |n| if n as u64 == k { k as i64 } else { 0 }),
            Self::FloorInverse => ArithTable::from_fn(bound, |n| i64::from(n == 1)),
            Self::Phi => Ok(phi_sieve(bound)),
            Self::Mobius => Ok(mobius_sieve(bound)),
            Self::Linear => ArithTable::from_fn(bound, |n| n as i64),
        }
        .expect("bound >= 1")
    }

    /// `Σ f(n) n^{-s}` in closed form, or `None` where the series is not
    /// absolutely convergent.
    pub fn dirichlet_series(&self, s: f64) -> Option<f64> {
        if s <= 1.0 {
            return None;
        }
        match *self {
            Self::Unit => Some(zeta_exact(s)),
            Self::Indicator(k) => Some((k as f64).powf(1.0 - s)),
            Self::FloorInverse => Some(1.0),
            Self::Mobius => Some(1.0 / zeta_exact(s)),
            Self::Phi if s > 2.0 => Some(zeta_exact(s - 1.0) / zeta_exact(s)),
            Self::Linear if s > 2.0 => Some(zeta_exact(s - 1.0)),
            Self::Phi | Self::Linear => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, Self::Phi | Self::Linear)
    }
}
