//! Riemann zeta values and Dirichlet series with explicit error bounds.
//!
//! Zeta is evaluated as a truncated series. For a decreasing summand `h`, the
//! tail `Σ_{n>N} h(n)` lies between `∫_{N+1}^∞ h` and `∫_N^∞ h`; we add the
//! midpoint of that bracket to the partial sum and report its half-width (plus
//! a rounding allowance) as the error bound.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::sum::CompensatedSum;
use super::table::ArithTable;
use crate::error::{Error, Result};

/// Euler's constant γ, frozen from [`euler_gamma_series`].
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ζ′(2) = −Σ log n / n², frozen from [`zeta_derivative`].
pub const ZETA_PRIME_2: f64 = -0.937_548_254_315_843_8;

/// Known bounds `1/4 ≤ θ ≤ 131/416` on the Dirichlet divisor exponent. Only
/// the size of the error term in the `b = 1` average-gcd formula depends on
/// θ; no computation here uses it.
pub const DIVISOR_THETA_BOUNDS: (f64, f64) = (0.25, 131.0 / 416.0);

/// Tightest error bound [`zeta`] accepts; below this, rounding dominates.
pub const MIN_TAIL: f64 = 1e-13;

/// A truncated zeta evaluation with a rigorous bound on `|value − ζ(s)|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub s: f64,
    pub value: f64,
    pub terms_used: u64,
    pub tail_bound: f64,
}

fn power(n: u64, s: f64) -> f64 {
    if s.fract() == 0.0 && s.abs() < i32::MAX as f64 {
        (n as f64).powi(s as i32)
    } else {
        (n as f64).powf(s)
    }
}

/// ζ(s) for real `s > 1`, with `|value − ζ(s)| ≤ tail_bound ≤ target_tail`.
pub fn zeta(s: f64, target_tail: f64) -> Result<ZetaValue> {
    if !(s > 1.0) {
        return Err(Error::ArgumentOutOfRange { s, min: 1.0 });
    }
    if !(target_tail > 0.0) {
        return Err(Error::NonPositiveTolerance(target_tail));
    }
    if target_tail < MIN_TAIL {
        return Err(Error::InvalidArgument(format!(
            "target tail {target_tail:e} is below the attainable {MIN_TAIL:e}"
        )));
    }
    // The bracket half-width is below N^{-s}/2.
    let mut terms = ((0.5 / target_tail).powf(1.0 / s)).ceil().max(1.0) as u64;
    let tail_integral = |n: u64| power(n, 1.0 - s) / (s - 1.0);
    loop {
        let mut acc = CompensatedSum::new();
        for n in (1..=terms).rev() {
            acc.add(1.0 / power(n, s));
        }
        let upper = tail_integral(terms);
        let lower = tail_integral(terms + 1);
        acc.add(0.5 * (upper + lower));
        let value = acc.value();
        let tail_bound = 0.5 * (upper - lower) + 8.0 * f64::EPSILON * value;
        if tail_bound <= target_tail {
            return Ok(ZetaValue {
                s,
                value,
                terms_used: terms,
                tail_bound,
            });
        }
        terms *= 2;
    }
}

/// ζ(s) accurate to about 1e-12, memoized per argument.
pub fn zeta_exact(s: f64) -> f64 {
    static CACHE: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&s.to_bits()) {
        return *v;
    }
    let v = zeta(s, 1e-12).expect("s > 1").value;
    cache.lock().unwrap().insert(s.to_bits(), v);
    v
}

/// ζ′(s) = −Σ log n · n^{-s}, with a rigorous error bound.
pub fn zeta_derivative(s: f64, target_tail: f64) -> Result<ZetaValue> {
    if !(s > 1.0) {
        return Err(Error::ArgumentOutOfRange { s, min: 1.0 });
    }
    if !(target_tail >= MIN_TAIL) {
        return Err(Error::NonPositiveTolerance(target_tail));
    }
    // log x · x^{-s} decreases for x > e^{1/s}, so the bracket starts at n ≥ 3.
    let tail_integral = |n: u64| {
        let x = n as f64;
        x.powf(1.0 - s) * (x.ln() / (s - 1.0) + 1.0 / (s - 1.0).powi(2))
    };
    let mut terms = ((0.5 / target_tail).powf(1.0 / s) * 4.0).ceil().max(3.0) as u64;
    loop {
        let mut acc = CompensatedSum::new();
        for n in (2..=terms).rev() {
            acc.add((n as f64).ln() / power(n, s));
        }
        let upper = tail_integral(terms);
        let lower = tail_integral(terms + 1);
        acc.add(0.5 * (upper + lower));
        let value = -acc.value();
        let tail_bound = 0.5 * (upper - lower) + 8.0 * f64::EPSILON * value.abs();
        if tail_bound <= target_tail {
            return Ok(ZetaValue {
                s,
                value,
                terms_used: terms,
                tail_bound,
            });
        }
        terms *= 2;
    }
}

/// γ = lim (H_n − log n), evaluated at `n = 10^5` with the Euler–Maclaurin
/// corrections through `n^{-6}`.
pub fn euler_gamma_series() -> f64 {
    let n = 100_000u64;
    let harmonic = (1..=n).rev().map(|k| 1.0 / k as f64).sum::<CompensatedSum>().value();
    let x = n as f64;
    harmonic - x.ln() - 1.0 / (2.0 * x) + 1.0 / (12.0 * x * x) - 1.0 / (120.0 * x.powi(4)) + 1.0 / (252.0 * x.powi(6))
}

/// Partial Dirichlet series of a table, with an absolute-convergence check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletSeries {
    pub s: f64,
    /// `Σ_{n≤N} f(n) n^{-s}`.
    pub value: f64,
    /// `Σ_{n≤N/2} |f(n)| n^{-s}`.
    pub abs_half: f64,
    /// `Σ_{n≤N} |f(n)| n^{-s}`.
    pub abs_full: f64,
    pub terms: usize,
    /// The absolute series grew by at most [`PLATEAU_TOLERANCE`] (relative)
    /// between `N/2` and `N`.
    pub plateau: bool,
}

pub const PLATEAU_TOLERANCE: f64 = 1e-2;

/// `ζ_f(s) = Σ f(n) n^{-s}` truncated at the table bound.
pub fn zeta_f<T: ToPrimitive>(f: &ArithTable<T>, s: f64) -> Result<DirichletSeries> {
    if !(s > 1.0) {
        return Err(Error::ArgumentOutOfRange { s, min: 1.0 });
    }
    let n = f.bound();
    let half = n / 2;
    let mut value = CompensatedSum::new();
    let mut abs_half = CompensatedSum::new();
    let mut abs_full = CompensatedSum::new();
    for (k, v) in f.iter() {
        let x = v.to_f64().unwrap_or(f64::NAN) / power(k as u64, s);
        value.add(x);
        abs_full.add(x.abs());
        if k == half {
            abs_half = abs_full;
        }
    }
    let (abs_half, abs_full) = (abs_half.value(), abs_full.value());
    let plateau = abs_full - abs_half <= PLATEAU_TOLERANCE * abs_full.max(f64::MIN_POSITIVE);
    Ok(DirichletSeries {
        s,
        value: value.value(),
        abs_half,
        abs_full,
        terms: n,
        plateau,
    })
}
