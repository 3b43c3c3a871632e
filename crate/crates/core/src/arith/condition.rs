//! Numerical check of the growth condition `(1/M) Σ_{k≤M} |(f∗μ)(k)|/k → 0`
//! under which the mean value of `f(gcd_b)` equals `ζ_f(b+1)/ζ(b+1)`.

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::sieve::mobius_sieve;
use super::sum::CompensatedSum;
use super::table::{dirichlet_convolve, ArithTable};

/// `H(M)` sampled on a doubling schedule, plus a verdict on its decay.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionDiagnostic {
    /// `(M, H(M))` for `M = 1, 2, 4, …` and finally `M = N`.
    pub schedule: Vec<(usize, f64)>,
    /// Log-log slope of `H` between `M ≈ √N` and `N`.
    pub log_slope: f64,
    /// `log_slope < DECAY_SLOPE`: `H` is visibly heading to zero.
    pub decaying: bool,
}

/// A slope this steep or steeper counts as decay. Bounded `f` give slopes
/// near −1 (`H(M) ≈ polylog(M)/M`); a plateau gives slopes near 0.
pub const DECAY_SLOPE: f64 = -0.5;

pub fn mean_value_condition_diagnostic(f: &ArithTable<i64>) -> ConditionDiagnostic {
    let n = f.bound();
    let g = dirichlet_convolve(f, &mobius_sieve(n)).expect("same bound");
    condition_from_convolution(&g)
}

/// Same diagnostic, given `g = f ∗ μ` directly.
pub fn condition_from_convolution<T: Signed + ToPrimitive + Copy>(g: &ArithTable<T>) -> ConditionDiagnostic {
    let n = g.bound();
    let mut schedule = Vec::new();
    let mut acc = CompensatedSum::new();
    let mut next = 1usize;
    for (k, v) in g.iter() {
        acc.add(v.abs().to_f64().unwrap_or(f64::INFINITY) / k as f64);
        if k == next || k == n {
            schedule.push((k, acc.value() / k as f64));
            while next <= k {
                next *= 2;
            }
        }
    }
    let h_at = |m: usize| {
        schedule
            .iter()
            .find(|&&(k, _)| k >= m)
            .copied()
            .unwrap_or(*schedule.last().expect("nonempty"))
    };
    let (m0, h0) = h_at((n as f64).sqrt().ceil() as usize);
    let (m1, h1) = *schedule.last().expect("nonempty");
    let log_slope = if m1 > m0 && h0 > 0.0 && h1 > 0.0 {
        (h1 / h0).ln() / (m1 as f64 / m0 as f64).ln()
    } else if h1 == 0.0 {
        f64::NEG_INFINITY
    } else {
        0.0
    };
    ConditionDiagnostic {
        schedule,
        log_slope,
        decaying: log_slope < DECAY_SLOPE,
    }
}
