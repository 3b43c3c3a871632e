//! Scans of the square window `T_N = {(r, s) : 1 ≤ r, s ≤ N}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{dirichlet_convolve, mobius_sieve, zeta_exact, zeta_f, ArithFunction, ArithTable, Exponent, GcdB};
use crate::error::{Error, Result};

/// Exact or floating accumulated sum behind an estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawSum {
    Exact(i128),
    Real(f64),
}

impl RawSum {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Self::Exact(v) => v as f64,
            Self::Real(v) => v,
        }
    }
}

/// An empirical window average next to the analytic value it should approach.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowStats {
    pub op: String,
    pub b: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub raw_sum: RawSum,
    pub estimate: f64,
    pub target: f64,
    pub abs_error: f64,
    /// Bound on the truncation error of `target` itself, when it is a series.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target_error: Option<f64>,
    /// Conditions the caller should know about (e.g. a failed growth check).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
}

impl WindowStats {
    /// Builds stats for a sum over `T_N`, so `estimate = raw_sum / N²`.
    pub fn over_square(op: impl Into<String>, b: Exponent, n: u64, raw_sum: RawSum, target: f64) -> Self {
        let area = (n as f64) * (n as f64);
        let estimate = raw_sum.as_f64() / area;
        Self::new(op, b, n, raw_sum, estimate, target)
    }

    pub fn new(op: impl Into<String>, b: Exponent, n: u64, raw_sum: RawSum, estimate: f64, target: f64) -> Self {
        Self {
            op: op.into(),
            b: b.get(),
            n,
            raw_sum,
            estimate,
            target,
            abs_error: (estimate - target).abs(),
            target_error: None,
            flags: Vec::new(),
        }
    }
}

fn check_table(f: &ArithTable<i64>, n: u64) -> Result<()> {
    if (f.bound() as u64) < n {
        return Err(Error::TableTooShort {
            available: f.bound(),
            requested: n as usize,
        });
    }
    Ok(())
}

fn check_window(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("window size N must be at least 1".into()));
    }
    if n > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!("window size {n} is too large to scan")));
    }
    Ok(())
}

/// `Σ_{(r,s) ∈ T_N} f(gcd_b(r, s))` by evaluating every point.
pub fn lambda_f_sum_naive(f: &ArithTable<i64>, b: Exponent, n: u64) -> Result<i128> {
    check_window(n)?;
    check_table(f, n)?;
    let gcd = GcdB::new(b, n);
    Ok((1..=n)
        .into_par_iter()
        .map(|r| (1..=n).map(|s| f[gcd.eval(r, s) as usize] as i128).sum::<i128>())
        .sum())
}

/// The same sum as [`lambda_f_sum_naive`] through `g = f ∗ μ`:
/// `q_N = Σ_k g(k) ⌊N/k⌋ ⌊N/k^b⌋`.
pub fn lambda_f_sum_fast(f: &ArithTable<i64>, b: Exponent, n: u64) -> Result<i128> {
    check_window(n)?;
    check_table(f, n)?;
    let f = f.truncate(n as usize)?;
    let g = dirichlet_convolve(&f, &mobius_sieve(n as usize))?;
    Ok(lambda_sum_from_convolution(&g, b, n))
}

/// `Σ_{k ≤ N} g(k) ⌊N/k⌋ ⌊N/k^b⌋` for a precomputed `g = f ∗ μ` with bound ≥ N.
pub fn lambda_sum_from_convolution(g: &ArithTable<i64>, b: Exponent, n: u64) -> i128 {
    assert!(g.bound() as u64 >= n, "convolution table too short");
    let mut total = 0i128;
    for k in 1..=n {
        let kb = match b.checked_pow(k) {
            Some(kb) if kb <= n => kb,
            _ => break,
        };
        total += g[k as usize] as i128 * (n / k) as i128 * (n / kb) as i128;
    }
    total
}

/// `hist[k] = |{(r, s) ∈ T_N : gcd_b(r, s) = k}|` for `0 ≤ k ≤ N` (`hist[0] = 0`).
pub fn gcd_b_histogram(b: Exponent, n: u64) -> Result<Vec<u64>> {
    check_window(n)?;
    let gcd = GcdB::new(b, n);
    let rows: Vec<Vec<(u64, u64)>> = (1..=n)
        .into_par_iter()
        .map(|r| {
            // Row r only produces divisors of r.
            let mut local: Vec<(u64, u64)> = Vec::new();
            let mut ones = 0u64;
            for s in 1..=n {
                let k = gcd.eval(r, s);
                if k == 1 {
                    ones += 1;
                } else {
                    match local.iter_mut().find(|(d, _)| *d == k) {
                        Some((_, c)) => *c += 1,
                        None => local.push((k, 1)),
                    }
                }
            }
            local.push((1, ones));
            local
        })
        .collect();
    let mut hist = vec![0u64; n as usize + 1];
    for row in rows {
        for (k, c) in row {
            hist[k as usize] += c;
        }
    }
    Ok(hist)
}

/// `|T_{N,b,k}|`, the number of window points with `gcd_b = k`.
pub fn gcd_b_count(b: Exponent, k: u64, n: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    check_window(n)?;
    if k > n {
        return Ok(0);
    }
    let gcd = GcdB::new(b, n);
    // Only rows divisible by k can contribute.
    Ok((1..=n / k)
        .into_par_iter()
        .map(|m| {
            let r = m * k;
            (1..=n).filter(|&s| gcd.eval(r, s) == k).count() as u64
        })
        .sum())
}

/// Density of `1/(k^{b+1} ζ(b+1))` for points with `gcd_b = k`.
pub fn density_target(b: Exponent, k: u64) -> f64 {
    let s = b.zeta_argument();
    1.0 / ((k as f64).powf(s) * zeta_exact(s))
}

/// `|T_{N,b,k}| / N²` against `1/(k^{b+1} ζ(b+1))`.
pub fn density_estimate(b: Exponent, k: u64, n: u64) -> Result<WindowStats> {
    let count = gcd_b_count(b, k, n)?;
    Ok(WindowStats::over_square(
        format!("density(k={k})"),
        b,
        n,
        RawSum::Exact(count as i128),
        density_target(b, k),
    ))
}

/// Same as [`density_estimate`] but reuses a histogram from [`gcd_b_histogram`].
pub fn density_from_histogram(hist: &[u64], b: Exponent, k: u64) -> WindowStats {
    let n = (hist.len() - 1) as u64;
    let count = hist.get(k as usize).copied().unwrap_or(0);
    WindowStats::over_square(
        format!("density(k={k})"),
        b,
        n,
        RawSum::Exact(count as i128),
        density_target(b, k),
    )
}

/// Proportion of window points with `gcd_b ∈ S` against `ζ_S(b+1)/ζ(b+1)`.
///
/// The target series is summed over `k ≤ truncation`; its tail is at most
/// `truncation^{-b}/b` and is reported as `target_error`.
pub fn set_density_estimate(
    b: Exponent,
    members: impl Fn(u64) -> bool,
    n: u64,
    truncation: u64,
) -> Result<WindowStats> {
    if truncation == 0 {
        return Err(Error::InvalidArgument("truncation K must be at least 1".into()));
    }
    let hist = gcd_b_histogram(b, n)?;
    let count: u64 = hist
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(k, _)| members(k as u64))
        .map(|(_, &c)| c)
        .sum();
    let s = b.zeta_argument();
    let zeta_s: f64 = crate::arith::compensated_sum(
        (1..=truncation)
            .rev()
            .filter(|&k| members(k))
            .map(|k| (k as f64).powf(-s)),
    );
    let tail = (truncation as f64).powf(-f64::from(b.get())) / f64::from(b.get());
    let zeta_b1 = zeta_exact(s);
    let mut stats = WindowStats::over_square("set-density", b, n, RawSum::Exact(count as i128), zeta_s / zeta_b1);
    stats.target_error = Some(tail / zeta_b1);
    Ok(stats)
}

/// Mean of `f(gcd_b)` over `T_N` against `ζ_f(b+1)/ζ(b+1)`.
///
/// The target uses `f`'s closed-form Dirichlet series. The growth condition
/// on `f ∗ μ` and the absolute convergence of `ζ_f(b+1)` are checked
/// numerically; failures are flagged, not raised.
pub fn mean_value_estimate(f: ArithFunction, b: Exponent, n: u64) -> Result<WindowStats> {
    check_window(n)?;
    let table = f.table(n as usize);
    let s = b.zeta_argument();
    let closed = f.dirichlet_series(s);
    let mut stats = mean_value_estimate_table(&table, b, n, closed)?;
    stats.op = format!("mean-value({})", f.name());
    Ok(stats)
}

/// [`mean_value_estimate`] for an arbitrary integer table. Without a closed
/// form, `ζ_f(b+1)` is the table's partial Dirichlet series.
pub fn mean_value_estimate_table(
    table: &ArithTable<i64>,
    b: Exponent,
    n: u64,
    zeta_f_closed_form: Option<f64>,
) -> Result<WindowStats> {
    check_window(n)?;
    check_table(table, n)?;
    let table = table.truncate(n as usize)?;
    let s = b.zeta_argument();
    let g = dirichlet_convolve(&table, &mobius_sieve(n as usize))?;
    let raw = lambda_sum_from_convolution(&g, b, n);
    let series = zeta_f(&table, s)?;
    let mut flags = Vec::new();
    if !series.plateau {
        flags.push("zeta_f(b+1) partial sums have not plateaued".to_string());
    }
    if !crate::arith::condition::condition_from_convolution(&g).decaying {
        flags.push("growth condition on f*mu is not decaying".to_string());
    }
    let numerator = zeta_f_closed_form.unwrap_or(series.value);
    let mut stats = WindowStats::over_square("mean-value", b, n, RawSum::Exact(raw), numerator / zeta_exact(s));
    stats.flags = flags;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(f: ArithFunction, n: u64) -> ArithTable<i64> {
        f.table(n as usize)
    }

    #[test]
    fn naive_examples() {
        assert_eq!(
            lambda_f_sum_naive(&table(ArithFunction::Unit, 10), Exponent::TWO, 10).unwrap(),
            100
        );
        assert_eq!(
            lambda_f_sum_naive(&table(ArithFunction::FloorInverse, 4), Exponent::ONE, 4).unwrap(),
            11
        );
        // Σ gcd_2 over 4×4: rows r = 2, 4 pick up k = 2 at s = 4; r = 4 has no k = 4 (16 > 4).
        assert_eq!(
            lambda_f_sum_naive(&table(ArithFunction::Linear, 4), Exponent::TWO, 4).unwrap(),
            18
        );
    }

    #[test]
    fn fast_examples() {
        assert_eq!(
            lambda_f_sum_fast(&table(ArithFunction::Unit, 37), Exponent::new(3).unwrap(), 37).unwrap(),
            37 * 37
        );
        let mu = mobius_sieve(50);
        let by_remark: i128 = (1..=50u64)
            .filter(|&k| k * k <= 50)
            .map(|k| mu[k as usize] as i128 * (50 / k) as i128 * (50 / (k * k)) as i128)
            .sum();
        assert_eq!(
            lambda_f_sum_fast(&table(ArithFunction::FloorInverse, 50), Exponent::TWO, 50).unwrap(),
            by_remark
        );
    }

    #[test]
    fn counts() {
        assert_eq!(gcd_b_count(Exponent::ONE, 1, 4).unwrap(), 11);
        assert_eq!(gcd_b_count(Exponent::TWO, 9, 8).unwrap(), 0);
        for b in 1..=3 {
            let b = Exponent::new(b).unwrap();
            let hist = gcd_b_histogram(b, 60).unwrap();
            assert_eq!(hist.iter().sum::<u64>(), 3600);
            for k in [1, 2, 3, 7] {
                assert_eq!(hist[k], gcd_b_count(b, k as u64, 60).unwrap());
            }
        }
    }

    #[test]
    fn targets() {
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((density_target(Exponent::ONE, 1) - 6.0 / pi2).abs() < 1e-11);
        assert!((density_target(Exponent::TWO, 1) - 0.831_907_372_580_707_5).abs() < 1e-10);
        assert!((density_target(Exponent::TWO, 2) - 0.103_988_421_572_588_4).abs() < 1e-10);
        for k in 1..20 {
            assert!(density_target(Exponent::TWO, k + 1) < density_target(Exponent::TWO, k));
        }
    }

    #[test]
    fn unit_mean_is_exactly_one() {
        for n in [1, 5, 64] {
            let stats = mean_value_estimate(ArithFunction::Unit, Exponent::TWO, n).unwrap();
            assert_eq!(stats.estimate, 1.0);
            assert!((stats.target - 1.0).abs() < 1e-15);
        }
        let stats = mean_value_estimate(ArithFunction::Unit, Exponent::TWO, 64).unwrap();
        assert!(stats.flags.is_empty(), "{:?}", stats.flags);
    }

    #[test]
    fn linear_mean_is_flagged() {
        let stats = mean_value_estimate(ArithFunction::Linear, Exponent::ONE, 2000).unwrap();
        assert!(!stats.flags.is_empty());
    }

    #[test]
    fn set_density_cases() {
        let b = Exponent::TWO;
        let single = set_density_estimate(b, |k| k == 1, 300, 1000).unwrap();
        let direct = density_estimate(b, 1, 300).unwrap();
        assert_eq!(single.raw_sum, direct.raw_sum);
        assert!((single.target - direct.target).abs() < 1e-12);

        let all = set_density_estimate(b, |_| true, 50, 100_000).unwrap();
        assert_eq!(all.estimate, 1.0);
        assert!((all.target - 1.0).abs() <= all.target_error.unwrap() + 1e-10);

        let even = set_density_estimate(Exponent::ONE, |k| k % 2 == 0, 1000, 1_000_000).unwrap();
        assert!((even.target - 0.25).abs() <= even.target_error.unwrap() + 1e-10);
        assert!((even.estimate - 0.25).abs() < 5e-3);
    }

    #[test]
    fn serializes_with_documented_keys() {
        let stats = density_estimate(Exponent::ONE, 1, 4).unwrap();
        let json = serde_json::to_value(&stats).unwrap();
        for key in ["op", "b", "N", "estimate", "target", "abs_error"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["raw_sum"], 11);
    }
}
