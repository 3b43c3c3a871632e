//! Averages of a bounded point function over the spheres
//! `S_k^b = {A : ‖A‖_b = k}` and the series `ζ_{Λ,b}(b+1) = Σ_k M_{b,k}(Λ)/k^{b+1}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{zeta_exact, CompensatedSum, Exponent, GcdB, LatticePoint};
use crate::error::{Error, Result};

/// Fewest window points a sphere needs before its average is reported.
pub const MIN_SPHERE_SAMPLE: u64 = 30;

/// Default truncation of the `ζ_{Λ,b}` series.
pub const DEFAULT_TRUNCATION: u64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereAverage {
    pub b: u32,
    pub k: u64,
    #[serde(rename = "N")]
    pub n: u64,
    /// `|T_{N,b,k}|`.
    pub count: u64,
    pub sum: f64,
    pub mean: f64,
}

fn point(r: u64, s: u64) -> LatticePoint {
    LatticePoint::new(r, s).expect("window coordinates are positive")
}

/// Mean of `lambda` over the window points with `gcd_b = k`.
///
/// Fails with [`Error::InsufficientSample`] when fewer than
/// [`MIN_SPHERE_SAMPLE`] window points lie on the sphere.
pub fn sphere_average<F>(lambda: F, b: Exponent, k: u64, n: u64) -> Result<SphereAverage>
where
    F: Fn(LatticePoint) -> f64 + Sync,
{
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument("k and N must be at least 1".into()));
    }
    let gcd = GcdB::new(b, n);
    let rows: Vec<(u64, CompensatedSum)> = (1..=n / k)
        .into_par_iter()
        .map(|m| {
            let r = m * k;
            let mut acc = CompensatedSum::new();
            let mut count = 0u64;
            for s in 1..=n {
                if gcd.eval(r, s) == k {
                    acc.add(lambda(point(r, s)));
                    count += 1;
                }
            }
            (count, acc)
        })
        .collect();
    let mut total = CompensatedSum::new();
    let mut count = 0;
    for (c, acc) in &rows {
        count += c;
        total.merge(acc);
    }
    if count < MIN_SPHERE_SAMPLE {
        return Err(Error::InsufficientSample {
            k,
            found: count,
            required: MIN_SPHERE_SAMPLE,
        });
    }
    let sum = total.value();
    Ok(SphereAverage {
        b: b.get(),
        k,
        n,
        count,
        sum,
        mean: sum / count as f64,
    })
}

/// Truncated `ζ_{Λ,b}(b+1)` and the independent window-mean cross-check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaLambdaEstimate {
    pub b: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub truncation: u64,
    /// `Σ_{k ≤ K, sphere sampled} M_{b,k}/k^{b+1}`.
    pub value: f64,
    /// `C·Σ_{k>K} k^{-(b+1)}` plus `C/k^{b+1}` per dropped sphere.
    pub error_bound: f64,
    /// Spheres with fewer than [`MIN_SPHERE_SAMPLE`] points, left out of `value`.
    pub dropped: Vec<u64>,
    /// `ζ(b+1) · (window mean of Λ)`, which the series should match.
    pub direct: f64,
    pub spheres: Vec<SphereAverage>,
}

/// Estimates `ζ_{Λ,b}(b+1)` for a function bounded by `bound` in one window scan.
pub fn zeta_lambda_estimate<F>(
    lambda: F,
    bound: f64,
    b: Exponent,
    n: u64,
    truncation: u64,
) -> Result<ZetaLambdaEstimate>
where
    F: Fn(LatticePoint) -> f64 + Sync,
{
    if n == 0 || truncation == 0 {
        return Err(Error::InvalidArgument("N and K must be at least 1".into()));
    }
    if !(bound >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bound C must be nonnegative, got {bound}"
        )));
    }
    let gcd = GcdB::new(b, n);
    let kmax = truncation.min(n) as usize;
    let chunk = 64u64;
    let starts: Vec<u64> = (1..=n).step_by(chunk as usize).collect();
    let partials: Vec<(Vec<CompensatedSum>, Vec<u64>, CompensatedSum)> = starts
        .par_iter()
        .map(|&r0| {
            let mut sums = vec![CompensatedSum::new(); kmax + 1];
            let mut counts = vec![0u64; kmax + 1];
            let mut all = CompensatedSum::new();
            for r in r0..(r0 + chunk).min(n + 1) {
                for s in 1..=n {
                    let v = lambda(point(r, s));
                    all.add(v);
                    let k = gcd.eval(r, s) as usize;
                    if k <= kmax {
                        sums[k].add(v);
                        counts[k] += 1;
                    }
                }
            }
            (sums, counts, all)
        })
        .collect();
    let mut sums = vec![CompensatedSum::new(); kmax + 1];
    let mut counts = vec![0u64; kmax + 1];
    let mut all = CompensatedSum::new();
    for (s, c, a) in &partials {
        for k in 1..=kmax {
            sums[k].merge(&s[k]);
            counts[k] += c[k];
        }
        all.merge(a);
    }

    let exponent = b.zeta_argument();
    let mut value = CompensatedSum::new();
    let mut error = CompensatedSum::new();
    let mut dropped = Vec::new();
    let mut spheres = Vec::new();
    for k in 1..=kmax {
        let weight = (k as f64).powf(-exponent);
        if counts[k] < MIN_SPHERE_SAMPLE {
            dropped.push(k as u64);
            error.add(bound * weight);
            continue;
        }
        let sum = sums[k].value();
        let mean = sum / counts[k] as f64;
        value.add(mean * weight);
        spheres.push(SphereAverage {
            b: b.get(),
            k: k as u64,
            n,
            count: counts[k],
            sum,
            mean,
        });
    }
    // Spheres k ∈ (N, K] are empty in the window; they count as dropped too.
    for k in kmax as u64 + 1..=truncation {
        dropped.push(k);
        error.add(bound * (k as f64).powf(-exponent));
    }
    let bf = f64::from(b.get());
    error.add(bound * (truncation as f64).powf(-bf) / bf);
    let zeta_b1 = zeta_exact(exponent);
    Ok(ZetaLambdaEstimate {
        b: b.get(),
        n,
        truncation,
        value: value.value(),
        error_bound: error.value(),
        dropped,
        direct: zeta_b1 * all.value() / (n as f64 * n as f64),
        spheres,
    })
}
