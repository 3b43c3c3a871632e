//! Prime sieves and the multiplicative tables built on them.

use std::borrow::Cow;
use std::sync::OnceLock;

use super::table::ArithTable;

/// Largest bound served from the shared prime cache.
pub const CACHED_PRIME_BOUND: u64 = 10_000_000;

/// All primes `p ≤ n`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(n / 10 + 10);
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    for (k, &c) in composite.iter().enumerate().skip(2) {
        if !c {
            primes.push(k as u64);
        }
    }
    primes
}

/// Primes below 2^16; enough to finish trial division of any `u32`.
pub fn small_primes() -> &'static [u64] {
    static SMALL: OnceLock<Vec<u64>> = OnceLock::new();
    SMALL.get_or_init(|| primes_up_to(1 << 16))
}

/// Primes `p ≤ bound`, shared across callers when `bound ≤ CACHED_PRIME_BOUND`.
pub fn primes_up_to_cached(bound: u64) -> Cow<'static, [u64]> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    if bound <= 1 << 16 {
        let all = small_primes();
        return Cow::Borrowed(&all[..all.partition_point(|&p| p <= bound)]);
    }
    if bound <= CACHED_PRIME_BOUND {
        let all = CACHE.get_or_init(|| primes_up_to(CACHED_PRIME_BOUND));
        return Cow::Borrowed(&all[..all.partition_point(|&p| p <= bound)]);
    }
    Cow::Owned(primes_up_to(bound))
}

/// Smallest-prime-factor table on `0..=n`, for fast factorization of small
/// integers inside window scans.
#[derive(Clone, Debug)]
pub struct SpfSieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfSieve {
    /// Linear sieve; `n` must fit in `u32`.
    pub fn new(n: usize) -> Self {
        assert!(n <= u32::MAX as usize, "sieve bound exceeds u32");
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        Self { spf, primes }
    }

    pub fn bound(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn smallest_prime_factor(&self, n: usize) -> u32 {
        self.spf[n]
    }

    /// Prime factorization of `n ≤ bound()`, ascending, without allocation.
    pub fn factor(&self, n: u64) -> SpfFactors<'_> {
        debug_assert!(n >= 1 && n as usize <= self.bound());
        SpfFactors { sieve: self, rest: n }
    }
}

/// Iterator over `(prime, exponent)` pairs produced by [`SpfSieve::factor`].
pub struct SpfFactors<'a> {
    sieve: &'a SpfSieve,
    rest: u64,
}

impl Iterator for SpfFactors<'_> {
    type Item = (u64, u32);

    fn next(&mut self) -> Option<Self::Item> {
        if self.rest <= 1 {
            return None;
        }
        let p = self.sieve.spf[self.rest as usize] as u64;
        let mut e = 0;
        while self.rest.is_multiple_of(p) {
            self.rest /= p;
            e += 1;
        }
        Some((p, e))
    }
}

/// μ(n) for `1 ≤ n ≤ bound`.
pub fn mobius_sieve(bound: usize) -> ArithTable<i64> {
    assert!(bound >= 1, "table bound must be at least 1");
    let sieve = SpfSieve::new(bound);
    let mut mu = vec![0i64; bound + 1];
    mu[1] = 1;
    for n in 2..=bound {
        let p = sieve.spf[n] as usize;
        let m = n / p;
        mu[n] = if m.is_multiple_of(p) { 0 } else { -mu[m] };
    }
    ArithTable::from_values(mu.split_off(1)).expect("bound >= 1")
}

/// Euler's totient φ(n) for `1 ≤ n ≤ bound`.
///
/// The first thousand entries are checked against `Σ_{d|n} φ(d) = n` before
/// the table is returned.
pub fn phi_sieve(bound: usize) -> ArithTable<i64> {
    assert!(bound >= 1, "table bound must be at least 1");
    let sieve = SpfSieve::new(bound);
    let mut phi = vec![0i64; bound + 1];
    phi[1] = 1;
    for n in 2..=bound {
        let p = sieve.spf[n] as usize;
        let m = n / p;
        phi[n] = if m.is_multiple_of(p) {
            phi[m] * p as i64
        } else {
            phi[m] * (p as i64 - 1)
        };
    }
    let check = bound.min(1000);
    let mut divisor_sums = vec![0i64; check + 1];
    for d in 1..=check {
        for n in (d..=check).step_by(d) {
            divisor_sums[n] += phi[d];
        }
    }
    for (n, &sum) in divisor_sums.iter().enumerate().skip(1) {
        assert_eq!(sum, n as i64, "totient sieve broke the divisor-sum identity at {n}");
    }
    ArithTable::from_values(phi.split_off(1)).expect("bound >= 1")
}
