//! Integer factorization: trial division, Miller–Rabin, and Pollard–Brent rho.
//!
//! Word-sized inputs are always factored completely. Arbitrary-precision
//! inputs are factored under an explicit time budget; whatever does not split
//! in time is returned as an unfactored composite cofactor.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::sieve::small_primes;

/// A prime together with its multiplicity.
pub type PrimePower<T> = (T, u32);

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut saved = (x, y);
        // Brent-style batching of the gcd.
        while d == 1 {
            saved = (x, y);
            for _ in 0..64 {
                x = f(x);
                y = f(f(y));
                q = mul_mod(q, x.abs_diff(y), n);
            }
            d = q.gcd(&n);
        }
        if d == n {
            // Batched product collapsed; redo the last batch one step at a time.
            let (mut x, mut y) = saved;
            loop {
                x = f(x);
                y = f(f(y));
                d = x.abs_diff(y).gcd(&n);
                if d != 1 {
                    break;
                }
            }
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn push_factors_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    push_factors_u64(d, out);
    push_factors_u64(n / d, out);
}

/// Complete factorization of a 64-bit integer, primes ascending.
///
/// `factor_u64(1)` is empty; `factor_u64(0)` panics.
pub fn factor_u64(mut n: u64) -> Vec<PrimePower<u64>> {
    assert!(n > 0, "cannot factor zero");
    let mut out = Vec::new();
    for &p in small_primes().iter().take_while(|&&p| p < 1 << 10) {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut rest = Vec::new();
    push_factors_u64(n, &mut rest);
    rest.sort_unstable();
    for p in rest {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Outcome of a budgeted big-integer factorization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigFactorization {
    /// Proven prime factors with multiplicity, ascending.
    pub primes: Vec<PrimePower<BigUint>>,
    /// Composite parts that did not split within the budget.
    pub unfactored: Vec<BigUint>,
}

impl BigFactorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }
}

/// Miller–Rabin with twelve fixed bases plus eight pseudo-random ones.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let fixed = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].map(BigUint::from);
    // Extra witnesses derived from n itself keep the test reproducible.
    let span = n - 3u32;
    let mut state = n
        .to_u64_digits()
        .iter()
        .fold(0x9E37_79B9_7F4A_7C15u64, |acc, &w| splitmix(acc ^ w));
    let random: Vec<BigUint> = (0..8)
        .map(|_| {
            let words: Vec<u64> = (0..n.to_u64_digits().len() + 1)
                .map(|_| {
                    state = splitmix(state);
                    state
                })
                .collect();
            BigUint::from_slice(
                &words
                    .iter()
                    .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                    .collect::<Vec<_>>(),
            ) % &span
                + 2u32
        })
        .collect();
    'witness: for a in fixed.iter().chain(random.iter()) {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rho_big(n: &BigUint, deadline: Instant) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let step = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut saved = (x.clone(), y.clone());
        while d == one {
            if Instant::now() >= deadline {
                return None;
            }
            saved = (x.clone(), y.clone());
            let mut q = one.clone();
            for _ in 0..128 {
                x = step(&x);
                y = step(&step(&y));
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            d = q.gcd(n);
        }
        if &d == n {
            let (mut x, mut y) = saved;
            loop {
                x = step(&x);
                y = step(&step(&y));
                let diff = if x > y { &x - &y } else { &y - &x };
                d = diff.gcd(n);
                if d != one {
                    break;
                }
            }
        }
        if &d != n {
            return Some(d);
        }
        c += 1u32;
    }
}

/// Strips every prime `p ≤ trial_bound` from `n`, then splits the remaining
/// cofactor with Pollard–Brent rho until `budget` is spent.
pub fn factor_big(n: &BigUint, trial_bound: u64, budget: Duration) -> BigFactorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut primes: Vec<PrimePower<BigUint>> = Vec::new();
    let mut rest = n.clone();
    if let Some(small) = rest.to_u64() {
        return BigFactorization {
            primes: factor_u64(small)
                .into_iter()
                .map(|(p, e)| (BigUint::from(p), e))
                .collect(),
            unfactored: Vec::new(),
        };
    }
    let (stripped, remaining) = trial_divide(&rest, trial_bound);
    primes.extend(stripped.into_iter().map(|(p, e)| (BigUint::from(p), e)));
    rest = remaining;

    let deadline = Instant::now() + budget;
    let mut unfactored = Vec::new();
    let mut stack = vec![rest];
    let mut found: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            for (p, e) in factor_u64(small) {
                found.extend(std::iter::repeat_n(BigUint::from(p), e as usize));
            }
            continue;
        }
        if is_probable_prime(&m) {
            found.push(m);
            continue;
        }
        match rho_big(&m, deadline) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => unfactored.push(m),
        }
    }
    found.sort();
    for p in found {
        match primes.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => primes.push((p, 1)),
        }
    }
    primes.sort();
    unfactored.sort();
    BigFactorization { primes, unfactored }
}

/// Divides out every prime up to `bound`, stopping early once the cofactor is
/// provably 1 or prime (`p² > cofactor`). Returns the small prime powers found
/// and the remaining cofactor.
pub fn trial_divide(n: &BigUint, bound: u64) -> (Vec<PrimePower<u64>>, BigUint) {
    let mut rest = n.clone();
    let mut digits = rest.to_u64_digits();
    let mut out = Vec::new();
    for &p in super::sieve::primes_up_to_cached(bound).iter() {
        if rest.is_one() {
            break;
        }
        if rest.bits() <= 126 && u128::from(p) * u128::from(p) > rest.to_u128().unwrap_or(u128::MAX) {
            // What remains is prime; report it if it fits the bound.
            if let Some(last) = rest.to_u64() {
                if last <= bound {
                    out.push((last, 1));
                    rest = BigUint::one();
                }
            }
            break;
        }
        let mut e = 0;
        while residue(&digits, p) == 0 {
            rest /= p;
            digits = rest.to_u64_digits();
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    (out, rest)
}

/// `n mod p` from the little-endian base-2^64 digits of `n`.
fn residue(digits: &[u64], p: u64) -> u64 {
    let p = u128::from(p);
    digits
        .iter()
        .rev()
        .fold(0u128, |acc, &d| ((acc << 64) | u128::from(d)) % p) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_small_range() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), naive(n), "n = {n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn factors_multiply_back() {
        for n in [1u64, 2, 12, 97, 1 << 40, 600_851_475_143, 18_446_744_073_709_551_615] {
            let product: u128 = factor_u64(n).iter().map(|&(p, e)| (p as u128).pow(e)).product();
            assert_eq!(product, n as u128);
        }
        assert_eq!(factor_u64(4_294_967_297), vec![(641, 1), (6_700_417, 1)]);
    }

    #[test]
    fn big_factorization_semiprime() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let r = BigUint::from(4_294_967_311u64);
        let n = &p * &q * &r * 4u32;
        let f = factor_big(&n, 1000, Duration::from_secs(5));
        assert!(f.is_complete());
        let expected = vec![(BigUint::from(2u32), 2), (q.clone(), 1), (p.clone(), 1), (r.clone(), 1)];
        assert_eq!(f.primes, expected);
    }

    #[test]
    fn zero_budget_leaves_cofactor() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(1_000_000_009u64);
        let n = &p * &q * &p;
        let f = factor_big(&n, 100, Duration::ZERO);
        assert_eq!(f.unfactored, vec![n]);
        assert!(f.primes.is_empty());
    }

    #[test]
    fn trial_division_reports_prime_tail() {
        let (found, rest) = trial_divide(&BigUint::from(2u32 * 2 * 101), 1000);
        assert_eq!(found, vec![(2, 2), (101, 1)]);
        assert!(rest.is_one());
        let (found, rest) = trial_divide(&BigUint::from(6u64 * 1_000_003), 100);
        assert_eq!(found, vec![(2, 1), (3, 1)]);
        assert_eq!(rest, BigUint::from(1_000_003u64));
    }
}
