//! Small-integer prime utilities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// Returns `(p, k)` when `q = p^k` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Distinct prime divisors of `|n|`, ascending. Zero and units have none.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += BigInt::one();
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Smallest prime not dividing any of `values` (zeros are ignored).
pub fn smallest_prime_not_dividing(values: &[BigInt]) -> u64 {
    let mut p = 2u64;
    loop {
        if is_prime(p) {
            let bp = BigInt::from(p);
            if values.iter().all(|v| v.is_zero() || !v.is_multiple_of(&bp)) {
                return p;
            }
        }
        p += 1;
    }
}
