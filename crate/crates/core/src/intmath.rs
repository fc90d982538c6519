//! Integer helpers shared by the field and family code.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut f = 5u64;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f) || n.is_multiple_of(f + 2) {
            return false;
        }
        f += 6;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `base^exp` if it fits in a `u64`.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), exp as usize)
}

/// `sum_{l=0}^{terms-1} base^(l*step)`, i.e. `(base^(terms*step) - 1) / (base^step - 1)`
/// computed without a division.
pub fn geometric_sum(base: u64, step: u64, terms: u64) -> BigUint {
    let ratio = big_pow(base, step);
    let mut acc = BigUint::zero();
    let mut power = BigUint::one();
    for _ in 0..terms {
        acc += &power;
        power *= &ratio;
    }
    acc
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = mul_mod(acc, small_binomial_mod(ni, ki, p), p);
        n /= p;
        k /= p;
    }
    acc
}

fn small_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    // n < p, so every factor below is invertible mod p.
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = mul_mod(num, n - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn primes_below_50() {
        let got: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            got,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
    }

    #[test]
    fn divisors_of_728() {
        let d = divisors(728);
        assert_eq!(d.len(), 16);
        assert!(d.iter().all(|x| 728 % x == 0));
        assert!(d.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(728), [2, 7, 13]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(97), [97]);
    }

    #[test]
    fn geometric_sum_matches_division() {
        for q in 2..10u64 {
            for m in 1..5u64 {
                for i in 1..6u64 {
                    let num = big_pow(q, i * m) - 1u32;
                    let den = big_pow(q, m) - 1u32;
                    let (quot, rem) = num.div_rem(&den);
                    assert!(rem.is_zero());
                    assert_eq!(geometric_sum(q, m, i), quot);
                }
            }
        }
    }

    #[test]
    fn lucas_matches_pascal() {
        for p in [2u64, 3, 5, 7] {
            let mut row = vec![1u64];
            for n in 0..40u64 {
                for (k, &c) in row.iter().enumerate() {
                    assert_eq!(binomial_mod_p(n, k as u64, p), c % p, "C({n},{k}) mod {p}");
                }
                let mut next = vec![1u64; row.len() + 1];
                for k in 1..row.len() {
                    next[k] = row[k - 1] + row[k];
                }
                row = next;
            }
        }
    }
}
