//! Deterministic primality testing and factorization for integers below 2^128.
//!
//! Factorization is trial division by every prime below 10^6 followed by
//! Brent-cycle Pollard rho with a fixed parameter schedule, so repeated runs
//! factor the same input along the same path. Nothing here is randomized.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Trial division covers all primes below this bound.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Miller-Rabin witnesses: the first twelve primes certify every integer
/// below 3.317e24 (Sorenson-Webster), far past the 2^64 range where all
/// primes certified by this crate's callers live. Larger inputs fall back
/// to the same fixed list extended through 97; still deterministic.
const MR_WITNESSES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_WITNESSES_WIDE: [u128; 13] = [41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
const MR_PROVEN_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

fn sieve() -> &'static Vec<u32> {
    static SIEVE: OnceLock<Vec<u32>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let n = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::with_capacity(78_498);
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// a*b mod m without overflow. The slow path only triggers for moduli of
/// 65 bits or more, which none of the order-formula terms reach.
fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        (a % m) * (b % m) % m
    } else {
        let prod = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
        prod.to_u128().expect("reduced value fits u128")
    }
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc: u128 = 1 % m;
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

/// Deterministic Miller-Rabin. Complete below 3.317e24; above that the
/// extended fixed witness list is used (no counterexample is known).
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let witness_passes = |a: u128| -> bool {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                return true;
            }
        }
        false
    };
    if !MR_WITNESSES.iter().all(|&a| witness_passes(a)) {
        return false;
    }
    if n >= MR_PROVEN_BOUND && !MR_WITNESSES_WIDE.iter().all(|&a| witness_passes(a)) {
        return false;
    }
    true
}

/// Brent-cycle Pollard rho with the fixed schedule c = 1, 2, 3, ...
/// Returns a nontrivial factor of composite odd n.
fn pollard_rho(n: u128) -> u128 {
    debug_assert!(n > 3 && n % 2 != 0 && !is_prime(n));
    for c in 1u128.. {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let mut x: u128 = 2;
        let mut y: u128 = 2;
        let mut d: u128 = 1;
        // Brent batching: accumulate |x - y| products and gcd every 128 steps.
        let mut count = 0u32;
        let mut acc: u128 = 1;
        let mut saved_x = x;
        let mut saved_y = y;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            if x == y {
                break; // cycle without factor; try next c
            }
            let diff = if x > y { x - y } else { y - x };
            acc = mul_mod(acc, diff, n);
            count += 1;
            if count == 128 {
                d = gcd_u128(acc, n);
                if d == n {
                    // Overshot: replay the last batch one step at a time.
                    d = 1;
                    let (mut rx, mut ry) = (saved_x, saved_y);
                    for _ in 0..128 {
                        rx = f(rx);
                        ry = f(f(ry));
                        let diff = if rx > ry { rx - ry } else { ry - rx };
                        d = gcd_u128(diff, n);
                        if d > 1 {
                            break;
                        }
                    }
                    if d == n || d == 1 {
                        break; // degenerate; try next c
                    }
                }
                count = 0;
                acc = 1;
                saved_x = x;
                saved_y = y;
            }
        }
        if d > 1 && d < n {
            return d;
        }
        let d = gcd_u128(acc, n);
        if d > 1 && d < n {
            return d;
        }
    }
    unreachable!("factor search is exhaustive for composite inputs")
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Full factorization of n as a prime -> exponent map. Requires n >= 1.
pub fn factor_u128(n: u128) -> BTreeMap<u128, u64> {
    assert!(n >= 1, "factor requires a positive integer");
    let mut out = BTreeMap::new();
    let mut rest = n;
    for &p in sieve() {
        let p = p as u128;
        if p * p > rest {
            break;
        }
        while rest % p == 0 {
            *out.entry(p).or_insert(0u64) += 1;
            rest /= p;
        }
        if rest == 1 {
            return out;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            *out.entry(m).or_insert(0u64) += 1;
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_has_the_known_prime_count() {
        assert_eq!(sieve().len(), 78_498);
        assert_eq!(*sieve().last().unwrap(), 999_983);
    }

    #[test]
    fn primality_agrees_with_trial_division_below_10000() {
        let naive = |n: u128| {
            if n < 2 {
                return false;
            }
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    return false;
                }
                d += 1;
            }
            true
        };
        for n in 0..10_000u128 {
            assert_eq!(is_prime(n), naive(n), "disagreement at {n}");
        }
    }

    #[test]
    fn primality_on_known_large_cases() {
        assert!(is_prime((1u128 << 61) - 1)); // Mersenne prime M61
        assert!(!is_prime((1u128 << 67) - 1)); // 193707721 * 761838257287
        assert!(is_prime(2_796_203));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn factor_round_trips_against_multiplication() {
        for n in [
            1u128,
            2,
            7920,
            3124,
            (1u128 << 64),
            u64::MAX as u128,
            (1u128 << 92) - 1,
            600_851_475_143,
        ] {
            let f = factor_u128(n);
            let back: u128 = f
                .iter()
                .map(|(&p, &e)| p.pow(u32::try_from(e).unwrap()))
                .product();
            assert_eq!(back, n);
            assert!(f.keys().all(|&p| is_prime(p)));
        }
    }

    #[test]
    fn factor_finds_the_large_prime_pair() {
        // 2^67 - 1 resisted hand computation for decades; rho splits it fast.
        let f = factor_u128((1u128 << 67) - 1);
        let keys: Vec<u128> = f.keys().copied().collect();
        assert_eq!(keys, vec![193_707_721, 761_838_257_287]);
    }
}
