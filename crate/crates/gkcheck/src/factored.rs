//! Exact positive integers kept in fully factored form.
//!
//! A [`FactoredInteger`] is a map from primes to positive exponents; the
//! empty map is 1. All arithmetic stays in factored form, so divisibility
//! and valuation queries are exact map lookups, and the reconstructed value
//! is available through [`FactoredInteger::value`] when an ordinary integer
//! comparison is needed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::primes::{factor_u128, is_prime};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("empty factored-integer literal")]
    Empty,
    #[error("malformed factored-integer token `{0}`")]
    BadToken(String),
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("exponent must be positive for prime {0}")]
    ZeroExponent(u128),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{p} and {q} must be coprime")]
    NotCoprime { p: u64, q: u64 },
}

/// A positive integer as a product of prime powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FactoredInteger {
    factors: BTreeMap<u128, u64>,
}

impl FactoredInteger {
    /// The integer 1 (empty factorization).
    pub fn one() -> Self {
        Self::default()
    }

    /// Factor a positive integer. Deterministic for every input below 2^128.
    pub fn factor(n: u128) -> Self {
        Self {
            factors: factor_u128(n),
        }
    }

    /// Build from prime/exponent pairs, verifying primality and merging
    /// duplicate primes by adding exponents.
    pub fn from_prime_powers<I>(pairs: I) -> Result<Self, ArithError>
    where
        I: IntoIterator<Item = (u128, u64)>,
    {
        let mut factors = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(ArithError::NotPrime(p));
            }
            if e == 0 {
                return Err(ArithError::ZeroExponent(p));
            }
            let slot = factors.entry(p).or_insert(0u64);
            *slot = slot.checked_add(e).expect("exponent overflow");
        }
        Ok(Self { factors })
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` in this integer (0 when `p` does not divide it).
    pub fn valuation(&self, p: u128) -> u64 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    /// The primes dividing this integer, ascending.
    pub fn support(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.keys().copied()
    }

    pub fn prime_powers(&self) -> impl Iterator<Item = (u128, u64)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn num_prime_factors(&self) -> usize {
        self.factors.len()
    }

    /// True when `self` divides `other`, by exponent comparison.
    pub fn divides(&self, other: &Self) -> bool {
        self.factors
            .iter()
            .all(|(p, e)| other.valuation(*p) >= *e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let slot = factors.entry(p).or_insert(0);
            *slot = slot.checked_add(e).expect("exponent overflow");
        }
        Self { factors }
    }

    /// Exact quotient, or None when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let slot = factors.get_mut(&p).expect("divisor support is contained");
            *slot -= e;
            if *slot == 0 {
                factors.remove(&p);
            }
        }
        Some(Self { factors })
    }

    /// Greatest common divisor, by exponent minima.
    pub fn gcd(&self, other: &Self) -> Self {
        let factors = self
            .factors
            .iter()
            .filter_map(|(&p, &e)| {
                let m = e.min(other.valuation(p));
                (m > 0).then_some((p, m))
            })
            .collect();
        Self { factors }
    }

    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let factors = self
            .factors
            .iter()
            .map(|(&p, &e)| (p, e.checked_mul(k).expect("exponent overflow")))
            .collect();
        Self { factors }
    }

    /// Reconstruct the plain integer value.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (&p, &e) in &self.factors {
            acc *= BigUint::from(p).pow(u32::try_from(e).expect("exponent fits u32"));
        }
        acc
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.value().to_u128()
    }

    /// Compare against 10^k without constructing decimal strings.
    pub fn compare_to_power_of_ten(&self, k: u64) -> Ordering {
        let ten = BigUint::from(10u32).pow(u32::try_from(k).expect("exponent fits u32"));
        self.value().cmp(&ten)
    }

    /// Every positive divisor, ascending. Intended for small operands such
    /// as outer automorphism group orders; the count is the product of
    /// (exponent + 1) over the support.
    pub fn divisors(&self) -> Vec<u128> {
        let mut out = vec![1u128];
        for (&p, &e) in &self.factors {
            let prev = out.clone();
            let mut pk: u128 = 1;
            for _ in 0..e {
                pk = pk.checked_mul(p).expect("divisor fits u128");
                out.extend(prev.iter().map(|d| d.checked_mul(pk).expect("divisor fits u128")));
            }
        }
        out.sort_unstable();
        out
    }

    /// Render with the interpunct separator used in the report formats.
    pub fn display_pretty(&self) -> String {
        self.render("\u{b7}")
    }

    fn render(&self, sep: &str) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for FactoredInteger {
    /// Canonical ASCII form: `2^4*3^2*5*11`, primes ascending, unit
    /// exponents omitted, `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("*"))
    }
}

impl FromStr for FactoredInteger {
    type Err = ArithError;

    /// Accepts the canonical form with either `*` or `\u{b7}` separators.
    /// Duplicate primes are merged by adding exponents, so values copied
    /// from printed tables parse even when a prime is typeset twice.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ArithError::Empty);
        }
        if s == "1" {
            return Ok(Self::one());
        }
        let mut pairs = Vec::new();
        for token in s.split(['*', '\u{b7}']) {
            let token = token.trim();
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (token, "1"),
            };
            let p: u128 = base
                .parse()
                .map_err(|_| ArithError::BadToken(token.to_string()))?;
            let e: u64 = exp
                .parse()
                .map_err(|_| ArithError::BadToken(token.to_string()))?;
            if !is_prime(p) {
                return Err(ArithError::NotPrime(p));
            }
            if e == 0 {
                return Err(ArithError::ZeroExponent(p));
            }
            pairs.push((p, e));
        }
        Self::from_prime_powers(pairs)
    }
}

impl serde::Serialize for FactoredInteger {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for FactoredInteger {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// v_p of the product (q^1 - 1)(q^2 - 1) ... (q^m - 1), computed through the
/// multiplicative order of q mod p and the lifting-the-exponent rule rather
/// than by expanding the product.
///
/// `p` must be prime, `q` a prime power not divisible by `p`.
pub fn valuation_in_cyclotomic_product(p: u64, q: u64, m: u64) -> Result<u64, ArithError> {
    if !is_prime(p as u128) {
        return Err(ArithError::NotPrime(p as u128));
    }
    if q < 2 || factor_u128(q as u128).len() != 1 {
        return Err(ArithError::NotPrimePower(q));
    }
    if q % p == 0 {
        return Err(ArithError::NotCoprime { p, q });
    }
    if m == 0 {
        return Ok(0);
    }
    if p == 2 {
        // q odd: v2(q^i - 1) is v2(q-1) for odd i, v2(q-1)+v2(q+1)+v2(i)-1 for even i.
        let a = (q - 1).trailing_zeros() as u64;
        let b = (q + 1).trailing_zeros() as u64;
        let odd_count = m - m / 2;
        let mut total = odd_count * a;
        let mut i = 2;
        while i <= m {
            total += a + b + (i.trailing_zeros() as u64) - 1;
            i += 2;
        }
        return Ok(total);
    }
    // Multiplicative order d of q mod p; only i divisible by d contribute.
    let d = {
        let mut x = (q % p) as u128;
        let mut d = 1u64;
        while x != 1 {
            x = x * (q % p) as u128 % p as u128;
            d += 1;
        }
        d
    };
    let reps = m / d;
    if reps == 0 {
        return Ok(0);
    }
    // base = v_p(q^d - 1); then v_p(q^(jd) - 1) = base + v_p(j) for odd p (LTE).
    let base = {
        let qd = BigUint::from(q).pow(u32::try_from(d).expect("order fits u32")) - BigUint::one();
        let mut v = 0u64;
        let p_big = BigUint::from(p);
        let mut rest = qd;
        while (&rest % &p_big) == BigUint::ZERO {
            rest /= &p_big;
            v += 1;
        }
        v
    };
    let mut total = reps * base;
    for j in 1..=reps {
        let mut j = j;
        while j % p == 0 {
            total += 1;
            j /= p;
        }
    }
    Ok(total)
}
