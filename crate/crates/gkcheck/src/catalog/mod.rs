//! Identities and exact orders of the finite non-abelian simple groups.
//!
//! A [`GroupId`] names one simple group: an alternating group, one of the
//! 26 sporadic groups, the Tits group, or a group of Lie type given by
//! family, rank, and field size. Constructors reject parameters that do not
//! yield a simple group, and [`GroupId::canonical`] collapses the classical
//! low-rank isomorphisms so each abstract group has one representative.

mod names;
mod sporadic;

use thiserror::Error;

use crate::factored::FactoredInteger;
use crate::primes::{factor_u128, is_prime};

pub use names::NameError;
pub use sporadic::{load_sporadic_data, DataError, Sporadic, SporadicData, SporadicRecord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("{0} is not a simple group")]
    NotSimple(String),
    #[error("rank {rank} is out of range for family {family:?}")]
    BadRank { family: LieFamily, rank: u32 },
    #[error("field size {q} is invalid for family {family:?}")]
    BadField { family: LieFamily, q: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("alternating degree must be at least 5, got {0}")]
    BadDegree(u32),
    #[error("parameters overflow the supported field-size range")]
    ParameterTooLarge,
}

/// A prime power q = p^f with q representable in 64 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    p: u64,
    f: u32,
}

impl PrimePower {
    pub fn new(p: u64, f: u32) -> Result<Self, CatalogError> {
        if f == 0 || !is_prime(p as u128) {
            return Err(CatalogError::NotPrimePower(p));
        }
        let q = Self { p, f };
        q.checked_value().ok_or(CatalogError::ParameterTooLarge)?;
        Ok(q)
    }

    pub fn from_value(q: u64) -> Result<Self, CatalogError> {
        let factors = factor_u128(q.max(1) as u128);
        if q < 2 || factors.len() != 1 {
            return Err(CatalogError::NotPrimePower(q));
        }
        let (&p, &f) = factors.iter().next().expect("one entry");
        Ok(Self {
            p: u64::try_from(p).expect("factor of a u64 fits"),
            f: u32::try_from(f).expect("exponent of a u64 fits"),
        })
    }

    fn checked_value(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.f {
            acc = acc.checked_mul(self.p)?;
        }
        Some(acc)
    }

    pub fn value(&self) -> u64 {
        self.checked_value().expect("validated at construction")
    }

    /// Characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Field degree over the prime field.
    pub fn f(&self) -> u32 {
        self.f
    }
}

/// Families of simple groups of Lie type, twisted families included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LieFamily {
    A,
    TwoA,
    B,
    C,
    D,
    TwoD,
    ThreeD4,
    G2,
    TwoG2,
    F4,
    TwoF4,
    TwoB2,
    E6,
    TwoE6,
    E7,
    E8,
}

impl LieFamily {
    pub const ALL: [LieFamily; 16] = [
        LieFamily::A,
        LieFamily::TwoA,
        LieFamily::B,
        LieFamily::C,
        LieFamily::D,
        LieFamily::TwoD,
        LieFamily::ThreeD4,
        LieFamily::G2,
        LieFamily::TwoG2,
        LieFamily::F4,
        LieFamily::TwoF4,
        LieFamily::TwoB2,
        LieFamily::E6,
        LieFamily::TwoE6,
        LieFamily::E7,
        LieFamily::E8,
    ];

    /// Inclusive rank range (fixed-rank families use a single value).
    pub fn rank_range(self) -> (u32, u32) {
        match self {
            LieFamily::A => (1, u32::MAX),
            LieFamily::TwoA => (2, u32::MAX),
            LieFamily::B => (2, u32::MAX),
            LieFamily::C => (3, u32::MAX),
            LieFamily::D | LieFamily::TwoD => (4, u32::MAX),
            LieFamily::ThreeD4 | LieFamily::F4 | LieFamily::TwoF4 => (4, 4),
            LieFamily::G2 | LieFamily::TwoG2 | LieFamily::TwoB2 => (2, 2),
            LieFamily::E6 | LieFamily::TwoE6 => (6, 6),
            LieFamily::E7 => (7, 7),
            LieFamily::E8 => (8, 8),
        }
    }

    /// Exponent of q in the group order.
    pub fn q_exponent(self, rank: u32) -> u64 {
        let n = rank as u64;
        match self {
            LieFamily::A | LieFamily::TwoA => n * (n + 1) / 2,
            LieFamily::B | LieFamily::C => n * n,
            LieFamily::D | LieFamily::TwoD => n * (n - 1),
            LieFamily::ThreeD4 | LieFamily::TwoF4 => 12,
            LieFamily::G2 => 6,
            LieFamily::TwoG2 => 3,
            LieFamily::F4 => 24,
            LieFamily::TwoB2 => 2,
            LieFamily::E6 | LieFamily::TwoE6 => 36,
            LieFamily::E7 => 63,
            LieFamily::E8 => 120,
        }
    }

    /// Upper bound on i such that a term close to q^i appears in the order
    /// formula; used to keep every term inside u128 range.
    fn max_term_exponent(self, rank: u32) -> u32 {
        match self {
            LieFamily::A | LieFamily::TwoA => rank + 1,
            LieFamily::B | LieFamily::C => 2 * rank,
            LieFamily::D | LieFamily::TwoD => 2 * (rank - 1),
            LieFamily::ThreeD4 => 9,
            LieFamily::G2 => 6,
            LieFamily::TwoG2 => 4,
            LieFamily::F4 => 12,
            LieFamily::TwoF4 => 7,
            LieFamily::TwoB2 => 3,
            LieFamily::E6 | LieFamily::TwoE6 => 12,
            LieFamily::E7 => 18,
            LieFamily::E8 => 30,
        }
    }
}

/// One finite non-abelian simple group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupId {
    Alternating(u32),
    Sporadic(Sporadic),
    Tits,
    Lie {
        family: LieFamily,
        rank: u32,
        q: PrimePower,
    },
}

impl GroupId {
    pub fn alternating(n: u32) -> Result<Self, CatalogError> {
        if n < 5 {
            return Err(CatalogError::BadDegree(n));
        }
        Ok(GroupId::Alternating(n))
    }

    /// Build a Lie-type identity, rejecting parameters that give a solvable
    /// or non-simple group.
    pub fn lie(family: LieFamily, rank: u32, q: PrimePower) -> Result<Self, CatalogError> {
        let (lo, hi) = family.rank_range();
        if rank < lo || rank > hi {
            return Err(CatalogError::BadRank { family, rank });
        }
        let qv = q.value();
        match family {
            LieFamily::TwoB2 | LieFamily::TwoF4 => {
                // Defined for q = 2^(2m+1); simple from q = 8 (2F4(2) has the
                // Tits group as its simple derived subgroup, catalogued apart).
                if q.p() != 2 || q.f() % 2 == 0 || q.f() < 3 {
                    return Err(CatalogError::BadField { family, q: qv });
                }
            }
            LieFamily::TwoG2 => {
                // Defined for q = 3^(2m+1); 2G2(3)' is L2(8), not a new group.
                if q.p() != 3 || q.f() % 2 == 0 || q.f() < 3 {
                    return Err(CatalogError::BadField { family, q: qv });
                }
            }
            LieFamily::A if rank == 1 && qv <= 3 => {
                return Err(CatalogError::NotSimple(format!("A1({qv})")));
            }
            LieFamily::TwoA if rank == 2 && qv == 2 => {
                return Err(CatalogError::NotSimple("2A2(2)".to_string()));
            }
            LieFamily::B if rank == 2 && qv == 2 => {
                return Err(CatalogError::NotSimple("B2(2)".to_string()));
            }
            LieFamily::G2 if qv == 2 => {
                return Err(CatalogError::NotSimple("G2(2)".to_string()));
            }
            _ => {}
        }
        let needed = family
            .max_term_exponent(rank)
            .checked_mul(q.f())
            .ok_or(CatalogError::ParameterTooLarge)?;
        // Every order-formula term must stay below 2^127.
        if needed as u64 * (64 - q.p().leading_zeros()) as u64 > 126 {
            return Err(CatalogError::ParameterTooLarge);
        }
        Ok(GroupId::Lie { family, rank, q })
    }

    /// L_m(q), the projective special linear group on m dimensions.
    pub fn linear(m: u32, q: PrimePower) -> Result<Self, CatalogError> {
        if m < 2 {
            return Err(CatalogError::BadRank {
                family: LieFamily::A,
                rank: 0,
            });
        }
        Self::lie(LieFamily::A, m - 1, q)
    }

    /// U_m(q), the projective special unitary group on m dimensions.
    pub fn unitary(m: u32, q: PrimePower) -> Result<Self, CatalogError> {
        if m < 3 {
            return Err(CatalogError::BadRank {
                family: LieFamily::TwoA,
                rank: m.saturating_sub(1),
            });
        }
        Self::lie(LieFamily::TwoA, m - 1, q)
    }

    /// S_2n(q), the projective symplectic group on 2n dimensions.
    pub fn symplectic(dim: u32, q: PrimePower) -> Result<Self, CatalogError> {
        let family = if dim == 4 { LieFamily::B } else { LieFamily::C };
        if dim < 4 || dim % 2 != 0 {
            return Err(CatalogError::BadRank { family, rank: dim / 2 });
        }
        Self::lie(family, dim / 2, q)
    }

    /// The canonical representative of this group's isomorphism class.
    ///
    /// Collapses A1(4) = A1(5) = Alt5, A1(9) = Alt6, A1(7) = A2(2),
    /// A3(2) = Alt8, B2(3) = 2A3(2), and Bn(2^f) = Cn(2^f) for n >= 3.
    /// Bn and Cn stay distinct for odd q and n >= 3 despite equal orders.
    pub fn canonical(self) -> GroupId {
        let GroupId::Lie { family, rank, q } = self else {
            return self;
        };
        let qv = q.value();
        match (family, rank, qv) {
            (LieFamily::A, 1, 4) | (LieFamily::A, 1, 5) => GroupId::Alternating(5),
            (LieFamily::A, 1, 9) => GroupId::Alternating(6),
            (LieFamily::A, 1, 7) => GroupId::Lie {
                family: LieFamily::A,
                rank: 2,
                q: PrimePower { p: 2, f: 1 },
            },
            (LieFamily::A, 3, 2) => GroupId::Alternating(8),
            (LieFamily::B, 2, 3) => GroupId::Lie {
                family: LieFamily::TwoA,
                rank: 3,
                q: PrimePower { p: 2, f: 1 },
            },
            (LieFamily::B, n, _) if n >= 3 && q.p() == 2 => GroupId::Lie {
                family: LieFamily::C,
                rank,
                q,
            },
            _ => self,
        }
    }

    /// Exact group order in factored form.
    pub fn order(&self) -> FactoredInteger {
        match self {
            GroupId::Alternating(n) => alternating_order(*n),
            GroupId::Sporadic(s) => s.order(),
            GroupId::Tits => "2^11*3^3*5^2*13".parse().expect("constant parses"),
            GroupId::Lie { family, rank, q } => lie_order(*family, *rank, *q),
        }
    }

    /// Order of the outer automorphism group.
    pub fn out_order(&self) -> FactoredInteger {
        match self {
            GroupId::Alternating(6) => FactoredInteger::factor(4),
            GroupId::Alternating(_) => FactoredInteger::factor(2),
            GroupId::Sporadic(s) => s.out_order(),
            GroupId::Tits => FactoredInteger::factor(2),
            GroupId::Lie { family, rank, q } => lie_out_order(*family, *rank, *q),
        }
    }
}

/// v_p(n!) by Legendre's formula.
fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut pk = p;
    loop {
        total += n / pk;
        match pk.checked_mul(p) {
            Some(next) if next <= n => pk = next,
            _ => break,
        }
    }
    total
}

fn alternating_order(n: u32) -> FactoredInteger {
    let n = n as u64;
    let mut pairs = Vec::new();
    let mut p = 2u64;
    while p <= n {
        if is_prime(p as u128) {
            let mut e = factorial_valuation(n, p);
            if p == 2 {
                e -= 1; // index 2 in the symmetric group
            }
            if e > 0 {
                pairs.push((p as u128, e));
            }
        }
        p += 1;
    }
    FactoredInteger::from_prime_powers(pairs).expect("primes by construction")
}

fn pow_u128(q: u64, i: u32) -> u128 {
    (q as u128).checked_pow(i).expect("term bound enforced at construction")
}

/// Order formula data: q-exponent, product terms, and the index divisor d.
fn lie_order(family: LieFamily, rank: u32, q: PrimePower) -> FactoredInteger {
    let qv = q.value();
    let n = rank;
    let mut terms: Vec<u128> = Vec::new();
    let d: u64;
    match family {
        LieFamily::A => {
            for i in 2..=n + 1 {
                terms.push(pow_u128(qv, i) - 1);
            }
            d = gcd(n as u64 + 1, qv - 1);
        }
        LieFamily::TwoA => {
            for i in 2..=n + 1 {
                // q^i - (-1)^i: subtract for even i, add for odd i.
                if i % 2 == 0 {
                    terms.push(pow_u128(qv, i) - 1);
                } else {
                    terms.push(pow_u128(qv, i) + 1);
                }
            }
            d = gcd(n as u64 + 1, qv + 1);
        }
        LieFamily::B | LieFamily::C => {
            for i in 1..=n {
                terms.push(pow_u128(qv, 2 * i) - 1);
            }
            d = gcd(2, qv - 1);
        }
        LieFamily::D => {
            terms.push(pow_u128(qv, n) - 1);
            for i in 1..n {
                terms.push(pow_u128(qv, 2 * i) - 1);
            }
            d = gcd_u128(4, pow_u128(qv, n) - 1);
        }
        LieFamily::TwoD => {
            terms.push(pow_u128(qv, n) + 1);
            for i in 1..n {
                terms.push(pow_u128(qv, 2 * i) - 1);
            }
            d = gcd_u128(4, pow_u128(qv, n) + 1);
        }
        LieFamily::ThreeD4 => {
            terms.push(pow_u128(qv, 8) + pow_u128(qv, 4) + 1);
            terms.push(pow_u128(qv, 6) - 1);
            terms.push(pow_u128(qv, 2) - 1);
            d = 1;
        }
        LieFamily::G2 => {
            terms.push(pow_u128(qv, 6) - 1);
            terms.push(pow_u128(qv, 2) - 1);
            d = 1;
        }
        LieFamily::TwoG2 => {
            terms.push(pow_u128(qv, 3) + 1);
            terms.push((qv - 1) as u128);
            d = 1;
        }
        LieFamily::F4 => {
            for i in [12u32, 8, 6, 2] {
                terms.push(pow_u128(qv, i) - 1);
            }
            d = 1;
        }
        LieFamily::TwoF4 => {
            terms.push(pow_u128(qv, 6) + 1);
            terms.push(pow_u128(qv, 4) - 1);
            terms.push(pow_u128(qv, 3) + 1);
            terms.push((qv - 1) as u128);
            d = 1;
        }
        LieFamily::TwoB2 => {
            terms.push(pow_u128(qv, 2) + 1);
            terms.push((qv - 1) as u128);
            d = 1;
        }
        LieFamily::E6 => {
            for i in [12u32, 9, 8, 6, 5, 2] {
                terms.push(pow_u128(qv, i) - 1);
            }
            d = gcd(3, qv - 1);
        }
        LieFamily::TwoE6 => {
            for i in [12u32, 8, 6, 2] {
                terms.push(pow_u128(qv, i) - 1);
            }
            terms.push(pow_u128(qv, 9) + 1);
            terms.push(pow_u128(qv, 5) + 1);
            d = gcd(3, qv + 1);
        }
        LieFamily::E7 => {
            for i in [18u32, 14, 12, 10, 8, 6, 2] {
                terms.push(pow_u128(qv, i) - 1);
            }
            d = gcd(2, qv - 1);
        }
        LieFamily::E8 => {
            for i in [30u32, 24, 20, 18, 14, 12, 8, 2] {
                terms.push(pow_u128(qv, i) - 1);
            }
            d = 1;
        }
    }
    let mut order = FactoredInteger::from_prime_powers([(
        q.p() as u128,
        family.q_exponent(rank) * q.f() as u64,
    )])
    .expect("characteristic is prime");
    for t in terms {
        order = order.mul(&factored_term(t));
    }
    order
        .checked_div(&FactoredInteger::factor(d as u128))
        .expect("order formulas divide exactly")
}

/// Memoized factorization of order-formula terms; the same q^i +/- 1 values
/// recur across the enumeration.
fn factored_term(t: u128) -> FactoredInteger {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: Mutex<Option<HashMap<u128, FactoredInteger>>> = Mutex::new(None);
    let mut guard = CACHE.lock().expect("term cache lock");
    let cache = guard.get_or_insert_with(HashMap::new);
    cache
        .entry(t)
        .or_insert_with(|| FactoredInteger::factor(t))
        .clone()
}

fn lie_out_order(family: LieFamily, rank: u32, q: PrimePower) -> FactoredInteger {
    let qv = q.value();
    let f = q.f() as u64;
    let n = rank as u64;
    let out: u64 = match family {
        LieFamily::A if rank == 1 => gcd(2, qv - 1) * f,
        LieFamily::A => gcd(n + 1, qv - 1) * f * 2,
        LieFamily::TwoA => gcd(n + 1, qv + 1) * 2 * f,
        // S4(q) has the full graph automorphism in characteristic 2 and the
        // diagonal one otherwise; both give order 2f.
        LieFamily::B if rank == 2 => 2 * f,
        LieFamily::B | LieFamily::C => gcd(2, qv - 1) * f,
        LieFamily::D if rank == 4 => gcd_u128(4, pow_u128(qv, 4) - 1) * f * 6,
        LieFamily::D => gcd_u128(4, pow_u128(qv, rank) - 1) * f * 2,
        LieFamily::TwoD => gcd_u128(4, pow_u128(qv, rank) + 1) * 2 * f,
        LieFamily::ThreeD4 => 3 * f,
        LieFamily::G2 => f * if q.p() == 3 { 2 } else { 1 },
        LieFamily::F4 => f * if q.p() == 2 { 2 } else { 1 },
        LieFamily::TwoB2 | LieFamily::TwoG2 | LieFamily::TwoF4 => f,
        LieFamily::E6 => gcd(3, qv - 1) * f * 2,
        LieFamily::TwoE6 => gcd(3, qv + 1) * 2 * f,
        LieFamily::E7 => gcd(2, qv - 1) * f,
        LieFamily::E8 => f,
    };
    FactoredInteger::factor(out as u128)
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// gcd with a wide second argument; reduce mod a first.
fn gcd_u128(a: u64, b: u128) -> u64 {
    gcd(a, (b % a as u128) as u64)
}

/// All sporadic groups plus the Tits group, the "26 + 1" exceptional list.
pub fn sporadic_and_tits() -> Vec<GroupId> {
    let mut v: Vec<GroupId> = Sporadic::ALL.iter().map(|&s| GroupId::Sporadic(s)).collect();
    v.push(GroupId::Tits);
    v
}

/// Lightweight accessor used across modules: spectrum of a sporadic group
/// from the built-in data set.
pub fn builtin_spectrum(s: Sporadic) -> &'static [u64] {
    &SporadicData::builtin().record(s).spectrum
}

#[cfg(test)]
mod tests;
