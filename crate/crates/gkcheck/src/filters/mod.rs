//! Structural filters: arithmetic necessary conditions that rule out
//! group-theoretic configurations.
//!
//! Three layers build on each other. The forced-edge predicate decides when
//! a p-group cannot act fixed-point-freely on a q-group, which forces an
//! element of order pq. Frobenius and 2-Frobenius feasibility checks apply
//! it, together with the kernel-minus-one divisibility constraints, to
//! candidate order splits; [`refute_frobenius`] runs them over every split
//! of a target order. Finally [`kill_candidate`] eliminates a proposed
//! simple section inside a group of sporadic order by exhibiting a
//! p-subgroup whose guaranteed centralizer primes, plus forced edges,
//! connect the whole prime graph, and [`verify_characterization`] replays
//! that elimination over every divisor candidate.
//!
//! Every filter is a necessary condition: a surviving configuration is
//! reported, never silently discarded, and an elimination that cannot be
//! justified returns Unresolved rather than a false kill.

mod claims;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::Zero;

use thiserror::Error;

use crate::catalog::{GroupId, PrimePower};
use crate::enumerate::simple_divisors;
use crate::factored::{valuation_in_cyclotomic_product, FactoredInteger};

pub use claims::{
    parse_claims, replay_claims, shipped_claims_text, Claim, ClaimKind, ClaimOutcome, ClaimReport,
    LedgerError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FilterError {
    #[error("kernel and complement share the prime {0}")]
    NotCoprime(u128),
    #[error("split factors must be nontrivial")]
    TrivialPart,
    #[error("target has {0} distinct primes; the split search is capped at 16")]
    TooManyPrimes(usize),
    #[error("p^k = {p}^{k} does not divide the target")]
    PowerNotDividing { p: u64, k: u64 },
    #[error("{0} does not divide the ambient order")]
    CandidateNotDividing(String),
}

/// Exact order of the general linear group GL(m, q).
pub fn gl_order(m: u64, q: PrimePower) -> FactoredInteger {
    static CACHE: Mutex<Option<HashMap<(u64, u64), FactoredInteger>>> = Mutex::new(None);
    let key = (m, q.value());
    if let Some(hit) = CACHE
        .lock()
        .expect("gl cache lock")
        .get_or_insert_with(HashMap::new)
        .get(&key)
    {
        return hit.clone();
    }
    let qv = q.value() as u128;
    let char_exponent = m * (m - 1) / 2 * q.f() as u64;
    let mut order = if char_exponent == 0 {
        FactoredInteger::one()
    } else {
        FactoredInteger::from_prime_powers([(q.p() as u128, char_exponent)])
            .expect("characteristic is prime")
    };
    let mut power: u128 = 1;
    for _ in 1..=m {
        power = power.checked_mul(qv).expect("GL field power fits in 128 bits");
        order = order.mul(&FactoredInteger::factor(power - 1));
    }
    CACHE
        .lock()
        .expect("gl cache lock")
        .get_or_insert_with(HashMap::new)
        .insert(key, order.clone());
    order
}

/// Memoized p-valuation of (q-1)(q^2-1)...(q^m-1).
fn cyclotomic_valuation(p: u64, q: u64, m: u64) -> u64 {
    static CACHE: Mutex<Option<HashMap<(u64, u64, u64), u64>>> = Mutex::new(None);
    let key = (p, q, m);
    if let Some(&hit) = CACHE
        .lock()
        .expect("valuation cache lock")
        .get_or_insert_with(HashMap::new)
        .get(&key)
    {
        return hit;
    }
    let value = valuation_in_cyclotomic_product(p, q, m)
        .expect("filter callers pass distinct primes");
    CACHE
        .lock()
        .expect("valuation cache lock")
        .get_or_insert_with(HashMap::new)
        .insert(key, value);
    value
}

/// True when a group of order p^n cannot act fixed-point-freely on a group
/// of order q^m, so an element of order pq is forced. The criterion is
/// p^n not dividing (q-1)(q^2-1)...(q^m-1), the q'-part of |GL(m,q)|.
pub fn forced_edge(p: u64, n: u64, q: u64, m: u64) -> bool {
    assert_ne!(p, q, "forced_edge needs distinct primes");
    cyclotomic_valuation(p, q, m) < n
}

/// Why a Frobenius split is impossible, or Feasible if nothing objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    /// The complement order does not divide kernel - 1.
    ComplementTooLarge,
    /// An element of order pq is forced across the split.
    ForcedEdge { p: u64, q: u64 },
}

/// Necessary conditions for a Frobenius group with the given kernel and
/// complement orders: the complement must divide kernel - 1, and no prime
/// of the complement may force an edge onto a prime of the kernel.
pub fn frobenius_feasible(
    kernel: &FactoredInteger,
    complement: &FactoredInteger,
) -> Result<Feasibility, FilterError> {
    if kernel.is_one() || complement.is_one() {
        return Err(FilterError::TrivialPart);
    }
    if let Some(shared) = kernel.support().find(|p| complement.valuation(*p) > 0) {
        return Err(FilterError::NotCoprime(shared));
    }
    let kernel_minus_one = kernel.value() - 1u32;
    if (&kernel_minus_one % complement.value()) != BigUint::zero() {
        return Ok(Feasibility::ComplementTooLarge);
    }
    for (p, n) in complement.prime_powers() {
        for (q, m) in kernel.prime_powers() {
            let (p, q) = (p as u64, q as u64);
            if forced_edge(p, n, q, m) {
                return Ok(Feasibility::ForcedEdge { p, q });
            }
        }
    }
    Ok(Feasibility::Feasible)
}

/// Why a 2-Frobenius split D, E, F is impossible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoFrobeniusVerdict {
    Feasible,
    /// E must be odd: 2 always lies in the component of the lower kernel.
    EvenMiddle,
    /// |E| does not divide |D| - 1.
    MiddleTooLarge,
    /// |F| does not divide |E| - 1.
    TopTooLarge,
    /// A prime of E forces an edge onto a prime of D.
    ForcedEdgeLower { p: u64, q: u64 },
    /// A prime of F forces an edge onto a prime of E.
    ForcedEdgeUpper { p: u64, q: u64 },
}

/// Necessary conditions for a 2-Frobenius group with orders |D|, |E|, |F|:
/// DE is Frobenius with kernel D, and EF = G/D is Frobenius with kernel E.
pub fn two_frobenius_feasible(
    d: &FactoredInteger,
    e: &FactoredInteger,
    f: &FactoredInteger,
) -> Result<TwoFrobeniusVerdict, FilterError> {
    if d.is_one() || e.is_one() {
        return Err(FilterError::TrivialPart);
    }
    if let Some(shared) = e
        .support()
        .find(|p| d.valuation(*p) > 0 || f.valuation(*p) > 0)
    {
        return Err(FilterError::NotCoprime(shared));
    }
    if e.valuation(2) > 0 {
        return Ok(TwoFrobeniusVerdict::EvenMiddle);
    }
    if !f.is_one() && (&(e.value() - 1u32) % f.value()) != BigUint::zero() {
        return Ok(TwoFrobeniusVerdict::TopTooLarge);
    }
    if (&(d.value() - 1u32) % e.value()) != BigUint::zero() {
        return Ok(TwoFrobeniusVerdict::MiddleTooLarge);
    }
    for (p, n) in e.prime_powers() {
        for (q, m) in d.prime_powers() {
            let (p, q) = (p as u64, q as u64);
            if forced_edge(p, n, q, m) {
                return Ok(TwoFrobeniusVerdict::ForcedEdgeLower { p, q });
            }
        }
    }
    for (p, n) in f.prime_powers() {
        for (q, m) in e.prime_powers() {
            let (p, q) = (p as u64, q as u64);
            if p != q && forced_edge(p, n, q, m) {
                return Ok(TwoFrobeniusVerdict::ForcedEdgeUpper { p, q });
            }
        }
    }
    Ok(TwoFrobeniusVerdict::Feasible)
}

/// An order split into a candidate Frobenius or 2-Frobenius shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrobeniusShape {
    Frobenius {
        kernel: FactoredInteger,
        complement: FactoredInteger,
    },
    TwoFrobenius {
        d: FactoredInteger,
        e: FactoredInteger,
        f: FactoredInteger,
    },
}

/// One eliminated configuration with the condition that killed it. A
/// branch entry covers every refinement of that shape at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elimination {
    Frobenius {
        kernel: FactoredInteger,
        complement: FactoredInteger,
        verdict: Feasibility,
    },
    /// Every (D, F) refinement for this E dies the same way: the cited
    /// prime of D keeps its full multiplicity in every refinement.
    TwoFrobeniusBranch {
        e: FactoredInteger,
        verdict: TwoFrobeniusVerdict,
    },
    TwoFrobenius {
        d: FactoredInteger,
        e: FactoredInteger,
        f: FactoredInteger,
        verdict: TwoFrobeniusVerdict,
    },
}

/// Outcome of the exhaustive Frobenius / 2-Frobenius split search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub target: FactoredInteger,
    pub survivors: Vec<FrobeniusShape>,
    pub eliminations: Vec<Elimination>,
}

impl FrobeniusReport {
    pub fn all_refuted(&self) -> bool {
        self.survivors.is_empty()
    }
}

/// Exhaustively test every Frobenius and 2-Frobenius shape for the target
/// order. Kernel and complement are coprime with each prime carrying its
/// full multiplicity to one side; the middle factor E of a 2-Frobenius
/// shape likewise takes full prime powers and must be odd, while D and F
/// split the rest with |F| dividing |E| - 1.
///
/// Survivors satisfy every necessary condition here; that reports a shape
/// the filters cannot exclude, not a proof that the group exists.
pub fn refute_frobenius(target: &FactoredInteger) -> Result<FrobeniusReport, FilterError> {
    let parts: Vec<(u128, u64)> = target.prime_powers().collect();
    if parts.len() > 16 {
        return Err(FilterError::TooManyPrimes(parts.len()));
    }
    let mut survivors = Vec::new();
    let mut eliminations = Vec::new();

    // Frobenius: kernel = primes in the mask, complement = the rest.
    let full: u32 = (1 << parts.len()) - 1;
    for mask in 1..full {
        let kernel = subset(&parts, mask);
        let complement = subset(&parts, full & !mask);
        match frobenius_feasible(&kernel, &complement).expect("split is coprime and proper") {
            Feasibility::Feasible => survivors.push(FrobeniusShape::Frobenius {
                kernel,
                complement,
            }),
            verdict => eliminations.push(Elimination::Frobenius {
                kernel,
                complement,
                verdict,
            }),
        }
    }

    // 2-Frobenius: E over odd full-prime-power subsets, then F over the
    // divisors of gcd(|E| - 1, rest), D the complement of F in rest.
    let odd: Vec<(u128, u64)> = parts.iter().copied().filter(|&(p, _)| p != 2).collect();
    if !odd.is_empty() {
        let odd_full: u32 = (1 << odd.len()) - 1;
        for mask in 1..=odd_full {
            let e = subset(&odd, mask);
            let rest = target
                .checked_div(&e)
                .expect("subset of the target divides it");
            if rest.is_one() {
                continue;
            }
            let e_minus_one = e.value() - 1u32;

            // Primes outside gcd(|E|-1, rest) keep full multiplicity in D
            // for every refinement, so one forced edge kills the branch.
            let mut gcd_parts: Vec<(u128, u64)> = Vec::new();
            let mut branch_dead = false;
            'branch: for (q, m) in rest.prime_powers() {
                let vq = valuation_in_big(&e_minus_one, q);
                let shared = vq.min(m);
                if shared > 0 {
                    gcd_parts.push((q, shared));
                }
                if shared < m {
                    // q appears in D with exponent at least m - shared > 0;
                    // in particular q stays in D, so test E onto q now.
                    for (p, n) in e.prime_powers() {
                        if forced_edge(p as u64, n, q as u64, m) {
                            eliminations.push(Elimination::TwoFrobeniusBranch {
                                e: e.clone(),
                                verdict: TwoFrobeniusVerdict::ForcedEdgeLower {
                                    p: p as u64,
                                    q: q as u64,
                                },
                            });
                            branch_dead = true;
                            break 'branch;
                        }
                    }
                }
            }
            if branch_dead {
                continue;
            }
            let g = FactoredInteger::from_prime_powers(gcd_parts).expect("primes from target");
            for f_value in g.divisors() {
                if f_value == 1 {
                    continue;
                }
                let f = FactoredInteger::factor(f_value);
                let d = rest.checked_div(&f).expect("f divides gcd divides rest");
                if d.is_one() {
                    continue;
                }
                match two_frobenius_feasible(&d, &e, &f).expect("split is coprime and proper") {
                    TwoFrobeniusVerdict::Feasible => survivors.push(FrobeniusShape::TwoFrobenius {
                        d,
                        e: e.clone(),
                        f,
                    }),
                    verdict => eliminations.push(Elimination::TwoFrobenius {
                        d,
                        e: e.clone(),
                        f,
                        verdict,
                    }),
                }
            }
        }
    }

    survivors.sort_by_key(shape_sort_key);
    Ok(FrobeniusReport {
        target: target.clone(),
        survivors,
        eliminations,
    })
}

fn shape_sort_key(shape: &FrobeniusShape) -> (u8, BigUint, BigUint) {
    match shape {
        FrobeniusShape::Frobenius { kernel, complement } => {
            (0, kernel.value(), complement.value())
        }
        FrobeniusShape::TwoFrobenius { d, e, .. } => (1, d.value(), e.value()),
    }
}

fn subset(parts: &[(u128, u64)], mask: u32) -> FactoredInteger {
    let chosen = parts
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask & (1 << i) != 0)
        .map(|(_, &pe)| pe);
    FactoredInteger::from_prime_powers(chosen).expect("primes from a factored integer")
}

fn valuation_in_big(value: &BigUint, p: u128) -> u64 {
    let p = BigUint::from(p);
    let mut v = 0;
    let mut rest = value.clone();
    while !rest.is_zero() && (&rest % &p).is_zero() {
        rest /= &p;
        v += 1;
    }
    v
}

/// Primes guaranteed to centralize some subgroup of order p^k inside any
/// group of order N: p itself (a p-group has nontrivial center), plus every
/// prime r whose multiplicity in N exceeds its multiplicity in |GL(k, p)|.
/// The automorphism group of any group of order p^k has r-part dividing
/// that of |GL(k, p)| for r != p (action on the elementary abelian Frattini
/// quotient), so the excess of the Sylow r-subgroup must centralize.
pub fn guaranteed_centralizer_primes(
    n: &FactoredInteger,
    p: u64,
    k: u64,
) -> Result<BTreeSet<u64>, FilterError> {
    if n.valuation(p as u128) < k || k == 0 {
        return Err(FilterError::PowerNotDividing { p, k });
    }
    let gl = gl_order(k, PrimePower::new(p, 1).expect("p is prime"));
    let mut set: BTreeSet<u64> = BTreeSet::new();
    set.insert(p);
    for (r, v) in n.prime_powers() {
        let r64 = r as u64;
        if r64 != p && v > gl.valuation(r) {
            set.insert(r64);
        }
    }
    Ok(set)
}

/// One eliminated quotient size in a candidate refutation: for out-divisor
/// d, the witness prime p with p^k the full p-part of |H|, the primes
/// guaranteed to centralize that p-subgroup, and for every other prime of
/// the target a partner in the guaranteed set it is forced to join.
/// The narrative lists the steps in the order used, the centralizer
/// witness first and then each forced edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationCase {
    pub candidate: GroupId,
    pub d: u64,
    pub quotient_order: FactoredInteger,
    pub p: u64,
    pub k: u64,
    pub guaranteed: BTreeSet<u64>,
    pub forced_partners: BTreeMap<u64, u64>,
    pub narrative: Vec<String>,
}

/// Outcome of testing one divisor candidate against the target order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KillOutcome {
    /// The candidate is the target itself with nothing left over.
    Confirmed,
    /// Every admissible out-divisor d is eliminated; one case per d.
    Refuted(Vec<RefutationCase>),
    /// Some quotient size admits no witness; the filters cannot decide.
    Unresolved { stuck_divisors: Vec<u64> },
}

/// Try to eliminate candidate T as the unique simple section of a group
/// with the target's order and a disconnected prime graph.
///
/// The ambient group would have a normal series with middle quotient
/// covering T and outer part of size d dividing |Out(T)|; the lower part H
/// then has order |target| / (|T| d). The elimination pattern: pick a
/// prime p with full p-part p^k inside |H|; any p-subgroup of that order
/// is centralized by every prime in the guaranteed set C; if each prime
/// outside C is forced (fixed-point-freeness being impossible at full
/// multiplicity) to join some partner in C, the whole prime graph is
/// connected, contradicting disconnectedness. If every admissible d dies
/// this way the candidate is refuted; a d with no working witness is
/// reported as unresolved, never silently dropped.
pub fn kill_candidate(target: &GroupId, candidate: &GroupId) -> Result<KillOutcome, FilterError> {
    let n = target.order();
    let t_order = candidate.order();
    if !t_order.divides(&n) {
        return Err(FilterError::CandidateNotDividing(candidate.to_string()));
    }
    if candidate.canonical() == target.canonical() {
        return Ok(KillOutcome::Confirmed);
    }
    let out = candidate.out_order();
    let mut cases = Vec::new();
    let mut stuck = Vec::new();
    for d in out.divisors() {
        let d64 = u64::try_from(d).expect("outer orders are small");
        let with_outer = t_order.mul(&FactoredInteger::factor(d));
        let Some(h) = n.checked_div(&with_outer) else {
            continue;
        };
        match witness_for_quotient(&n, &h, d64, candidate) {
            Some(case) => cases.push(case),
            None => stuck.push(d64),
        }
    }
    if stuck.is_empty() {
        Ok(KillOutcome::Refuted(cases))
    } else {
        Ok(KillOutcome::Unresolved {
            stuck_divisors: stuck,
        })
    }
}

/// Find the least witness prime of |H| whose centralizer star, closed
/// under forced edges, reaches every prime of the target.
fn witness_for_quotient(
    n: &FactoredInteger,
    h: &FactoredInteger,
    d: u64,
    candidate: &GroupId,
) -> Option<RefutationCase> {
    for (p, k) in h.prime_powers() {
        let p64 = p as u64;
        let guaranteed =
            guaranteed_centralizer_primes(n, p64, k).expect("p^k divides h divides n");
        let mut partners: BTreeMap<u64, u64> = BTreeMap::new();
        let mut all_connected = true;
        for (r, _) in n.prime_powers() {
            let r64 = r as u64;
            if guaranteed.contains(&r64) {
                continue;
            }
            let partner = guaranteed
                .iter()
                .copied()
                .find(|&q| q != r64 && forced_edge(r64, 1, q, n.valuation(q as u128)));
            match partner {
                Some(q) => {
                    partners.insert(r64, q);
                }
                None => {
                    all_connected = false;
                    break;
                }
            }
        }
        if all_connected {
            let mut narrative = vec![format!("centralizer:{p64}^{k}")];
            narrative.extend(
                partners
                    .iter()
                    .map(|(r, q)| format!("forced-edge:{r}-{q}^{}", n.valuation(*q as u128))),
            );
            return Some(RefutationCase {
                candidate: *candidate,
                d,
                quotient_order: h.clone(),
                p: p64,
                k,
                guaranteed,
                forced_partners: partners,
                narrative,
            });
        }
    }
    None
}

/// Full elimination run for one target: every simple group whose order
/// divides the target's is tested with [`kill_candidate`].
#[derive(Debug, Clone)]
pub struct CharacterizationReport {
    pub target: GroupId,
    pub confirmed: Vec<GroupId>,
    pub refuted: Vec<(GroupId, Vec<RefutationCase>)>,
    pub unresolved: Vec<(GroupId, Vec<u64>)>,
}

impl CharacterizationReport {
    /// The reproduction goal: exactly the target confirmed, nothing open.
    pub fn is_exact(&self) -> bool {
        self.unresolved.is_empty() && self.confirmed == vec![self.target.canonical()]
    }
}

pub fn verify_characterization(target: &GroupId) -> CharacterizationReport {
    let mut report = CharacterizationReport {
        target: *target,
        confirmed: Vec::new(),
        refuted: Vec::new(),
        unresolved: Vec::new(),
    };
    for hit in simple_divisors(&target.order()) {
        match kill_candidate(target, &hit.group).expect("hits divide the target") {
            KillOutcome::Confirmed => report.confirmed.push(hit.group),
            KillOutcome::Refuted(cases) => report.refuted.push((hit.group, cases)),
            KillOutcome::Unresolved { stuck_divisors } => {
                report.unresolved.push((hit.group, stuck_divisors))
            }
        }
    }
    report
}
