//! Exact arithmetic for the order-divisibility analysis of finite simple
//! groups: factored integers, a catalog of simple group orders, divisor
//! enumeration, prime graphs, and the structural filters that turn order
//! arithmetic into nonexistence proofs for normal-series candidates.

pub mod catalog;
pub mod enumerate;
pub mod factored;
pub mod filters;
pub mod graph;
pub mod primes;
pub mod tables;

pub use catalog::{CatalogError, GroupId, LieFamily, PrimePower, Sporadic};
pub use factored::{valuation_in_cyclotomic_product, ArithError, FactoredInteger};

// Every code block in the guide runs as a doc-test, so the chapters can
// never drift from the public API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/factored-integers.md")]
    mod factored_integers {}
    #[doc = include_str!("../../../book/src/group-catalog.md")]
    mod group_catalog {}
    #[doc = include_str!("../../../book/src/simple-divisors.md")]
    mod simple_divisors {}
    #[doc = include_str!("../../../book/src/prime-graphs.md")]
    mod prime_graphs {}
    #[doc = include_str!("../../../book/src/frobenius-elimination.md")]
    mod frobenius_elimination {}
    #[doc = include_str!("../../../book/src/candidate-refutation.md")]
    mod candidate_refutation {}
    #[doc = include_str!("../../../book/src/claim-ledger.md")]
    mod claim_ledger {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
