//! Prime graphs of finite groups.
//!
//! The prime graph of a group has one vertex per prime dividing the group
//! order, with an edge between p and q exactly when the group contains an
//! element of order pq. The input here is the pair (order, element-order
//! spectrum); the spectrum must be divisor-closed, so the edge test reduces
//! to membership of pq.
//!
//! Component structure drives everything downstream: a disconnected prime
//! graph forces a Frobenius or 2-Frobenius shape or a narrow normal series,
//! which is what the structural filters exploit.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::factored::FactoredInteger;
use crate::primes::factor_u128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("spectrum is empty or does not contain 1")]
    MissingIdentity,
    #[error("spectrum contains {member} but not its divisor {divisor}")]
    NotDivisorClosed { member: u64, divisor: u64 },
    #[error("spectrum entry {0} does not divide the group order")]
    EntryOutsideGroup(u64),
    #[error("prime {0} divides the group order but no element order")]
    PrimeUnused(u64),
    #[error("graph vertices do not match the order's prime support")]
    SupportMismatch,
}

/// Prime graph with components precomputed in canonical order: the
/// component of 2 first, the rest by their smallest prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeGraph {
    primes: Vec<u64>,
    edges: BTreeSet<(u64, u64)>,
    components: Vec<BTreeSet<u64>>,
}

impl PrimeGraph {
    /// Vertices, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// True when elements of order pq exist (p, q distinct vertices).
    pub fn adjacent(&self, p: u64, q: u64) -> bool {
        self.edges.contains(&(p.min(q), p.max(q)))
    }

    /// Edges as (smaller, larger) pairs, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.edges.iter().copied()
    }

    /// Connected components in canonical order.
    pub fn components(&self) -> &[BTreeSet<u64>] {
        &self.components
    }

    /// Number of connected components, usually written t(G).
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Index of the component containing p, in canonical order.
    pub fn component_of(&self, p: u64) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&p))
    }

    /// Graphviz rendering with one cluster per component.
    pub fn dot(&self, title: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{title}\" {{\n"));
        out.push_str("  node [shape=circle];\n");
        for (idx, comp) in self.components.iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_{idx} {{\n"));
            for p in comp {
                out.push_str(&format!("    p{p} [label=\"{p}\"];\n"));
            }
            for (a, b) in &self.edges {
                if comp.contains(a) {
                    out.push_str(&format!("    p{a} -- p{b};\n"));
                }
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}

/// Split an order across the components of its prime graph: entry i is the
/// product of p^v_p(order) over the primes p in component i, in component
/// order. The entries are pairwise coprime, each one's support is exactly
/// its component, and together they multiply back to the order.
pub fn order_components(
    order: &FactoredInteger,
    graph: &PrimeGraph,
) -> Result<Vec<FactoredInteger>, GraphError> {
    let support: Vec<u64> = order
        .support()
        .map(|p| u64::try_from(p).expect("catalog primes fit in u64"))
        .collect();
    if support != graph.primes {
        return Err(GraphError::SupportMismatch);
    }
    Ok(graph
        .components
        .iter()
        .map(|comp| {
            FactoredInteger::from_prime_powers(
                comp.iter().map(|&p| (p as u128, order.valuation(p as u128))),
            )
            .expect("component primes are distinct and exponents positive")
        })
        .collect())
}

/// Build and validate a prime graph from a group order and its full set of
/// element orders.
pub fn build_graph(order: &FactoredInteger, spectrum: &[u64]) -> Result<PrimeGraph, GraphError> {
    let members: BTreeSet<u64> = spectrum.iter().copied().collect();
    if !members.contains(&1) {
        return Err(GraphError::MissingIdentity);
    }
    for &m in &members {
        for d in 1..=m {
            if m % d == 0 && !members.contains(&d) {
                return Err(GraphError::NotDivisorClosed {
                    member: m,
                    divisor: d,
                });
            }
        }
    }
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    let mut edges: BTreeSet<(u64, u64)> = BTreeSet::new();
    for &m in &members {
        let factors = factor_u128(m as u128);
        for (&p, &e) in &factors {
            let p64 = u64::try_from(p).expect("element orders fit in u64");
            if order.valuation(p) < e {
                return Err(GraphError::EntryOutsideGroup(m));
            }
            primes.insert(p64);
        }
        let supp: Vec<u64> = factors.keys().map(|&p| p as u64).collect();
        for (i, &a) in supp.iter().enumerate() {
            for &b in &supp[i + 1..] {
                edges.insert((a, b));
            }
        }
    }
    for p in order.support() {
        let p64 = u64::try_from(p).expect("catalog primes fit in u64");
        if !primes.contains(&p64) {
            return Err(GraphError::PrimeUnused(p64));
        }
    }

    // Union-find over the vertex list.
    let verts: Vec<u64> = primes.iter().copied().collect();
    let index: BTreeMap<u64, usize> = verts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn root(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in &edges {
        let (ra, rb) = (root(&mut parent, index[&a]), root(&mut parent, index[&b]));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut by_root: BTreeMap<usize, BTreeSet<u64>> = BTreeMap::new();
    for (i, &p) in verts.iter().enumerate() {
        by_root.entry(root(&mut parent, i)).or_default().insert(p);
    }
    let mut components: Vec<BTreeSet<u64>> = by_root.into_values().collect();
    components.sort_by_key(|c| {
        let least = *c.iter().next().expect("nonempty component");
        // The even component sorts first; 2 is the least prime anyway.
        least
    });
    Ok(PrimeGraph {
        primes: verts,
        edges,
        components,
    })
}
