//! Arithmetic claim ledger: line-delimited JSON records, each one a small
//! assertion that can be recomputed from first principles and compared to
//! the value the source text printed.
//!
//! A record carries `id`, `lemma` (an opaque source locator), a `kind`
//! discriminator with kind-specific operand fields, and an optional
//! `errata` flag. Replay recomputes every claim; ordinary claims must
//! agree, while claims flagged errata must disagree (they pin down a typo
//! in the source and guard against the tool drifting toward it). Lines
//! that are blank or start with `#` are skipped.
//!
//! Kinds and their operands:
//!
//! | kind | operands | asserts |
//! |------|----------|---------|
//! | `not_divides_gl` | `p`, `m`, `q` | p does not divide \|GL(m, q)\| |
//! | `divides` | `a`, `b`, `expected` | a divides b iff `expected` |
//! | `power_minus_one_valuation` | `p`, `r`, `q`, `k`, `divides` | p^r divides q^k - 1 iff `divides` |
//! | `factorization_equals` | `value` or `gl_m`+`gl_q` or `group`, `expected` | the operand factors exactly as `expected` |
//! | `order_bound` | `group`, `exp`, `rel` | the group order is `lt`/`gt` 10^exp |
//! | `table_membership` | `ambient`, `member`, `present` | member appears among the simple groups of order dividing \|ambient\| iff `present` |

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{GroupId, PrimePower};
use crate::enumerate::{parse_value, simple_divisors};

use super::{gl_order, valuation_in_big};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// Opaque locator for where the assertion was transcribed from.
    pub lemma: String,
    #[serde(flatten)]
    pub kind: ClaimKind,
    /// True when recomputation is expected to contradict the printed value.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub errata: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimKind {
    /// p does not divide |GL(m, q)|.
    NotDividesGl { p: u64, m: u64, q: u64 },
    /// a | b expected to hold or not; operands decimal or factored.
    Divides { a: String, b: String, expected: bool },
    /// p^r | q^k - 1 expected to hold or not.
    PowerMinusOneValuation {
        p: u64,
        r: u64,
        q: u64,
        k: u32,
        divides: bool,
    },
    /// The operand factors exactly as written in `expected`.
    FactorizationEquals {
        #[serde(flatten)]
        operand: FactorOperand,
        expected: String,
    },
    /// The named group's order lies on the stated side of 10^exp.
    OrderBound { group: String, exp: u64, rel: Relation },
    /// member appears among the simple groups of order dividing |ambient|.
    TableMembership {
        ambient: String,
        member: String,
        present: bool,
    },
}

/// What gets factored in a `factorization_equals` claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorOperand {
    Gl { gl_m: u64, gl_q: u64 },
    Group { group: String },
    Value { value: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Lt,
    Gt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "snake_case")]
pub enum ClaimOutcome {
    /// Recomputation agrees with the claim as stated.
    Pass,
    /// Recomputation disagrees and the claim was not flagged errata.
    Fail(String),
    /// Recomputation disagrees exactly as the errata flag predicted.
    ConfirmedErrata(String),
    /// The errata flag predicted a disagreement, but recomputation agrees.
    ErrataUnconfirmed,
}

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("ledger line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Text of the ledger shipped with the crate. Parses via [`parse_claims`];
/// replaying it passes everywhere except the entries flagged errata.
pub fn shipped_claims_text() -> &'static str {
    include_str!("../../data/claims.jsonl")
}

/// Parse a whole ledger. Blank lines and `#` comments are skipped; every
/// other line must be one JSON claim record.
pub fn parse_claims(text: &str) -> Result<Vec<Claim>, LedgerError> {
    let mut claims = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let claim: Claim = serde_json::from_str(line).map_err(|e| LedgerError::Malformed {
            line: index + 1,
            message: e.to_string(),
        })?;
        claims.push(claim);
    }
    Ok(claims)
}

#[derive(Debug, Clone)]
pub struct ClaimReport {
    pub results: Vec<(Claim, ClaimOutcome)>,
}

impl ClaimReport {
    pub fn passed(&self) -> usize {
        self.count(|o| matches!(o, ClaimOutcome::Pass))
    }

    pub fn confirmed_errata(&self) -> usize {
        self.count(|o| matches!(o, ClaimOutcome::ConfirmedErrata(_)))
    }

    /// Claims that did not behave as declared: plain failures plus errata
    /// entries that unexpectedly pass.
    pub fn failures(&self) -> impl Iterator<Item = &(Claim, ClaimOutcome)> {
        self.results.iter().filter(|(_, o)| {
            matches!(o, ClaimOutcome::Fail(_) | ClaimOutcome::ErrataUnconfirmed)
        })
    }

    pub fn is_clean(&self) -> bool {
        self.failures().next().is_none()
    }

    fn count(&self, pred: impl Fn(&ClaimOutcome) -> bool) -> usize {
        self.results.iter().filter(|(_, o)| pred(o)).count()
    }
}

/// Recompute every claim and compare against its stated expectation.
pub fn replay_claims(claims: &[Claim]) -> ClaimReport {
    let results = claims
        .iter()
        .map(|claim| {
            let outcome = match (claim.errata, check(claim)) {
                (false, Ok(())) => ClaimOutcome::Pass,
                (false, Err(detail)) => ClaimOutcome::Fail(detail),
                (true, Err(detail)) => ClaimOutcome::ConfirmedErrata(detail),
                (true, Ok(())) => ClaimOutcome::ErrataUnconfirmed,
            };
            (claim.clone(), outcome)
        })
        .collect();
    ClaimReport { results }
}

/// Ok when the assertion holds as stated, Err with the recomputed truth.
fn check(claim: &Claim) -> Result<(), String> {
    match &claim.kind {
        ClaimKind::NotDividesGl { p, m, q } => {
            let field = PrimePower::from_value(*q).map_err(|e| e.to_string())?;
            let v = gl_order(*m, field).valuation(*p as u128);
            if v == 0 {
                Ok(())
            } else {
                Err(format!("{p} divides |GL({m}, {q})| with exponent {v}"))
            }
        }
        ClaimKind::Divides { a, b, expected } => {
            let af = parse_value(a).ok_or_else(|| format!("unparseable operand {a:?}"))?;
            let bf = parse_value(b).ok_or_else(|| format!("unparseable operand {b:?}"))?;
            let holds = af.divides(&bf);
            if holds == *expected {
                Ok(())
            } else {
                Err(format!(
                    "{a} {} {b}",
                    if holds { "divides" } else { "does not divide" }
                ))
            }
        }
        ClaimKind::PowerMinusOneValuation { p, r, q, k, divides } => {
            let value = BigUint::from(*q).pow(*k) - 1u32;
            let v = valuation_in_big(&value, *p as u128);
            let holds = v >= *r;
            if holds == *divides {
                Ok(())
            } else {
                Err(format!("{q}^{k} - 1 has {p}-adic valuation {v}"))
            }
        }
        ClaimKind::FactorizationEquals { operand, expected } => {
            let computed = match operand {
                FactorOperand::Gl { gl_m, gl_q } => {
                    let field = PrimePower::from_value(*gl_q).map_err(|e| e.to_string())?;
                    gl_order(*gl_m, field)
                }
                FactorOperand::Group { group } => {
                    group.parse::<GroupId>().map_err(|e| e.to_string())?.order()
                }
                FactorOperand::Value { value } => {
                    parse_value(value).ok_or_else(|| format!("unparseable operand {value:?}"))?
                }
            };
            let stated =
                parse_value(expected).ok_or_else(|| format!("unparseable form {expected:?}"))?;
            if computed == stated {
                Ok(())
            } else {
                Err(format!("recomputation gives {computed}"))
            }
        }
        ClaimKind::OrderBound { group, exp, rel } => {
            let order = group.parse::<GroupId>().map_err(|e| e.to_string())?.order();
            let ordering = order.compare_to_power_of_ten(*exp);
            let holds = match rel {
                Relation::Lt => ordering == std::cmp::Ordering::Less,
                Relation::Gt => ordering == std::cmp::Ordering::Greater,
            };
            if holds {
                Ok(())
            } else {
                Err(format!("|{group}| is {ordering:?} 10^{exp}"))
            }
        }
        ClaimKind::TableMembership {
            ambient,
            member,
            present,
        } => {
            let ambient_id = ambient.parse::<GroupId>().map_err(|e| e.to_string())?;
            let member_id = member.parse::<GroupId>().map_err(|e| e.to_string())?.canonical();
            let found = divisor_list(&ambient_id).contains(&member_id);
            if found == *present {
                Ok(())
            } else {
                Err(format!(
                    "{member} is{} a simple divisor hit of |{ambient}|",
                    if found { "" } else { " not" }
                ))
            }
        }
    }
}

/// Memoized simple-divisor hit lists keyed by the ambient group, so a
/// ledger with many membership claims against the same order enumerates
/// it once.
fn divisor_list(ambient: &GroupId) -> Vec<GroupId> {
    static CACHE: Mutex<Option<HashMap<GroupId, Vec<GroupId>>>> = Mutex::new(None);
    let key = ambient.canonical();
    if let Some(hit) = CACHE
        .lock()
        .expect("divisor cache lock")
        .get_or_insert_with(HashMap::new)
        .get(&key)
    {
        return hit.clone();
    }
    let hits: Vec<GroupId> = simple_divisors(&ambient.order())
        .into_iter()
        .map(|h| h.group)
        .collect();
    CACHE
        .lock()
        .expect("divisor cache lock")
        .get_or_insert_with(HashMap::new)
        .insert(key, hits.clone());
    hits
}
