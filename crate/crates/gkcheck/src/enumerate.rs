//! Enumeration of all simple groups whose order divides a target integer.
//!
//! The search is exhaustive by a valuation argument: a Lie-type group over
//! q = p^f contributes q^e to its own order (e fixed by family and rank),
//! so any hit satisfies f*e <= v_p(N). Alternating orders grow by a factor
//! n+1 at each step, so that scan stops at the first failure. Sporadic
//! groups and the Tits group are a fixed list of 27.
//!
//! Field sizes are kept small enough that every order-formula term fits in
//! 128 bits (q up to 2^63 in the worst family); targets whose valuations
//! would admit larger fields are outside the supported envelope.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{sporadic_and_tits, GroupId, LieFamily, PrimePower};
use crate::factored::FactoredInteger;

/// One simple group whose order divides the enumeration target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorHit {
    pub group: GroupId,
    pub order: FactoredInteger,
    pub out_order: FactoredInteger,
    pub covered_by_atlas_list: bool,
}

impl DivisorHit {
    fn of(group: GroupId) -> Self {
        DivisorHit {
            order: group.order(),
            out_order: group.out_order(),
            covered_by_atlas_list: atlas_coverage(&group),
            group,
        }
    }
}

/// All canonical non-abelian simple groups T with |T| dividing N,
/// ascending by order (ties broken by name).
pub fn simple_divisors(n: &FactoredInteger) -> Vec<DivisorHit> {
    assert!(!n.is_one(), "target must exceed 1");
    let mut found: std::collections::BTreeSet<GroupId> = std::collections::BTreeSet::new();

    let mut degree = 5;
    loop {
        let id = GroupId::Alternating(degree);
        if !id.order().divides(n) {
            break;
        }
        found.insert(id);
        degree += 1;
    }

    for id in sporadic_and_tits() {
        if id.order().divides(n) {
            found.insert(id);
        }
    }

    let valuations: Vec<(u64, u64)> = n
        .prime_powers()
        .map(|(p, e)| (u64::try_from(p).expect("supported targets have small primes"), e))
        .collect();
    let vmax = valuations.iter().map(|&(_, e)| e).max().unwrap_or(0);
    for family in LieFamily::ALL {
        let (lo, hi) = family.rank_range();
        for rank in lo..=hi {
            let e = family.q_exponent(rank);
            if e > vmax {
                break;
            }
            for &(p, vp) in &valuations {
                let mut f = 1u32;
                while f as u64 * e <= vp {
                    if let Ok(q) = PrimePower::new(p, f) {
                        if let Ok(id) = GroupId::lie(family, rank, q) {
                            if id.order().divides(n) {
                                found.insert(id.canonical());
                            }
                        }
                    }
                    f += 1;
                }
            }
            if rank == hi {
                break;
            }
        }
    }

    let mut hits: Vec<DivisorHit> = found.into_iter().map(DivisorHit::of).collect();
    hits.sort_by(|a, b| {
        a.order
            .value()
            .cmp(&b.order.value())
            .then_with(|| a.group.to_string().cmp(&b.group.to_string()))
    });
    hits
}

/// Whether a group appears in the reference list of simple groups: all
/// sporadic groups and the Tits group; anything else of order below 10^25,
/// except the seven parameter series that the list truncates earlier:
/// L2(q) at q = 125, L3(q) at 31, U3(q) at 32, L4(q) and U4(q) at 11,
/// S4(q) at 41, G2(q) at 25.
pub fn atlas_coverage(g: &GroupId) -> bool {
    let canonical = g.canonical();
    match canonical {
        GroupId::Sporadic(_) | GroupId::Tits => true,
        GroupId::Lie { family, rank, q } => {
            let cutoff = match (family, rank) {
                (LieFamily::A, 1) => Some(125),
                (LieFamily::A, 2) => Some(31),
                (LieFamily::TwoA, 2) => Some(32),
                (LieFamily::A, 3) | (LieFamily::TwoA, 3) => Some(11),
                (LieFamily::B, 2) => Some(41),
                (LieFamily::G2, _) => Some(25),
                _ => None,
            };
            match cutoff {
                Some(limit) => q.value() <= limit,
                None => canonical.order().compare_to_power_of_ten(25) == Ordering::Less,
            }
        }
        _ => canonical.order().compare_to_power_of_ten(25) == Ordering::Less,
    }
}

/// Divisor hits outside the reference list, capped at 10^upper_bound_exp.
pub fn exceptional_divisors(n: &FactoredInteger, upper_bound_exp: u64) -> Vec<GroupId> {
    simple_divisors(n)
        .into_iter()
        .filter(|hit| {
            !hit.covered_by_atlas_list
                && hit.order.compare_to_power_of_ten(upper_bound_exp) == Ordering::Less
        })
        .map(|hit| hit.group)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Tsv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "tsv" => Ok(TableFormat::Tsv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown format {other:?} (expected md, tsv, or json)")),
        }
    }
}

/// Render hits as a table; deterministic for a given hit sequence.
pub fn render_table(hits: &[DivisorHit], format: TableFormat) -> String {
    match format {
        TableFormat::Markdown => {
            let mut out = String::from("| group | order | out | atlas |\n|---|---|---|---|\n");
            for hit in hits {
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    hit.group,
                    hit.order,
                    hit.out_order.value(),
                    if hit.covered_by_atlas_list { "yes" } else { "no" }
                ));
            }
            out
        }
        TableFormat::Tsv => {
            let mut out = String::new();
            for hit in hits {
                out.push_str(&format!(
                    "{}\t{}\t{}\n",
                    hit.group,
                    hit.order,
                    hit.out_order.value()
                ));
            }
            out
        }
        TableFormat::Json => {
            serde_json::to_string_pretty(hits).expect("hits serialize") + "\n"
        }
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read reference table: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// A reference table row: a group name with its printed order and outer
/// automorphism group order, exactly as transcribed from the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub name: String,
    pub group: GroupId,
    pub order: FactoredInteger,
    pub out: FactoredInteger,
}

/// Parse `NAME<TAB>ORDER<TAB>OUT` rows; `#` lines are comments. Values may
/// be written factored (2^4*3^2*5*11) or as plain decimals.
pub fn parse_reference_table(text: &str) -> Result<Vec<ReferenceRow>, TableError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 3 {
            return Err(TableError::Malformed {
                line,
                message: format!("expected 3 tab-separated fields, got {}", fields.len()),
            });
        }
        let group: GroupId = fields[0].parse().map_err(|e| TableError::Malformed {
            line,
            message: format!("bad group name: {e}"),
        })?;
        let order = parse_value(fields[1]).ok_or_else(|| TableError::Malformed {
            line,
            message: format!("bad order value {:?}", fields[1]),
        })?;
        let out = parse_value(fields[2]).ok_or_else(|| TableError::Malformed {
            line,
            message: format!("bad out value {:?}", fields[2]),
        })?;
        rows.push(ReferenceRow {
            name: fields[0].to_string(),
            group,
            order,
            out,
        });
    }
    Ok(rows)
}

/// Accept either a factored form or a decimal integer.
pub(crate) fn parse_value(text: &str) -> Option<FactoredInteger> {
    if let Ok(plain) = text.trim().parse::<u128>() {
        if plain == 0 {
            return None;
        }
        return Some(FactoredInteger::factor(plain));
    }
    text.parse().ok()
}

/// One value disagreement between computed facts and a reference row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueMismatch {
    pub group: GroupId,
    pub name: String,
    pub field: &'static str,
    pub computed: FactoredInteger,
    pub reference: FactoredInteger,
}

/// Diff between a computed hit list and a transcribed reference table.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct DiffReport {
    /// Computed hits with no reference row.
    pub missing_from_reference: Vec<DivisorHit>,
    /// Reference rows naming no computed hit, plus duplicate rows.
    pub extra_in_reference: Vec<ReferenceRow>,
    /// Rows matched by group identity but disagreeing in a value column.
    pub value_mismatches: Vec<ValueMismatch>,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.missing_from_reference.is_empty()
            && self.extra_in_reference.is_empty()
            && self.value_mismatches.is_empty()
    }
}

/// Match reference rows to computed hits by canonical group identity, then
/// compare the printed order and out columns against the computed facts.
pub fn diff_against_reference(computed: &[DivisorHit], reference: &[ReferenceRow]) -> DiffReport {
    let mut report = DiffReport::default();
    let mut by_group: BTreeMap<GroupId, Vec<&ReferenceRow>> = BTreeMap::new();
    for row in reference {
        by_group.entry(row.group.canonical()).or_default().push(row);
    }
    for hit in computed {
        match by_group.remove(&hit.group.canonical()) {
            None => report.missing_from_reference.push(hit.clone()),
            Some(rows) => {
                let row = rows[0];
                if row.order != hit.order {
                    report.value_mismatches.push(ValueMismatch {
                        group: hit.group,
                        name: row.name.clone(),
                        field: "order",
                        computed: hit.order.clone(),
                        reference: row.order.clone(),
                    });
                }
                if row.out != hit.out_order {
                    report.value_mismatches.push(ValueMismatch {
                        group: hit.group,
                        name: row.name.clone(),
                        field: "out",
                        computed: hit.out_order.clone(),
                        reference: row.out.clone(),
                    });
                }
                // Surplus rows for the same group are duplicates.
                for dup in &rows[1..] {
                    report.extra_in_reference.push((*dup).clone());
                }
            }
        }
    }
    for rows in by_group.into_values() {
        for row in rows {
            report.extra_in_reference.push(row.clone());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Sporadic;

    fn g(name: &str) -> GroupId {
        name.parse().unwrap()
    }

    fn names(hits: &[DivisorHit]) -> Vec<String> {
        hits.iter().map(|h| h.group.to_string()).collect()
    }

    #[test]
    fn smallest_targets() {
        let hits = simple_divisors(&"2^2*3*5".parse().unwrap());
        assert_eq!(names(&hits), ["A5"]);
        let hits = simple_divisors(&GroupId::Sporadic(Sporadic::M11).order());
        assert_eq!(names(&hits), ["A5", "A6", "L2(11)", "M11"]);
        let hits = simple_divisors(&GroupId::Sporadic(Sporadic::J1).order());
        assert_eq!(names(&hits), ["A5", "L3(2)", "L2(11)", "J1"]);
    }

    #[test]
    fn fi22_has_exactly_forty_divisors() {
        let hits = simple_divisors(&GroupId::Sporadic(Sporadic::Fi22).order());
        assert_eq!(hits.len(), 40);
        assert!(hits.iter().any(|h| h.group == g("Suz")));
        assert!(hits.iter().all(|h| h.order.valuation(17) == 0));
    }

    #[test]
    fn self_membership_for_all_sporadic_groups() {
        for s in Sporadic::ALL {
            let id = GroupId::Sporadic(s);
            let hits = simple_divisors(&id.order());
            assert!(
                hits.iter().any(|h| h.group == id),
                "{s} missing from its own divisor list"
            );
        }
    }

    #[test]
    fn monotone_under_divisibility() {
        let b = GroupId::Sporadic(Sporadic::B).order();
        let m = GroupId::Sporadic(Sporadic::M).order();
        assert!(b.divides(&m));
        let hits_b: std::collections::BTreeSet<GroupId> =
            simple_divisors(&b).into_iter().map(|h| h.group).collect();
        let hits_m: std::collections::BTreeSet<GroupId> =
            simple_divisors(&m).into_iter().map(|h| h.group).collect();
        assert!(hits_b.is_subset(&hits_m));
    }

    #[test]
    fn alternating_scan_stops_correctly() {
        let n = GroupId::Sporadic(Sporadic::Co1).order();
        let hits: std::collections::BTreeSet<GroupId> =
            simple_divisors(&n).into_iter().map(|h| h.group).collect();
        for degree in 5u32..=50 {
            let id = GroupId::Alternating(degree);
            assert_eq!(
                hits.contains(&id),
                id.order().divides(&n),
                "A{degree} membership"
            );
        }
    }

    /// Brute-force re-enumeration with widened f bounds and deep ranks must
    /// find nothing beyond the pruned search.
    #[test]
    fn widened_bounds_find_nothing_new() {
        for target in [
            GroupId::Sporadic(Sporadic::M11).order(),
            GroupId::Sporadic(Sporadic::J2).order(),
            GroupId::Sporadic(Sporadic::HS).order(),
        ] {
            let pruned: std::collections::BTreeSet<GroupId> = simple_divisors(&target)
                .into_iter()
                .map(|h| h.group)
                .filter(|g| matches!(g, GroupId::Lie { .. }))
                .collect();
            let mut brute: std::collections::BTreeSet<GroupId> = Default::default();
            for family in LieFamily::ALL {
                let (lo, hi) = family.rank_range();
                for rank in lo..=hi.min(lo + 8) {
                    let e = family.q_exponent(rank);
                    for (p, vp) in target.prime_powers() {
                        let widened = vp / e + 2;
                        for f in 1..=u32::try_from(widened).unwrap() {
                            let Ok(q) = PrimePower::new(p as u64, f) else { continue };
                            let Ok(id) = GroupId::lie(family, rank, q) else { continue };
                            if id.order().divides(&target) {
                                brute.insert(id.canonical());
                            }
                        }
                    }
                }
            }
            let brute_lie: std::collections::BTreeSet<GroupId> = brute
                .into_iter()
                .filter(|g| matches!(g, GroupId::Lie { .. }))
                .collect();
            assert_eq!(pruned, brute_lie);
        }
    }

    #[test]
    fn coverage_rules() {
        let covered = [
            "L2(125)", "L3(31)", "U3(32)", "L4(11)", "U4(11)", "S4(41)", "G2(25)",
            "A25", "M", "B", "2F4(2)'", "Fi24'", "S6(4)", "L5(3)",
        ];
        for name in covered {
            assert!(atlas_coverage(&g(name)), "{name} should be covered");
        }
        let not_covered = [
            "L2(128)", "L2(2^10)", "L2(169)", "L3(32)", "U3(37)", "L4(13)",
            "U4(13)", "S4(43)", "G2(27)", "A26", "E8(2)",
        ];
        for name in not_covered {
            assert!(!atlas_coverage(&g(name)), "{name} should not be covered");
        }
    }

    #[test]
    fn monster_exceptional_divisors() {
        let m = GroupId::Sporadic(Sporadic::M).order();
        let exceptional = exceptional_divisors(&m, 54);
        let expected: Vec<GroupId> = [
            "L2(169)", "L2(1024)", "A26", "A27", "A28", "A29", "A30", "A31", "A32",
        ]
        .iter()
        .map(|n| g(n))
        .collect();
        assert_eq!(exceptional, expected);
    }

    #[test]
    fn rendering_and_json_round_trip() {
        let hits = simple_divisors(&GroupId::Sporadic(Sporadic::M11).order());
        let md = render_table(&hits, TableFormat::Markdown);
        assert_eq!(
            md,
            "| group | order | out | atlas |\n|---|---|---|---|\n\
             | A5 | 2^2*3*5 | 2 | yes |\n\
             | A6 | 2^3*3^2*5 | 4 | yes |\n\
             | L2(11) | 2^2*3*5*11 | 2 | yes |\n\
             | M11 | 2^4*3^2*5*11 | 1 | yes |\n"
        );
        let tsv = render_table(&hits, TableFormat::Tsv);
        assert_eq!(
            tsv,
            "A5\t2^2*3*5\t2\nA6\t2^3*3^2*5\t4\nL2(11)\t2^2*3*5*11\t2\nM11\t2^4*3^2*5*11\t1\n"
        );
        let json = render_table(&hits, TableFormat::Json);
        let parsed: Vec<DivisorHit> = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, hits);
        let empty = render_table(&[], TableFormat::Markdown);
        assert_eq!(empty, "| group | order | out | atlas |\n|---|---|---|---|\n");
    }

    #[test]
    fn diff_reports_each_kind_of_discrepancy() {
        let hits = simple_divisors(&GroupId::Sporadic(Sporadic::M11).order());
        let clean = "A5\t2^2*3*5\t2\nA6\t2^3*3^2*5\t4\nL2(11)\t2^2*3*5*11\t2\nM11\t2^4*3^2*5*11\t1\n";
        let rows = parse_reference_table(clean).unwrap();
        assert!(diff_against_reference(&hits, &rows).is_clean());

        // Decimal values and alias names still match.
        let relaxed = "A5\t60\t2\nA6\t360\t4\nA1(11)\t660\t2\nM11\t7920\t1\n";
        let rows = parse_reference_table(relaxed).unwrap();
        assert!(diff_against_reference(&hits, &rows).is_clean());

        let missing_row = "A5\t2^2*3*5\t2\nA6\t2^3*3^2*5\t4\nM11\t2^4*3^2*5*11\t1\n";
        let rows = parse_reference_table(missing_row).unwrap();
        let report = diff_against_reference(&hits, &rows);
        assert_eq!(report.missing_from_reference.len(), 1);
        assert_eq!(report.missing_from_reference[0].group, g("L2(11)"));

        let wrong_value =
            "A5\t2^2*3*5\t2\nA6\t2^3*3^2*5\t4\nL2(11)\t2^2*3^2*5*11\t2\nM11\t2^4*3^2*5*11\t2^2\n";
        let rows = parse_reference_table(wrong_value).unwrap();
        let report = diff_against_reference(&hits, &rows);
        assert_eq!(report.value_mismatches.len(), 2);
        assert_eq!(report.value_mismatches[0].field, "order");
        assert_eq!(report.value_mismatches[1].field, "out");
        assert_eq!(report.value_mismatches[1].reference, FactoredInteger::factor(4));

        let extra_row = format!("{clean}J1\t2^3*3*5*7*11*19\t1\nA5\t60\t2\n");
        let rows = parse_reference_table(&extra_row).unwrap();
        let report = diff_against_reference(&hits, &rows);
        assert_eq!(report.extra_in_reference.len(), 2, "bogus row plus duplicate");

        assert!(parse_reference_table("A5\t60\n").is_err());
        assert!(parse_reference_table("NotAGroup(3)\t60\t2\n").is_err());
    }
}
