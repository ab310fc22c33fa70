//! Transcribed reference tables: for each of the 26 sporadic groups, the
//! published listing of simple groups whose orders divide that group's
//! order, kept verbatim with its misprints. Diffing a table against the
//! recomputed divisor list yields the fixed erratum set registered in
//! `data/tables/ERRATA.md`; the tests below pin that set exactly, so any
//! drift in either the data or the enumeration shows up as a failure.

use crate::catalog::{GroupId, Sporadic};

/// Number of transcribed reference tables.
pub const TABLE_COUNT: usize = 26;

static TABLES: [&str; TABLE_COUNT] = [
    include_str!("../data/tables/table01.tsv"),
    include_str!("../data/tables/table02.tsv"),
    include_str!("../data/tables/table03.tsv"),
    include_str!("../data/tables/table04.tsv"),
    include_str!("../data/tables/table05.tsv"),
    include_str!("../data/tables/table06.tsv"),
    include_str!("../data/tables/table07.tsv"),
    include_str!("../data/tables/table08.tsv"),
    include_str!("../data/tables/table09.tsv"),
    include_str!("../data/tables/table10.tsv"),
    include_str!("../data/tables/table11.tsv"),
    include_str!("../data/tables/table12.tsv"),
    include_str!("../data/tables/table13.tsv"),
    include_str!("../data/tables/table14.tsv"),
    include_str!("../data/tables/table15.tsv"),
    include_str!("../data/tables/table16.tsv"),
    include_str!("../data/tables/table17.tsv"),
    include_str!("../data/tables/table18.tsv"),
    include_str!("../data/tables/table19.tsv"),
    include_str!("../data/tables/table20.tsv"),
    include_str!("../data/tables/table21.tsv"),
    include_str!("../data/tables/table22.tsv"),
    include_str!("../data/tables/table23.tsv"),
    include_str!("../data/tables/table24.tsv"),
    include_str!("../data/tables/table25.tsv"),
    include_str!("../data/tables/table26.tsv"),
];

/// Ambient group per table: every row's order divides this group's order.
static AMBIENTS: [Sporadic; TABLE_COUNT] = [
    Sporadic::M11,
    Sporadic::M12,
    Sporadic::M22,
    Sporadic::M23,
    Sporadic::M24,
    Sporadic::J2,
    Sporadic::J1,
    Sporadic::J3,
    Sporadic::J4,
    Sporadic::Co1,
    Sporadic::Co2,
    Sporadic::Co3,
    Sporadic::Fi23,
    Sporadic::Fi22,
    Sporadic::Fi24,
    Sporadic::M,
    Sporadic::B,
    Sporadic::Ly,
    Sporadic::ON,
    Sporadic::McL,
    Sporadic::Th,
    Sporadic::HN,
    Sporadic::He,
    Sporadic::Ru,
    Sporadic::HS,
    Sporadic::Suz,
];

/// Raw TSV text of reference table `n` (1-based, 1..=26).
pub fn reference_table_text(n: usize) -> &'static str {
    assert!((1..=TABLE_COUNT).contains(&n), "table index {n} out of range");
    TABLES[n - 1]
}

/// The group whose order bounds the rows of table `n` (1-based).
pub fn reference_table_ambient(n: usize) -> GroupId {
    assert!((1..=TABLE_COUNT).contains(&n), "table index {n} out of range");
    GroupId::Sporadic(AMBIENTS[n - 1])
}

/// The table whose ambient group is `g`, if `g` is sporadic.
pub fn reference_table_for(g: &GroupId) -> Option<usize> {
    let GroupId::Sporadic(s) = g.canonical() else {
        return None;
    };
    AMBIENTS.iter().position(|&a| a == s).map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{
        diff_against_reference, parse_reference_table, simple_divisors, DiffReport,
    };

    fn diff(n: usize) -> DiffReport {
        let rows = parse_reference_table(reference_table_text(n))
            .unwrap_or_else(|e| panic!("table {n}: {e}"));
        let hits = simple_divisors(&reference_table_ambient(n).order());
        diff_against_reference(&hits, &rows)
    }

    /// "GROUP field" per mismatch, in report order (ascending group order).
    fn mismatches(report: &DiffReport) -> Vec<String> {
        report
            .value_mismatches
            .iter()
            .map(|m| format!("{} {}", m.group, m.field))
            .collect()
    }

    fn missing(report: &DiffReport) -> Vec<String> {
        report
            .missing_from_reference
            .iter()
            .map(|h| h.group.to_string())
            .collect()
    }

    /// Extra row names, sorted (duplicates and non-divisors interleave in
    /// report order, so tests compare them as a sorted multiset).
    fn extras(report: &DiffReport) -> Vec<String> {
        let mut names: Vec<String> = report
            .extra_in_reference
            .iter()
            .map(|r| r.name.clone())
            .collect();
        names.sort();
        names
    }

    #[test]
    fn every_table_parses_and_names_its_ambient() {
        for n in 1..=TABLE_COUNT {
            let rows = parse_reference_table(reference_table_text(n))
                .unwrap_or_else(|e| panic!("table {n}: {e}"));
            assert!(!rows.is_empty(), "table {n} has no rows");
            let ambient = reference_table_ambient(n);
            assert!(
                rows.iter().any(|r| r.group == ambient),
                "table {n} lacks a row for its ambient group"
            );
            assert_eq!(reference_table_for(&ambient), Some(n));
        }
    }

    #[test]
    fn row_counts_match_the_source_listing() {
        let expected = [
            4, 5, 10, 12, 14, 9, 4, 7, 22, 57, 30, 28, 52, 40, 58, 140, 101, 26, 20, 20, 40, 30,
            14, 21, 12, 36,
        ];
        for n in 1..=TABLE_COUNT {
            let rows = parse_reference_table(reference_table_text(n)).unwrap();
            assert_eq!(rows.len(), expected[n - 1], "table {n} row count");
        }
    }

    #[test]
    fn clean_tables_diff_clean() {
        for n in [1, 2, 3, 4, 6, 7, 8, 9, 20, 25] {
            let report = diff(n);
            assert!(
                report.is_clean(),
                "table {n} expected clean, got mismatches {:?} missing {:?} extra {:?}",
                mismatches(&report),
                missing(&report),
                extras(&report)
            );
        }
    }

    #[test]
    fn table05_diff() {
        let report = diff(5);
        assert!(mismatches(&report).is_empty());
        assert_eq!(missing(&report), ["M12"]);
        assert!(extras(&report).is_empty());
    }

    #[test]
    fn table10_diff() {
        let report = diff(10);
        assert_eq!(mismatches(&report), ["U4(2) order"]);
        assert!(missing(&report).is_empty());
        assert_eq!(extras(&report), ["U4(5)"]);
    }

    #[test]
    fn tables_with_only_the_u42_misprint() {
        for n in [11, 12, 13, 14] {
            let report = diff(n);
            assert_eq!(mismatches(&report), ["U4(2) order"], "table {n}");
            assert!(missing(&report).is_empty(), "table {n}");
            assert!(extras(&report).is_empty(), "table {n}");
        }
    }

    #[test]
    fn table15_diff() {
        let report = diff(15);
        assert_eq!(mismatches(&report), ["U4(2) order"]);
        assert_eq!(missing(&report), ["He", "O10-(2)"]);
        assert!(extras(&report).is_empty());
    }

    #[test]
    fn table16_diff() {
        let report = diff(16);
        assert_eq!(
            mismatches(&report),
            [
                "U4(2) order",
                "U3(8) out",
                "S6(3) order",
                "U4(5) order",
                "A15 order",
                "A15 out",
                "L4(7) order",
                "L4(7) out",
                "L4(9) order",
                "L4(9) out",
                "U5(4) order",
                "U5(4) out",
                "Th order",
                "A32 order",
            ]
        );
        assert!(missing(&report).is_empty());
        assert!(extras(&report).is_empty());
    }

    #[test]
    fn table17_diff() {
        let report = diff(17);
        assert_eq!(
            mismatches(&report),
            [
                "U4(2) order",
                "U3(8) out",
                "S6(3) order",
                "U4(5) order",
                "A15 order",
                "A15 out",
            ]
        );
        assert_eq!(missing(&report), ["U4(8)", "Th"]);
        assert_eq!(extras(&report), ["L2(29)", "L3(7)", "L4(7)"]);
    }

    #[test]
    fn table18_diff() {
        let report = diff(18);
        assert_eq!(mismatches(&report), ["M11 out"]);
        assert!(missing(&report).is_empty());
        assert!(extras(&report).is_empty());
    }

    #[test]
    fn table19_diff() {
        let report = diff(19);
        assert!(mismatches(&report).is_empty());
        assert_eq!(missing(&report), ["J1", "L3(7)"]);
        assert!(extras(&report).is_empty());
    }

    #[test]
    fn table21_diff() {
        let report = diff(21);
        assert_eq!(mismatches(&report), ["U3(3) order", "L2(25) order"]);
        assert_eq!(missing(&report), ["L2(31)", "S6(2)"]);
        assert_eq!(extras(&report), ["L2(32)"]);
    }

    #[test]
    fn table22_diff() {
        let report = diff(22);
        assert_eq!(mismatches(&report), ["HS order", "McL order"]);
        assert!(missing(&report).is_empty());
        assert_eq!(extras(&report), ["McL"]);
    }

    #[test]
    fn table23_diff() {
        let report = diff(23);
        assert_eq!(mismatches(&report), ["L2(16) order"]);
        assert!(missing(&report).is_empty());
        assert!(extras(&report).is_empty());
    }

    #[test]
    fn table24_diff() {
        let report = diff(24);
        assert_eq!(mismatches(&report), ["G2(4) order"]);
        assert!(missing(&report).is_empty());
        assert!(extras(&report).is_empty());
    }

    #[test]
    fn table26_diff() {
        let report = diff(26);
        assert_eq!(mismatches(&report), ["L4(3) order"]);
        assert!(missing(&report).is_empty());
        assert!(extras(&report).is_empty());
    }

    #[test]
    fn every_mismatched_reference_value_is_wrong_not_reordered() {
        // A mismatch must be a genuine value disagreement, never a
        // formatting artifact: re-render both sides and compare.
        for n in 1..=TABLE_COUNT {
            let report = diff(n);
            for m in &report.value_mismatches {
                assert_ne!(
                    m.computed.value(),
                    m.reference.value(),
                    "table {n}: {} {} flagged but values agree",
                    m.group,
                    m.field
                );
            }
        }
    }
}
