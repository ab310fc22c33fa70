//! The 26 sporadic simple groups: orders, outer automorphism groups, and
//! element-order spectra.
//!
//! Orders and outer automorphism orders are compiled in as the authority.
//! Spectra ship in a TSV data file (embedded copy by default) and every
//! load, embedded or external, is cross-checked against the compiled table
//! and the spectrum invariants before use.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use thiserror::Error;

use crate::factored::FactoredInteger;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read sporadic data: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("{group}: {message}")]
    Inconsistent { group: String, message: String },
    #[error("missing groups: {0:?}")]
    Missing(Vec<String>),
}

/// The 26 sporadic simple groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sporadic {
    M11,
    M12,
    M22,
    M23,
    M24,
    J1,
    J2,
    J3,
    J4,
    Co1,
    Co2,
    Co3,
    Fi22,
    Fi23,
    Fi24,
    HS,
    McL,
    He,
    Ru,
    Suz,
    ON,
    HN,
    Ly,
    Th,
    B,
    M,
}

impl Sporadic {
    pub const ALL: [Sporadic; 26] = [
        Sporadic::M11,
        Sporadic::M12,
        Sporadic::M22,
        Sporadic::M23,
        Sporadic::M24,
        Sporadic::J1,
        Sporadic::J2,
        Sporadic::J3,
        Sporadic::J4,
        Sporadic::Co1,
        Sporadic::Co2,
        Sporadic::Co3,
        Sporadic::Fi22,
        Sporadic::Fi23,
        Sporadic::Fi24,
        Sporadic::HS,
        Sporadic::McL,
        Sporadic::He,
        Sporadic::Ru,
        Sporadic::Suz,
        Sporadic::ON,
        Sporadic::HN,
        Sporadic::Ly,
        Sporadic::Th,
        Sporadic::B,
        Sporadic::M,
    ];

    pub fn name(self) -> &'static str {
        self.facts().0
    }

    /// (name, order, |Out|) as compiled constants.
    fn facts(self) -> (&'static str, &'static str, u64) {
        match self {
            Sporadic::M11 => ("M11", "2^4*3^2*5*11", 1),
            Sporadic::M12 => ("M12", "2^6*3^3*5*11", 2),
            Sporadic::M22 => ("M22", "2^7*3^2*5*7*11", 2),
            Sporadic::M23 => ("M23", "2^7*3^2*5*7*11*23", 1),
            Sporadic::M24 => ("M24", "2^10*3^3*5*7*11*23", 1),
            Sporadic::J1 => ("J1", "2^3*3*5*7*11*19", 1),
            Sporadic::J2 => ("J2", "2^7*3^3*5^2*7", 2),
            Sporadic::J3 => ("J3", "2^7*3^5*5*17*19", 2),
            Sporadic::J4 => ("J4", "2^21*3^3*5*7*11^3*23*29*31*37*43", 1),
            Sporadic::Co1 => ("Co1", "2^21*3^9*5^4*7^2*11*13*23", 1),
            Sporadic::Co2 => ("Co2", "2^18*3^6*5^3*7*11*23", 1),
            Sporadic::Co3 => ("Co3", "2^10*3^7*5^3*7*11*23", 1),
            Sporadic::Fi22 => ("Fi22", "2^17*3^9*5^2*7*11*13", 2),
            Sporadic::Fi23 => ("Fi23", "2^18*3^13*5^2*7*11*13*17*23", 1),
            Sporadic::Fi24 => ("Fi24'", "2^21*3^16*5^2*7^3*11*13*17*23*29", 2),
            Sporadic::HS => ("HS", "2^9*3^2*5^3*7*11", 2),
            Sporadic::McL => ("McL", "2^7*3^6*5^3*7*11", 2),
            Sporadic::He => ("He", "2^10*3^3*5^2*7^3*17", 2),
            Sporadic::Ru => ("Ru", "2^14*3^3*5^3*7*13*29", 1),
            Sporadic::Suz => ("Suz", "2^13*3^7*5^2*7*11*13", 2),
            Sporadic::ON => ("O'N", "2^9*3^4*5*7^3*11*19*31", 2),
            Sporadic::HN => ("HN", "2^14*3^6*5^6*7*11*19", 2),
            Sporadic::Ly => ("Ly", "2^8*3^7*5^6*7*11*31*37*67", 1),
            Sporadic::Th => ("Th", "2^15*3^10*5^3*7^2*13*19*31", 1),
            Sporadic::B => ("B", "2^41*3^13*5^6*7^2*11*13*17*19*23*31*47", 1),
            Sporadic::M => (
                "M",
                "2^46*3^20*5^9*7^6*11^2*13^3*17*19*23*29*31*41*47*59*71",
                1,
            ),
        }
    }

    pub fn order(self) -> FactoredInteger {
        self.facts().1.parse().expect("compiled order parses")
    }

    pub fn out_order(self) -> FactoredInteger {
        FactoredInteger::factor(self.facts().2 as u128)
    }

    pub fn from_name(name: &str) -> Option<Sporadic> {
        let normalized = match name {
            "ON" => "O'N",
            "Fi24" => "Fi24'",
            other => other,
        };
        Sporadic::ALL
            .iter()
            .copied()
            .find(|s| s.name() == normalized)
    }
}

impl std::fmt::Display for Sporadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One sporadic group's facts as loaded from a data file.
#[derive(Debug, Clone)]
pub struct SporadicRecord {
    pub group: Sporadic,
    pub order: FactoredInteger,
    pub out: FactoredInteger,
    /// Full set of element orders, ascending, divisor-closed, starting at 1.
    pub spectrum: Vec<u64>,
}

/// Validated collection covering all 26 sporadic groups.
#[derive(Debug)]
pub struct SporadicData {
    records: BTreeMap<Sporadic, SporadicRecord>,
}

impl SporadicData {
    /// The embedded data set; parsed and validated once per process.
    pub fn builtin() -> &'static SporadicData {
        static BUILTIN: OnceLock<SporadicData> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            parse_sporadic_data(include_str!("../../data/sporadic.tsv"))
                .expect("embedded sporadic data is valid")
        })
    }

    pub fn record(&self, s: Sporadic) -> &SporadicRecord {
        self.records.get(&s).expect("all 26 present after validation")
    }

    pub fn iter(&self) -> impl Iterator<Item = &SporadicRecord> {
        self.records.values()
    }
}

/// Load and validate a sporadic data file.
///
/// Format: one record per line, `NAME<TAB>ORDER<TAB>OUT<TAB>SPECTRUM`,
/// spectrum comma-separated; `#` starts a comment line. Orders and |Out|
/// must match the compiled table exactly; spectra must contain 1, be
/// divisor-closed, and mention exactly the primes dividing the order.
pub fn load_sporadic_data(path: &Path) -> Result<SporadicData, DataError> {
    parse_sporadic_data(&std::fs::read_to_string(path)?)
}

fn parse_sporadic_data(text: &str) -> Result<SporadicData, DataError> {
    let mut records = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 4 {
            return Err(DataError::Malformed {
                line,
                message: format!("expected 4 tab-separated fields, got {}", fields.len()),
            });
        }
        let group = Sporadic::from_name(fields[0]).ok_or_else(|| DataError::Malformed {
            line,
            message: format!("unknown group name {:?}", fields[0]),
        })?;
        let order: FactoredInteger = fields[1].parse().map_err(|e| DataError::Malformed {
            line,
            message: format!("bad order: {e}"),
        })?;
        let out: FactoredInteger = fields[2].parse().map_err(|e| DataError::Malformed {
            line,
            message: format!("bad out order: {e}"),
        })?;
        let mut spectrum = Vec::new();
        for part in fields[3].split(',') {
            let m: u64 = part.trim().parse().map_err(|_| DataError::Malformed {
                line,
                message: format!("bad spectrum entry {part:?}"),
            })?;
            spectrum.push(m);
        }
        let record = SporadicRecord {
            group,
            order,
            out,
            spectrum,
        };
        validate_record(&record)?;
        if records.insert(group, record).is_some() {
            return Err(DataError::Malformed {
                line,
                message: format!("duplicate record for {group}"),
            });
        }
    }
    let missing: Vec<String> = Sporadic::ALL
        .iter()
        .filter(|s| !records.contains_key(s))
        .map(|s| s.name().to_string())
        .collect();
    if !missing.is_empty() {
        return Err(DataError::Missing(missing));
    }
    Ok(SporadicData { records })
}

fn validate_record(r: &SporadicRecord) -> Result<(), DataError> {
    let fail = |message: String| DataError::Inconsistent {
        group: r.group.name().to_string(),
        message,
    };
    if r.order != r.group.order() {
        return Err(fail(format!(
            "order {} disagrees with compiled value {}",
            r.order,
            r.group.order()
        )));
    }
    if r.out != r.group.out_order() {
        return Err(fail(format!(
            "out order {} disagrees with compiled value {}",
            r.out,
            r.group.out_order()
        )));
    }
    if r.spectrum.first() != Some(&1) {
        return Err(fail("spectrum must start at 1".to_string()));
    }
    if r.spectrum.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail("spectrum must be strictly ascending".to_string()));
    }
    // Divisor closure: every divisor of a member is a member.
    for &m in &r.spectrum {
        for d in 1..=m {
            if m % d == 0 && r.spectrum.binary_search(&d).is_err() {
                return Err(fail(format!("spectrum contains {m} but not its divisor {d}")));
            }
        }
        if FactoredInteger::factor(m as u128)
            .support()
            .any(|p| r.order.valuation(p) == 0)
        {
            return Err(fail(format!("spectrum entry {m} does not divide the order")));
        }
    }
    // Cauchy: every prime dividing the order appears as an element order.
    for p in r.order.support() {
        let p64 = u64::try_from(p).expect("sporadic primes are small");
        if r.spectrum.binary_search(&p64).is_err() {
            return Err(fail(format!("prime {p} divides the order but is absent")));
        }
    }
    Ok(())
}
