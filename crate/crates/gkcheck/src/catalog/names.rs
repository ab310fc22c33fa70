//! Human-readable group names.
//!
//! Display follows the conventional compact style: `A5`, `L2(11)`,
//! `U4(2)`, `S6(2)`, `O7(3)`, `O8+(2)`, `Sz(8)`, `R(27)`, `3D4(2)`,
//! `2F4(2)'`, `M11`, `Fi24'`, `O'N`. The parser also accepts Lie-family
//! coordinates (`A3(2)`, `2A3(2)`, `B2(3)`, `2D4(2)`) and field sizes
//! written as `p^f`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{CatalogError, GroupId, LieFamily, PrimePower, Sporadic};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NameError {
    #[error("cannot parse group name {0:?}")]
    Syntax(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Alternating(n) => write!(f, "A{n}"),
            GroupId::Sporadic(s) => f.write_str(s.name()),
            GroupId::Tits => f.write_str("2F4(2)'"),
            GroupId::Lie { family, rank, q } => {
                let qv = q.value();
                match family {
                    LieFamily::A => write!(f, "L{}({qv})", rank + 1),
                    LieFamily::TwoA => write!(f, "U{}({qv})", rank + 1),
                    LieFamily::B if *rank == 2 => write!(f, "S4({qv})"),
                    LieFamily::B => write!(f, "O{}({qv})", 2 * rank + 1),
                    LieFamily::C => write!(f, "S{}({qv})", 2 * rank),
                    LieFamily::D => write!(f, "O{}+({qv})", 2 * rank),
                    LieFamily::TwoD => write!(f, "O{}-({qv})", 2 * rank),
                    LieFamily::ThreeD4 => write!(f, "3D4({qv})"),
                    LieFamily::G2 => write!(f, "G2({qv})"),
                    LieFamily::TwoG2 => write!(f, "R({qv})"),
                    LieFamily::F4 => write!(f, "F4({qv})"),
                    LieFamily::TwoF4 => write!(f, "2F4({qv})"),
                    LieFamily::TwoB2 => write!(f, "Sz({qv})"),
                    LieFamily::E6 => write!(f, "E6({qv})"),
                    LieFamily::TwoE6 => write!(f, "2E6({qv})"),
                    LieFamily::E7 => write!(f, "E7({qv})"),
                    LieFamily::E8 => write!(f, "E8({qv})"),
                }
            }
        }
    }
}

impl FromStr for GroupId {
    type Err = NameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let syntax = || NameError::Syntax(s.to_string());
        if let Some(sp) = Sporadic::from_name(s) {
            return Ok(GroupId::Sporadic(sp));
        }
        if s == "2F4(2)'" || s == "T" || s == "Tits" {
            return Ok(GroupId::Tits);
        }
        if let Some(rest) = s.strip_prefix('A') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let n: u32 = rest.parse().map_err(|_| syntax())?;
                return Ok(GroupId::alternating(n)?);
            }
        }
        let open = s.find('(').ok_or_else(syntax)?;
        let close = s.rfind(')').ok_or_else(syntax)?;
        if close != s.len() - 1 || close <= open {
            return Err(syntax());
        }
        let prefix = &s[..open];
        let q = parse_field(&s[open + 1..close]).ok_or_else(syntax)?;
        let (family, rank) = parse_prefix(prefix).ok_or_else(syntax)?;
        Ok(GroupId::lie(family, rank, q)?)
    }
}

impl serde::Serialize for GroupId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GroupId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Field size: a decimal prime power or `p^f`.
fn parse_field(text: &str) -> Option<PrimePower> {
    if let Some((base, exp)) = text.split_once('^') {
        let p: u64 = base.trim().parse().ok()?;
        let f: u32 = exp.trim().parse().ok()?;
        PrimePower::new(p, f).ok()
    } else {
        PrimePower::from_value(text.trim().parse().ok()?).ok()
    }
}

/// Map a name prefix to (family, rank).
fn parse_prefix(prefix: &str) -> Option<(LieFamily, u32)> {
    let tail_rank = |tail: &str| tail.parse::<u32>().ok();
    match prefix {
        "Sz" => return Some((LieFamily::TwoB2, 2)),
        "R" => return Some((LieFamily::TwoG2, 2)),
        "G2" => return Some((LieFamily::G2, 2)),
        "F4" => return Some((LieFamily::F4, 4)),
        "E6" => return Some((LieFamily::E6, 6)),
        "E7" => return Some((LieFamily::E7, 7)),
        "E8" => return Some((LieFamily::E8, 8)),
        "2B2" => return Some((LieFamily::TwoB2, 2)),
        "2G2" => return Some((LieFamily::TwoG2, 2)),
        "2F4" => return Some((LieFamily::TwoF4, 4)),
        "2E6" => return Some((LieFamily::TwoE6, 6)),
        "3D4" => return Some((LieFamily::ThreeD4, 4)),
        _ => {}
    }
    if let Some(tail) = prefix.strip_prefix("2A") {
        return Some((LieFamily::TwoA, tail_rank(tail)?));
    }
    if let Some(tail) = prefix.strip_prefix("2D") {
        return Some((LieFamily::TwoD, tail_rank(tail)?));
    }
    if let Some(tail) = prefix.strip_prefix('L') {
        let m = tail_rank(tail)?;
        return if m >= 2 { Some((LieFamily::A, m - 1)) } else { None };
    }
    if let Some(tail) = prefix.strip_prefix('U') {
        let m = tail_rank(tail)?;
        return if m >= 3 { Some((LieFamily::TwoA, m - 1)) } else { None };
    }
    if let Some(tail) = prefix.strip_prefix('S') {
        let m = tail_rank(tail)?;
        if m < 4 || m % 2 != 0 {
            return None;
        }
        return if m == 4 {
            Some((LieFamily::B, 2))
        } else {
            Some((LieFamily::C, m / 2))
        };
    }
    if let Some(tail) = prefix.strip_prefix('O') {
        // Accept both O8+ and O8^+ for the split forms.
        if let Some(dim) = tail.strip_suffix('+') {
            let dim: u32 = dim.trim_end_matches('^').parse().ok()?;
            return if dim % 2 == 0 { Some((LieFamily::D, dim / 2)) } else { None };
        }
        if let Some(dim) = tail.strip_suffix('-') {
            let dim: u32 = dim.trim_end_matches('^').parse().ok()?;
            return if dim % 2 == 0 { Some((LieFamily::TwoD, dim / 2)) } else { None };
        }
        let dim: u32 = tail.parse().ok()?;
        return if dim % 2 == 1 && dim >= 5 {
            Some((LieFamily::B, (dim - 1) / 2))
        } else {
            None
        };
    }
    for (letter, family) in [
        ('A', LieFamily::A),
        ('B', LieFamily::B),
        ('C', LieFamily::C),
        ('D', LieFamily::D),
    ] {
        if let Some(tail) = prefix.strip_prefix(letter) {
            return Some((family, tail_rank(tail)?));
        }
    }
    None
}
