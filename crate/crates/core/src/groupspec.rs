//! Group specifications: `TYPE[xTYPE...]:(adjoint|sc|lattice=<JSON rows>)`.
//!
//! Letters are case-insensitive and whitespace is ignored everywhere. Error
//! positions are 0-based character offsets into the original string.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::rootdata::{build_datum, CartanType, Isogeny, Letter, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    raw: String,
    datum: RootDatum,
}

impl GroupSpec {
    pub fn raw(&self) -> &str {
        &self.raw
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn cartan_type(&self) -> &CartanType {
        self.datum.cartan_type()
    }

    pub fn isogeny(&self) -> &Isogeny {
        self.datum.isogeny()
    }

    /// Canonical form: upper-case letters, no whitespace, compact JSON.
    pub fn canonical(&self) -> String {
        let iso = match self.isogeny() {
            Isogeny::Adjoint => "adjoint".to_string(),
            Isogeny::SimplyConnected => "sc".to_string(),
            Isogeny::Lattice(m) => format!(
                "lattice=[{}]",
                m.to_rows()
                    .iter()
                    .map(|r| format!("[{}]", r.iter().join(",")))
                    .join(",")
            ),
        };
        format!("{}:{}", self.cartan_type(), iso)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

/// Non-whitespace characters with their offsets in the original string.
fn significant(s: &str, base: usize) -> Vec<(usize, char)> {
    s.chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i + base, c))
        .collect()
}

pub(crate) fn parse_cartan_type(s: &str, base: usize) -> Result<CartanType> {
    let toks = significant(s, base);
    let end = base + s.chars().count();
    let mut factors = Vec::new();
    let mut k = 0;
    loop {
        let &(pos, c) = toks
            .get(k)
            .ok_or_else(|| syntax(end, "expected a Cartan type letter"))?;
        let letter = Letter::from_char(c)
            .ok_or_else(|| syntax(pos, format!("expected one of A-G, found '{c}'")))?;
        k += 1;
        let digits: String = toks[k..]
            .iter()
            .map(|t| t.1)
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            let at = toks.get(k).map_or(end, |t| t.0);
            return Err(syntax(at, "expected a rank after the type letter"));
        }
        let rank = digits
            .parse::<usize>()
            .map_err(|_| syntax(toks[k].0, "rank out of range"))?;
        k += digits.len();
        factors.push((letter, rank));
        match toks.get(k) {
            None => break,
            Some(&(_, 'x' | 'X' | '×')) => k += 1,
            Some(&(pos, c)) => {
                return Err(syntax(pos, format!("expected 'x' or end, found '{c}'")))
            }
        }
    }
    CartanType::new(factors)
}

fn parse_lattice(s: &str, base: usize, n: usize) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(s).map_err(|e| {
        // serde_json columns are 1-based within a line
        let offset = s
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.chars().count() + 1)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        syntax(base + offset, format!("invalid lattice matrix: {e}"))
    })?;
    let m = IntMatrix::from_rows(&rows)
        .ok_or_else(|| syntax(base, "lattice rows have unequal lengths"))?;
    if m.rows() != n || m.cols() != n {
        return Err(Error::LatticeShape {
            expected: n,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m)
}

/// Parses and validates a group specification.
pub fn parse_spec(s: &str) -> Result<GroupSpec> {
    let Some(colon) = s.find(':') else {
        return Err(syntax(
            s.chars().count(),
            "expected ':' followed by adjoint, sc or lattice=...",
        ));
    };
    let type_part = &s[..colon];
    let iso_part = &s[colon + 1..];
    let iso_base = s[..=colon].chars().count();
    let ctype = parse_cartan_type(type_part, 0)?;

    let compact: String = iso_part.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = compact.to_ascii_lowercase();
    let isogeny = if lower == "adjoint" || lower == "ad" {
        Isogeny::Adjoint
    } else if lower == "sc" {
        Isogeny::SimplyConnected
    } else if lower.starts_with("lattice=") {
        let eq = iso_part.find('=').expect("compact form contains '='");
        let json = &iso_part[eq + 1..];
        let base = iso_base + iso_part[..=eq].chars().count();
        Isogeny::Lattice(parse_lattice(json, base, ctype.rank())?)
    } else {
        let pos = iso_base
            + iso_part
                .chars()
                .position(|c| !c.is_whitespace())
                .unwrap_or(0);
        return Err(syntax(pos, "expected adjoint, sc or lattice=<matrix>"));
    };
    let datum = build_datum(&ctype, isogeny)?;
    Ok(GroupSpec {
        raw: s.to_string(),
        datum,
    })
}
