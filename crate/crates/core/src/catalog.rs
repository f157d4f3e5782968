//! Named lattices with exact Gram data and recorded invariants.
//!
//! Fixed entries live as JSON files under `data/`; the families `Zn`, `An`,
//! `Dn` and `Dn+` (even `n`) are built on request.

use crate::constructions::{checkerboard, d_plus, integer_lattice, root_lattice_a};
use crate::enumerate::EnumOptions;
use crate::error::{Error, Result};
use crate::io::{Expected, LatticeFile};
use crate::lattice::Lattice;
use crate::scalar::{format_rational, rat, QSqrt2};

const DATA: &[(&str, &str)] = &[
    ("A2", include_str!("../data/A2.json")),
    ("A3", include_str!("../data/A3.json")),
    ("D3", include_str!("../data/D3.json")),
    ("D4", include_str!("../data/D4.json")),
    ("D5", include_str!("../data/D5.json")),
    ("E6", include_str!("../data/E6.json")),
    ("E7", include_str!("../data/E7.json")),
    ("E8", include_str!("../data/E8.json")),
    ("K12", include_str!("../data/K12.json")),
    ("BW16", include_str!("../data/BW16.json")),
    ("Leech", include_str!("../data/Leech.json")),
    ("fcc", include_str!("../data/fcc.json")),
    ("bcc", include_str!("../data/bcc.json")),
    ("mcc", include_str!("../data/mcc.json")),
    ("Lambda1", include_str!("../data/Lambda1.json")),
    ("Lambda2", include_str!("../data/Lambda2.json")),
    ("Lambda3", include_str!("../data/Lambda3.json")),
    ("Lambda4", include_str!("../data/Lambda4.json")),
    ("Lambda5", include_str!("../data/Lambda5.json")),
    ("Lambda6", include_str!("../data/Lambda6.json")),
    ("Lambda7", include_str!("../data/Lambda7.json")),
    ("Lambda8", include_str!("../data/Lambda8.json")),
    ("Lambda9", include_str!("../data/Lambda9.json")),
    ("Lambda10", include_str!("../data/Lambda10.json")),
];

const ALIASES: &[(&str, &str)] = &[("Z", "Z1"), ("Lambda16", "BW16"), ("Lambda24", "Leech")];

/// Family members checked by [`verify_all`].
const FAMILY_SAMPLES: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z8", "Z9", "A1", "A4", "A5", "A6", "D6", "D7", "D8", "D8+", "D10+",
];

fn canonical(name: &str) -> &str {
    ALIASES
        .iter()
        .find(|(a, _)| *a == name)
        .map_or(name, |(_, t)| t)
}

fn family(name: &str) -> Option<(char, usize, bool)> {
    let (plus, body) = match name.strip_suffix('+') {
        Some(b) => (true, b),
        None => (false, name),
    };
    let mut chars = body.chars();
    let head = chars.next()?;
    let n: usize = chars.as_str().parse().ok()?;
    if !matches!(head, 'Z' | 'A' | 'D') || n == 0 || n > 64 || (plus && head != 'D') {
        return None;
    }
    Some((head, n, plus))
}

/// Stored file for a fixed entry.
pub fn entry(name: &str) -> Result<LatticeFile> {
    let key = canonical(name);
    let (_, text) = DATA
        .iter()
        .find(|(k, _)| *k == key)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    LatticeFile::parse(text)
}

/// Lattice by name.
pub fn get(name: &str) -> Result<Lattice> {
    let key = canonical(name);
    if let Some((head, n, plus)) = family(key) {
        let l = match (head, plus) {
            ('Z', _) => integer_lattice(n)?,
            ('A', _) => root_lattice_a(n)?,
            ('D', false) => checkerboard(n)?,
            _ => {
                if n % 2 == 1 || n < 4 {
                    return Err(Error::Precondition(format!(
                        "D{n}+ is a lattice only for even n ≥ 4"
                    )));
                }
                d_plus(n)?.to_lattice()?
            }
        };
        return Ok(l.with_name(key));
    }
    entry(key)?.to_lattice()
}

/// Recorded invariants; for families they follow from closed formulas.
pub fn expected(name: &str) -> Result<Expected> {
    let key = canonical(name);
    if let Some((head, n, plus)) = family(key) {
        let n64 = n as u64;
        return Ok(match (head, plus) {
            ('Z', _) => Expected {
                det: "1".into(),
                min_norm: "1".into(),
                kissing: 2 * n64,
                even: Some(false),
                unimodular: Some(true),
            },
            ('A', _) => Expected {
                det: (n64 + 1).to_string(),
                min_norm: "2".into(),
                kissing: n64 * (n64 + 1),
                even: Some(true),
                unimodular: Some(false),
            },
            ('D', false) => Expected {
                det: "4".into(),
                min_norm: "2".into(),
                kissing: 2 * n64 * (n64 - 1),
                even: Some(true),
                unimodular: Some(false),
            },
            _ => {
                // the glue vector (1/2, …, 1/2) has norm n/4
                let (mu, tau) = match n.cmp(&8) {
                    std::cmp::Ordering::Less => (format_rational(&rat(n as i64, 4)), 1 << (n - 1)),
                    std::cmp::Ordering::Equal => ("2".to_string(), 240),
                    std::cmp::Ordering::Greater => ("2".to_string(), 2 * n64 * (n64 - 1)),
                };
                Expected {
                    det: "1".into(),
                    min_norm: mu,
                    kissing: tau,
                    even: Some(n % 8 == 0),
                    unimodular: Some(n % 4 == 0),
                }
            }
        });
    }
    entry(key)?
        .expected
        .ok_or_else(|| Error::UnknownName(format!("{name} has no recorded invariants")))
}

/// Fixed entry names followed by the family patterns.
pub fn list() -> Vec<String> {
    let mut v: Vec<String> = DATA.iter().map(|(k, _)| k.to_string()).collect();
    v.extend(["Zn", "An", "Dn", "Dn+"].map(String::from));
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub name: String,
    pub det: String,
    pub min_norm: Option<String>,
    pub kissing: Option<u64>,
    pub mismatches: Vec<String>,
    pub budget_exhausted: bool,
}

impl VerifyRow {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && !self.budget_exhausted
    }
}

/// Recomputes the recorded invariants of one entry.
pub fn verify(name: &str, opts: EnumOptions) -> Result<VerifyRow> {
    let l = get(name)?;
    let exp = expected(name)?;
    let det = l.determinant();
    let mut row = VerifyRow {
        name: name.to_string(),
        det: det.to_string(),
        min_norm: None,
        kissing: None,
        mismatches: Vec::new(),
        budget_exhausted: false,
    };
    if det != exp.det.parse::<QSqrt2>()? {
        row.mismatches.push(format!("det {} ≠ {}", det, exp.det));
    }
    if let Some(e) = exp.even {
        if l.is_even() != e {
            row.mismatches.push(format!("even = {}", l.is_even()));
        }
    }
    if let Some(u) = exp.unimodular {
        if l.is_unimodular() != u {
            row.mismatches
                .push(format!("unimodular = {}", l.is_unimodular()));
        }
    }
    match l.minimum(opts) {
        Ok(m) => {
            row.min_norm = Some(m.norm.to_string());
            row.kissing = Some(m.vectors.len() as u64);
            if m.norm != exp.min_norm.parse::<QSqrt2>()? {
                row.mismatches
                    .push(format!("min norm {} ≠ {}", m.norm, exp.min_norm));
            }
            if m.vectors.len() as u64 != exp.kissing {
                row.mismatches
                    .push(format!("kissing {} ≠ {}", m.vectors.len(), exp.kissing));
            }
        }
        Err(e) if e.is_budget() => row.budget_exhausted = true,
        Err(e) => return Err(e),
    }
    Ok(row)
}

/// [`verify`] over every fixed entry and a sample of each family.
pub fn verify_all(opts: EnumOptions) -> Result<Vec<VerifyRow>> {
    DATA.iter()
        .map(|(k, _)| *k)
        .chain(FAMILY_SAMPLES.iter().copied())
        .map(|k| verify(k, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(get("E8").unwrap().determinant(), QSqrt2::from_int(1));
        assert_eq!(get("Z").unwrap().dim(), 1);
        assert_eq!(get("Lambda24").unwrap().dim(), 24);
        assert!(matches!(get("E9"), Err(Error::UnknownName(_))));
        assert!(get("D5+").is_err());
        assert_eq!(get("D12").unwrap().name(), Some("D12"));
        assert!(list().contains(&"mcc".to_string()));
    }

    #[test]
    fn small_entries_verify() {
        for name in [
            "A2", "A3", "D4", "E6", "E7", "E8", "fcc", "bcc", "mcc", "Z5", "A4", "D8+", "D4+",
        ] {
            let row = verify(name, EnumOptions::default()).unwrap();
            assert!(row.ok(), "{row:?}");
        }
    }

    #[test]
    fn mcc_gram_exact() {
        let l = get("mcc").unwrap();
        let h = QSqrt2::frac(1, 2);
        let a = &h + &(&QSqrt2::sqrt2() * &h);
        let b = &h - &(&QSqrt2::sqrt2() * &h);
        assert_eq!(l.gram()[(0, 0)], a);
        assert_eq!(l.gram()[(1, 2)], b);
        assert_eq!(l.gram()[(0, 1)], h);
        assert_eq!(l.determinant(), QSqrt2::from_int(1));
    }
}
