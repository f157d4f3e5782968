//! JSON text formats for lattices and packings. Exact entries are strings:
//! `"p/q"` or `"p/q+r/s*sqrt2"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::packing::PeriodicPacking;
use crate::scalar::{format_rational, parse_rational, QSqrt2, Rational};

/// Expected invariants stored next to catalog Grams.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub det: String,
    pub min_norm: String,
    pub kissing: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub even: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unimodular: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub name: String,
    pub dim: usize,
    pub field: String,
    pub gram: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offsets: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl LatticeFile {
    pub fn from_lattice(l: &Lattice) -> Self {
        let field = if l.is_rational() { "Q" } else { "Q(sqrt2)" };
        LatticeFile {
            name: l.name().unwrap_or("").to_string(),
            dim: l.dim(),
            field: field.into(),
            gram: l
                .gram()
                .rows()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
            offsets: None,
            source: None,
            expected: None,
        }
    }

    pub fn from_packing(p: &PeriodicPacking) -> Self {
        let mut f = LatticeFile::from_lattice(p.base());
        f.name = p.name().unwrap_or("").to_string();
        f.offsets = Some(
            p.offsets()
                .iter()
                .map(|o| o.iter().map(format_rational).collect())
                .collect(),
        );
        f
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    fn gram_matrix(&self) -> Result<Matrix<QSqrt2>> {
        if self.gram.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: self.gram.len(),
            });
        }
        let rows = self
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.parse::<QSqrt2>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let g = Matrix::from_rows(rows)?;
        if self.field == "Q" && !g.rows().flatten().all(QSqrt2::is_rational) {
            return Err(Error::Parse(
                "field is Q but an entry involves sqrt2".into(),
            ));
        }
        if self.field != "Q" && self.field != "Q(sqrt2)" {
            return Err(Error::Parse(format!("unknown field `{}`", self.field)));
        }
        Ok(g)
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        let l = Lattice::from_gram(self.gram_matrix()?)?;
        Ok(if self.name.is_empty() {
            l
        } else {
            l.with_name(self.name.clone())
        })
    }

    /// Packing with offsets in lattice coordinates; a file without offsets
    /// is the lattice itself.
    pub fn to_packing(&self) -> Result<PeriodicPacking> {
        let base = Lattice::from_gram(self.gram_matrix()?)?;
        let offsets = self
            .offsets
            .iter()
            .flatten()
            .map(|o| {
                o.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<Rational>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let p = PeriodicPacking::from_coords(base, offsets)?;
        Ok(if self.name.is_empty() {
            p
        } else {
            p.with_name(self.name.clone())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_irrational_gram() {
        let h = QSqrt2::frac(1, 2);
        let a = &h + &(&QSqrt2::sqrt2() * &h);
        let g = Matrix::from_rows(vec![vec![a.clone(), h.clone()], vec![h, a]]).unwrap();
        let l = Lattice::from_gram(g).unwrap().with_name("t");
        let f = LatticeFile::from_lattice(&l);
        assert_eq!(f.field, "Q(sqrt2)");
        assert_eq!(f.gram[0][0], "1/2+1/2*sqrt2");
        let back = LatticeFile::parse(&f.to_json())
            .unwrap()
            .to_lattice()
            .unwrap();
        assert_eq!(back.gram(), l.gram());
        assert_eq!(back.name(), Some("t"));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(LatticeFile::parse("{").is_err());
        let f = r#"{"name":"x","dim":1,"field":"Q","gram":[["1*sqrt2"]]}"#;
        assert!(LatticeFile::parse(f).unwrap().to_lattice().is_err());
        let f = r#"{"name":"x","dim":2,"field":"Q","gram":[["1"]]}"#;
        assert!(LatticeFile::parse(f).unwrap().to_lattice().is_err());
    }

    #[test]
    fn packing_offsets() {
        let f = r#"{"name":"bcc","dim":3,"field":"Q","gram":[["1","0","0"],["0","1","0"],["0","0","1"]],
                   "offsets":[["0","0","0"],["1/2","1/2","1/2"]]}"#;
        let p = LatticeFile::parse(f).unwrap().to_packing().unwrap();
        assert_eq!(p.offsets().len(), 2);
        let again = LatticeFile::from_packing(&p);
        assert_eq!(again.offsets.unwrap()[1], vec!["1/2", "1/2", "1/2"]);
    }
}
