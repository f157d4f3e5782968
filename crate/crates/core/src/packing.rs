//! Periodic packings: finitely many translates of a base lattice.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::enumerate::EnumOptions;
use crate::error::{Error, Result};
use crate::intmat::rational_lattice_basis;
use crate::lattice::Lattice;
use crate::matrix::{vec_mat, Matrix};
use crate::scalar::{FieldElement, QSqrt2, Rational};

/// Union of `base + offset_j`. Offsets are held in coordinates relative to
/// the base basis; the first one is always zero.
#[derive(Clone, Debug)]
pub struct PeriodicPacking {
    base: Lattice,
    offsets: Vec<Vec<Rational>>,
    name: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PackingInvariants {
    pub min_dist_sq: QSqrt2,
    /// `δ²` exactly.
    pub center_density_sq: QSqrt2,
    /// `δ` when it lies in Q(√2).
    pub center_density_exact: Option<QSqrt2>,
    pub center_density: f64,
    /// Largest number of nearest neighbours over the translates.
    pub max_kissing: u64,
    /// Number of distinct offset differences modulo the base.
    pub classes: usize,
}

/// Fractional part in `[0, 1)`.
fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

fn reduce_mod_base(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(frac).collect()
}

impl PeriodicPacking {
    /// Packing from offsets in base coordinates. A zero offset is put first
    /// (added if missing); offsets must be distinct modulo the base.
    pub fn from_coords(base: Lattice, offsets: Vec<Vec<Rational>>) -> Result<Self> {
        let n = base.dim();
        let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
        let zero = vec![Rational::zero(); n];
        let mut out = vec![zero.clone()];
        seen.insert(zero, 0);
        for (k, o) in offsets.into_iter().enumerate() {
            if o.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: o.len(),
                });
            }
            let key = reduce_mod_base(&o);
            if let Some(&prev) = seen.get(&key) {
                if key.iter().all(Zero::is_zero) && o.iter().all(Zero::is_zero) {
                    continue;
                }
                return Err(Error::Precondition(format!(
                    "offset {k} coincides with offset {prev} modulo the base lattice"
                )));
            }
            seen.insert(key, out.len());
            out.push(o);
        }
        Ok(PeriodicPacking {
            base,
            offsets: out,
            name: None,
        })
    }

    /// Packing from offsets in ambient coordinates (the base needs a basis).
    pub fn from_ambient(base: Lattice, offsets: &[Vec<Rational>]) -> Result<Self> {
        let coords = offsets
            .iter()
            .map(|o| {
                let v: Vec<QSqrt2> = o.iter().cloned().map(QSqrt2::from_rational).collect();
                base.coords_of(&v)?
                    .into_iter()
                    .map(|x| {
                        x.as_rational().cloned().ok_or_else(|| {
                            Error::Representation("offset has irrational coordinates".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PeriodicPacking::from_coords(base, coords)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn base(&self) -> &Lattice {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn offsets(&self) -> &[Vec<Rational>] {
        &self.offsets
    }

    /// Offsets in ambient coordinates, when the base has a rational basis.
    pub fn offsets_ambient(&self) -> Option<Vec<Vec<Rational>>> {
        let b = self.base.basis()?;
        let bq: Matrix<Rational> = {
            let rows: Option<Vec<Vec<Rational>>> = b
                .rows()
                .map(|r| r.iter().map(|x| x.as_rational().cloned()).collect())
                .collect();
            Matrix::from_rows(rows?).ok()?
        };
        Some(self.offsets.iter().map(|o| vec_mat(o, &bq)).collect())
    }

    /// Whether the offsets are closed under addition modulo the base, i.e.
    /// the packing is itself a lattice.
    pub fn is_lattice(&self) -> bool {
        let keys: std::collections::HashSet<Vec<Rational>> =
            self.offsets.iter().map(|o| reduce_mod_base(o)).collect();
        self.offsets.par_iter().all(|a| {
            self.offsets.iter().all(|b| {
                let s: Vec<Rational> = a.iter().zip(b).map(|(x, y)| frac(&(x + y))).collect();
                keys.contains(&s)
            })
        })
    }

    /// The lattice generated by the base and all offsets.
    pub fn to_lattice(&self) -> Result<Lattice> {
        if !self.is_lattice() {
            return Err(Error::Precondition(
                "offsets do not form a group modulo the base".into(),
            ));
        }
        let n = self.dim();
        let mut gens: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        gens.extend(self.offsets.iter().skip(1).cloned());
        let c = rational_lattice_basis(&gens);
        let cq = Matrix::from_rows(c)?.map(|x| QSqrt2::from_rational(x.clone()));
        let lat = match self.base.basis() {
            Some(b) => Lattice::from_basis(cq.mul(b)?)?,
            None => Lattice::from_gram(cq.congruence(self.base.gram())?)?,
        };
        Ok(match &self.name {
            Some(nm) => lat.with_name(nm.clone()),
            None => lat,
        })
    }

    /// Distinct offset differences `o_j − o_i` modulo the base, with the pair
    /// table `(i, j) ↦ class`.
    fn difference_classes(&self) -> (Vec<Vec<Rational>>, Vec<Vec<usize>>) {
        let m = self.offsets.len();
        let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
        let mut classes = Vec::new();
        let mut table = vec![vec![0usize; m]; m];
        let zero = vec![Rational::zero(); self.dim()];
        index.insert(zero.clone(), 0);
        classes.push(zero);
        for i in 0..m {
            for j in 0..m {
                let d: Vec<Rational> = self.offsets[j]
                    .iter()
                    .zip(&self.offsets[i])
                    .map(|(a, b)| frac(&(a - b)))
                    .collect();
                let next = classes.len();
                let k = *index.entry(d.clone()).or_insert_with(|| {
                    classes.push(d);
                    next
                });
                table[i][j] = k;
            }
        }
        (classes, table)
    }

    /// Minimum squared distance, center density and largest kissing number.
    ///
    /// Every class of offset differences is enumerated as a lattice coset up
    /// to `bound`; with `None` the bound is the shortest reduced base vector,
    /// which is always a packing difference.
    pub fn invariants(
        &self,
        bound: Option<&QSqrt2>,
        opts: EnumOptions,
    ) -> Result<PackingInvariants> {
        let enumerator = self.base.enumerator()?;
        let bound = match bound {
            Some(b) => b.clone(),
            None => enumerator
                .min_reduced_diagonal()
                .ok_or_else(|| Error::Precondition("zero-dimensional packing".into()))?,
        };
        let (classes, table) = self.difference_classes();
        let counts: Vec<BTreeMap<QSqrt2, u64>> = classes
            .par_iter()
            .enumerate()
            .map(|(k, shift)| {
                let mut c = if k == 0 {
                    enumerator.norm_counts(&bound, None, opts)?
                } else {
                    enumerator.norm_counts(&bound, Some(shift), opts)?
                };
                c.remove(&QSqrt2::zero());
                Ok(c)
            })
            .collect::<Result<_>>()?;
        let min = counts
            .iter()
            .filter_map(|c| c.keys().next().cloned())
            .min()
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "no packing differences of norm ≤ {bound}; raise the bound"
                ))
            })?;
        let at_min: Vec<u64> = counts
            .iter()
            .map(|c| c.get(&min).copied().unwrap_or(0))
            .collect();
        let max_kissing = table
            .iter()
            .map(|row| row.iter().map(|&k| at_min[k]).sum::<u64>())
            .max()
            .unwrap_or(0);
        let n = self.dim();
        let m = QSqrt2::from_int(self.offsets.len() as i64);
        let quarter = &min * &QSqrt2::frac(1, 4);
        let dsq = &(&(&m * &m) * &quarter.pow(n as u32)) / &self.base.determinant();
        let center_density = (self.offsets.len() as f64).ln()
            + n as f64 * 0.5 * quarter.to_f64().ln()
            - 0.5 * self.base.determinant().to_f64().ln();
        Ok(PackingInvariants {
            min_dist_sq: min,
            center_density_exact: dsq.sqrt_exact(),
            center_density_sq: dsq,
            center_density: center_density.exp(),
            max_kissing,
            classes: classes.len(),
        })
    }
}
