//! Gram-first lattices over Q(√2) and their basic invariants.

use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::enumerate::{EnumOptions, Enumerator, ShortVector};
use crate::error::{Error, Result};
use crate::intmat::{int_to_rational, IntMatrix};
use crate::matrix::Matrix;
use crate::qseries::QSeries;
use crate::reduce::lll_exact;
use crate::scalar::{FieldElement, QSqrt2, Rational};
use crate::theta::{split_norm_counts, SPLIT_MIN_DIM};

/// Shortest nonzero vectors of a lattice, in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimum {
    pub norm: QSqrt2,
    pub vectors: Vec<Vec<i64>>,
}

/// A positive-definite lattice given by its Gram matrix, with an optional
/// generating basis. Immutable; derived data is computed once on demand.
#[derive(Clone)]
pub struct Lattice {
    name: Option<String>,
    gram: Matrix<QSqrt2>,
    basis: Option<Matrix<QSqrt2>>,
    det: OnceLock<QSqrt2>,
    enumerator: OnceLock<Arc<Enumerator>>,
    minimum: OnceLock<Arc<Minimum>>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("name", &self.name)
            .field("gram", &self.gram)
            .field("basis", &self.basis)
            .finish()
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram && self.basis == other.basis
    }
}

/// Exact positive-definiteness: Gaussian elimination without row swaps
/// succeeds with positive pivots iff every leading minor is positive.
fn is_positive_definite(g: &Matrix<QSqrt2>) -> bool {
    let n = g.nrows();
    let mut a = g.clone();
    for c in 0..n {
        let piv = a[(c, c)].clone();
        if !piv.is_positive() {
            return false;
        }
        for r in c + 1..n {
            if a[(r, c)].is_zero() {
                continue;
            }
            let f = &a[(r, c)] / &piv;
            for k in c..n {
                let v = &a[(r, k)] - &(&f * &a[(c, k)]);
                a[(r, k)] = v;
            }
        }
    }
    true
}

/// Volume of the unit ball in R^n, `π^{n/2} / Γ(n/2 + 1)`.
pub fn unit_ball_volume(n: usize) -> f64 {
    // V_0 = 1, V_1 = 2, V_n = (2π/n)·V_{n−2}
    let mut v = if n % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = 2 + n % 2;
    while k <= n {
        v *= 2.0 * PI / k as f64;
        k += 2;
    }
    v
}

impl Lattice {
    /// Lattice from an exact Gram matrix, which must be symmetric and
    /// positive definite.
    pub fn from_gram(gram: Matrix<QSqrt2>) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Precondition("Gram matrix is not symmetric".into()));
        }
        if !is_positive_definite(&gram) {
            return Err(Error::Precondition(
                "Gram matrix is not positive definite".into(),
            ));
        }
        Ok(Lattice {
            name: None,
            gram,
            basis: None,
            det: OnceLock::new(),
            enumerator: OnceLock::new(),
            minimum: OnceLock::new(),
        })
    }

    /// Lattice spanned by the rows of `basis` (rows must be independent).
    pub fn from_basis(basis: Matrix<QSqrt2>) -> Result<Self> {
        let gram = basis.mul(&basis.transpose())?;
        if !is_positive_definite(&gram) {
            return Err(Error::Precondition(
                "basis rows are linearly dependent".into(),
            ));
        }
        let mut l = Lattice::from_gram(gram)?;
        l.basis = Some(basis);
        Ok(l)
    }

    pub fn from_rational_gram(gram: &Matrix<Rational>) -> Result<Self> {
        Lattice::from_gram(gram.map(|x| QSqrt2::from_rational(x.clone())))
    }

    pub fn from_int_gram(rows: &[&[i64]]) -> Result<Self> {
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| QSqrt2::from_int(x)).collect())
                .collect(),
        )?;
        Lattice::from_gram(m)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &Matrix<QSqrt2> {
        &self.gram
    }

    pub fn basis(&self) -> Option<&Matrix<QSqrt2>> {
        self.basis.as_ref()
    }

    pub fn determinant(&self) -> QSqrt2 {
        self.det
            .get_or_init(|| self.gram.det().expect("Gram matrix is square"))
            .clone()
    }

    /// Dual lattice (Gram `G⁻¹`). A basis, when present, maps to `G⁻¹·B`.
    pub fn dual(&self) -> Result<Lattice> {
        let inv = self.gram.inverse()?;
        let mut d = Lattice::from_gram(inv.clone())?;
        if let Some(b) = &self.basis {
            d.basis = Some(inv.mul(b)?);
        }
        d.name = self.name.as_ref().map(|n| format!("{n}*"));
        Ok(d)
    }

    /// All norms multiplied by `c > 0`. The basis survives when `√c ∈ Q(√2)`.
    pub fn scaled(&self, c: &QSqrt2) -> Result<Lattice> {
        if !c.is_positive() {
            return Err(Error::Precondition("scale factor must be positive".into()));
        }
        let mut l = Lattice::from_gram(self.gram.scale(c))?;
        if let (Some(b), Some(r)) = (&self.basis, c.sqrt_exact()) {
            l.basis = Some(b.scale(&r));
        }
        l.name = self.name.clone();
        Ok(l)
    }

    /// Sublattice (or change of basis) with rows `U` in the current basis.
    pub fn transformed(&self, u: &IntMatrix) -> Result<Lattice> {
        let uq = int_to_rational(u).map(|x| QSqrt2::from_rational(x.clone()));
        let mut l = Lattice::from_gram(uq.congruence(&self.gram)?)?;
        if let Some(b) = &self.basis {
            l.basis = Some(uq.mul(b)?);
        }
        l.name = self.name.clone();
        Ok(l)
    }

    /// LLL-reduced copy together with the transform from the current basis.
    pub fn reduced(&self) -> Result<(Lattice, IntMatrix)> {
        let (u, g) = lll_exact(&self.gram)?;
        let mut l = Lattice::from_gram(g)?;
        if let Some(b) = &self.basis {
            let uq = int_to_rational(&u).map(|x| QSqrt2::from_rational(x.clone()));
            l.basis = Some(uq.mul(b)?);
        }
        l.name = self.name.clone();
        Ok((l, u))
    }

    pub fn enumerator(&self) -> Result<&Enumerator> {
        if let Some(e) = self.enumerator.get() {
            return Ok(e);
        }
        let e = Arc::new(Enumerator::new(&self.gram)?);
        let _ = self.enumerator.set(e);
        Ok(self.enumerator.get().expect("just set"))
    }

    /// Exact norm `vᵀGv` of a coordinate vector.
    pub fn norm_of(&self, v: &[i64]) -> QSqrt2 {
        let n = self.dim();
        let mut acc = QSqrt2::zero();
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut row = QSqrt2::zero();
            for j in 0..n {
                if v[j] != 0 {
                    row += &(&self.gram[(i, j)] * &QSqrt2::from_int(v[j]));
                }
            }
            acc += &(&row * &QSqrt2::from_int(v[i]));
        }
        acc
    }

    /// Exact inner product `uᵀGv` for rational coordinate vectors.
    pub fn inner_rational(&self, u: &[Rational], v: &[Rational]) -> QSqrt2 {
        let n = self.dim();
        let mut acc = QSqrt2::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                acc += &(&self.gram[(i, j)] * &(&u[i] * &v[j]));
            }
        }
        acc
    }

    /// Nonzero vectors with norm ≤ `bound`, with norms, sorted by coordinates.
    pub fn short_vectors(&self, bound: &QSqrt2, opts: EnumOptions) -> Result<Vec<ShortVector>> {
        self.enumerator()?.short_vectors(bound, opts)
    }

    /// Coordinates of all nonzero `v` with `vᵀGv ≤ bound` (both signs).
    pub fn minimal_vectors(&self, bound: &QSqrt2, opts: EnumOptions) -> Result<Vec<Vec<i64>>> {
        Ok(self
            .short_vectors(bound, opts)?
            .into_iter()
            .map(|s| s.coords)
            .collect())
    }

    /// Minimal norm and all vectors attaining it.
    pub fn minimum(&self, opts: EnumOptions) -> Result<Arc<Minimum>> {
        if let Some(m) = self.minimum.get() {
            return Ok(m.clone());
        }
        let e = self.enumerator()?;
        let bound = e
            .min_reduced_diagonal()
            .ok_or_else(|| Error::Precondition("zero-dimensional lattice".into()))?;
        let all = e.short_vectors(&bound, opts)?;
        let norm = all
            .iter()
            .map(|s| s.norm.clone())
            .min()
            .expect("reduced basis vectors lie within the bound");
        let vectors = all
            .into_iter()
            .filter(|s| s.norm == norm)
            .map(|s| s.coords)
            .collect();
        let m = Arc::new(Minimum { norm, vectors });
        let _ = self.minimum.set(m.clone());
        Ok(m)
    }

    pub fn min_norm(&self, opts: EnumOptions) -> Result<QSqrt2> {
        Ok(self.minimum(opts)?.norm.clone())
    }

    pub fn kissing_number(&self, opts: EnumOptions) -> Result<u64> {
        Ok(self.minimum(opts)?.vectors.len() as u64)
    }

    /// Packing radius `√μ / 2`.
    pub fn packing_radius(&self, opts: EnumOptions) -> Result<f64> {
        Ok(self.min_norm(opts)?.to_f64().sqrt() / 2.0)
    }

    /// Center density `ρ^n / √det`.
    pub fn center_density(&self, opts: EnumOptions) -> Result<f64> {
        let n = self.dim() as f64;
        let rho = self.packing_radius(opts)?;
        Ok((n * rho.ln() - 0.5 * self.determinant().to_f64().ln()).exp())
    }

    /// Packing density `V_n · ρ^n / √det`.
    pub fn density(&self, opts: EnumOptions) -> Result<f64> {
        Ok(unit_ball_volume(self.dim()) * self.center_density(opts)?)
    }

    /// Exact `δ² = (μ/4)^n / det`.
    pub fn center_density_squared(&self, opts: EnumOptions) -> Result<QSqrt2> {
        let mu = self.min_norm(opts)?;
        let q = (&mu * &QSqrt2::frac(1, 4)).pow(self.dim() as u32);
        Ok(&q / &self.determinant())
    }

    /// Exact center density when it lies in Q(√2).
    pub fn center_density_exact(&self, opts: EnumOptions) -> Result<Option<QSqrt2>> {
        Ok(self.center_density_squared(opts)?.sqrt_exact())
    }

    /// `Σ_v q^{vᵀGv}` over all vectors with norm below `cutoff`.
    ///
    /// Norms must be multiples of 1/4; the search stops at the largest such
    /// multiple below the cutoff, so a stray norm strictly between that value
    /// and the cutoff goes unreported rather than raising an error.
    pub fn theta_series(&self, cutoff: &Rational, opts: EnumOptions) -> Result<QSeries> {
        if !cutoff.is_positive() {
            return Err(Error::Precondition("theta cutoff must be positive".into()));
        }
        // exponents are quarter units, so the last one kept is below the cutoff
        let last = (cutoff * Rational::from_integer(4.into())).ceil() - Rational::one();
        let mut s = QSeries::zero(cutoff);
        if !last.is_positive() {
            s.add_term(&Rational::zero(), Rational::one())?;
            return Ok(s);
        }
        let last = last / Rational::from_integer(4.into());
        if let Some(counts) = split_norm_counts(&self.gram, &last, SPLIT_MIN_DIM, opts)? {
            for (norm, c) in counts {
                s.add_term(&norm, Rational::from_integer(c.into()))?;
            }
            return Ok(s);
        }
        let bound = QSqrt2::from_rational(last);
        let counts = self.enumerator()?.norm_counts(&bound, None, opts)?;
        for (norm, c) in counts {
            let r = norm.as_rational().ok_or_else(|| {
                Error::Representation(format!(
                    "norm {norm} is irrational; theta needs a rational Gram"
                ))
            })?;
            s.add_term(r, Rational::from_integer(c.into()))?;
        }
        Ok(s)
    }

    /// Every Gram entry is rational.
    pub fn is_rational(&self) -> bool {
        self.gram.rows().flatten().all(QSqrt2::is_rational)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.rows().flatten().all(QSqrt2::is_integer)
    }

    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.dim()).all(|i| {
                let d = self.gram[(i, i)].rat.to_integer();
                num_integer::Integer::is_even(&d)
            })
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.determinant().is_one()
    }

    /// Coordinates `x` with `x·B = v` for an ambient vector `v`.
    pub fn coords_of(&self, v: &[QSqrt2]) -> Result<Vec<QSqrt2>> {
        Ok(self
            .coords_of_many(std::slice::from_ref(&v.to_vec()))?
            .remove(0))
    }

    /// [`Lattice::coords_of`] for many vectors, inverting the Gram once.
    pub fn coords_of_many(&self, vs: &[Vec<QSqrt2>]) -> Result<Vec<Vec<QSqrt2>>> {
        let b = self
            .basis
            .as_ref()
            .ok_or_else(|| Error::Precondition("lattice has no basis".into()))?;
        let inv = self.gram.inverse()?;
        let bt = b.transpose();
        vs.iter()
            .map(|v| {
                if v.len() != b.ncols() {
                    return Err(Error::Dimension {
                        expected: b.ncols(),
                        got: v.len(),
                    });
                }
                // x·(B Bᵀ) = v·Bᵀ
                let rhs = crate::matrix::vec_mat(v, &bt);
                let x = crate::matrix::vec_mat(&rhs, &inv);
                if crate::matrix::vec_mat(&x, b) != *v {
                    return Err(Error::Precondition(
                        "vector is not in the span of the basis".into(),
                    ));
                }
                Ok(x)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(8) - PI.powi(4) / 24.0).abs() < 1e-13);
        assert_eq!(unit_ball_volume(1), 2.0);
        assert_eq!(unit_ball_volume(0), 1.0);
    }

    #[test]
    fn hexagonal_invariants() {
        let a2 = Lattice::from_int_gram(&[&[2, 1], &[1, 2]]).unwrap();
        let o = EnumOptions::default();
        assert_eq!(a2.determinant(), QSqrt2::from_int(3));
        assert_eq!(a2.min_norm(o).unwrap(), QSqrt2::from_int(2));
        assert_eq!(a2.kissing_number(o).unwrap(), 6);
        assert!((a2.density(o).unwrap() - PI / 12f64.sqrt()).abs() < 1e-12);
        let d = a2.dual().unwrap();
        assert_eq!(d.determinant(), QSqrt2::frac(1, 3));
        assert_eq!(d.gram()[(0, 1)], QSqrt2::frac(-1, 3));
        let t = a2.theta_series(&rat_int(7), o).unwrap();
        assert_eq!(t.coeff_int(2), rat_int(6));
        assert_eq!(t.coeff_int(3), rat_int(0));
        assert_eq!(t.coeff_int(6), rat_int(6));
        assert_eq!(t.coeff_int(4), rat_int(0));
    }

    #[test]
    fn rejects_invalid_grams() {
        assert!(Lattice::from_int_gram(&[&[1, 2], &[2, 1]]).is_err());
        assert!(Lattice::from_int_gram(&[&[1, 0], &[1, 1]]).is_err());
        assert!(Lattice::from_int_gram(&[&[1, 1], &[1, 1]]).is_err());
    }

    #[test]
    fn parity_flags() {
        let z3 = Lattice::from_int_gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(z3.is_integral() && !z3.is_even() && z3.is_unimodular());
        let half = z3.scaled(&QSqrt2::frac(1, 2)).unwrap();
        assert!(!half.is_integral());
        assert!(half.is_rational());
    }

    #[test]
    fn basis_coordinates() {
        let b = Matrix::from_rows(vec![
            vec![QSqrt2::from_int(1), QSqrt2::from_int(1), QSqrt2::zero()],
            vec![QSqrt2::from_int(1), QSqrt2::from_int(-1), QSqrt2::zero()],
        ])
        .unwrap();
        let l = Lattice::from_basis(b).unwrap();
        let x = l
            .coords_of(&[QSqrt2::from_int(1), QSqrt2::zero(), QSqrt2::zero()])
            .unwrap();
        assert_eq!(x, vec![QSqrt2::frac(1, 2), QSqrt2::frac(1, 2)]);
        assert!(l
            .coords_of(&[QSqrt2::zero(), QSqrt2::zero(), QSqrt2::from_int(1)])
            .is_err());
        let dual = l.dual().unwrap();
        assert_eq!(dual.basis().unwrap()[(0, 0)], QSqrt2::frac(1, 2));
        assert_eq!(
            l.inner_rational(&[rat(1, 2), rat(0, 1)], &[rat(1, 1), rat(1, 1)]),
            QSqrt2::from_int(1)
        );
    }
}
