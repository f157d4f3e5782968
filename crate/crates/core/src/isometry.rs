//! Isometry testing by backtracking over short-vector images.
//!
//! To map `L1` onto `L2`, the basis of `L1` is reduced, and each reduced basis
//! vector is sent to an `L2` vector of equal norm whose inner products with
//! the images already chosen match. Candidate lists shrink as images are
//! fixed, which keeps the search small for the dimensions handled here.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::enumerate::{EnumOptions, ExactForm};
use crate::error::{Error, Result};
use crate::intmat::{int_mul, unimodular_inverse, IntMatrix};
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::reduce::lll_exact;
use crate::scalar::QSqrt2;

pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug)]
pub struct IsometryOptions {
    pub enumeration: EnumOptions,
    /// Maximum number of candidate placements tried.
    pub max_steps: u64,
}

impl Default for IsometryOptions {
    fn default() -> Self {
        IsometryOptions {
            enumeration: EnumOptions::default(),
            max_steps: DEFAULT_SEARCH_BUDGET,
        }
    }
}

/// A Q(√2) value `x` as integer numerators over the given denominator.
fn numerators(x: &QSqrt2, den: i128) -> Option<(i128, i128)> {
    let d = BigInt::from(den);
    let a = &x.rat * &d;
    let b = &x.rad * &d;
    if !a.is_integer() || !b.is_integer() {
        return None;
    }
    Some((a.to_integer().to_i128()?, b.to_integer().to_i128()?))
}

struct Candidate {
    coords: Vec<i64>,
    /// `G2·c` split into its rational and √2 numerators.
    ga: Vec<i128>,
    gb: Vec<i128>,
}

struct Search<'a> {
    target: &'a [Vec<(i128, i128)>],
    pools: Vec<Vec<usize>>,
    cands: &'a [Candidate],
    chosen: Vec<usize>,
    steps: u64,
    max_steps: u64,
}

impl Search<'_> {
    fn inner(&self, a: usize, b: usize) -> (i128, i128) {
        let ca = &self.cands[a];
        let cb = &self.cands[b];
        let mut x = 0i128;
        let mut y = 0i128;
        for (k, &c) in cb.coords.iter().enumerate() {
            if c != 0 {
                x += ca.ga[k] * c as i128;
                y += ca.gb[k] * c as i128;
            }
        }
        (x, y)
    }

    fn run(&mut self, level: usize) -> Result<bool> {
        let n = self.target.len();
        if level == n {
            return Ok(true);
        }
        let pool = self.pools[level].clone();
        for c in pool {
            self.steps += 1;
            if self.steps > self.max_steps {
                return Err(Error::Budget {
                    what: "isometry search step",
                    limit: self.max_steps,
                });
            }
            if (0..level).any(|j| self.inner(c, self.chosen[j]) != self.target[level][j]) {
                continue;
            }
            self.chosen.push(c);
            if self.run(level + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Integer matrix `U` with `U·G2·Uᵀ = G1`, if the lattices are isometric.
pub fn isometry(l1: &Lattice, l2: &Lattice, opts: IsometryOptions) -> Result<Option<IntMatrix>> {
    let n = l1.dim();
    if n != l2.dim() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(IntMatrix::identity(0)));
    }
    if l1.gram() == l2.gram() {
        return Ok(Some(IntMatrix::identity(n)));
    }
    if l1.determinant() != l2.determinant() {
        return Ok(None);
    }
    let (v, g1) = lll_exact(l1.gram())?;
    let form2 = ExactForm::new(l2.gram())?;
    let den = form2.den();
    let mut target = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(i + 1);
        for j in 0..=i {
            match numerators(&g1[(i, j)], den) {
                Some(p) => row.push(p),
                None => return Ok(None),
            }
        }
        target.push(row);
    }
    let bound = (0..n).map(|i| g1[(i, i)].clone()).max().expect("n > 0");
    let vecs = l2.short_vectors(&bound, opts.enumeration)?;
    let g2 = l2.gram();
    let cands: Vec<Candidate> = vecs
        .into_iter()
        .map(|s| {
            let mut ga = vec![0i128; n];
            let mut gb = vec![0i128; n];
            for k in 0..n {
                let mut x = QSqrt2::zero();
                for (j, &c) in s.coords.iter().enumerate() {
                    if c != 0 {
                        x += &(&g2[(k, j)] * &QSqrt2::from_int(c));
                    }
                }
                let (a, b) = numerators(&x, den).expect("Gram numerators are integral");
                ga[k] = a;
                gb[k] = b;
            }
            Candidate {
                coords: s.coords,
                ga,
                gb,
            }
        })
        .collect();
    let pools: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..cands.len())
                .filter(|&c| {
                    let cc = &cands[c];
                    let mut x = 0i128;
                    let mut y = 0i128;
                    for (k, &t) in cc.coords.iter().enumerate() {
                        x += cc.ga[k] * t as i128;
                        y += cc.gb[k] * t as i128;
                    }
                    (x, y) == target[i][i]
                })
                .collect()
        })
        .collect();
    if pools.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut search = Search {
        target: &target,
        pools,
        cands: &cands,
        chosen: Vec::with_capacity(n),
        steps: 0,
        max_steps: opts.max_steps,
    };
    if !search.run(0)? {
        return Ok(None);
    }
    let rows: Vec<Vec<i64>> = search
        .chosen
        .iter()
        .map(|&c| cands[c].coords.clone())
        .collect();
    let u_red = Matrix::from_rows(rows)?;
    let u = int_mul(&unimodular_inverse(&v)?, &u_red)?;
    verify(l1, l2, &u)?;
    Ok(Some(u))
}

/// Checks `U·G2·Uᵀ = G1` exactly.
pub fn verify(l1: &Lattice, l2: &Lattice, u: &IntMatrix) -> Result<()> {
    let uq = u.map(|&x| QSqrt2::from_int(x));
    if uq.congruence(l2.gram())? != *l1.gram() {
        return Err(Error::Construction(
            "isometry witness failed exact check".into(),
        ));
    }
    Ok(())
}

/// Isometry after rescaling `L2` so both minimal norms agree. Returns the
/// scale `c` and `U` with `U·(c·G2)·Uᵀ = G1`.
pub fn similarity(
    l1: &Lattice,
    l2: &Lattice,
    opts: IsometryOptions,
) -> Result<Option<(QSqrt2, IntMatrix)>> {
    if l1.dim() != l2.dim() {
        return Ok(None);
    }
    let c = &l1.min_norm(opts.enumeration)? / &l2.min_norm(opts.enumeration)?;
    let scaled = l2.scaled(&c)?;
    Ok(isometry(l1, &scaled, opts)?.map(|u| (c, u)))
}

/// Witness that `L` is `N`-modular: `U` with `U·(N·G⁻¹)·Uᵀ = G`.
pub fn n_modular_witness(
    l: &Lattice,
    big_n: u64,
    opts: IsometryOptions,
) -> Result<Option<IntMatrix>> {
    if big_n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    let rescaled_dual = l.dual()?.scaled(&QSqrt2::from_int(big_n as i64))?;
    isometry(l, &rescaled_dual, opts)
}

/// Witness that `L` is similar to its dual, found by matching minimal norms.
pub fn isodual_witness(l: &Lattice, opts: IsometryOptions) -> Result<Option<(QSqrt2, IntMatrix)>> {
    similarity(l, &l.dual()?, opts)
}
