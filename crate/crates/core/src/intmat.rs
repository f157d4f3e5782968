//! Integer row operations: Hermite normal form of generating sets, kernels of
//! integer functionals, unimodular completion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;

pub type IntMatrix = Matrix<i64>;

/// Extended gcd: returns (g, x, y) with g = x·a + y·b, g ≥ 0.
pub fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row-style Hermite normal form of the lattice generated by `gens`.
///
/// Returns a basis in echelon form with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`. Zero generators are ignored.
pub fn hnf_basis(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = gens.first().map_or(0, Vec::len);
    // rows[c] holds the basis row whose pivot column is c
    let mut rows: Vec<Option<Vec<BigInt>>> = vec![None; m];
    for g in gens {
        let mut v = g.clone();
        for c in 0..m {
            if v[c].is_zero() {
                continue;
            }
            match &mut rows[c] {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    rows[c] = Some(v);
                    break;
                }
                Some(p) => {
                    let (g, x, y) = xgcd(&p[c], &v[c]);
                    let a = &p[c] / &g;
                    let b = &v[c] / &g;
                    // [p; v] ← [[x, y], [−b, a]]·[p; v], determinant 1
                    let new_p: Vec<BigInt> = (0..m).map(|k| &x * &p[k] + &y * &v[k]).collect();
                    let new_v: Vec<BigInt> = (0..m).map(|k| &a * &v[k] - &b * &p[k]).collect();
                    *p = new_p;
                    v = new_v;
                    debug_assert!(v[c].is_zero());
                }
            }
        }
    }
    let mut basis: Vec<(usize, Vec<BigInt>)> = rows
        .into_iter()
        .enumerate()
        .filter_map(|(c, r)| r.map(|r| (c, r)))
        .collect();
    // reducing row k by row i only touches columns from c_i on, so go top-down
    for i in 0..basis.len() {
        let (c, piv_row) = basis[i].clone();
        let piv = piv_row[c].clone();
        for row in basis.iter_mut().take(i) {
            let q = row.1[c].div_floor(&piv);
            if !q.is_zero() {
                for k in 0..m {
                    row.1[k] -= &q * &piv_row[k];
                }
            }
        }
    }
    basis.into_iter().map(|(_, r)| r).collect()
}

/// Basis of the lattice generated by rational vectors.
pub fn rational_lattice_basis(gens: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let den = gens
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|v| v.iter().map(|q| (q * &den).to_integer()).collect())
        .collect();
    hnf_basis(&ints)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| Rational::new(x, den.clone()))
                .collect()
        })
        .collect()
}

/// Unimodular column transform `V` with `a·V = (g, 0, …, 0)`, returned with
/// its inverse. `g = gcd(a) ≥ 0`.
pub fn column_reduce(a: &[BigInt]) -> (Matrix<BigInt>, Matrix<BigInt>, BigInt) {
    let n = a.len();
    let mut v = Matrix::<BigInt>::identity(n);
    let mut vinv = Matrix::<BigInt>::identity(n);
    let mut cur: Vec<BigInt> = a.to_vec();
    for j in 1..n {
        if cur[j].is_zero() {
            continue;
        }
        let (g, x, y) = xgcd(&cur[0], &cur[j]);
        let p = &cur[0] / &g;
        let q = &cur[j] / &g;
        // columns (0, j) ← (x·c0 + y·cj, −q·c0 + p·cj); inverse is [[p, q], [−y, x]] on rows
        for r in 0..n {
            let c0 = v[(r, 0)].clone();
            let cj = v[(r, j)].clone();
            v[(r, 0)] = &x * &c0 + &y * &cj;
            v[(r, j)] = &p * &cj - &q * &c0;
        }
        for k in 0..n {
            let r0 = vinv[(0, k)].clone();
            let rj = vinv[(j, k)].clone();
            vinv[(0, k)] = &p * &r0 + &q * &rj;
            vinv[(j, k)] = &x * &rj - &y * &r0;
        }
        cur[0] = g;
        cur[j] = BigInt::zero();
    }
    if cur.first().is_some_and(|c| c.is_negative()) {
        for r in 0..n {
            v[(r, 0)] = -v[(r, 0)].clone();
        }
        for k in 0..n {
            vinv[(0, k)] = -vinv[(0, k)].clone();
        }
        cur[0] = -cur[0].clone();
    }
    let g = cur.first().cloned().unwrap_or_default();
    (v, vinv, g)
}

/// Basis (rows) of `{y ∈ Z^n : a·y = 0}`.
pub fn integer_kernel(a: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (v, _, g) = column_reduce(a);
    let n = a.len();
    let start = if g.is_zero() { 0 } else { 1 };
    (start..n)
        .map(|j| (0..n).map(|r| v[(r, j)].clone()).collect())
        .collect()
}

/// Unimodular matrix whose first row is the primitive vector `c`.
pub fn complete_to_unimodular(c: &[BigInt]) -> Result<Matrix<BigInt>> {
    let (_, vinv, g) = column_reduce(c);
    if !g.is_one() {
        return Err(Error::Precondition(format!(
            "vector is not primitive (content {g})"
        )));
    }
    Ok(vinv)
}

pub fn to_i64_matrix(m: &Matrix<BigInt>) -> Result<IntMatrix> {
    let rows = m
        .rows()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow("integer matrix")))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn int_to_rational(m: &IntMatrix) -> Matrix<Rational> {
    m.map(|&x| Rational::from_integer(x.into()))
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let inv = int_to_rational(m).inverse()?;
    let rows = inv
        .rows()
        .map(|r| {
            r.iter()
                .map(|q| {
                    if !q.is_integer() {
                        return Err(Error::Precondition("matrix is not unimodular".into()));
                    }
                    q.to_integer()
                        .to_i64()
                        .ok_or(Error::Overflow("unimodular inverse"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// Product of integer matrices with overflow checks.
pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::Dimension {
            expected: a.ncols(),
            got: b.nrows(),
        });
    }
    let mut out = IntMatrix::zeros(a.nrows(), b.ncols());
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            let mut acc: i64 = 0;
            for k in 0..a.ncols() {
                let t = a[(i, k)]
                    .checked_mul(b[(k, j)])
                    .ok_or(Error::Overflow("integer matrix product"))?;
                acc = acc
                    .checked_add(t)
                    .ok_or(Error::Overflow("integer matrix product"))?;
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn det_of(rows: &[Vec<BigInt>]) -> Rational {
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| Rational::from_integer(x.clone()))
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        m.det().unwrap()
    }

    #[test]
    fn hnf_of_checkerboard() {
        // D3 generated by e_i ± e_j
        let gens = vec![
            bi(&[1, 1, 0]),
            bi(&[1, -1, 0]),
            bi(&[0, 1, 1]),
            bi(&[0, 1, -1]),
            bi(&[1, 0, 1]),
        ];
        let b = hnf_basis(&gens);
        assert_eq!(b.len(), 3);
        assert_eq!(det_of(&b).abs(), Rational::from_integer(2.into()));
    }

    #[test]
    fn kernel_and_completion() {
        let a = bi(&[6, 10, 15]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for row in &k {
            let s: BigInt = row.iter().zip(&a).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        let u = complete_to_unimodular(&bi(&[3, 5, 7])).unwrap();
        assert_eq!(u.row(0), &bi(&[3, 5, 7])[..]);
        let d = det_of(&u.to_rows());
        assert_eq!(d.abs(), Rational::one());
        assert!(complete_to_unimodular(&bi(&[2, 4])).is_err());
    }

    proptest! {
        #[test]
        fn column_reduce_is_consistent(a in proptest::collection::vec(-30i64..30, 1..6)) {
            let a = bi(&a);
            let (v, vinv, g) = column_reduce(&a);
            let n = a.len();
            let prod = v.mul(&vinv).unwrap();
            prop_assert_eq!(prod, Matrix::<BigInt>::identity(n));
            let av: Vec<BigInt> = (0..n).map(|j| (0..n).map(|i| &a[i] * &v[(i, j)]).sum()).collect();
            prop_assert_eq!(&av[0], &g);
            prop_assert!(av[1..].iter().all(Zero::is_zero));
        }

        #[test]
        fn hnf_preserves_lattice(rows in proptest::collection::vec(proptest::collection::vec(-5i64..5, 3), 3..6)) {
            let gens: Vec<Vec<BigInt>> = rows.iter().map(|r| bi(r)).collect();
            let b = hnf_basis(&gens);
            // every generator is an integer combination of the basis: re-running HNF
            // on basis ∪ generators yields the same basis
            let mut all = b.clone();
            all.extend(gens.iter().cloned());
            prop_assert_eq!(hnf_basis(&all), b);
        }
    }
}
