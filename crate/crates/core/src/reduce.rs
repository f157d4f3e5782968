//! Floating point Gram–Schmidt data and LLL reduction on Gram matrices.
//!
//! The float routines are generic over `num_traits::Float`. Reduction only
//! ever applies integer row operations, so the transform it returns is
//! unimodular whatever rounding happened along the way; exact Grams are
//! recomputed from that transform by the caller.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::intmat::{int_mul, int_to_rational, IntMatrix};
use crate::matrix::Matrix;
use crate::scalar::{FieldElement, QSqrt2};

/// Upper-triangular decomposition `Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
///
/// Diagonal entries hold `q_ii`, off-diagonal entries (`j > i`) hold `q_ij`.
pub fn quadratic_decomposition<F: Float>(gram: &Matrix<F>) -> Result<Matrix<F>> {
    let n = gram.nrows();
    let mut q = Matrix::from_fn(n, n, |_, _| F::zero());
    for i in 0..n {
        let mut d = gram[(i, i)];
        for k in 0..i {
            d = d - q[(k, k)] * q[(k, i)] * q[(k, i)];
        }
        if !(d > F::zero()) {
            return Err(Error::Precondition(
                "Gram matrix is not positive definite".into(),
            ));
        }
        q[(i, i)] = d;
        for j in i + 1..n {
            let mut s = gram[(i, j)];
            for k in 0..i {
                s = s - q[(k, k)] * q[(k, i)] * q[(k, j)];
            }
            q[(i, j)] = s / d;
        }
    }
    Ok(q)
}

/// Gram–Schmidt coefficients `mu` and squared lengths `bstar` from a Gram.
fn gso<F: Float>(g: &Matrix<F>) -> (Matrix<F>, Vec<F>) {
    let n = g.nrows();
    let mut mu = Matrix::from_fn(n, n, |_, _| F::zero());
    let mut b = vec![F::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[(i, j)];
            for k in 0..j {
                s = s - mu[(j, k)] * mu[(i, k)] * b[k];
            }
            mu[(i, j)] = s / b[j];
        }
        let mut s = g[(i, i)];
        for k in 0..i {
            s = s - mu[(i, k)] * mu[(i, k)] * b[k];
        }
        b[i] = s;
    }
    (mu, b)
}

/// LLL on a float Gram matrix. Returns the unimodular transform `U` such that
/// `U·G·Uᵀ` is (approximately) reduced.
pub fn lll_float<F: Float>(gram: &Matrix<F>, delta: F) -> Result<IntMatrix> {
    let n = gram.nrows();
    let mut g = gram.clone();
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return Ok(u);
    }
    let half = F::from(0.5).unwrap();
    let (mut mu, mut b) = gso(&g);
    let mut k = 1;
    let mut steps: u64 = 0;
    while k < n {
        steps += 1;
        if steps > 1_000_000 {
            break;
        }
        // size-reduce b_k against b_{k-1}, ..., b_0
        let mut changed = false;
        for j in (0..k).rev() {
            let m = mu[(k, j)];
            if m.abs() > half {
                let r = m.round();
                let ri = r.to_i64().ok_or(Error::Overflow("LLL size reduction"))?;
                row_sub(&mut g, &mut u, k, j, r, ri)?;
                changed = true;
                // refresh row k of mu
                for l in 0..=j {
                    let mjl = if l == j { F::one() } else { mu[(j, l)] };
                    mu[(k, l)] = mu[(k, l)] - r * mjl;
                }
            }
        }
        if changed {
            let (m2, b2) = gso(&g);
            mu = m2;
            b = b2;
        }
        if b[k] < (delta - mu[(k, k - 1)] * mu[(k, k - 1)]) * b[k - 1] {
            swap(&mut g, &mut u, k, k - 1);
            let (m2, b2) = gso(&g);
            mu = m2;
            b = b2;
            k = if k > 1 { k - 1 } else { 1 };
        } else {
            k += 1;
        }
    }
    Ok(u)
}

fn row_sub<F: Float>(
    g: &mut Matrix<F>,
    u: &mut IntMatrix,
    k: usize,
    j: usize,
    r: F,
    ri: i64,
) -> Result<()> {
    let n = g.nrows();
    // b_k ← b_k − r b_j
    let gkj = g[(k, j)];
    let gjj = g[(j, j)];
    let gkk = g[(k, k)];
    for i in 0..n {
        if i == k {
            continue;
        }
        let v = g[(k, i)] - r * g[(j, i)];
        g[(k, i)] = v;
        g[(i, k)] = v;
    }
    g[(k, k)] = gkk - F::from(2.0).unwrap() * r * gkj + r * r * gjj;
    for c in 0..n {
        let t = ri
            .checked_mul(u[(j, c)])
            .and_then(|t| u[(k, c)].checked_sub(t))
            .ok_or(Error::Overflow("LLL transform"))?;
        u[(k, c)] = t;
    }
    Ok(())
}

fn swap<F: Float>(g: &mut Matrix<F>, u: &mut IntMatrix, a: usize, b: usize) {
    g.swap_rows(a, b);
    let n = g.nrows();
    for i in 0..n {
        let t = g[(i, a)];
        g[(i, a)] = g[(i, b)];
        g[(i, b)] = t;
    }
    u.swap_rows(a, b);
}

/// LLL-reduces an exact Gram. Returns `(U, U·G·Uᵀ)`.
///
/// The float pass is repeated on the exact reduced Gram until it stops
/// changing, which absorbs rounding drift for badly scaled inputs.
pub fn lll_exact(gram: &Matrix<QSqrt2>) -> Result<(IntMatrix, Matrix<QSqrt2>)> {
    let n = gram.nrows();
    let mut total = IntMatrix::identity(n);
    let mut g = gram.clone();
    for _ in 0..32 {
        let gf = g.map(FieldElement::to_f64);
        let u = lll_float(&gf, 0.99)?;
        if u == IntMatrix::identity(n) {
            break;
        }
        let uq = int_to_rational(&u).map(|x| QSqrt2::from_rational(x.clone()));
        g = uq.congruence(&g)?;
        total = int_mul(&u, &total)?;
    }
    Ok((total, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_reproduces_form() {
        let g = Matrix::from_rows(vec![
            vec![2.0f64, 1.0, 0.0],
            vec![1.0, 2.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ])
        .unwrap();
        let q = quadratic_decomposition(&g).unwrap();
        let x = [1.0, -2.0, 3.0];
        let mut direct = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                direct += g[(i, j)] * x[i] * x[j];
            }
        }
        let mut via = 0.0;
        for i in 0..3 {
            let mut t = x[i];
            for j in i + 1..3 {
                t += q[(i, j)] * x[j];
            }
            via += q[(i, i)] * t * t;
        }
        assert!((direct - via).abs() < 1e-12);
        let not_pd = Matrix::from_rows(vec![vec![1.0f64, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(quadratic_decomposition(&not_pd).is_err());
    }

    #[test]
    fn lll_shortens_skewed_basis() {
        // basis (1,0), (1000,1) of Z^2
        let g = Matrix::from_rows(vec![
            vec![QSqrt2::from_int(1), QSqrt2::from_int(1000)],
            vec![QSqrt2::from_int(1000), QSqrt2::from_int(1_000_001)],
        ])
        .unwrap();
        let (u, red) = lll_exact(&g).unwrap();
        assert_eq!(red, Matrix::identity(2));
        let det = int_to_rational(&u).det().unwrap();
        assert_eq!(num_traits::Signed::abs(&det), crate::scalar::rat_int(1));
    }

    #[test]
    fn lll_generic_f32() {
        let g = Matrix::from_rows(vec![vec![1.0f32, 7.0], vec![7.0, 50.0]]).unwrap();
        let u = lll_float(&g, 0.75f32).unwrap();
        let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
        assert_eq!(det.abs(), 1);
    }
}
