//! Norm counts of a rational lattice through an orthogonal split.
//!
//! With `A` spanned by the first half of a reduced basis and `B = L ∩ A^⊥`,
//! `A ⊕ B` has finite index in `L` and every vector of `L` lies in exactly
//! one translate `(A + a) ⊕ (B + b)` indexed by the glue group
//! `L / (A ⊕ B)`. Counting each half separately replaces one deep search
//! by many shallow ones.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::enumerate::{EnumOptions, Enumerator};
use crate::error::{Error, Result};
use crate::intmat::{hnf_basis, integer_kernel};
use crate::matrix::Matrix;
use crate::reduce::lll_exact;
use crate::scalar::{QSqrt2, Rational};

/// Smallest dimension for which the split is attempted.
pub const SPLIT_MIN_DIM: usize = 16;
/// Largest glue group accepted before falling back to a direct search.
pub const MAX_GLUE: usize = 1 << 16;

/// Glue classes: residue of the `A`-projection (numerators over `den`) and a
/// lattice vector realising it, as coefficients on the second half.
struct Glue {
    den: BigInt,
    classes: Vec<(Vec<i64>, Vec<i64>)>,
}

fn glue_group(gens: &[Vec<Rational>], limit: usize) -> Option<Glue> {
    let den = gens
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let d = den.to_i64()?;
    let steps: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|q| {
                    (q * Rational::from_integer(den.clone()))
                        .to_integer()
                        .to_i64()
                        .map(|v| v.rem_euclid(d))
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let k = gens.first().map_or(0, Vec::len);
    let start = vec![0i64; k];
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    seen.insert(start.clone(), vec![0; gens.len()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(e) = queue.pop_front() {
        let m = seen[&e].clone();
        for (j, s) in steps.iter().enumerate() {
            let next: Vec<i64> = e
                .iter()
                .zip(s)
                .map(|(a, b)| (a + b).rem_euclid(d))
                .collect();
            if seen.contains_key(&next) {
                continue;
            }
            if seen.len() >= limit {
                return None;
            }
            let mut mj = m.clone();
            mj[j] += 1;
            seen.insert(next.clone(), mj);
            order.push(next.clone());
            queue.push_back(next);
        }
    }
    let classes = order
        .into_iter()
        .map(|e| {
            let m = seen.remove(&e).expect("visited");
            (e, m)
        })
        .collect();
    Some(Glue { den, classes })
}

fn rational_gram(gram: &Matrix<QSqrt2>) -> Option<Matrix<Rational>> {
    let n = gram.nrows();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = gram[(i, j)].as_rational()?.clone();
        }
    }
    Some(out)
}

/// Basis (rows) of `{x ∈ Z^n : M x = 0}` for an integer matrix `M`.
fn kernel_rows(m: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    for row in m {
        let image: Vec<BigInt> = basis
            .iter()
            .map(|b| b.iter().zip(row).map(|(x, y)| x * y).sum())
            .collect();
        let combos = integer_kernel(&image);
        basis = combos
            .iter()
            .map(|c| {
                (0..n)
                    .map(|j| c.iter().zip(&basis).map(|(ci, b)| ci * &b[j]).sum())
                    .collect()
            })
            .collect();
    }
    basis
}

fn add_counts(
    acc: &mut BTreeMap<Rational, u64>,
    a: &BTreeMap<QSqrt2, u64>,
    b: &BTreeMap<QSqrt2, u64>,
    bound: &Rational,
) {
    for (na, ca) in a {
        let na = na.as_rational().expect("rational Gram");
        for (nb, cb) in b {
            let s = na + nb.as_rational().expect("rational Gram");
            if &s > bound {
                break;
            }
            *acc.entry(s).or_insert(0) += ca * cb;
        }
    }
}

/// Histogram of norms `≤ bound` over the whole lattice (zero included), or
/// `None` when the Gram is irrational, too small, or the glue group exceeds
/// [`MAX_GLUE`].
pub fn split_norm_counts(
    gram: &Matrix<QSqrt2>,
    bound: &Rational,
    min_dim: usize,
    opts: EnumOptions,
) -> Result<Option<BTreeMap<Rational, u64>>> {
    let n = gram.nrows();
    if n < min_dim.max(2) || rational_gram(gram).is_none() {
        return Ok(None);
    }
    let (_, reduced) = lll_exact(gram)?;
    let g = rational_gram(&reduced).expect("reduction keeps rational entries");
    let k = n / 2;
    let first: Vec<usize> = (0..k).collect();
    let g_a = g.submatrix(&first);
    let g_a_inv = g_a.inverse()?;
    // A-coordinates of the projection of each later basis vector
    let proj: Vec<Vec<Rational>> = (k..n)
        .map(|j| {
            (0..k)
                .map(|r| (0..k).map(|s| &g_a_inv[(r, s)] * &g[(s, j)]).sum())
                .collect()
        })
        .collect();
    let Some(glue) = glue_group(&proj, MAX_GLUE) else {
        return Ok(None);
    };

    // B = integer vectors orthogonal to the first k basis vectors
    let den = g
        .rows()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let eqs: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            (0..n)
                .map(|j| (&g[(i, j)] * Rational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let kern = hnf_basis(&kernel_rows(&eqs, n));
    if kern.len() != n - k {
        return Err(Error::Precondition(
            "orthogonal complement has the wrong rank".into(),
        ));
    }
    let kq = Matrix::from_rows(
        kern.iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect(),
    )?;
    let g_b = kq.congruence(&g)?;
    let kkt_inv = kq.mul(&kq.transpose())?.inverse()?;

    let to_q = |m: &Matrix<Rational>| m.map(|x| QSqrt2::from_rational(x.clone()));
    let enum_a = Enumerator::new(&to_q(&g_a))?;
    let enum_b = Enumerator::new(&to_q(&g_b))?;
    let bq = QSqrt2::from_rational(bound.clone());
    let mut used = 0u64;
    let mut acc = BTreeMap::new();
    for (residue, coeffs) in &glue.classes {
        let remaining = opts.max_nodes.saturating_sub(used);
        let sub = EnumOptions {
            max_nodes: remaining,
        };
        let shift_a: Vec<Rational> = residue
            .iter()
            .map(|&r| Rational::new(r.into(), glue.den.clone()))
            .collect();
        // lattice vector Σ m_j b_{k+j} minus its projection onto A
        let mut w: Vec<Rational> = vec![Rational::zero(); n];
        for (j, &m) in coeffs.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let mq = Rational::from_integer(m.into());
            w[k + j] += &mq;
            for r in 0..k {
                w[r] -= &mq * &proj[j][r];
            }
        }
        let wk: Vec<Rational> = (0..n - k)
            .map(|r| (0..n).map(|c| &w[c] * &kq[(r, c)]).sum())
            .collect();
        let shift_b: Vec<Rational> = (0..n - k)
            .map(|c| {
                let t: Rational = (0..n - k).map(|r| &wk[r] * &kkt_inv[(r, c)]).sum();
                &t - t.floor()
            })
            .collect();
        let (ca, na) = enum_a.norm_counts_with_nodes(&bq, Some(&shift_a), sub)?;
        used += na;
        let sub = EnumOptions {
            max_nodes: opts.max_nodes.saturating_sub(used),
        };
        let (cb, nb) = enum_b.norm_counts_with_nodes(&bq, Some(&shift_b), sub)?;
        used += nb;
        if used > opts.max_nodes {
            return Err(Error::Budget {
                what: "enumeration node",
                limit: opts.max_nodes,
            });
        }
        add_counts(&mut acc, &ca, &cb, bound);
    }
    Ok(Some(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::rat_int;

    fn direct(name: &str, bound: i64) -> BTreeMap<Rational, u64> {
        let l = catalog::get(name).unwrap();
        l.enumerator()
            .unwrap()
            .norm_counts(&QSqrt2::from_int(bound), None, EnumOptions::default())
            .unwrap()
            .into_iter()
            .map(|(k, v)| (k.as_rational().unwrap().clone(), v))
            .collect()
    }

    #[test]
    fn split_matches_direct_search() {
        for (name, bound) in [
            ("E8", 6),
            ("D4", 8),
            ("A3", 9),
            ("K12", 6),
            ("bcc", 12),
            ("Z5", 4),
            ("E7", 5),
        ] {
            let l = catalog::get(name).unwrap();
            let split = split_norm_counts(l.gram(), &rat_int(bound), 2, EnumOptions::default())
                .unwrap()
                .unwrap();
            assert_eq!(split, direct(name, bound), "{name}");
        }
    }

    #[test]
    fn split_declines_small_or_irrational() {
        let mcc = catalog::get("mcc").unwrap();
        assert!(
            split_norm_counts(mcc.gram(), &rat_int(3), 2, EnumOptions::default())
                .unwrap()
                .is_none()
        );
        let e8 = catalog::get("E8").unwrap();
        assert!(split_norm_counts(
            e8.gram(),
            &rat_int(3),
            SPLIT_MIN_DIM,
            EnumOptions::default()
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn split_respects_the_budget() {
        let e8 = catalog::get("E8").unwrap();
        let err = split_norm_counts(e8.gram(), &rat_int(8), 2, EnumOptions { max_nodes: 50 })
            .unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn glue_of_integers_is_trivial() {
        let g = glue_group(&[vec![rat_int(0)], vec![rat_int(3)]], 10).unwrap();
        assert_eq!(g.classes.len(), 1);
        let h = glue_group(&[vec![Rational::new(1.into(), 3.into())]], 10).unwrap();
        assert_eq!(h.classes.len(), 3);
        assert!(glue_group(&[vec![Rational::new(1.into(), 30.into())]], 10).is_none());
    }
}
