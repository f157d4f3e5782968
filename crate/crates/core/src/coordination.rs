//! Coordination sequences: shell sizes of breadth-first search on the graph
//! whose edges join lattice points differing by a minimal vector.

use std::collections::HashSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::enumerate::EnumOptions;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

#[derive(Clone, Copy, Debug)]
pub struct CoordOptions {
    pub enumeration: EnumOptions,
    /// Approximate bytes allowed for the two live BFS shells.
    pub max_bytes: u64,
}

impl Default for CoordOptions {
    fn default() -> Self {
        CoordOptions {
            enumeration: EnumOptions::default(),
            max_bytes: DEFAULT_MEMORY_BUDGET,
        }
    }
}

type Point = Box<[i32]>;

fn point_bytes(n: usize) -> u64 {
    // key storage plus hash table slot overhead
    (n * 4 + 16 + 16) as u64
}

/// `S(0), …, S(k_max)` for the minimal-vector graph of `lattice`.
pub fn coordination_sequence(
    lattice: &Lattice,
    k_max: usize,
    opts: CoordOptions,
) -> Result<Vec<u64>> {
    let n = lattice.dim();
    let min = lattice.minimum(opts.enumeration)?;
    let steps: Vec<Vec<i32>> = min
        .vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|&x| i32::try_from(x).map_err(|_| Error::Overflow("coordination step")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let per = point_bytes(n);
    let mut out = vec![1u64];
    let mut prev: HashSet<Point> = HashSet::new();
    let mut cur: HashSet<Point> = HashSet::from([vec![0i32; n].into_boxed_slice()]);
    for _ in 0..k_max {
        let shell: Vec<&Point> = cur.iter().collect();
        let next: HashSet<Point> = shell
            .par_chunks(1024)
            .map(|chunk| -> Result<HashSet<Point>> {
                let mut local = HashSet::new();
                for p in chunk {
                    for s in &steps {
                        let q: Point = p
                            .iter()
                            .zip(s)
                            .map(|(a, b)| {
                                a.checked_add(*b)
                                    .ok_or(Error::Overflow("coordination point"))
                            })
                            .collect::<Result<_>>()?;
                        if !cur.contains(&q) && !prev.contains(&q) {
                            local.insert(q);
                        }
                    }
                }
                Ok(local)
            })
            .try_reduce(HashSet::new, |mut a, b| {
                if a.len() < b.len() {
                    return Ok(b.into_iter().chain(a).collect());
                }
                a.extend(b);
                Ok(a)
            })?;
        let live = (cur.len() + next.len()) as u64 * per;
        if live > opts.max_bytes {
            return Err(Error::Budget {
                what: "coordination memory (bytes)",
                limit: opts.max_bytes,
            });
        }
        out.push(next.len() as u64);
        prev = cur;
        cur = next;
    }
    Ok(out)
}

/// Coefficients of `(Σ_k S(k) x^k)·(1 − x)^n`, truncated to the length of `seq`.
pub fn generating_numerator(seq: &[u64], n: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = seq.iter().map(|&s| BigInt::from(s)).collect();
    for _ in 0..n {
        for k in (1..c.len()).rev() {
            let prev = c[k - 1].clone();
            c[k] -= prev;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_line_and_plane() {
        let z = Lattice::from_int_gram(&[&[1]]).unwrap();
        assert_eq!(
            coordination_sequence(&z, 4, CoordOptions::default()).unwrap(),
            vec![1, 2, 2, 2, 2]
        );
        let z2 = Lattice::from_int_gram(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(
            coordination_sequence(&z2, 3, CoordOptions::default()).unwrap(),
            vec![1, 4, 8, 12]
        );
        let a2 = Lattice::from_int_gram(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(
            coordination_sequence(&a2, 3, CoordOptions::default()).unwrap(),
            vec![1, 6, 12, 18]
        );
    }

    #[test]
    fn numerator_of_square_grid() {
        // Z^2: (1 + x)² / (1 − x)²
        let num = generating_numerator(&[1, 4, 8, 12, 16], 2);
        let want: Vec<BigInt> = [1, 2, 1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(num, want);
    }

    #[test]
    fn memory_budget() {
        let z2 = Lattice::from_int_gram(&[&[1, 0], &[0, 1]]).unwrap();
        let opts = CoordOptions {
            max_bytes: 100,
            ..CoordOptions::default()
        };
        assert!(coordination_sequence(&z2, 5, opts).unwrap_err().is_budget());
    }
}
