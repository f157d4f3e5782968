//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use spherepack::codes::BinaryCode;
use spherepack::{FieldElement, Matrix, QSqrt2};

pub fn norm(g: &Matrix<QSqrt2>, v: &[i64]) -> QSqrt2 {
    let mut acc = QSqrt2::zero();
    for i in 0..v.len() {
        for j in 0..v.len() {
            if v[i] != 0 && v[j] != 0 {
                acc += &(&g[(i, j)] * &QSqrt2::from_int(v[i] * v[j]));
            }
        }
    }
    acc
}

/// All nonzero `v` with `|v_i| ≤ r` and `vᵀGv ≤ bound`, sorted. The box
/// radius comes from `|v_i|² ≤ bound·(G⁻¹)_ii`.
pub fn cube_scan(g: &Matrix<QSqrt2>, bound: &QSqrt2) -> Vec<Vec<i64>> {
    let n = g.nrows();
    let inv = g.inverse().unwrap();
    let max_diag = (0..n).map(|i| inv[(i, i)].to_f64()).fold(0.0, f64::max);
    let r = (bound.to_f64() * max_diag).sqrt().ceil() as i64 + 1;
    let side = (2 * r + 1) as usize;
    let mut out = Vec::new();
    for idx in 0..side.pow(n as u32) {
        let mut k = idx;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (k % side) as i64 - r;
                k /= side;
                d
            })
            .collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        if norm(g, &v) <= *bound {
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Minimum Hamming distance by pairwise sweep.
pub fn pairwise_distance(c: &BinaryCode) -> u32 {
    let w = c.words();
    let mut best = u32::MAX;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            best = best.min((w[i] ^ w[j]).count_ones());
        }
    }
    best
}
