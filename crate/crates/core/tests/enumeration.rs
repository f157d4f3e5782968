mod common;

use common::cube_scan;
use num_traits::One;
use proptest::prelude::*;
use spherepack::catalog;
use spherepack::intmat::IntMatrix;
use spherepack::isometry::{isometry, verify, IsometryOptions};
use spherepack::{EnumOptions, Lattice, QSqrt2};

/// Catalog lattices of dimension at most 4.
const LOW_DIM: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "A1", "A2", "A3", "A4", "D3", "D4", "fcc", "bcc", "mcc", "Lambda1",
    "Lambda2", "Lambda3", "Lambda4", "D2", "D4+",
];

#[test]
fn enumeration_matches_cube_scan_at_six() {
    let six = QSqrt2::from_int(6);
    for name in LOW_DIM {
        let l = catalog::get(name).unwrap();
        let got: Vec<Vec<i64>> = l
            .short_vectors(&six, EnumOptions::default())
            .unwrap()
            .into_iter()
            .map(|s| s.coords)
            .collect();
        let want = cube_scan(l.gram(), &six);
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn named_minimal_vector_counts() {
    let opts = EnumOptions::default();
    let z2 = catalog::get("Z2").unwrap();
    assert_eq!(
        z2.short_vectors(&QSqrt2::from_int(1), opts).unwrap().len(),
        4
    );
    let e8 = catalog::get("E8").unwrap();
    assert_eq!(
        e8.short_vectors(&QSqrt2::from_int(2), opts).unwrap().len(),
        240
    );
    let d4 = catalog::get("D4").unwrap();
    assert_eq!(cube_scan(d4.gram(), &QSqrt2::from_int(2)).len(), 24);
}

#[test]
fn node_budget_is_an_error() {
    let e8 = catalog::get("E8").unwrap();
    let tiny = EnumOptions { max_nodes: 10 };
    let err = e8.short_vectors(&QSqrt2::from_int(4), tiny).unwrap_err();
    assert!(err.is_budget());
}

fn elementary(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for k in 0..n {
            let add = c * u[(j, k)];
            u[(i, k)] += add;
        }
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cube_scan_agrees_at_random_bounds(idx in 0..LOW_DIM.len(), quarters in 1i64..=24) {
        let l = catalog::get(LOW_DIM[idx]).unwrap();
        let bound = QSqrt2::frac(quarters, 4);
        let got: Vec<Vec<i64>> = l
            .short_vectors(&bound, EnumOptions::default())
            .unwrap()
            .into_iter()
            .map(|s| s.coords)
            .collect();
        prop_assert_eq!(got, cube_scan(l.gram(), &bound));
    }

    #[test]
    fn invariants_survive_basis_change(
        idx in 0..LOW_DIM.len(),
        ops in proptest::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..6),
    ) {
        let l = catalog::get(LOW_DIM[idx]).unwrap();
        let u = elementary(l.dim(), &ops);
        let m = l.transformed(&u).unwrap();
        let opts = EnumOptions::default();
        prop_assert_eq!(m.determinant(), l.determinant());
        prop_assert_eq!(m.min_norm(opts).unwrap(), l.min_norm(opts).unwrap());
        let min = m.minimum(opts).unwrap();
        prop_assert_eq!(min.vectors.len() as u64, l.kissing_number(opts).unwrap());
        // closed under negation
        for v in &min.vectors {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            prop_assert!(min.vectors.contains(&neg));
        }
        let w = isometry(&m, &l, IsometryOptions::default()).unwrap().unwrap();
        prop_assert!(verify(&m, &l, &w).is_ok());
        prop_assert!((&l.dual().unwrap().determinant() * &l.determinant()).is_one());
    }
}

#[test]
fn isometry_on_catalog_pairs() {
    let opts = IsometryOptions::default();
    let a3 = catalog::get("A3").unwrap();
    let d3 = catalog::get("D3").unwrap();
    let u = isometry(&a3, &d3, opts).unwrap().unwrap();
    verify(&a3, &d3, &u).unwrap();
    let z2 = catalog::get("Z2").unwrap();
    let a2 = catalog::get("A2").unwrap();
    assert!(isometry(&z2, &a2, opts).unwrap().is_none());
    let same = isometry(&a3, &a3, opts).unwrap().unwrap();
    assert_eq!(same, IntMatrix::identity(3));
    let e7 = catalog::get("E7").unwrap();
    let d4z3 = Lattice::from_int_gram(&[
        &[2, 0, 1, 1, 0, 0, 0],
        &[0, 2, 1, 1, 0, 0, 0],
        &[1, 1, 2, 1, 0, 0, 0],
        &[1, 1, 1, 2, 0, 0, 0],
        &[0, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 0, 1],
    ])
    .unwrap();
    // different determinants fail fast; equal ones search
    assert!(isometry(&e7, &d4z3, opts).unwrap().is_none());
}
