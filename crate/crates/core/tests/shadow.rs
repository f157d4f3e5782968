use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spherepack::catalog;
use spherepack::isometry::IsometryOptions;
use spherepack::scalar::{rat, rat_int};
use spherepack::shadow::*;
use spherepack::{EnumOptions, Lattice, Matrix, QSeries, QSqrt2, Rational};

fn opts() -> EnumOptions {
    EnumOptions::default()
}

/// Orthogonal sum of two lattices.
fn direct_sum(a: &Lattice, b: &Lattice) -> Lattice {
    let (m, n) = (a.dim(), b.dim());
    let g = Matrix::from_fn(m + n, m + n, |i, j| match (i < m, j < m) {
        (true, true) => a.gram()[(i, j)].clone(),
        (false, false) => b.gram()[(i - m, j - m)].clone(),
        _ => QSqrt2::from_int(0),
    });
    Lattice::from_gram(g).unwrap()
}

fn odd_unimodular() -> Vec<(String, Lattice)> {
    let mut v: Vec<(String, Lattice)> = (1..=9)
        .map(|n| (format!("Z{n}"), catalog::get(&format!("Z{n}")).unwrap()))
        .collect();
    let z1 = catalog::get("Z1").unwrap();
    let e8 = catalog::get("E8").unwrap();
    v.push(("Z+E8".into(), direct_sum(&z1, &e8)));
    v.push(("D12+".into(), catalog::get("D12+").unwrap()));
    v
}

#[test]
fn ring_shadow_matches_coset_enumeration() {
    let cut = rat_int(6);
    for (name, l) in odd_unimodular() {
        assert!(l.is_unimodular() && !l.is_even(), "{name}");
        let theta = l.theta_series(&cut, opts()).unwrap();
        let expr = express_theta_unimodular(&theta, l.dim(), false).unwrap();
        let predicted = shadow_theta_from_ring(&expr, &cut).unwrap();
        let measured = shadow(&l, &cut, opts()).unwrap();
        assert!(!measured.even);
        assert_eq!(predicted, measured.series, "{name}");
    }
    // an even lattice is its own shadow
    let e8 = catalog::get("E8").unwrap();
    let s = shadow(&e8, &cut, opts()).unwrap();
    assert!(s.even);
    assert_eq!(s.series, e8.theta_series(&cut, opts()).unwrap());
}

#[test]
fn twice_shadow_vectors_are_parity_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (name, l) in odd_unimodular() {
        let n = l.dim();
        let u = characteristic_vector(&l).unwrap();
        for _ in 0..20 {
            let y: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            // 2(u/2 + y) = u + 2y
            let p: Vec<i64> = u.iter().zip(&y).map(|(a, b)| a + 2 * b).collect();
            assert!(is_parity_vector(&l, &p, &x), "{name}");
        }
        // shifting by a vector outside 2L breaks the law for some basis vector
        let mut q = u.clone();
        q[0] += 1;
        let broken = (0..n).any(|i| {
            let e: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
            !is_parity_vector(&l, &q, &e)
        });
        assert!(broken, "{name}");
    }
}

#[test]
fn transform_identity_holds_on_small_unimodular_lattices() {
    let zs = [
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(0.5, 1.0),
    ];
    let mut names: Vec<String> = (1..=9).map(|n| format!("Z{n}")).collect();
    names.push("E8".into());
    names.push("D8+".into());
    for name in names {
        let l = catalog::get(&name).unwrap();
        let c = shadow_transform_check(&l, &zs, &rat_int(12), opts()).unwrap();
        assert!(c.max_deviation < TRANSFORM_TOLERANCE, "{name}: {c:?}");
        assert!(c.tail_bound < TRANSFORM_TOLERANCE / 10.0);
    }
    // non-unimodular and low samples are refused
    let a2 = catalog::get("A2").unwrap();
    assert!(shadow_transform_check(&a2, &zs, &rat_int(12), opts()).is_err());
    let z = catalog::get("Z1").unwrap();
    assert!(shadow_transform_check(&z, &[Complex64::new(0.0, 0.5)], &rat_int(12), opts()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_expression_round_trips(
        n in 1usize..=30,
        nums in proptest::collection::vec(-40i64..=40, 4),
        dens in proptest::collection::vec(1i64..=9, 4),
    ) {
        let k = n / 8 + 1;
        let mut coeffs: Vec<Rational> = nums.iter().zip(&dens).take(k).map(|(&a, &b)| rat(a, b)).collect();
        // the constant term of a theta series is 1
        let cut = rat_int(k as i64 + 2);
        let basis = RingExpression::basis(n, false, &cut).unwrap();
        let c0 = basis[0].coeff_int(0);
        let rest: Rational = coeffs.iter().zip(&basis).skip(1).map(|(a, b)| a * b.coeff_int(0)).sum();
        coeffs[0] = (rat_int(1) - rest) / c0;
        let expr = RingExpression { n, even: false, coeffs };
        let series = expr.reconstruct(&cut).unwrap();
        let back = express_theta_unimodular(&series, n, false).unwrap();
        prop_assert_eq!(back, expr);
    }
}

#[test]
fn perturbed_prefix_is_rejected() {
    let z9 = catalog::get("Z9").unwrap();
    let cut = rat_int(4);
    let theta = z9.theta_series(&cut, opts()).unwrap();
    let mut bumped = QSeries::zero(&cut);
    bumped.add_term(&rat_int(3), rat_int(1)).unwrap();
    let bad = theta.add(&bumped);
    assert!(express_theta_unimodular(&bad, 9, false).is_err());
    assert!(express_theta_unimodular(&theta, 9, false).is_ok());
}

#[test]
fn modular_lattices_satisfy_the_determinant_relation() {
    let iso = IsometryOptions::default();
    for (name, big_n) in [("D4", 2u64), ("A2", 3), ("E8", 1), ("Z2", 1), ("Z3", 1)] {
        let l = catalog::get(name).unwrap();
        let u = n_modular_check(&l, big_n, iso).unwrap();
        assert!(u.is_some(), "{name} should be {big_n}-modular");
        if l.dim() % 2 == 0 {
            assert_eq!(
                l.determinant(),
                QSqrt2::from_int(big_n as i64).pow(l.dim() as u32 / 2)
            );
        }
    }
    let a2 = catalog::get("A2").unwrap();
    assert!(n_modular_check(&a2, 2, iso).unwrap().is_none());
    let a3 = catalog::get("A3").unwrap();
    assert!(n_modular_check(&a3, 2, iso).unwrap().is_none());
}

#[test]
fn leech_is_extremal_and_e8_is_too() {
    assert!(is_extremal(&catalog::get("Leech").unwrap(), opts()).unwrap());
    assert!(is_extremal(&catalog::get("E8").unwrap(), opts()).unwrap());
    assert!(!is_extremal(&catalog::get("Z9").unwrap(), opts()).unwrap());
    assert!(!is_extremal(&catalog::get("Z3").unwrap(), opts()).unwrap());
}
