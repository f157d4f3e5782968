use num_traits::One;
use spherepack::catalog;
use spherepack::constructions::{checkerboard, stack_layer, uv_lattice};
use spherepack::coordination::{coordination_sequence, CoordOptions};
use spherepack::isometry::{isometry, similarity, IsometryOptions};
use spherepack::lattice::unit_ball_volume;
use spherepack::scalar::rat;
use spherepack::{EnumOptions, QSqrt2, Rational};

const SMALL: &[&str] = &[
    "A2", "A3", "D3", "D4", "D5", "E6", "E7", "E8", "fcc", "bcc", "mcc", "Lambda1", "Lambda2",
    "Lambda3", "Lambda4", "Lambda5", "Lambda6", "Lambda7", "Lambda8", "Lambda9", "Lambda10", "K12",
    "Z3", "A4", "D6",
];

#[test]
fn every_entry_verifies() {
    let rows = catalog::verify_all(EnumOptions::default()).unwrap();
    assert!(rows.len() >= 24);
    for row in rows {
        assert!(row.ok(), "{row:?}");
    }
}

#[test]
fn dual_determinants_multiply_to_one() {
    for name in catalog::list()
        .iter()
        .filter(|n| !n.ends_with('n') && !n.ends_with("n+"))
    {
        let l = catalog::get(name).unwrap();
        let d = l.dual().unwrap();
        assert!((&l.determinant() * &d.determinant()).is_one(), "{name}");
    }
}

#[test]
fn theta_coefficient_at_minimum_is_kissing_number() {
    let opts = EnumOptions::default();
    for name in SMALL {
        let l = catalog::get(name).unwrap();
        let m = l.minimum(opts).unwrap();
        assert_eq!(m.vectors.len() % 2, 0);
        let Some(mu) = m.norm.as_rational() else {
            continue;
        };
        let theta = l.theta_series(&(mu + rat(1, 4)), opts).unwrap();
        assert_eq!(
            theta.coeff(mu),
            Rational::from_integer(m.vectors.len().into()),
            "{name}"
        );
    }
}

#[test]
fn first_shell_is_kissing_number() {
    for name in ["A2", "D4", "E6", "E7", "fcc", "bcc", "Lambda9"] {
        let l = catalog::get(name).unwrap();
        let s = coordination_sequence(&l, 1, CoordOptions::default()).unwrap();
        assert_eq!(
            s[1],
            l.kissing_number(EnumOptions::default()).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn density_is_center_density_times_ball_volume() {
    let opts = EnumOptions::default();
    for name in SMALL {
        let l = catalog::get(name).unwrap();
        let delta = l.center_density(opts).unwrap();
        let big = l.density(opts).unwrap();
        let v = unit_ball_volume(l.dim());
        assert!((delta * v - big).abs() <= 1e-12 * big, "{name}");
    }
}

#[test]
fn e8_is_self_dual_and_fcc_dual_is_bcc() {
    let opts = IsometryOptions::default();
    let e8 = catalog::get("E8").unwrap();
    assert!(isometry(&e8, &e8.dual().unwrap(), opts).unwrap().is_some());
    let fcc = catalog::get("fcc").unwrap();
    let bcc = catalog::get("bcc").unwrap();
    let (c, _) = similarity(&bcc, &fcc.dual().unwrap(), opts)
        .unwrap()
        .unwrap();
    assert_eq!(c, QSqrt2::from_int(4));
}

#[test]
fn uv_family_hits_the_three_cubic_lattices() {
    let opts = IsometryOptions::default();
    let one = QSqrt2::from_int(1);
    let fcc = catalog::get("fcc").unwrap();
    let bcc = catalog::get("bcc").unwrap();
    let mcc = catalog::get("mcc").unwrap();
    let sqrt2 = QSqrt2::sqrt2();
    assert!(similarity(&fcc, &uv_lattice(&one, &one).unwrap(), opts)
        .unwrap()
        .is_some());
    assert!(
        similarity(&bcc, &uv_lattice(&QSqrt2::from_int(2), &one).unwrap(), opts)
            .unwrap()
            .is_some()
    );
    assert!(similarity(&mcc, &uv_lattice(&sqrt2, &one).unwrap(), opts)
        .unwrap()
        .is_some());
    // the three are pairwise dissimilar
    assert!(similarity(&fcc, &bcc, opts).unwrap().is_none());
    assert!(similarity(&mcc, &fcc, opts).unwrap().is_none());
}

#[test]
fn mcc_is_similar_to_its_dual() {
    let mcc = catalog::get("mcc").unwrap();
    let (c, u) = spherepack::isometry::isodual_witness(&mcc, IsometryOptions::default())
        .unwrap()
        .unwrap();
    assert!(c.is_positive());
    let scaled = mcc.dual().unwrap().scaled(&c).unwrap();
    spherepack::isometry::verify(&mcc, &scaled, &u).unwrap();
}

/// Stacking `Λ(n−1)` over a hole reproduces `Λn` where the height is in Q(√2).
#[test]
fn laminated_chain_matches_stacking() {
    let opts = EnumOptions::default();
    // D3 with norms ×4 over its octahedral hole: distance² 4, height² 4
    let d3 = checkerboard(3)
        .unwrap()
        .scaled(&QSqrt2::from_int(4))
        .unwrap();
    let hole: Vec<Rational> = d3
        .coords_of(&[
            QSqrt2::from_int(2),
            QSqrt2::from_int(0),
            QSqrt2::from_int(0),
        ])
        .unwrap()
        .into_iter()
        .map(|x| x.as_rational().unwrap().clone())
        .collect();
    let lam4 = stack_layer(&d3, &hole, &QSqrt2::from_int(8)).unwrap();
    let want = catalog::get("Lambda4")
        .unwrap()
        .scaled(&QSqrt2::from_int(2))
        .unwrap();
    assert!(isometry(&lam4, &want, IsometryOptions::default())
        .unwrap()
        .is_some());
    // Λ1 over its midpoint needs √3 and is rejected
    assert!(matches!(
        catalog::get("Lambda1").map(|l| stack_layer(&l, &[rat(1, 2)], &QSqrt2::from_int(4))),
        Ok(Err(spherepack::Error::Representation(_)))
    ));
    for (n, name) in (1..=10).map(|n| (n, format!("Lambda{n}"))) {
        let l = catalog::get(&name).unwrap();
        assert_eq!(l.min_norm(opts).unwrap(), QSqrt2::from_int(4), "{name}");
        assert_eq!(l.dim(), n);
    }
    // 1/√det at minimal norm 4
    let deltas: Vec<f64> = (1..=10)
        .map(|n| {
            catalog::get(&format!("Lambda{n}"))
                .unwrap()
                .center_density(opts)
                .unwrap()
        })
        .collect();
    let expect = [
        0.5, 0.288675, 0.176777, 0.125, 0.088388, 0.072169, 0.0625, 0.0625, 0.044194, 0.036084,
    ];
    for (d, e) in deltas.iter().zip(expect) {
        assert!((d - e).abs() < 1e-6, "{d} vs {e}");
    }
}
