//! Writes the catalog data files under `crates/core/data/`.
//!
//! Usage: `cargo run --release -p spherepack --example generate_catalog [dir]`

use std::path::PathBuf;

use spherepack::codes::golay24;
use spherepack::constructions::{
    barnes_wall_16, coxeter_todd, d9_theta_plus, hole_search, leech_from_golay, stacked_gram,
};
use spherepack::io::{Expected, LatticeFile};
use spherepack::{Lattice, Matrix, QSqrt2, Rational};

/// Gram of a simply-laced root system from its Dynkin edges.
fn dynkin(n: usize, edges: &[(usize, usize)]) -> Lattice {
    let g = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            QSqrt2::from_int(2)
        } else if edges.contains(&(i, j)) || edges.contains(&(j, i)) {
            QSqrt2::from_int(-1)
        } else {
            QSqrt2::from_int(0)
        }
    });
    Lattice::from_gram(g).expect("root system Gram")
}

fn ints(rows: &[&[i64]]) -> Lattice {
    Lattice::from_int_gram(rows).expect("valid Gram")
}

fn expect(det: &str, mu: &str, tau: u64, even: Option<bool>, unimodular: Option<bool>) -> Expected {
    Expected {
        det: det.into(),
        min_norm: mu.into(),
        kissing: tau,
        even,
        unimodular,
    }
}

fn reduced(l: &Lattice) -> Lattice {
    let (r, _) = l.reduced().expect("reduction");
    Lattice::from_gram(r.gram().clone()).expect("reduced Gram")
}

struct Out {
    dir: PathBuf,
}

impl Out {
    fn write(&self, name: &str, l: &Lattice, source: &str, exp: Expected) {
        let mut f = LatticeFile::from_lattice(l);
        f.name = name.into();
        f.source = Some(source.into());
        f.expected = Some(exp);
        let path = self.dir.join(format!("{name}.json"));
        std::fs::write(&path, f.to_json()).expect("write data file");
        println!("wrote {}", path.display());
    }
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    let out = Out { dir };
    let two = QSqrt2::from_int(2);

    let a2 = ints(&[&[2, 1], &[1, 2]]);
    out.write(
        "A2",
        &a2,
        "hexagonal lattice, basis of two roots at 60 degrees",
        expect("3", "2", 6, Some(true), Some(false)),
    );
    let a3 = dynkin(3, &[(0, 1), (1, 2)]);
    out.write(
        "A3",
        &a3,
        "Cartan matrix of A3",
        expect("4", "2", 12, Some(true), Some(false)),
    );
    let d3 = ints(&[&[2, 0, 1], &[0, 2, 1], &[1, 1, 2]]);
    out.write(
        "D3",
        &d3,
        "basis (1,1,0), (1,-1,0), (0,1,1) of the even-sum lattice",
        expect("4", "2", 12, Some(true), Some(false)),
    );
    let d4 = ints(&[&[2, 0, 1, 1], &[0, 2, 1, 1], &[1, 1, 2, 1], &[1, 1, 1, 2]]);
    out.write(
        "D4",
        &d4,
        "even-sum lattice in dimension 4",
        expect("4", "2", 24, Some(true), Some(false)),
    );
    let d5 = dynkin(5, &[(0, 2), (1, 2), (2, 3), (3, 4)]);
    out.write(
        "D5",
        &d5,
        "Cartan matrix of D5",
        expect("4", "2", 40, Some(true), Some(false)),
    );
    let e6 = dynkin(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]);
    out.write(
        "E6",
        &e6,
        "Cartan matrix of E6",
        expect("3", "2", 72, Some(true), Some(false)),
    );
    let e7 = dynkin(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]);
    out.write(
        "E7",
        &e7,
        "Cartan matrix of E7",
        expect("2", "2", 126, Some(true), Some(false)),
    );
    let e8 = dynkin(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]);
    out.write(
        "E8",
        &e8,
        "Cartan matrix of E8",
        expect("1", "2", 240, Some(true), Some(true)),
    );

    out.write(
        "K12",
        &coxeter_todd().expect("K12"),
        "Coxeter-Todd lattice from the Eisenstein congruence construction, LLL-reduced",
        expect("729", "4", 756, Some(true), Some(false)),
    );
    out.write(
        "BW16",
        &reduced(&barnes_wall_16().expect("BW16")),
        "Barnes-Wall lattice from RM(1,4), LLL-reduced",
        expect("256", "4", 4320, Some(true), Some(false)),
    );
    out.write(
        "Leech",
        &reduced(&leech_from_golay(&golay24()).expect("Leech")),
        "Leech lattice from the Golay code, LLL-reduced",
        expect("1", "4", 196560, Some(true), Some(true)),
    );

    let fcc = ints(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]);
    out.write(
        "fcc",
        &fcc,
        "face-centered cubic, basis (1,1,0), (1,0,1), (0,1,1)",
        expect("4", "2", 12, Some(true), Some(false)),
    );
    let bcc = ints(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
    out.write(
        "bcc",
        &bcc,
        "body-centered cubic, basis (1,1,-1), (1,-1,1), (-1,1,1)",
        expect("16", "3", 8, Some(false), Some(false)),
    );
    let h = QSqrt2::frac(1, 2);
    let hs = &QSqrt2::sqrt2() * &h;
    let p = &h + &hs;
    let m = &h - &hs;
    let mcc = Lattice::from_gram(
        Matrix::from_rows(vec![
            vec![p.clone(), h.clone(), h.clone()],
            vec![h.clone(), p.clone(), m.clone()],
            vec![h, m, p],
        ])
        .expect("square"),
    )
    .expect("mcc Gram");
    out.write(
        "mcc",
        &mcc,
        "mean-centered cuboidal lattice",
        expect("1", "1/2+1/2*sqrt2", 8, None, Some(false)),
    );

    // laminated lattices at minimal norm 4
    let lam1 = ints(&[&[4]]);
    out.write(
        "Lambda1",
        &lam1,
        "2Z",
        expect("4", "4", 2, Some(true), Some(false)),
    );
    let small = [
        ("Lambda2", &a2, "12", 6u64),
        ("Lambda3", &fcc, "32", 12),
        ("Lambda4", &d4, "64", 24),
        ("Lambda5", &d5, "128", 40),
        ("Lambda6", &e6, "192", 72),
        ("Lambda7", &e7, "256", 126),
        ("Lambda8", &e8, "256", 240),
    ];
    for (name, l, det, tau) in small {
        let s = l.scaled(&two).expect("scale");
        out.write(
            name,
            &s,
            "root lattice with norms doubled",
            expect(det, "4", tau, Some(true), Some(false)),
        );
    }
    let lam9_half = d9_theta_plus(&Rational::from_integer(0.into()))
        .and_then(|p| p.to_lattice())
        .expect("D9 with half-integral glue");
    let lam9 = reduced(&lam9_half.scaled(&two).expect("scale"));
    out.write(
        "Lambda9",
        &lam9,
        "D9 glued by ((1/2)^8, 0), norms doubled",
        expect("512", "4", 272, Some(true), Some(false)),
    );

    // a deep hole of Lambda9 at minimal norm 2, then one layer on top
    let base = reduced(&lam9_half);
    let (hole, h2) = hole_search(&base, 24, 4, 0x5eed).expect("hole search");
    println!("Lambda9 hole at squared distance {h2}");
    let (g10, _, s2) = stacked_gram(&base, &hole, &two).expect("stacking");
    println!("layer height squared {s2}");
    let lam10 = reduced(
        &Lattice::from_gram(g10)
            .expect("Lambda10 Gram")
            .scaled(&two)
            .expect("scale"),
    );
    out.write(
        "Lambda10",
        &lam10,
        "Lambda9 stacked over a deep hole, norms doubled",
        expect("768", "4", 336, None, Some(false)),
    );
}
