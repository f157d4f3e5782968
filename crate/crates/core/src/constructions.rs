//! Builders turning codes and smaller lattices into lattices and packings.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::{compatibility_violation, BinaryCode};
use crate::enumerate::EnumOptions;
use crate::error::{Error, Result};
use crate::intmat::{complete_to_unimodular, hnf_basis, integer_kernel};
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::packing::PeriodicPacking;
use crate::reduce::lll_exact;
use crate::scalar::{rat, rat_int, QSqrt2, Rational};

fn q(x: i64) -> QSqrt2 {
    QSqrt2::from_int(x)
}

fn int_rows_to_basis(rows: &[Vec<BigInt>], scale: &QSqrt2) -> Result<Matrix<QSqrt2>> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|x| &QSqrt2::from_rational(Rational::from_integer(x.clone())) * scale)
                    .collect()
            })
            .collect(),
    )
}

fn bigint_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// `Z^n` with the standard basis.
pub fn integer_lattice(n: usize) -> Result<Lattice> {
    Ok(Lattice::from_basis(Matrix::identity(n))?.with_name(format!("Z{n}")))
}

/// `k·Z^n` with basis `k·I`.
pub fn scaled_integer_lattice(n: usize, k: i64) -> Result<Lattice> {
    Lattice::from_basis(Matrix::identity(n).scale(&q(k)))
}

/// Basis rows of `D_n`: `e_0 + e_1, e_0 − e_1, e_1 − e_2, …, e_{n−2} − e_{n−1}`.
pub fn checkerboard_rows(n: usize) -> Result<Vec<Vec<i64>>> {
    if n < 2 {
        return Err(Error::Precondition("D_n needs n ≥ 2".into()));
    }
    let mut rows = Vec::with_capacity(n);
    let mut r = vec![0i64; n];
    r[0] = 1;
    r[1] = 1;
    rows.push(r);
    for i in 0..n - 1 {
        let mut r = vec![0i64; n];
        r[i] = 1;
        r[i + 1] = -1;
        rows.push(r);
    }
    Ok(rows)
}

/// `D_n = {x ∈ Z^n : Σx even}`.
pub fn checkerboard(n: usize) -> Result<Lattice> {
    let rows = checkerboard_rows(n)?;
    Ok(
        Lattice::from_basis(int_rows_to_basis(&bigint_rows(&rows), &q(1))?)?
            .with_name(format!("D{n}")),
    )
}

/// `A_n` as the Gram of its simple roots.
pub fn root_lattice_a(n: usize) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::Precondition("A_n needs n ≥ 1".into()));
    }
    let g = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            q(2)
        } else if i.abs_diff(j) == 1 {
            q(-1)
        } else {
            q(0)
        }
    });
    Ok(Lattice::from_gram(g)?.with_name(format!("A{n}")))
}

fn word_vector(code: &BinaryCode, w: u64) -> Vec<i64> {
    code.unpack(w).into_iter().map(i64::from).collect()
}

/// `P(C) = {x ∈ Z^n : x mod 2 ∈ C}` as `2Z^n` plus one offset per codeword.
/// A code without the zero word is translated by its first word.
pub fn construction_a(code: &BinaryCode) -> Result<PeriodicPacking> {
    let n = code.len();
    let base = scaled_integer_lattice(n, 2)?;
    let shift = if code.contains_zero() {
        0
    } else {
        code.words()[0]
    };
    let offsets: Vec<Vec<Rational>> = code
        .words()
        .iter()
        .map(|&w| {
            word_vector(code, w ^ shift)
                .into_iter()
                .map(|b| rat(b, 2))
                .collect()
        })
        .collect();
    PeriodicPacking::from_coords(base, offsets)
}

/// Construction A for a linear code, returned directly as a lattice.
pub fn construction_a_lattice(code: &BinaryCode) -> Result<Lattice> {
    let gen = code
        .generator()
        .ok_or_else(|| Error::Precondition("Construction A lattice needs a linear code".into()))?;
    let n = code.len();
    let mut gens: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect())
        .collect();
    gens.extend(gen.iter().map(|&g| word_vector(code, g)));
    let basis = hnf_basis(&bigint_rows(&gens));
    Lattice::from_basis(int_rows_to_basis(&basis, &q(1))?)
}

/// Generators of `{x ∈ P(C) : Σx ≡ 0 (mod 4)}` for a doubly-even linear code.
fn sum_zero_mod4_generators(code: &BinaryCode) -> Result<Vec<Vec<i64>>> {
    let gen = code
        .generator()
        .ok_or_else(|| Error::Precondition("code must be linear".into()))?;
    if code.words().iter().any(|w| w.count_ones() % 4 != 0) {
        return Err(Error::Precondition("code must be doubly even".into()));
    }
    let n = code.len();
    let mut gens = Vec::new();
    let mut four = vec![0i64; n];
    four[0] = 4;
    gens.push(four);
    for i in 1..n {
        let mut v = vec![0i64; n];
        v[0] = -2;
        v[i] = 2;
        gens.push(v);
    }
    gens.extend(gen.iter().map(|&g| word_vector(code, g)));
    Ok(gens)
}

/// Leech lattice from the Golay code: the vectors of `P(golay)` with
/// coordinate sum `≡ 0 (mod 4)` together with `(−3/2, 1/2, …, 1/2)`.
/// Norms are halved so the result has determinant 1 and minimum 4.
pub fn leech_from_golay(golay: &BinaryCode) -> Result<Lattice> {
    if golay.len() != 24 || golay.dimension() != Some(12) {
        return Err(Error::Precondition("expected a [24, 12] code".into()));
    }
    if golay.min_distance(u64::MAX)? != 8 {
        return Err(Error::Precondition("expected minimum distance 8".into()));
    }
    // doubled coordinates y = 2x keep everything integral
    let mut gens: Vec<Vec<i64>> = sum_zero_mod4_generators(golay)?
        .into_iter()
        .map(|v| v.into_iter().map(|x| 2 * x).collect())
        .collect();
    let mut glue = vec![1i64; 24];
    glue[0] = -3;
    gens.push(glue);
    let basis = hnf_basis(&bigint_rows(&gens));
    // x = y/2, then norms halved: scale by 1/(2√2) = √2/4
    let scale = &QSqrt2::sqrt2() * &QSqrt2::frac(1, 4);
    let l = Lattice::from_basis(int_rows_to_basis(&basis, &scale)?)?;
    if !l.determinant().is_one() {
        return Err(Error::Construction(format!(
            "Leech determinant came out as {}",
            l.determinant()
        )));
    }
    Ok(l.with_name("Leech"))
}

/// A point of `R^{25,1}` with coordinates all in Z or all in Z + 1/2,
/// stored doubled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LorentzianVector {
    doubled: [i64; 26],
}

impl LorentzianVector {
    /// Accepts doubled coordinates; checks the integrality and parity rules
    /// of the even unimodular lattice `II_{25,1}`.
    pub fn from_doubled(doubled: [i64; 26]) -> Result<Self> {
        let parity = doubled[0].rem_euclid(2);
        if doubled.iter().any(|x| x.rem_euclid(2) != parity) {
            return Err(Error::Precondition(
                "coordinates must be all integers or all half-integers".into(),
            ));
        }
        let s: i64 = doubled[..25].iter().sum::<i64>() - doubled[25];
        if s.rem_euclid(4) != 0 {
            return Err(Error::Precondition(
                "x_0 + … + x_24 − x_25 must be even".into(),
            ));
        }
        Ok(LorentzianVector { doubled })
    }

    pub fn from_integers(x: [i64; 26]) -> Result<Self> {
        let mut d = [0i64; 26];
        for (o, v) in d.iter_mut().zip(x) {
            *o = 2 * v;
        }
        LorentzianVector::from_doubled(d)
    }

    /// `Σ_{i<25} x_i y_i − x_25 y_25`.
    pub fn inner(&self, other: &LorentzianVector) -> Rational {
        let mut s: i64 = 0;
        for i in 0..25 {
            s += self.doubled[i] * other.doubled[i];
        }
        s -= self.doubled[25] * other.doubled[25];
        rat(s, 4)
    }

    pub fn norm(&self) -> Rational {
        self.inner(self)
    }
}

/// The isotropic vector `(0, 1, …, 24 | 70)`.
pub fn leech_isotropic_vector() -> LorentzianVector {
    let mut x = [0i64; 26];
    for (k, v) in x.iter_mut().enumerate().take(25) {
        *v = k as i64;
    }
    x[25] = 70;
    LorentzianVector::from_integers(x).expect("w lies in II_{25,1}")
}

fn lorentz_doubled_inner(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..25 {
        s += &a[i] * &b[i];
    }
    s - &a[25] * &b[25]
}

/// Leech lattice as `w^⊥ / w` inside `II_{25,1}`, with `w = (0, 1, …, 24 | 70)`.
/// The returned Gram is LLL-reduced.
pub fn leech_from_lorentzian() -> Result<Lattice> {
    let w = leech_isotropic_vector();
    if !w.norm().is_zero() {
        return Err(Error::Construction("w is not isotropic".into()));
    }
    // II_{25,1} in doubled coordinates
    let mut gens: Vec<Vec<i64>> = Vec::new();
    let mut v = vec![0i64; 26];
    v[0] = 4;
    gens.push(v);
    for i in 1..25 {
        let mut v = vec![0i64; 26];
        v[0] = -2;
        v[i] = 2;
        gens.push(v);
    }
    let mut v = vec![0i64; 26];
    v[0] = 2;
    v[25] = 2;
    gens.push(v);
    gens.push(vec![1i64; 26]);
    let basis = hnf_basis(&bigint_rows(&gens));
    if basis.len() != 26 {
        return Err(Error::Construction("II_{25,1} basis has wrong rank".into()));
    }
    let wd: Vec<BigInt> = w.doubled.iter().map(|&x| BigInt::from(x)).collect();
    // functional a ↦ ⟨a·B, w⟩ (doubled on both sides: divide by 4)
    let phi: Vec<BigInt> = basis
        .iter()
        .map(|r| {
            let s = lorentz_doubled_inner(r, &wd);
            s / BigInt::from(4)
        })
        .collect();
    let kernel = integer_kernel(&phi);
    if kernel.len() != 25 {
        return Err(Error::Construction("w^⊥ has wrong rank".into()));
    }
    // rows of w^⊥ in doubled ambient coordinates
    let perp: Vec<Vec<BigInt>> = kernel
        .iter()
        .map(|k| {
            (0..26)
                .map(|j| k.iter().zip(&basis).map(|(c, r)| c * &r[j]).sum())
                .collect()
        })
        .collect();
    // coordinates of w in the w^⊥ basis
    let wc = solve_integer_combination(&perp, &wd)?;
    let m = complete_to_unimodular(&wc)?;
    let rows: Vec<Vec<BigInt>> = (1..25)
        .map(|i| {
            (0..26)
                .map(|j| (0..25).map(|k| &m[(i, k)] * &perp[k][j]).sum())
                .collect()
        })
        .collect();
    let g = Matrix::from_fn(24, 24, |i, j| {
        let s = lorentz_doubled_inner(&rows[i], &rows[j]);
        QSqrt2::from_rational(Rational::new(s, BigInt::from(4)))
    });
    let (_, reduced) = lll_exact(&g)?;
    let l = Lattice::from_gram(reduced)
        .map_err(|e| Error::Construction(format!("induced form on w^⊥/w: {e}")))?;
    Ok(l.with_name("Leech"))
}

/// Integer `c` with `c·rows = target`, for independent `rows`.
fn solve_integer_combination(rows: &[Vec<BigInt>], target: &[BigInt]) -> Result<Vec<BigInt>> {
    let k = rows.len();
    let m = target.len();
    // least squares normal equations over Q: c·(R Rᵀ) = t·Rᵀ
    let rr = Matrix::from_fn(k, k, |i, j| {
        Rational::from_integer(rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum())
    });
    let rhs: Vec<Rational> = (0..k)
        .map(|i| Rational::from_integer(rows[i].iter().zip(target).map(|(a, b)| a * b).sum()))
        .collect();
    let c = crate::matrix::vec_mat(&rhs, &rr.inverse()?);
    let ints: Vec<BigInt> = c
        .iter()
        .map(|x| {
            x.is_integer()
                .then(|| x.to_integer())
                .ok_or_else(|| Error::Construction("vector is not an integer combination".into()))
        })
        .collect::<Result<_>>()?;
    for j in 0..m {
        let s: BigInt = (0..k).map(|i| &ints[i] * &rows[i][j]).sum();
        if s != target[j] {
            return Err(Error::Construction("vector is not in the row span".into()));
        }
    }
    Ok(ints)
}

/// Membership in `{2b + 4x : b ∈ B, Σx even} ∪ {1 + 2c + 4y : c ∈ C, Σy odd}`.
pub fn bstar_contains(b: &BinaryCode, c: &BinaryCode, p: &[i64]) -> bool {
    let n = b.len();
    if p.len() != n {
        return false;
    }
    let par = p[0].rem_euclid(2);
    if p.iter().any(|x| x.rem_euclid(2) != par) {
        return false;
    }
    let (code, lift, want): (&BinaryCode, Vec<i64>, i64) = if par == 0 {
        (b, p.to_vec(), 0)
    } else {
        (c, p.iter().map(|x| x - 1).collect(), 1)
    };
    // lift = 2·word + 4·z
    let mut word = 0u64;
    for (i, x) in lift.iter().enumerate() {
        if (x / 2).rem_euclid(2) == 1 {
            word |= crate::codes::coord_bit(n, i);
        }
    }
    if !code.contains(word) {
        return false;
    }
    let s: i64 = lift
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let bit = (word >> (n - 1 - i) & 1) as i64;
            (x - 2 * bit) / 4
        })
        .sum();
    s.rem_euclid(2) == want
}

/// Construction B*: base `4·D_n` with offsets `2b` (b ∈ B) and
/// `1 + 2c + 4e_0` (c ∈ C). Requires `c·(1 + b) = 0` for all pairs.
pub fn construction_bstar(b: &BinaryCode, c: &BinaryCode) -> Result<PeriodicPacking> {
    let n = b.len();
    if c.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: c.len(),
        });
    }
    if let Some((x, y)) = compatibility_violation(b, c) {
        return Err(Error::Precondition(format!(
            "incompatible pair: b = {}, c = {} has c·(1 + b) odd",
            bits(b, x),
            bits(c, y)
        )));
    }
    if !b.contains_zero() {
        return Err(Error::Precondition("B must contain the zero word".into()));
    }
    let rows = checkerboard_rows(n)?;
    let base = Lattice::from_basis(int_rows_to_basis(&bigint_rows(&rows), &q(4))?)?;
    let mut ambient: Vec<Vec<QSqrt2>> = Vec::new();
    for &w in b.words() {
        ambient.push(word_vector(b, w).into_iter().map(|x| q(2 * x)).collect());
    }
    for &w in c.words() {
        let mut v: Vec<QSqrt2> = word_vector(c, w)
            .into_iter()
            .map(|x| q(1 + 2 * x))
            .collect();
        v[0] = &v[0] + &q(4);
        ambient.push(v);
    }
    let coords = base
        .coords_of_many(&ambient)?
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|x| x.as_rational().cloned().expect("rational basis"))
                .collect()
        })
        .collect();
    Ok(PeriodicPacking::from_coords(base, coords)?.with_name(format!("B*{n}")))
}

fn bits(code: &BinaryCode, w: u64) -> String {
    code.unpack(w)
        .iter()
        .map(|b| char::from(b'0' + b))
        .collect()
}

/// `D_n ∪ (D_n + (1/2, …, 1/2))`.
pub fn d_plus(n: usize) -> Result<PeriodicPacking> {
    if n < 3 {
        return Err(Error::Precondition("D_n^+ needs n ≥ 3".into()));
    }
    let base = checkerboard(n)?;
    let off = vec![rat(1, 2); n];
    Ok(PeriodicPacking::from_ambient(base, &[off])?.with_name(format!("D{n}+")))
}

/// `D_9 ∪ (D_9 + ((1/2)^8, θ/2))`.
pub fn d9_theta_plus(theta: &Rational) -> Result<PeriodicPacking> {
    let base = checkerboard(9)?;
    let mut off = vec![rat(1, 2); 9];
    off[8] = theta / rat_int(2);
    Ok(PeriodicPacking::from_ambient(base, &[off])?.with_name(format!("D9^({theta})+")))
}

/// Squared distance from `point` (lattice coordinates) to the lattice, with
/// the nearest lattice point, searched up to `bound`.
pub fn distance_to_lattice(
    l: &Lattice,
    point: &[Rational],
    bound: &QSqrt2,
    opts: EnumOptions,
) -> Result<Option<(QSqrt2, Vec<i64>)>> {
    let found = l.enumerator()?.coset_vectors(point, bound, true, opts)?;
    Ok(found
        .into_iter()
        .min_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.coords.cmp(&b.coords)))
        .map(|s| (s.norm, s.coords.iter().map(|x| -x).collect())))
}

/// Gram of the lattice spanned by `L` and `hole + height·e_new`, where the
/// new vector has norm `target`. `hole` is in lattice coordinates and must be
/// at squared distance `< target` from `L`.
pub fn stacked_gram(
    l: &Lattice,
    hole: &[Rational],
    target: &QSqrt2,
) -> Result<(Matrix<QSqrt2>, Vec<Rational>, QSqrt2)> {
    let n = l.dim();
    if hole.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: hole.len(),
        });
    }
    let (h2, nearest) =
        distance_to_lattice(l, hole, target, EnumOptions::default())?.ok_or_else(|| {
            Error::Precondition("hole is farther than √target from the lattice".into())
        })?;
    if h2 >= *target {
        return Err(Error::Precondition(
            "hole is not closer than √target to the lattice".into(),
        ));
    }
    // representative of the hole coset closest to the origin
    let p: Vec<Rational> = hole
        .iter()
        .zip(&nearest)
        .map(|(h, v)| h - Rational::from_integer((*v).into()))
        .collect();
    let g = l.gram();
    let gp: Vec<QSqrt2> = (0..n)
        .map(|i| {
            let mut acc = QSqrt2::zero();
            for (j, pj) in p.iter().enumerate() {
                acc += &(&g[(i, j)] * pj);
            }
            acc
        })
        .collect();
    let out = Matrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
        (true, true) => g[(i, j)].clone(),
        (true, false) => gp[i].clone(),
        (false, true) => gp[j].clone(),
        (false, false) => target.clone(),
    });
    let s2 = target - &h2;
    Ok((out, p, s2))
}

/// One lamination step: adds the vector `(hole | s)` with
/// `s = √(target − h²)`, where `h²` is the squared distance from `hole`
/// (lattice coordinates) to `L`. The height must lie in Q(√2).
pub fn stack_layer(l: &Lattice, hole: &[Rational], target: &QSqrt2) -> Result<Lattice> {
    let (gram, p, s2) = stacked_gram(l, hole, target)?;
    let s = s2
        .sqrt_exact()
        .ok_or_else(|| Error::Representation(format!("layer height √({s2}) is not in Q(√2)")))?;
    let Some(b) = l.basis() else {
        return Lattice::from_gram(gram);
    };
    let n = l.dim();
    let m = b.ncols();
    let pb: Vec<QSqrt2> = (0..m)
        .map(|k| {
            let mut acc = QSqrt2::zero();
            for (i, pi) in p.iter().enumerate() {
                acc += &(&b[(i, k)] * pi);
            }
            acc
        })
        .collect();
    let basis = Matrix::from_fn(n + 1, m + 1, |i, k| match (i < n, k < m) {
        (true, true) => b[(i, k)].clone(),
        (true, false) => QSqrt2::zero(),
        (false, true) => pb[k].clone(),
        (false, false) => s.clone(),
    });
    let out = Lattice::from_basis(basis)?;
    debug_assert_eq!(out.gram(), &gram);
    Ok(out)
}

/// Squared distance from `point` (lattice coordinates) to the lattice. The
/// search radius is the distance to the coordinate-wise rounded point.
pub fn distance_sq_to_lattice(
    l: &Lattice,
    point: &[Rational],
    opts: EnumOptions,
) -> Result<QSqrt2> {
    let frac: Vec<Rational> = point.iter().map(|x| x - x.round()).collect();
    let bound = l.inner_rational(&frac, &frac);
    if bound.is_zero() {
        return Ok(bound);
    }
    let counts = l.enumerator()?.norm_counts(&bound, Some(point), opts)?;
    Ok(counts.into_keys().next().unwrap_or(bound))
}

/// Heuristic deep-hole search. Starts from random points and climbs the
/// distance-to-lattice function by coordinate moves on a grid of step
/// `1/den`. Returns the best point found (lattice coordinates) and its
/// squared distance. Not a certificate.
pub fn hole_search(
    l: &Lattice,
    restarts: usize,
    den: i64,
    seed: u64,
) -> Result<(Vec<Rational>, QSqrt2)> {
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = EnumOptions::default();
    let dist = |p: &[Rational]| distance_sq_to_lattice(l, p, opts);
    let mut best: Option<(Vec<Rational>, QSqrt2)> = None;
    for _ in 0..restarts.max(1) {
        let mut p: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(0..den), den)).collect();
        let mut d = dist(&p)?;
        loop {
            let mut improved = false;
            for i in 0..n {
                for step in [rat(1, den), rat(-1, den)] {
                    let mut cand = p.clone();
                    cand[i] = &cand[i] + &step;
                    let dc = dist(&cand)?;
                    if dc > d {
                        p = cand;
                        d = dc;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        if best.as_ref().is_none_or(|(_, bd)| d > *bd) {
            best = Some((p, d));
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Ordinate `log₂ δ + n(24 − n)/96` used to compare center densities across
/// dimensions.
pub fn density_ordinate(center_density: f64, n: usize) -> f64 {
    let n = n as f64;
    center_density.log2() + n * (24.0 - n) / 96.0
}

/// Basis of `{x ∈ Z^m : A·x ≡ 0 (mod p)}` for a prime `p`, with `A` given
/// by its rows.
pub fn congruence_sublattice(m: usize, conditions: &[Vec<i64>], p: i64) -> Vec<Vec<BigInt>> {
    // nullspace of A over F_p by Gaussian elimination
    let mut a: Vec<Vec<i64>> = conditions
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let inv = |x: i64| -> i64 {
        let mut r = 1i64;
        let mut b = x;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(pr) = (row..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let f = inv(a[row][col]);
        for x in a[row].iter_mut() {
            *x = *x * f % p;
        }
        for r in 0..a.len() {
            if r != row && a[r][col] != 0 {
                let t = a[r][col];
                for c in 0..m {
                    a[r][c] = (a[r][c] - t * a[row][c]).rem_euclid(p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut gens: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { p } else { 0 }).collect())
        .collect();
    for f in 0..m {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![0i64; m];
        v[f] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (-a[r][f]).rem_euclid(p);
        }
        gens.push(v);
    }
    hnf_basis(&bigint_rows(&gens))
}

/// Coxeter–Todd lattice: `{x ∈ Z[ω]^6 : x_i ≡ x_j (mod θ), Σx_i ≡ 0 (mod 3)}`
/// with `θ = ω − ω̄` and norms scaled by 2/3. Determinant 729, minimum 4.
pub fn coxeter_todd() -> Result<Lattice> {
    // coordinates (a_0, b_0, …, a_5, b_5) for x_i = a_i + b_i ω
    let mut conds = Vec::new();
    for i in 1..6 {
        let mut r = vec![0i64; 12];
        r[0] = 1;
        r[1] = 1;
        r[2 * i] = -1;
        r[2 * i + 1] = -1;
        conds.push(r);
    }
    let mut sa = vec![0i64; 12];
    let mut sb = vec![0i64; 12];
    for i in 0..6 {
        sa[2 * i] = 1;
        sb[2 * i + 1] = 1;
    }
    conds.push(sa);
    conds.push(sb);
    let basis = congruence_sublattice(12, &conds, 3);
    // |a + bω|² = a² − ab + b², times 2/3
    let form = Matrix::from_fn(12, 12, |i, j| {
        if i / 2 != j / 2 {
            QSqrt2::zero()
        } else if i == j {
            QSqrt2::frac(2, 3)
        } else {
            QSqrt2::frac(-1, 3)
        }
    });
    let p = int_rows_to_basis(&basis, &q(1))?;
    let (_, g) = lll_exact(&p.congruence(&form)?)?;
    Ok(Lattice::from_gram(g)?.with_name("K12"))
}

/// Barnes–Wall lattice: `{x ∈ Z^16 : x mod 2 ∈ RM(1,4), Σx ≡ 0 (mod 4)}`
/// with norms halved. Determinant 256, minimum 4.
pub fn barnes_wall_16() -> Result<Lattice> {
    let rm = crate::codes::reed_muller_1(4)?;
    let gens = sum_zero_mod4_generators(&rm)?;
    let basis = hnf_basis(&bigint_rows(&gens));
    let scale = &QSqrt2::sqrt2() * &QSqrt2::frac(1, 2);
    Ok(Lattice::from_basis(int_rows_to_basis(&basis, &scale)?)?.with_name("BW16"))
}

/// Lattice generated by `(u, v, 0), (u, −v, 0), (0, v, u)`, built from
/// `u²` and `v²` only.
pub fn uv_lattice(u_sq: &QSqrt2, v_sq: &QSqrt2) -> Result<Lattice> {
    if !u_sq.is_positive() || !v_sq.is_positive() {
        return Err(Error::Precondition("u² and v² must be positive".into()));
    }
    let s = u_sq + v_sq;
    let d = u_sq - v_sq;
    let g = Matrix::from_rows(vec![
        vec![s.clone(), d, v_sq.clone()],
        vec![u_sq - v_sq, s.clone(), -v_sq],
        vec![v_sq.clone(), -v_sq, s],
    ])?;
    Lattice::from_gram(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{best_code_10, golay24, qr18};
    use num_traits::ToPrimitive;

    #[test]
    fn checkerboard_basics() {
        let d4 = checkerboard(4).unwrap();
        assert_eq!(d4.determinant(), q(4));
        assert_eq!(d4.kissing_number(EnumOptions::default()).unwrap(), 24);
        let a3 = root_lattice_a(3).unwrap();
        assert_eq!(a3.determinant(), q(4));
    }

    #[test]
    fn lorentzian_vector_rules() {
        let w = leech_isotropic_vector();
        assert!(w.norm().is_zero());
        assert!(LorentzianVector::from_doubled([1; 26]).is_ok());
        let mut bad = [0i64; 26];
        bad[0] = 2;
        assert!(LorentzianVector::from_doubled(bad).is_err());
        let mut mixed = [2i64; 26];
        mixed[3] = 1;
        assert!(LorentzianVector::from_doubled(mixed).is_err());
    }

    #[test]
    fn construction_a_of_zero_code() {
        let c = BinaryCode::from_words(3, &[0]).unwrap();
        let p = construction_a(&c).unwrap();
        let inv = p.invariants(None, EnumOptions::default()).unwrap();
        assert_eq!(inv.min_dist_sq, q(4));
        assert_eq!(inv.center_density_exact, Some(QSqrt2::frac(1, 8)));
    }

    #[test]
    fn construction_a_best_code() {
        let p = construction_a(&best_code_10()).unwrap();
        assert_eq!(p.offsets().len(), 40);
        let inv = p.invariants(Some(&q(4)), EnumOptions::default()).unwrap();
        assert_eq!(inv.min_dist_sq, q(4));
        assert_eq!(inv.center_density_exact, Some(QSqrt2::frac(5, 128)));
    }

    #[test]
    fn golay_construction_a_lattice() {
        let l = construction_a_lattice(&golay24()).unwrap();
        assert_eq!(l.determinant(), QSqrt2::from_int(1 << 24));
        assert_eq!(l.min_norm(EnumOptions::default()).unwrap(), q(4));
    }

    #[test]
    fn bstar_predicate_and_offsets() {
        let b = qr18();
        let c = b.dual().unwrap();
        let p = construction_bstar(&b, &c).unwrap();
        assert_eq!(p.offsets().len(), 1024);
        let amb = p.offsets_ambient().unwrap();
        for o in amb.iter().take(50).chain(amb.iter().rev().take(50)) {
            let v: Vec<i64> = o.iter().map(|x| x.to_integer().to_i64().unwrap()).collect();
            assert!(bstar_contains(&b, &c, &v));
        }
        assert!(!bstar_contains(&b, &c, &[0i64; 18].map(|_| 1)));
        let zero = BinaryCode::from_words(18, &[0]).unwrap();
        let odd = BinaryCode::from_words(18, &[0, 1]).unwrap();
        assert!(construction_bstar(&zero, &odd).is_err());
    }

    #[test]
    fn stacking_d3_to_d4() {
        let d3 = checkerboard(3).unwrap();
        let hole = d3
            .coords_of(&[q(1), q(0), q(0)])
            .unwrap()
            .into_iter()
            .map(|x| x.as_rational().unwrap().clone())
            .collect::<Vec<_>>();
        let d4 = stack_layer(&d3, &hole, &q(2)).unwrap();
        assert_eq!(d4.determinant(), q(4));
        assert_eq!(d4.kissing_number(EnumOptions::default()).unwrap(), 24);
        // heights outside Q(√2)
        let z1 = integer_lattice(1).unwrap();
        let err = stack_layer(&z1, &[rat(1, 2)], &q(1)).unwrap_err();
        assert!(matches!(err, Error::Representation(_)));
        let two_z = scaled_integer_lattice(1, 2).unwrap();
        assert!(matches!(
            stack_layer(&two_z, &[rat(1, 2)], &q(4)).unwrap_err(),
            Error::Representation(_)
        ));
        assert!(stack_layer(&z1, &[rat(1, 2)], &QSqrt2::frac(1, 8)).is_err());
    }

    #[test]
    fn e7_to_e8_with_irrational_height() {
        let e7 = Lattice::from_int_gram(&[
            &[2, -1, 0, 0, 0, 0, 0],
            &[-1, 2, -1, 0, 0, 0, 0],
            &[0, -1, 2, -1, 0, 0, -1],
            &[0, 0, -1, 2, -1, 0, 0],
            &[0, 0, 0, -1, 2, -1, 0],
            &[0, 0, 0, 0, -1, 2, 0],
            &[0, 0, -1, 0, 0, 0, 2],
        ])
        .unwrap();
        assert_eq!(e7.determinant(), q(2));
        let inv = e7.gram().inverse().unwrap();
        let row = (0..7)
            .find(|&i| inv[(i, i)] == QSqrt2::frac(3, 2))
            .expect("a dual vector of norm 3/2");
        let hole: Vec<Rational> = (0..7)
            .map(|j| inv[(row, j)].as_rational().unwrap().clone())
            .collect();
        let (g, _, s2) = stacked_gram(&e7, &hole, &q(2)).unwrap();
        assert_eq!(s2, QSqrt2::frac(1, 2));
        let e8 = Lattice::from_gram(g).unwrap();
        assert_eq!(e8.determinant(), q(1));
        assert_eq!(e8.kissing_number(EnumOptions::default()).unwrap(), 240);
    }

    #[test]
    fn uv_family_determinant() {
        let l = uv_lattice(&q(1), &q(1)).unwrap();
        assert_eq!(l.determinant(), q(4));
        assert_eq!(l.kissing_number(EnumOptions::default()).unwrap(), 12);
        let b = uv_lattice(&q(2), &q(1)).unwrap();
        assert_eq!(b.kissing_number(EnumOptions::default()).unwrap(), 8);
    }

    #[test]
    fn ordinate_values() {
        assert!(density_ordinate(1.0, 24).abs() < 1e-15);
        assert!((density_ordinate(0.5, 1) - (-1.0 + 23.0 / 96.0)).abs() < 1e-15);
    }

    #[test]
    fn hole_search_on_integers() {
        let z2 = integer_lattice(2).unwrap();
        let (p, d) = hole_search(&z2, 2, 4, 7).unwrap();
        assert_eq!(d, QSqrt2::frac(1, 2));
        assert!(p.iter().all(|x| x.denom() == &BigInt::from(2)));
    }
}
