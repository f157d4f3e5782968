//! Shadows of unimodular lattices, theta series in the invariant rings, and
//! the bounds on minimal norm that follow from them.

use std::sync::RwLock;

use num_complex::Complex64;
use num_traits::Zero;

use crate::catalog;
use crate::enumerate::EnumOptions;
use crate::error::{Error, Result};
use crate::intmat::hnf_basis;
use crate::intmat::IntMatrix;
use crate::isometry::{n_modular_witness, verify, IsometryOptions};
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::qseries::QSeries;
use crate::scalar::{rat, rat_int, FieldElement, QSqrt2, Rational};

fn integer_gram(l: &Lattice) -> Result<Matrix<i64>> {
    let mut out = Matrix::zeros(l.dim(), l.dim());
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            let x = &l.gram()[(i, j)];
            if !x.is_integer() {
                return Err(Error::Precondition("lattice is not integral".into()));
            }
            out[(i, j)] = num_traits::ToPrimitive::to_i64(&x.rat.to_integer())
                .ok_or(Error::Overflow("Gram entry"))?;
        }
    }
    Ok(out)
}

/// Even-norm sublattice with the rows (parent coordinates) spanning it.
#[derive(Clone, Debug)]
pub struct EvenSublattice {
    pub lattice: Lattice,
    pub rows: Vec<Vec<i64>>,
    /// The parent was already even and is returned unchanged.
    pub identity: bool,
}

/// `L₀ = {x ∈ L : x·x even}`, the kernel of `x ↦ Σ G_ii x_i (mod 2)`.
pub fn even_sublattice(l: &Lattice) -> Result<EvenSublattice> {
    let g = integer_gram(l)?;
    let n = l.dim();
    let odd: Vec<usize> = (0..n).filter(|&i| g[(i, i)].rem_euclid(2) == 1).collect();
    let Some(&pivot) = odd.first() else {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        return Ok(EvenSublattice {
            lattice: l.clone(),
            rows,
            identity: true,
        });
    };
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0i64; n];
        if i == pivot {
            v[i] = 2;
        } else {
            v[i] = 1;
            if odd.contains(&i) {
                v[pivot] = 1;
            }
        }
        gens.push(v);
    }
    let big: Vec<Vec<num_bigint::BigInt>> = gens
        .iter()
        .map(|r| r.iter().map(|&x| x.into()).collect())
        .collect();
    let rows: Vec<Vec<i64>> = hnf_basis(&big)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| num_traits::ToPrimitive::to_i64(&x).expect("small entries"))
                .collect()
        })
        .collect();
    let c = Matrix::from_rows(rows.clone())?.map(|&x| QSqrt2::from_int(x));
    let sub = Lattice::from_gram(c.congruence(l.gram())?)?;
    Ok(EvenSublattice {
        lattice: sub,
        rows,
        identity: false,
    })
}

/// The shadow `S(L)` of a unimodular lattice as a coset `L + rep`.
#[derive(Clone, Debug)]
pub struct ShadowDescription {
    pub parent: Lattice,
    /// Coset representative in parent coordinates (zero when `L` is even).
    pub coset_rep: Vec<Rational>,
    pub series: QSeries,
    pub even: bool,
}

/// Characteristic vector `u ∈ L` (parent coordinates, entries 0 or 1) with
/// `u·x ≡ x·x (mod 2)` for all `x ∈ L`.
pub fn characteristic_vector(l: &Lattice) -> Result<Vec<i64>> {
    if !l.is_unimodular() {
        return Err(Error::Precondition("lattice is not unimodular".into()));
    }
    let g = integer_gram(l)?;
    let inv = l.gram().inverse()?;
    let n = l.dim();
    // G·c ≡ diag(G) (mod 2)  ⇔  c ≡ G⁻¹·diag(G)
    (0..n)
        .map(|i| {
            let mut s = QSqrt2::zero();
            for j in 0..n {
                s += &(&inv[(i, j)] * &QSqrt2::from_int(g[(j, j)]));
            }
            let v = num_traits::ToPrimitive::to_i64(&s.rat.to_integer())
                .ok_or(Error::Overflow("characteristic vector"))?;
            Ok(v.rem_euclid(2))
        })
        .collect()
}

/// Shadow of a unimodular lattice, with its theta series below `cutoff`.
pub fn shadow(l: &Lattice, cutoff: &Rational, opts: EnumOptions) -> Result<ShadowDescription> {
    if !l.is_unimodular() {
        return Err(Error::Precondition(
            "shadow needs a unimodular lattice".into(),
        ));
    }
    if l.is_even() {
        return Ok(ShadowDescription {
            parent: l.clone(),
            coset_rep: vec![Rational::zero(); l.dim()],
            series: l.theta_series(cutoff, opts)?,
            even: true,
        });
    }
    let u = characteristic_vector(l)?;
    let rep: Vec<Rational> = u.iter().map(|&x| rat(x, 2)).collect();
    let bound = QSqrt2::from_rational(cutoff.clone());
    let counts = l.enumerator()?.norm_counts(&bound, Some(&rep), opts)?;
    let mut series = QSeries::zero(cutoff);
    for (norm, c) in counts {
        let r = norm
            .as_rational()
            .ok_or_else(|| Error::Representation("irrational shadow norm".into()))?;
        series.add_term(r, Rational::from_integer(c.into()))?;
    }
    Ok(ShadowDescription {
        parent: l.clone(),
        coset_rep: rep,
        series,
        even: false,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformCheck {
    pub max_deviation: f64,
    /// Cutoff actually used for both series.
    pub cutoff: Rational,
    /// Bound on the neglected tails, already scaled like the series.
    pub tail_bound: f64,
}

pub const TRANSFORM_TOLERANCE: f64 = 1e-9;
/// Largest cutoff tried before giving up with a precision error.
pub const MAX_TRANSFORM_CUTOFF: i64 = 64;

/// Bound on `Σ_{k ≥ cutoff} N(k)·r^k` for a set of points at mutual squared
/// distance ≥ `mu` with norms in `(1/4)Z`: balls of radius `√mu/2` around
/// points of norm ≤ t are disjoint and lie in a ball of radius `√t + √mu/2`.
fn tail_bound(n: usize, mu: f64, cutoff: f64, r: f64) -> f64 {
    let count = |t: f64| (1.0 + 2.0 * (t / mu).sqrt()).powi(n as i32);
    let mut total = 0.0;
    let mut k = cutoff;
    loop {
        let term = count(k) * r.powf(k);
        total += term;
        if term < total * 1e-18 || term < 1e-300 {
            // remaining terms shrink geometrically once past the peak
            let ratio = count(k + 0.25) / count(k) * r.powf(0.25);
            if ratio < 0.9 {
                total += term * ratio / (1.0 - ratio);
                return total;
            }
        }
        k += 0.25;
        if k > cutoff + 4096.0 {
            return f64::INFINITY;
        }
    }
}

/// Evaluates both sides of
/// `Θ_S(z) = (e^{πi/4}/√z)^n · Θ_L(1 − 1/z)` at each sample and returns the
/// largest deviation. The cutoff starts at `initial_cutoff` and is raised in
/// steps of 4 until the tails are provably below a tenth of the tolerance.
pub fn shadow_transform_check(
    l: &Lattice,
    z_samples: &[Complex64],
    initial_cutoff: &Rational,
    opts: EnumOptions,
) -> Result<TransformCheck> {
    if !l.is_unimodular() {
        return Err(Error::Precondition(
            "transform check needs a unimodular lattice".into(),
        ));
    }
    if initial_cutoff < &rat_int(8) {
        return Err(Error::Precondition("cutoff must be at least 8".into()));
    }
    if let Some(z) = z_samples.iter().find(|z| z.im < 1.0) {
        return Err(Error::Precondition(format!("sample {z} has Im z < 1")));
    }
    let n = l.dim();
    let mu = l.min_norm(opts)?.to_f64();
    let tails = |c: f64| -> f64 {
        z_samples
            .iter()
            .map(|z| {
                let w = Complex64::new(1.0, 0.0) - z.inv();
                let scale = z.norm().powf(-(n as f64) / 2.0);
                // shadow points are separated like lattice points
                let r_s = (-std::f64::consts::PI * z.im).exp();
                let r_l = (-std::f64::consts::PI * w.im).exp();
                tail_bound(n, mu, c, r_s) + scale * tail_bound(n, mu, c, r_l)
            })
            .fold(0.0, f64::max)
    };
    let mut cutoff = initial_cutoff.ceil().to_integer();
    let mut tail = tails(FieldElement::to_f64(&Rational::from_integer(
        cutoff.clone(),
    )));
    while tail > TRANSFORM_TOLERANCE / 10.0 {
        cutoff += 4;
        if cutoff > MAX_TRANSFORM_CUTOFF.into() {
            return Err(Error::Precision(format!(
                "series would need a cutoff above {MAX_TRANSFORM_CUTOFF} to reach {TRANSFORM_TOLERANCE:e}"
            )));
        }
        tail = tails(FieldElement::to_f64(&Rational::from_integer(
            cutoff.clone(),
        )));
    }
    let cutoff = Rational::from_integer(cutoff);
    let theta = l.theta_series(&cutoff, opts)?;
    let sh = shadow(l, &cutoff, opts)?.series;
    let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let mut worst: f64 = 0.0;
    for &z in z_samples {
        let lhs = sh.evaluate(z);
        let w = Complex64::new(1.0, 0.0) - z.inv();
        let factor = (phase / z.sqrt()).powi(n as i32);
        let rhs = factor * theta.evaluate(w);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(TransformCheck {
        max_deviation: worst,
        cutoff,
        tail_bound: tail,
    })
}

static E8_THETA: RwLock<Option<QSeries>> = RwLock::new(None);
static LEECH_THETA: RwLock<Option<QSeries>> = RwLock::new(None);

fn cached_theta(cell: &RwLock<Option<QSeries>>, name: &str, cutoff: &Rational) -> Result<QSeries> {
    if let Some(s) = cell.read().expect("theta cache").as_ref() {
        if &s.cutoff() >= cutoff {
            return Ok(s.truncate(cutoff));
        }
    }
    let l = catalog::get(name)?;
    let s = l.theta_series(cutoff, EnumOptions::default())?;
    let mut slot = cell.write().expect("theta cache");
    if slot.as_ref().is_none_or(|old| old.cutoff() < s.cutoff()) {
        *slot = Some(s.clone());
    }
    Ok(s)
}

/// `Θ_{E8}` below `cutoff`, enumerated once from the catalog and cached.
pub fn theta_e8(cutoff: &Rational) -> Result<QSeries> {
    cached_theta(&E8_THETA, "E8", cutoff)
}

/// `Θ` of the Leech lattice below `cutoff`, cached like [`theta_e8`].
pub fn theta_leech(cutoff: &Rational) -> Result<QSeries> {
    cached_theta(&LEECH_THETA, "Leech", cutoff)
}

/// Coefficients of a theta series in the monomial basis of an invariant ring.
///
/// Odd case: `Σ_j a_j Θ_Z^{n−8j} Θ_{E8}^j`, `0 ≤ j ≤ ⌊n/8⌋`.
/// Even case: `Σ_b a_b Θ_{E8}^{n/8−3b} Θ_{Λ24}^b`, `0 ≤ b ≤ ⌊n/24⌋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingExpression {
    pub n: usize,
    pub even: bool,
    pub coeffs: Vec<Rational>,
}

impl RingExpression {
    /// Basis monomials below `cutoff`.
    pub fn basis(n: usize, even: bool, cutoff: &Rational) -> Result<Vec<QSeries>> {
        if even {
            if n % 8 != 0 || n == 0 {
                return Err(Error::Precondition(
                    "even unimodular lattices need 8 | n".into(),
                ));
            }
            let e8 = theta_e8(cutoff)?;
            let leech = if n >= 24 {
                Some(theta_leech(cutoff)?)
            } else {
                None
            };
            Ok((0..=n / 24)
                .map(|b| {
                    let a = n / 8 - 3 * b;
                    let mut s = e8.pow(a as u32);
                    if b > 0 {
                        s = s.mul(&leech.as_ref().expect("n ≥ 24").pow(b as u32));
                    }
                    s
                })
                .collect())
        } else {
            if n == 0 {
                return Err(Error::Precondition("dimension must be positive".into()));
            }
            let z = QSeries::theta_z(cutoff);
            let e8 = theta_e8(cutoff)?;
            Ok((0..=n / 8)
                .map(|j| z.pow((n - 8 * j) as u32).mul(&e8.pow(j as u32)))
                .collect())
        }
    }

    /// `Σ a_j·basis_j` below `cutoff`.
    pub fn reconstruct(&self, cutoff: &Rational) -> Result<QSeries> {
        let basis = RingExpression::basis(self.n, self.even, cutoff)?;
        Ok(basis
            .iter()
            .zip(&self.coeffs)
            .fold(QSeries::zero(cutoff), |acc, (b, a)| acc.add(&b.scale(a))))
    }
}

/// Exponents matched when solving for the ring coefficients.
fn matching_exponents(n: usize, even: bool) -> Vec<i64> {
    if even {
        (0..=n / 24).map(|b| 2 * b as i64).collect()
    } else {
        (0..=n / 8).map(|j| j as i64).collect()
    }
}

/// Solves for the ring coefficients that reproduce `prefix`, then checks
/// every further coefficient the prefix carries.
pub fn express_theta_unimodular(prefix: &QSeries, n: usize, even: bool) -> Result<RingExpression> {
    let exps = matching_exponents(n, even);
    let need = exps.last().copied().unwrap_or(0);
    if prefix.cutoff_quarters() <= 4 * need {
        return Err(Error::Precondition(format!(
            "prefix must be known through q^{need}"
        )));
    }
    let cutoff = prefix.cutoff();
    let basis = RingExpression::basis(n, even, &cutoff)?;
    let k = exps.len();
    let m = Matrix::from_fn(k, k, |r, c| basis[c].coeff_int(exps[r]));
    let rhs: Vec<Rational> = exps.iter().map(|&e| prefix.coeff_int(e)).collect();
    // m·a = rhs  ⇔  a = rhs·(m⁻¹)ᵀ
    let inv = m.inverse()?.transpose();
    let coeffs = crate::matrix::vec_mat(&rhs, &inv);
    let expr = RingExpression { n, even, coeffs };
    let rebuilt = expr.reconstruct(&cutoff)?;
    if rebuilt != *prefix {
        return Err(Error::Construction("not a unimodular theta prefix".into()));
    }
    Ok(expr)
}

/// Theta series of the shadow predicted by the ring expression: in the odd
/// case each `Θ_Z` becomes `Θ_{Z+1/2}` and `Θ_{E8}` is unchanged; an even
/// lattice is its own shadow.
pub fn shadow_theta_from_ring(expr: &RingExpression, cutoff: &Rational) -> Result<QSeries> {
    if expr.even {
        return expr.reconstruct(cutoff);
    }
    let s = QSeries::theta_z_shadow(cutoff);
    let e8 = theta_e8(cutoff)?;
    Ok((0..=expr.n / 8)
        .zip(&expr.coeffs)
        .map(|(j, a)| {
            s.pow((expr.n - 8 * j) as u32)
                .mul(&e8.pow(j as u32))
                .scale(a)
        })
        .fold(QSeries::zero(cutoff), |acc, t| acc.add(&t)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No odd unimodular lattice has these parameters.
    Impossible,
    /// No contradiction found. `free_parameters` counts ring coefficients
    /// left undetermined by the forced prefix.
    Inconclusive { free_parameters: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub n: usize,
    pub min_norm: u64,
    pub verdict: Verdict,
    pub expression: Option<RingExpression>,
    pub theta: Option<QSeries>,
    pub shadow: Option<QSeries>,
    /// First offending `(series, exponent, coefficient)`.
    pub evidence: Option<(&'static str, Rational, Rational)>,
}

/// Tests whether an odd unimodular lattice of dimension `n` and minimal norm
/// at least `mu` can exist, by forcing `Θ = 1 + 0q + … + 0q^{mu−1}` and
/// checking that both `Θ` and the predicted shadow series have non-negative
/// integer coefficients below `cutoff`.
pub fn nonexistence_certificate(n: usize, mu: u64, cutoff: &Rational) -> Result<Certificate> {
    if !(1..=48).contains(&n) || mu == 0 {
        return Err(Error::Precondition("need 1 ≤ n ≤ 48 and mu ≥ 1".into()));
    }
    let unknowns = n / 8 + 1;
    let mut out = Certificate {
        n,
        min_norm: mu,
        verdict: Verdict::Inconclusive { free_parameters: 0 },
        expression: None,
        theta: None,
        shadow: None,
        evidence: None,
    };
    if (mu as usize) < unknowns {
        out.verdict = Verdict::Inconclusive {
            free_parameters: unknowns - mu as usize,
        };
        return Ok(out);
    }
    let cutoff = cutoff.max(&rat_int(mu as i64)).clone();
    // the first `unknowns` forced coefficients determine the expression
    let solve_cut = rat_int(unknowns as i64);
    let forced = QSeries::one(&solve_cut);
    let expr = express_theta_unimodular(&forced, n, false)?;
    let theta = expr.reconstruct(&cutoff)?;
    let shadow = shadow_theta_from_ring(&expr, &cutoff)?;
    // coefficients 1..mu−1 must vanish
    let bad_prefix = (1..mu as i64)
        .map(|e| (e, theta.coeff_int(e)))
        .find(|(_, c)| !c.is_zero());
    let evidence = if let Some((e, c)) = bad_prefix {
        Some(("theta", rat_int(e), c))
    } else if let Some((e, c)) = theta.first_invalid_count() {
        Some(("theta", e, c))
    } else {
        shadow.first_invalid_count().map(|(e, c)| ("shadow", e, c))
    };
    out.verdict = if evidence.is_some() {
        Verdict::Impossible
    } else {
        Verdict::Inconclusive { free_parameters: 0 }
    };
    out.evidence = evidence;
    out.expression = Some(expr);
    out.theta = Some(theta);
    out.shadow = Some(shadow);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Upper bound on the minimal norm of a unimodular lattice: `2⌊n/24⌋ + 2`,
/// except that odd lattices in dimension 23 have minimal norm at most 3.
pub fn extremal_bound(n: usize, parity: Parity) -> u64 {
    // dimension 23 exception for odd lattices
    if parity == Parity::Odd && n == 23 {
        return 3;
    }
    2 * (n as u64 / 24) + 2
}

/// The older bound `⌊n/8⌋ + 1` for odd unimodular lattices.
pub fn legacy_bound(n: usize) -> u64 {
    n as u64 / 8 + 1
}

/// Whether an integral unimodular lattice meets [`extremal_bound`].
pub fn is_extremal(l: &Lattice, opts: EnumOptions) -> Result<bool> {
    if !l.is_unimodular() {
        return Err(Error::Precondition(
            "extremality is defined for unimodular lattices".into(),
        ));
    }
    let parity = if l.is_even() {
        Parity::Even
    } else {
        Parity::Odd
    };
    let mu = l.min_norm(opts)?;
    Ok(mu == QSqrt2::from_int(extremal_bound(l.dim(), parity) as i64))
}

/// `U` with `U·(N·G⁻¹)·Uᵀ = G`, checked exactly, together with
/// `det G = N^{n/2}` for even `n`.
pub fn n_modular_check(
    l: &Lattice,
    big_n: u64,
    opts: IsometryOptions,
) -> Result<Option<IntMatrix>> {
    let Some(u) = n_modular_witness(l, big_n, opts)? else {
        return Ok(None);
    };
    let rescaled = l.dual()?.scaled(&QSqrt2::from_int(big_n as i64))?;
    verify(l, &rescaled, &u)?;
    if l.dim() % 2 == 0 {
        let expect = QSqrt2::from_int(big_n as i64).pow(l.dim() as u32 / 2);
        if l.determinant() != expect {
            return Err(Error::Construction(
                "N-modular witness with wrong determinant".into(),
            ));
        }
    }
    Ok(Some(u))
}

/// `u·x ≡ x·x (mod 2)` for a parent-coordinate vector `u`.
pub fn is_parity_vector(l: &Lattice, u: &[i64], x: &[i64]) -> bool {
    let g = l.gram();
    let mut ux = QSqrt2::zero();
    let mut xx = QSqrt2::zero();
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            let gij = &g[(i, j)];
            ux += &(gij * &QSqrt2::from_int(u[i] * x[j]));
            xx += &(gij * &QSqrt2::from_int(x[i] * x[j]));
        }
    }
    let d = &ux - &xx;
    d.is_integer() && (d.rat.to_integer() % num_bigint::BigInt::from(2)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::integer_lattice;

    fn cut(x: i64) -> Rational {
        rat_int(x)
    }

    #[test]
    fn even_sublattices() {
        let z = integer_lattice(1).unwrap();
        let e = even_sublattice(&z).unwrap();
        assert!(!e.identity);
        assert_eq!(e.lattice.gram()[(0, 0)], QSqrt2::from_int(4));
        let z2 = integer_lattice(2).unwrap();
        let e2 = even_sublattice(&z2).unwrap();
        assert_eq!(e2.lattice.determinant(), QSqrt2::from_int(4));
        assert!(e2.lattice.is_even());
        assert_eq!(
            e2.lattice.min_norm(EnumOptions::default()).unwrap(),
            QSqrt2::from_int(2)
        );
        let e8 = catalog::get("E8").unwrap();
        assert!(even_sublattice(&e8).unwrap().identity);
    }

    #[test]
    fn shadow_of_integers() {
        let z = integer_lattice(1).unwrap();
        let s = shadow(&z, &cut(7), EnumOptions::default()).unwrap();
        assert_eq!(s.series, QSeries::theta_z_shadow(&cut(7)));
        let z9 = integer_lattice(9).unwrap();
        let s9 = shadow(&z9, &cut(3), EnumOptions::default()).unwrap();
        assert_eq!(s9.series.valuation(), Some(rat(9, 4)));
        assert_eq!(s9.series.coeff(&rat(9, 4)), rat_int(512));
        let e8 = catalog::get("E8").unwrap();
        let se = shadow(&e8, &cut(5), EnumOptions::default()).unwrap();
        assert!(se.even);
        assert_eq!(se.series.coeff_int(2), rat_int(240));
    }

    #[test]
    fn shadow_of_non_unimodular_rejected() {
        let a2 = Lattice::from_int_gram(&[&[2, 1], &[1, 2]]).unwrap();
        assert!(shadow(&a2, &cut(4), EnumOptions::default()).is_err());
    }

    #[test]
    fn nine_dimensional_example() {
        let forced = QSeries::one(&cut(2));
        let e = express_theta_unimodular(&forced, 9, false).unwrap();
        assert_eq!(e.coeffs, vec![rat(-1, 8), rat(9, 8)]);
        let t = e.reconstruct(&cut(4)).unwrap();
        assert_eq!(t.coeff_int(1), rat_int(0));
        assert_eq!(t.coeff_int(2), rat_int(252));
        assert_eq!(t.coeff_int(3), rat_int(456));
        let s = shadow_theta_from_ring(&e, &cut(3)).unwrap();
        assert_eq!(s.coeff(&rat(1, 4)), rat(9, 4));
        assert_eq!(s.coeff(&rat(9, 4)), rat(1913, 4));
        let c = nonexistence_certificate(9, 2, &cut(4)).unwrap();
        assert_eq!(c.verdict, Verdict::Impossible);
        assert_eq!(c.evidence.unwrap().1, rat(1, 4));
    }

    #[test]
    fn certificate_verdicts() {
        let c = nonexistence_certificate(8, 1, &cut(4)).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive { free_parameters: 1 });
        // Z^n passes for mu = 1 in dimensions below 8
        let c = nonexistence_certificate(5, 1, &cut(4)).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive { free_parameters: 0 });
        // above the legacy bound the forced prefix is inconsistent
        let c = nonexistence_certificate(7, 2, &cut(4)).unwrap();
        assert_eq!(c.verdict, Verdict::Impossible);
    }

    #[test]
    fn prefix_consistency() {
        let z3 = integer_lattice(3).unwrap();
        let t = z3.theta_series(&cut(6), EnumOptions::default()).unwrap();
        let e = express_theta_unimodular(&t, 3, false).unwrap();
        assert_eq!(e.coeffs, vec![rat_int(1)]);
        let a2 = Lattice::from_int_gram(&[&[2, 1], &[1, 2]]).unwrap();
        let bad = a2.theta_series(&cut(6), EnumOptions::default()).unwrap();
        assert!(express_theta_unimodular(&bad, 2, false).is_err());
        let e8 = catalog::get("E8").unwrap();
        let t8 = e8.theta_series(&cut(6), EnumOptions::default()).unwrap();
        let ee = express_theta_unimodular(&t8, 8, true).unwrap();
        assert_eq!(ee.coeffs, vec![rat_int(1)]);
    }

    #[test]
    fn bounds_table() {
        for n in 1..=48 {
            assert!(extremal_bound(n, Parity::Even) >= 2);
            if n != 23 {
                assert_eq!(
                    extremal_bound(n, Parity::Even),
                    extremal_bound(n, Parity::Odd)
                );
            }
        }
        assert_eq!(extremal_bound(23, Parity::Odd), 3);
        assert_eq!(extremal_bound(24, Parity::Even), 4);
        assert_eq!(legacy_bound(9), 2);
    }

    #[test]
    fn transform_identity_small() {
        let z = integer_lattice(1).unwrap();
        let r = shadow_transform_check(
            &z,
            &[Complex64::new(0.0, 1.0), Complex64::new(0.5, 1.0)],
            &cut(12),
            EnumOptions::default(),
        )
        .unwrap();
        assert!(r.max_deviation < 1e-9, "{r:?}");
        assert!(shadow_transform_check(
            &z,
            &[Complex64::new(0.0, 0.5)],
            &cut(12),
            EnumOptions::default()
        )
        .is_err());
    }

    #[test]
    fn parity_vectors() {
        let z3 = integer_lattice(3).unwrap();
        let u = characteristic_vector(&z3).unwrap();
        assert_eq!(u, vec![1, 1, 1]);
        assert!(is_parity_vector(&z3, &u, &[1, 2, -3]));
        assert!(!is_parity_vector(&z3, &[1, 0, 0], &[0, 1, 0]));
    }

    #[test]
    fn modular_witnesses() {
        let a2 = Lattice::from_int_gram(&[&[2, 1], &[1, 2]]).unwrap();
        assert!(n_modular_check(&a2, 3, IsometryOptions::default())
            .unwrap()
            .is_some());
        let d4 = catalog::get("D4").unwrap();
        assert!(n_modular_check(&d4, 2, IsometryOptions::default())
            .unwrap()
            .is_some());
        let z4 = integer_lattice(4).unwrap();
        assert!(n_modular_check(&z4, 1, IsometryOptions::default())
            .unwrap()
            .is_some());
    }
}
