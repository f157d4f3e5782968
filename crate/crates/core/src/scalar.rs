//! Scalar fields used by the linear algebra layer.
//!
//! Exact work happens in [`QSqrt2`], the quadratic field Q(√2), which holds
//! every Gram entry the in-scope lattices need (including the m.c.c. entries
//! (1 ± √2)/2). Plain rationals embed as the `rad = 0` subfield. The generic
//! routines in [`crate::matrix`] only ask for [`FieldElement`], so they run
//! unchanged over `f32`, `f64`, [`Rational`] and [`QSqrt2`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Minimal field interface shared by floating point and exact scalars.
pub trait FieldElement:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Nearest `f64`.
    fn to_f64(&self) -> f64;

    /// Whether equality tests on this type are exact.
    fn is_exact() -> bool;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl FieldElement for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
}

impl FieldElement for f32 {
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn is_exact() -> bool {
        false
    }
}

impl FieldElement for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_exact() -> bool {
        true
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Element `rat + rad·√2` of the field Q(√2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub rat: Rational,
    pub rad: Rational,
}

impl QSqrt2 {
    pub fn new(rat: Rational, rad: Rational) -> Self {
        QSqrt2 { rat, rad }
    }

    pub fn from_rational(rat: Rational) -> Self {
        QSqrt2 {
            rat,
            rad: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// √2 itself.
    pub fn sqrt2() -> Self {
        QSqrt2 {
            rat: Rational::zero(),
            rad: Rational::one(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.rat.is_integer()
    }

    /// Galois conjugate `rat − rad·√2`.
    pub fn conj(&self) -> Self {
        QSqrt2 {
            rat: self.rat.clone(),
            rad: -self.rad.clone(),
        }
    }

    /// Field norm `rat² − 2·rad²`.
    pub fn field_norm(&self) -> Rational {
        &self.rat * &self.rat - Rational::from_integer(2.into()) * &self.rad * &self.rad
    }

    pub fn signum(&self) -> Ordering {
        let a = self.rat.cmp(&Rational::zero());
        let b = self.rad.cmp(&Rational::zero());
        match (a, b) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare rat² with 2·rad²
            (sa, _) => {
                let lhs = &self.rat * &self.rat;
                let rhs = Rational::from_integer(2.into()) * &self.rad * &self.rad;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.field_norm();
        if n.is_zero() {
            return Err(Error::Singular);
        }
        Ok(QSqrt2 {
            rat: &self.rat / &n,
            rad: -&self.rad / &n,
        })
    }

    /// Exact square root inside Q(√2), if one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        match self.signum() {
            Ordering::Less => return None,
            Ordering::Equal => return Some(Self::zero()),
            Ordering::Greater => {}
        }
        let two = Rational::from_integer(2.into());
        if self.rad.is_zero() {
            if let Some(r) = rational_sqrt(&self.rat) {
                return Some(Self::from_rational(r));
            }
            // y·√2 with 2y² = rat
            return rational_sqrt(&(&self.rat / &two)).map(|y| QSqrt2::new(Rational::zero(), y));
        }
        // (x + y√2)² = a + b√2  ⇔  x² + 2y² = a, 2xy = b
        let a = &self.rat;
        let b = &self.rad;
        let disc = rational_sqrt(&(a * a - &two * b * b))?;
        for x2 in [(a + &disc) / &two, (a - &disc) / &two] {
            if x2.is_zero() {
                continue;
            }
            if let Some(x) = rational_sqrt(&x2) {
                let y = b / (&two * &x);
                let cand = QSqrt2::new(x, y);
                if &(&cand * &cand) == self {
                    let cand = if cand.is_positive() { cand } else { -cand };
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Integer power.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Least common denominator of both components.
    pub fn denom_lcm(&self) -> BigInt {
        self.rat.denom().lcm(self.rad.denom())
    }
}

impl FieldElement for QSqrt2 {
    fn to_f64(&self) -> f64 {
        let a = FieldElement::to_f64(&self.rat);
        let b = FieldElement::to_f64(&self.rad);
        // Guard against cancellation: a + b√2 = (a² − 2b²)/(a − b√2).
        if a != 0.0 && b != 0.0 && (a > 0.0) != (b > 0.0) {
            let n = FieldElement::to_f64(&self.field_norm());
            let den = a - b * SQRT2;
            if den != 0.0 {
                return n / den;
            }
        }
        a + b * SQRT2
    }
    fn is_exact() -> bool {
        true
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::default()
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::from_int(1)
    }
}

impl From<Rational> for QSqrt2 {
    fn from(r: Rational) -> Self {
        QSqrt2::from_rational(r)
    }
}

impl From<i64> for QSqrt2 {
    fn from(n: i64) -> Self {
        QSqrt2::from_int(n)
    }
}

impl<'a> Add<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rat + &o.rat, &self.rad + &o.rad)
    }
}

impl<'a> Sub<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rat - &o.rat, &self.rad - &o.rad)
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        let two = Rational::from_integer(2.into());
        QSqrt2::new(
            &self.rat * &o.rat + two * &self.rad * &o.rad,
            &self.rat * &o.rad + &self.rad * &o.rat,
        )
    }
}

impl<'a> Div<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn div(self, o: &QSqrt2) -> QSqrt2 {
        self * &o.inverse().expect("division by zero in Q(sqrt2)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, o: QSqrt2) -> QSqrt2 {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, o: &QSqrt2) -> QSqrt2 {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.rat, -self.rad)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-&self.rat, -&self.rad)
    }
}

impl AddAssign<&QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, o: &QSqrt2) {
        self.rat += &o.rat;
        self.rad += &o.rad;
    }
}

impl SubAssign<&QSqrt2> for QSqrt2 {
    fn sub_assign(&mut self, o: &QSqrt2) {
        self.rat -= &o.rat;
        self.rad -= &o.rad;
    }
}

impl MulAssign<&QSqrt2> for QSqrt2 {
    fn mul_assign(&mut self, o: &QSqrt2) {
        *self = &*self * o;
    }
}

impl Mul<&Rational> for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, r: &Rational) -> QSqrt2 {
        QSqrt2::new(&self.rat * r, &self.rad * r)
    }
}

impl fmt::Display for QSqrt2 {
    /// `p/q`, or `p/q+r/s*sqrt2` when the irrational part is nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            return f.write_str(&format_rational(&self.rat));
        }
        let sign = if self.rad.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt2",
            format_rational(&self.rat),
            sign,
            format_rational(&self.rad.abs())
        )
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QSqrt2 {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/s*sqrt2`, `p/q-r/s*sqrt2` and `r/s*sqrt2`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix("*sqrt2") else {
            return parse_rational(&t).map(QSqrt2::from_rational);
        };
        // split at the last sign that is not at position 0
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        match split {
            None => Ok(QSqrt2::new(Rational::zero(), parse_rational(body)?)),
            Some(i) => {
                let r = parse_rational(&body[..i])?;
                let (sign, mag) = body[i..].split_at(1);
                let mut q = parse_rational(mag)?;
                if q.is_negative() {
                    return Err(Error::Parse(format!("bad Q(sqrt2) literal `{s}`")));
                }
                if sign == "-" {
                    q = -q;
                }
                Ok(QSqrt2::new(r, q))
            }
        }
    }
}

/// Sign of `x + y·√2` for integers, exactly.
pub fn sign_int_sqrt2(x: &BigInt, y: &BigInt) -> Ordering {
    let sx = x.sign();
    let sy = y.sign();
    let ord = |s: Sign| match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    };
    match (sx, sy) {
        (Sign::NoSign, s) | (s, Sign::NoSign) => ord(s),
        (a, b) if a == b => ord(a),
        (a, _) => {
            let lhs = x * x;
            let rhs = BigInt::from(2) * y * y;
            match lhs.cmp(&rhs) {
                Ordering::Greater => ord(a),
                Ordering::Less => ord(a).reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// Sign of `x + y·√2` for `i128` values, falling back to big integers when
/// the squares would overflow.
pub fn sign_i128_sqrt2(x: i128, y: i128) -> Ordering {
    if y == 0 {
        return x.cmp(&0);
    }
    if x == 0 {
        return y.cmp(&0);
    }
    if (x > 0) == (y > 0) {
        return x.cmp(&0);
    }
    match (
        x.checked_mul(x),
        y.checked_mul(y).and_then(|v| v.checked_mul(2)),
    ) {
        (Some(l), Some(r)) => match l.cmp(&r) {
            Ordering::Greater => x.cmp(&0),
            Ordering::Less => y.cmp(&0),
            Ordering::Equal => Ordering::Equal,
        },
        _ => sign_int_sqrt2(&BigInt::from(x), &BigInt::from(y)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QSqrt2 {
        QSqrt2::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn parse_and_display() {
        let x: QSqrt2 = "1/2+1/2*sqrt2".parse().unwrap();
        assert_eq!(x, q((1, 2), (1, 2)));
        assert_eq!(x.to_string(), "1/2+1/2*sqrt2");
        let y: QSqrt2 = "1/2-1/2*sqrt2".parse().unwrap();
        assert_eq!(y, x.conj());
        assert_eq!(y.to_string(), "1/2-1/2*sqrt2");
        let z: QSqrt2 = "-3*sqrt2".parse().unwrap();
        assert_eq!(z, q((0, 1), (-3, 1)));
        assert_eq!("7".parse::<QSqrt2>().unwrap(), QSqrt2::from_int(7));
        assert_eq!("-1/3".parse::<QSqrt2>().unwrap(), QSqrt2::frac(-1, 3));
        assert!("1/0".parse::<QSqrt2>().is_err());
        assert!("x".parse::<QSqrt2>().is_err());
    }

    #[test]
    fn ordering_handles_mixed_signs() {
        // 1.5 − √2 ≈ 0.0858 > 0
        assert!(q((3, 2), (-1, 1)).is_positive());
        // 1.4 − √2 < 0
        assert_eq!(q((7, 5), (-1, 1)).signum(), Ordering::Less);
        assert!(QSqrt2::sqrt2() > QSqrt2::frac(141, 100));
        assert!(QSqrt2::sqrt2() < QSqrt2::frac(142, 100));
    }

    #[test]
    fn sqrt_exact_cases() {
        assert_eq!(QSqrt2::from_int(2).sqrt_exact(), Some(QSqrt2::sqrt2()));
        assert_eq!(QSqrt2::frac(9, 4).sqrt_exact(), Some(QSqrt2::frac(3, 2)));
        assert_eq!(QSqrt2::from_int(3).sqrt_exact(), None);
        assert_eq!(QSqrt2::frac(3, 4).sqrt_exact(), None);
        // (1 + √2)² = 3 + 2√2
        assert_eq!(q((3, 1), (2, 1)).sqrt_exact(), Some(q((1, 1), (1, 1))));
        // √2 itself has no square root in the field
        assert_eq!(QSqrt2::sqrt2().sqrt_exact(), None);
        assert_eq!(QSqrt2::from_int(-4).sqrt_exact(), None);
    }

    #[test]
    fn float_embedding_of_conjugate_pair() {
        let x = q((1, 1), (1, 1));
        assert!((x.to_f64() - (1.0 + SQRT2)).abs() < 1e-15);
        let y = x.conj();
        assert!((y.to_f64() - (1.0 - SQRT2)).abs() < 1e-15);
    }

    fn arb() -> impl Strategy<Value = QSqrt2> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| q((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb(), y in arb()) {
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !x.is_zero() {
                let inv = x.inverse().unwrap();
                prop_assert_eq!(&x * &inv, QSqrt2::one());
                prop_assert_eq!(&(&y / &x) * &x, y.clone());
            }
            let r: QSqrt2 = x.to_string().parse().unwrap();
            prop_assert_eq!(r, x.clone());
        }

        #[test]
        fn order_matches_float(x in arb(), y in arb()) {
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
            }
            let sq = &x * &x;
            let root = sq.sqrt_exact().unwrap();
            prop_assert_eq!(&root * &root, sq);
        }

        #[test]
        fn int_sign_agrees_with_big(x in -10_000i128..10_000, y in -10_000i128..10_000) {
            prop_assert_eq!(
                sign_i128_sqrt2(x, y),
                sign_int_sqrt2(&BigInt::from(x), &BigInt::from(y))
            );
            let f = x as f64 + y as f64 * SQRT2;
            if f.abs() > 1e-6 {
                prop_assert_eq!(sign_i128_sqrt2(x, y), f.partial_cmp(&0.0).unwrap());
            }
        }
    }
}
