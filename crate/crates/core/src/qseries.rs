//! Truncated power series in `q` with exponents in (1/4)Z and exact rational
//! coefficients. Theta series of integral lattices and of their shadows live
//! here (`q = e^{πiz}`, so a vector of norm `m` contributes `q^m`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, FieldElement, Rational};

/// Exponents are stored in quarter units: `e` stands for `q^{e/4}`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<i64, Rational>,
    cutoff: i64,
}

/// Converts a rational exponent to quarter units, if it lies in (1/4)Z.
pub fn quarter_units(e: &Rational) -> Option<i64> {
    let four = Rational::from_integer(4.into());
    let x = e * four;
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

/// Smallest quarter count strictly above every exponent `< cutoff`.
fn cutoff_units(cutoff: &Rational) -> i64 {
    let x = cutoff * Rational::from_integer(4.into());
    x.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
}

impl QSeries {
    /// Empty series exact below `cutoff`.
    pub fn zero(cutoff: &Rational) -> Self {
        QSeries {
            terms: BTreeMap::new(),
            cutoff: cutoff_units(cutoff),
        }
    }

    pub fn one(cutoff: &Rational) -> Self {
        let mut s = Self::zero(cutoff);
        s.add_term_units(0, Rational::one());
        s
    }

    fn from_units(terms: BTreeMap<i64, Rational>, cutoff: i64) -> Self {
        let mut s = QSeries {
            terms: BTreeMap::new(),
            cutoff,
        };
        for (e, c) in terms {
            s.add_term_units(e, c);
        }
        s
    }

    fn add_term_units(&mut self, e: i64, c: Rational) {
        if e >= self.cutoff || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Adds `c·q^e`; terms at or above the cutoff are dropped.
    pub fn add_term(&mut self, e: &Rational, c: Rational) -> Result<()> {
        let u = quarter_units(e)
            .ok_or_else(|| Error::Representation(format!("exponent {e} is not in (1/4)Z")))?;
        self.add_term_units(u, c);
        Ok(())
    }

    pub fn cutoff(&self) -> Rational {
        Rational::new(self.cutoff.into(), 4.into())
    }

    pub fn cutoff_quarters(&self) -> i64 {
        self.cutoff
    }

    /// Coefficient of `q^e` (zero when absent).
    pub fn coeff(&self, e: &Rational) -> Rational {
        quarter_units(e)
            .and_then(|u| self.terms.get(&u).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff_int(&self, e: i64) -> Rational {
        self.terms
            .get(&(4 * e))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> {
        self.terms
            .iter()
            .map(|(&e, c)| (Rational::new(e.into(), 4.into()), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<Rational> {
        self.terms
            .keys()
            .next()
            .map(|&e| Rational::new(e.into(), 4.into()))
    }

    pub fn truncate(&self, cutoff: &Rational) -> Self {
        let c = cutoff_units(cutoff).min(self.cutoff);
        QSeries::from_units(self.terms.clone(), c)
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = QSeries::from_units(self.terms.clone(), cutoff);
        for (&e, c) in &other.terms {
            out.add_term_units(e, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> QSeries {
        QSeries::from_units(
            self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
            self.cutoff,
        )
    }

    /// Product truncated at the smaller cutoff.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = QSeries {
            terms: BTreeMap::new(),
            cutoff,
        };
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                if e1 + e2 >= cutoff {
                    break;
                }
                out.add_term_units(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> QSeries {
        let mut acc = QSeries {
            terms: BTreeMap::from([(0, Rational::one())]),
            cutoff: self.cutoff,
        };
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// First term whose coefficient is negative or non-integral.
    pub fn first_invalid_count(&self) -> Option<(Rational, Rational)> {
        self.terms()
            .find(|(_, c)| c.is_negative() || !c.is_integer())
            .map(|(e, c)| (e, c.clone()))
    }

    /// Sum of the stored terms at `q = e^{πiz}`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            let w = Complex64::new(0.0, std::f64::consts::PI) * z * FieldElement::to_f64(&e);
            acc += w.exp() * FieldElement::to_f64(c);
        }
        acc
    }

    /// `Θ_Z = Σ_m q^{m²}`.
    pub fn theta_z(cutoff: &Rational) -> QSeries {
        let c = cutoff_units(cutoff);
        let mut s = QSeries {
            terms: BTreeMap::new(),
            cutoff: c,
        };
        let mut m: i64 = 0;
        while 4 * m * m < c {
            let mult = if m == 0 { 1 } else { 2 };
            s.add_term_units(4 * m * m, Rational::from_integer(mult.into()));
            m += 1;
        }
        s
    }

    /// `Θ_{Z+1/2} = Σ_m q^{(2m+1)²/4}`, the shadow series of `Z`.
    pub fn theta_z_shadow(cutoff: &Rational) -> QSeries {
        let c = cutoff_units(cutoff);
        let mut s = QSeries {
            terms: BTreeMap::new(),
            cutoff: c,
        };
        let mut m: i64 = 0;
        while (2 * m + 1) * (2 * m + 1) < c {
            s.add_term_units((2 * m + 1) * (2 * m + 1), Rational::from_integer(2.into()));
            m += 1;
        }
        s
    }

    /// CSV-friendly rows `(exponent, coefficient)` as exact fraction strings.
    pub fn rows(&self) -> Vec<(String, String)> {
        self.terms()
            .map(|(e, c)| (format_rational(&e), format_rational(c)))
            .collect()
    }

    /// Largest common denominator of the coefficients.
    pub fn coefficient_denominator(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = format_rational(&mag);
            if e.is_zero() {
                f.write_str(&coef)?;
            } else {
                if !mag.is_one() {
                    write!(f, "({coef})")?;
                }
                if e.is_one() {
                    f.write_str("q")?;
                } else {
                    write!(f, "q^{}", format_rational(&e))?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", format_rational(&self.cutoff()))
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
