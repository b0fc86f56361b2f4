use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, is_integer, Rational};
use crate::error::{Error, Result};

/// A truncated Laurent series in `q` with exponents in `(1/L)·Z`.
///
/// Coefficients are known exactly for every exponent below the precision;
/// absent keys below the precision are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracQSeries {
    denominator: i64,
    /// exponent·L → nonzero coefficient
    terms: BTreeMap<i64, Rational>,
    /// exclusive bound, in units of 1/L
    precision: i64,
}

impl FracQSeries {
    /// The zero series known below `precision / denominator`.
    pub fn zero(denominator: i64, precision: i64) -> Self {
        assert!(denominator > 0, "exponent denominator must be positive");
        FracQSeries { denominator, terms: BTreeMap::new(), precision }
    }

    pub fn one(precision: i64) -> Self {
        Self::from_integer_coeffs(0, &[1], precision)
    }

    /// `Σ coeffs[k] q^(start + k)` with integer exponents and precision.
    pub fn from_integer_coeffs(start: i64, coeffs: &[i64], precision: i64) -> Self {
        let mut s = Self::zero(1, precision);
        for (k, &c) in coeffs.iter().enumerate() {
            s.set(start + k as i64, int(c));
        }
        s
    }

    /// Builds a series from `(exponent numerator, coefficient)` pairs.
    pub fn from_terms(denominator: i64, terms: impl IntoIterator<Item = (i64, Rational)>, precision: i64) -> Self {
        let mut s = Self::zero(denominator, precision);
        for (e, c) in terms {
            let old = s.terms.remove(&e).unwrap_or_else(Rational::zero);
            s.set(e, old + c);
        }
        s
    }

    /// Sets the coefficient at exponent `e / L`; exponents at or above the
    /// precision are ignored.
    pub fn set(&mut self, e: i64, c: Rational) {
        if e >= self.precision {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn precision_numerator(&self) -> i64 {
        self.precision
    }

    /// Exclusive precision bound as a rational exponent.
    pub fn precision(&self) -> Rational {
        Rational::new(BigInt::from(self.precision), BigInt::from(self.denominator))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rational> {
        self.terms.keys().next().map(|&e| self.exponent(e))
    }

    /// Lower support bound: the valuation, or the precision for a series known to vanish.
    pub fn m_min(&self) -> Rational {
        self.valuation().unwrap_or_else(|| self.precision())
    }

    fn valuation_numerator(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(self.precision)
    }

    fn exponent(&self, e: i64) -> Rational {
        Rational::new(BigInt::from(e), BigInt::from(self.denominator))
    }

    /// Nonzero terms as `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (self.exponent(e), c))
    }

    /// Nonzero terms keyed by exponent numerator over [`Self::denominator`].
    pub fn raw_terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^e`; an error if `e` is at or beyond the precision.
    pub fn coefficient(&self, e: &Rational) -> Result<Rational> {
        if e >= &self.precision() {
            return Err(Error::Precision(format!("coefficient of q^{e} requested, series known below q^{}", self.precision())));
        }
        let scaled = e * int(self.denominator);
        if !is_integer(&scaled) {
            return Ok(Rational::zero());
        }
        let k = scaled.to_integer().to_i64().ok_or_else(|| Error::Precision("exponent out of range".into()))?;
        Ok(self.terms.get(&k).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient of an integer power of `q`.
    pub fn coeff(&self, e: i64) -> Result<Rational> {
        self.coefficient(&int(e))
    }

    /// Same series with exponent denominator `denominator` (a multiple of the current one).
    pub fn with_denominator(&self, denominator: i64) -> Self {
        assert!(denominator % self.denominator == 0, "denominator must be a multiple");
        let f = denominator / self.denominator;
        FracQSeries {
            denominator,
            terms: self.terms.iter().map(|(&e, c)| (e * f, c.clone())).collect(),
            precision: self.precision * f,
        }
    }

    /// Same series over the smallest exponent denominator its support allows.
    /// The precision rounds up to that grid, so exponents off the grid are
    /// asserted to vanish.
    pub fn normalized(&self) -> Self {
        let g = self.terms.keys().fold(self.denominator, |g, &e| g.gcd(&e));
        FracQSeries {
            denominator: self.denominator / g,
            terms: self.terms.iter().map(|(&e, c)| (e / g, c.clone())).collect(),
            precision: Integer::div_ceil(&self.precision, &g),
        }
    }

    /// Re-expresses both series over a common exponent denominator.
    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = self.denominator.lcm(&other.denominator);
        (self.with_denominator(l), other.with_denominator(l))
    }

    /// Keeps only exponents below `precision` (a rational bound, lowered never raised).
    pub fn truncate(&self, precision: &Rational) -> Self {
        let bound = (precision * int(self.denominator)).ceil().to_integer().to_i64().unwrap_or(i64::MAX);
        let bound = bound.min(self.precision);
        FracQSeries {
            denominator: self.denominator,
            terms: self.terms.range(..bound).map(|(&e, c)| (e, c.clone())).collect(),
            precision: bound,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = FracQSeries::zero(a.denominator, a.precision.min(b.precision));
        for (&e, c) in a.terms.iter().chain(b.terms.iter()) {
            if e < out.precision {
                let old = out.terms.remove(&e).unwrap_or_else(Rational::zero);
                out.set(e, old + c);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = FracQSeries::zero(self.denominator, self.precision);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(&e, x)| (e, x * c)).collect();
        }
        out
    }

    /// Multiplies by `q^(e/L)` for the series' own denominator `L`.
    pub fn shift(&self, e: i64) -> Self {
        FracQSeries {
            denominator: self.denominator,
            terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect(),
            precision: self.precision + e,
        }
    }

    /// Multiplies by `q^e` for a rational `e`.
    pub fn shift_by(&self, e: &Rational) -> Self {
        let l = self.denominator.lcm(&e.denom().to_i64().expect("exponent denominator fits i64"));
        let s = self.with_denominator(l);
        let k = (e * int(l)).to_integer().to_i64().expect("exponent fits i64");
        s.shift(k)
    }

    /// Cauchy product, known below `min(B_a + v(b), B_b + v(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let precision = (a.precision + b.valuation_numerator()).min(b.precision + a.valuation_numerator());
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&ea, ca) in &a.terms {
            for (&eb, cb) in &b.terms {
                let e = ea + eb;
                if e >= precision {
                    break;
                }
                *acc.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        FracQSeries { denominator: a.denominator, terms: acc, precision }
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            let rel = self.precision - self.valuation_numerator();
            return FracQSeries::from_terms(self.denominator, [(0, Rational::one())], rel);
        }
        let mut out = self.clone();
        for _ in 1..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse, known to the same relative precision.
    pub fn invert(&self) -> Result<Self> {
        let Some((&v, lead)) = self.terms.iter().next() else {
            return Err(Error::ZeroLeadingCoefficient);
        };
        let rel = self.precision - v;
        let lead_inv = lead.recip();
        let a: Vec<Rational> = (0..rel).map(|k| self.terms.get(&(v + k)).cloned().unwrap_or_else(Rational::zero)).collect();
        let mut b: Vec<Rational> = Vec::with_capacity(rel as usize);
        b.push(lead_inv.clone());
        for k in 1..rel as usize {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !a[j].is_zero() {
                    s += &a[j] * &b[k - j];
                }
            }
            b.push(-&lead_inv * s);
        }
        let mut out = FracQSeries::zero(self.denominator, -v + rel);
        for (k, c) in b.into_iter().enumerate() {
            out.set(-v + k as i64, c);
        }
        Ok(out)
    }

    /// True when every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(is_integer)
    }

    /// Coefficients at the integer exponents `start..end`, zero-filled.
    pub fn integer_coefficients(&self, start: i64, end: i64) -> Result<Vec<Rational>> {
        (start..end).map(|e| self.coeff(e)).collect()
    }
}

impl fmt::Display for FracQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.precision())
    }
}
