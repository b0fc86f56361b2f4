//! Truncated power series in several variables `q_α`, with exponents `α` in a
//! dual lattice and truncation by a linear grading `α ↦ [α, w]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{dot, int, is_integer, Rational};
use crate::error::{Error, Result};

/// Exact scalars a lattice series can carry.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// True when the scalar is a rational integer, or has integer coordinates.
    fn is_integral(&self) -> bool;

    fn neg(&self) -> Self {
        self.mul(&Self::from_rational(&int(-1)))
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_integral(&self) -> bool {
        is_integer(self)
    }
}

/// Series `Σ c_z q^z` over integer exponent vectors `z` (dual coordinates),
/// graded by `z · w` and known for all `z` with `0 ≤ z·w ≤ max_grade`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeQSeries<C> {
    grading: Vec<Rational>,
    max_grade: Rational,
    terms: BTreeMap<Vec<i64>, C>,
}

/// Smallest positive value of `z · w` over integer `z`.
pub fn grading_unit(w: &[Rational]) -> Result<Rational> {
    let num = w.iter().fold(BigInt::zero(), |g, x| g.gcd(x.numer()));
    if num.is_zero() {
        return Err(Error::NonPositiveGrading);
    }
    let den = w.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    Ok(Rational::new(num, den))
}

impl<C: Coefficient> LatticeQSeries<C> {
    /// The constant series 1 truncated at grade `cutoff · unit`.
    pub fn one(grading: Vec<Rational>, cutoff: &Rational) -> Result<Self> {
        let unit = grading_unit(&grading)?;
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; grading.len()], C::one());
        Ok(LatticeQSeries { max_grade: cutoff * unit, grading, terms })
    }

    /// The zero series with the same grading and truncation.
    pub fn zero_like(&self) -> Self {
        LatticeQSeries { grading: self.grading.clone(), max_grade: self.max_grade.clone(), terms: BTreeMap::new() }
    }

    pub fn grading(&self) -> &[Rational] {
        &self.grading
    }

    /// Largest grade kept, inclusive.
    pub fn max_grade(&self) -> &Rational {
        &self.max_grade
    }

    pub fn grade(&self, z: &[i64]) -> Rational {
        let z: Vec<Rational> = z.iter().map(|&x| int(x)).collect();
        dot(&z, &self.grading)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, C> {
        &self.terms
    }

    pub fn coefficient(&self, z: &[i64]) -> Result<C> {
        if self.grade(z) > self.max_grade {
            return Err(Error::Precision(format!("exponent {z:?} beyond grade {}", self.max_grade)));
        }
        Ok(self.terms.get(z).cloned().unwrap_or_else(C::zero))
    }

    /// Adds `c q^z`, dropping it beyond the truncation.
    pub fn add_term(&mut self, z: Vec<i64>, c: C) -> Result<()> {
        let g = self.grade(&z);
        if g.is_negative() || (Zero::is_zero(&g) && z.iter().any(|&x| x != 0)) {
            return Err(Error::NonPositiveGrading);
        }
        if g > self.max_grade || c.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(z).or_insert_with(C::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.grading != other.grading {
            return Err(Error::GradingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.truncate(&self.max_grade.clone().min(other.max_grade.clone()));
        for (z, c) in &other.terms {
            out.add_term(z.clone(), c.clone())?;
        }
        Ok(out)
    }

    /// Product truncated at the smaller of the two cutoffs.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let max_grade = self.max_grade.clone().min(other.max_grade.clone());
        let (a, b) = (self.graded_terms(), other.graded_terms());
        let mut acc: BTreeMap<Vec<i64>, C> = BTreeMap::new();
        for (ga, za, ca) in &a {
            for (gb, zb, cb) in &b {
                if ga + gb > max_grade {
                    break;
                }
                let z: Vec<i64> = za.iter().zip(zb.iter()).map(|(x, y)| x + y).collect();
                let e = acc.entry(z).or_insert_with(C::zero);
                *e = e.add(&ca.mul(cb));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LatticeQSeries { grading: self.grading.clone(), max_grade, terms: acc })
    }

    fn graded_terms(&self) -> Vec<(Rational, &Vec<i64>, &C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(z, c)| (self.grade(z), z, c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Keeps terms of grade at most `max_grade` (never raises the truncation).
    pub fn truncate(&self, max_grade: &Rational) -> Self {
        let max_grade = max_grade.clone().min(self.max_grade.clone());
        let terms = self.terms.iter().filter(|(z, _)| self.grade(z) <= max_grade).map(|(z, c)| (z.clone(), c.clone())).collect();
        LatticeQSeries { grading: self.grading.clone(), max_grade, terms }
    }

    /// Applies `f` to every coefficient, keeping grading and truncation.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LatticeQSeries<D> {
        let terms = self.terms.iter().map(|(z, c)| (z.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect();
        LatticeQSeries { grading: self.grading.clone(), max_grade: self.max_grade.clone(), terms }
    }

    /// True when every coefficient is integral.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(C::is_integral)
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> C {
        self.terms.get(&vec![0; self.grading.len()]).cloned().unwrap_or_else(C::zero)
    }
}

/// `(1 − ζ q_α)^e` expanded up to grade `max_grade` of `series_like`.
///
/// Negative `e` expands the geometric series; coefficients are the
/// generalized binomials `C(e, k)(−ζ)^k`.
pub fn lattice_binomial<C: Coefficient>(
    alpha: &[i64],
    zeta: &C,
    e: &BigInt,
    series_like: &LatticeQSeries<C>,
) -> Result<LatticeQSeries<C>> {
    if alpha.len() != series_like.grading.len() {
        return Err(Error::DimensionMismatch { expected: series_like.grading.len(), found: alpha.len() });
    }
    let step = series_like.grade(alpha);
    if !step.is_positive() {
        return Err(Error::NonPositiveGrading);
    }
    let mut out = series_like.zero_like();
    out.terms.insert(vec![0; alpha.len()], C::one());
    let minus_zeta = zeta.neg();
    let mut binom = <Rational as One>::one();
    let mut power = C::one();
    let mut k: i64 = 1;
    while &step * int(k) <= series_like.max_grade {
        binom = binom * Rational::from_integer(e - k + 1) / int(k);
        power = power.mul(&minus_zeta);
        if Zero::is_zero(&binom) {
            break;
        }
        let z: Vec<i64> = alpha.iter().map(|&a| a * k).collect();
        out.add_term(z, C::from_rational(&binom).mul(&power))?;
        k += 1;
    }
    Ok(out)
}

impl<C: Coefficient> fmt::Display for LatticeQSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<_> = self.terms.iter().map(|(z, c)| (self.grade(z), z, c)).collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
        for (g, z, c) in rows {
            let coords: Vec<String> = z.iter().map(i64::to_string).collect();
            writeln!(f, "[{}]\t{g}\t{c}", coords.join(","))?;
        }
        Ok(())
    }
}
