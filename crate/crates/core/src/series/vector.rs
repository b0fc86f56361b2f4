use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{int, Rational};
use crate::lattice::Coset;
use crate::series::{classical::delta_series, FracQSeries};

/// A vector-valued q-series: one [`FracQSeries`] per discriminant coset.
/// Cosets without an entry are identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorQSeries {
    components: BTreeMap<Coset, FracQSeries>,
    precision: Rational,
}

impl VectorQSeries {
    pub fn new(precision: Rational) -> Self {
        VectorQSeries { components: BTreeMap::new(), precision }
    }

    /// Inserts a component, lowering the common precision if needed.
    pub fn insert(&mut self, mu: Coset, series: FracQSeries) {
        if series.precision() < self.precision {
            self.precision = series.precision();
            for s in self.components.values_mut() {
                *s = s.truncate(&self.precision);
            }
        }
        let series = series.truncate(&self.precision);
        self.components.insert(mu, series);
    }

    pub fn scalar(mu: Coset, series: FracQSeries) -> Self {
        let mut v = VectorQSeries::new(series.precision());
        v.insert(mu, series);
        v
    }

    pub fn component(&self, mu: &Coset) -> Option<&FracQSeries> {
        self.components.get(mu)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Coset, &FracQSeries)> {
        self.components.iter()
    }

    /// Common exclusive precision bound.
    pub fn precision(&self) -> &Rational {
        &self.precision
    }

    /// `c(m, μ)`; zero for absent cosets below the precision.
    pub fn coefficient(&self, m: &Rational, mu: &Coset) -> crate::Result<Rational> {
        match self.components.get(mu) {
            Some(s) => s.coefficient(m),
            None if m < &self.precision => Ok(Rational::zero()),
            None => Err(crate::Error::Precision(format!("coefficient of q^{m} beyond precision {}", self.precision))),
        }
    }

    /// Every nonzero coefficient as `(m, μ, c)`, ordered by coset then exponent.
    pub fn nonzero_terms(&self) -> Vec<(Rational, Coset, Rational)> {
        self.components
            .iter()
            .flat_map(|(mu, s)| s.terms().map(move |(m, c)| (m, mu.clone(), c.clone())))
            .collect()
    }

    pub fn map(&self, f: impl Fn(&FracQSeries) -> FracQSeries) -> Self {
        let mut out = VectorQSeries::new(self.precision.clone());
        let mapped: Vec<_> = self.components.iter().map(|(mu, s)| (mu.clone(), f(s))).collect();
        if mapped.is_empty() {
            return out;
        }
        out.precision = mapped.iter().map(|(_, s)| s.precision()).min().unwrap();
        for (mu, s) in mapped {
            out.components.insert(mu, s.truncate(&out.precision));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|s| s.scale(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.clone().min(other.precision.clone());
        let mut out = VectorQSeries::new(precision.clone());
        let keys: std::collections::BTreeSet<&Coset> = self.components.keys().chain(other.components.keys()).collect();
        for mu in keys {
            let s = match (self.components.get(mu), other.components.get(mu)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.components.insert(mu.clone(), s.truncate(&precision));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    /// Multiplies every component by a scalar-valued series.
    pub fn mul_scalar_series(&self, s: &FracQSeries) -> Self {
        let mut out = self.map(|c| c.mul(s));
        if self.components.is_empty() {
            // an identically zero form stays zero, with the product's precision shift
            let shift = s.m_min();
            out.precision = &self.precision + shift;
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.components.values().all(FracQSeries::is_integral)
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(FracQSeries::is_zero)
    }
}

/// `f / (24Δ)` componentwise. The result is known one power of `q` less far
/// than `f`, and its principal part reaches one power further down.
pub fn divide_by_24delta(f: &VectorQSeries) -> VectorQSeries {
    // Δ is needed to relative precision B − m_min + 1 for the product to be
    // limited only by f's precision.
    let lowest = f
        .components()
        .filter_map(|(_, s)| s.valuation())
        .min()
        .unwrap_or_else(|| f.precision().clone());
    let span = (f.precision() - &lowest).ceil().to_integer();
    let b = i64::try_from(span).unwrap_or(0).max(0) + 3;
    let inv = delta_series(b).scale(&int(24)).invert().expect("Δ has a nonzero leading coefficient");
    f.mul_scalar_series(&inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::classical::inverse_delta;

    #[test]
    fn division_of_24_delta_is_one() {
        let mu = Coset(vec![]);
        let f = VectorQSeries::scalar(mu.clone(), delta_series(8).scale(&int(24)));
        let g = divide_by_24delta(&f);
        assert_eq!(g.component(&mu).unwrap(), &FracQSeries::one(8));
        assert_eq!(g.precision(), &int(8));
    }

    #[test]
    fn division_of_one() {
        let mu = Coset(vec![]);
        let f = VectorQSeries::scalar(mu.clone(), FracQSeries::one(6));
        let g = divide_by_24delta(&f);
        let s = g.component(&mu).unwrap();
        assert_eq!(s.precision(), int(5));
        assert_eq!(s.coeff(-1).unwrap(), Rational::new(1.into(), 24.into()));
        assert_eq!(s.coeff(0).unwrap(), int(1));
        assert_eq!(s.coeff(1).unwrap(), Rational::new(27.into(), 2.into()));
        assert!(!g.is_integral());
        // scaling by 24 restores integrality
        let h = divide_by_24delta(&f.scale(&int(24)));
        assert!(h.is_integral());
        assert_eq!(h.component(&mu).unwrap(), &inverse_delta(4));
    }
}
