use num_traits::{Signed, Zero};

use crate::arith::{frac_part, Rational};
use crate::error::{Error, Result};
use crate::lattice::{Coset, DiscriminantForm};
use crate::series::{FracQSeries, VectorQSeries};

/// A weakly holomorphic vector-valued form, given by its Fourier
/// coefficients `c(m, μ)` up to a precision.
#[derive(Debug, Clone, PartialEq)]
pub struct WHForm {
    pub form: DiscriminantForm,
    pub weight: Rational,
    pub series: VectorQSeries,
}

impl WHForm {
    pub fn new(form: DiscriminantForm, weight: Rational, series: VectorQSeries) -> Self {
        WHForm { form, weight, series }
    }

    /// A form on the trivial discriminant form.
    pub fn scalar(form: DiscriminantForm, weight: Rational, series: FracQSeries) -> Self {
        let zero = form.zero();
        WHForm { form, weight, series: VectorQSeries::scalar(zero, series) }
    }

    pub fn coefficient(&self, m: &Rational, mu: &Coset) -> Result<Rational> {
        self.series.coefficient(m, mu)
    }

    pub fn precision(&self) -> &Rational {
        self.series.precision()
    }

    /// Nonzero `c(m, μ)` with `m < 0`.
    pub fn principal_part(&self) -> Vec<(Rational, Coset, Rational)> {
        self.series.nonzero_terms().into_iter().filter(|(m, _, _)| m.is_negative()).collect()
    }

    /// Largest `|m|` over the principal part, or 0.
    pub fn pole_order(&self) -> Rational {
        self.principal_part().iter().map(|(m, _, _)| -m).max().unwrap_or_else(Rational::zero)
    }

    /// `c(0, 0)`.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Rational::zero(), &self.form.zero()).unwrap_or_else(|_| Rational::zero())
    }

    /// True when every nonzero `c(m, μ)` has `m ≡ Q(μ) mod 1`.
    pub fn check_support(&self) -> bool {
        self.series
            .nonzero_terms()
            .iter()
            .all(|(m, mu, _)| self.form.contains(mu) && frac_part(&(m - self.form.q(mu))).is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.series.is_integral()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WHForm { form: self.form.clone(), weight: self.weight.clone(), series: self.series.scale(c) }
    }

    pub(crate) fn require_integral(&self) -> Result<()> {
        if self.is_integral() {
            Ok(())
        } else {
            Err(Error::NonIntegral("some coefficient c(m, μ) is not an integer".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::series::inverse_delta;

    #[test]
    fn support_and_integrality() {
        let d = DiscriminantForm::trivial();
        let f = WHForm::scalar(d.clone(), int(0), inverse_delta(5));
        assert!(f.check_support());
        assert!(f.is_integral());
        assert_eq!(f.pole_order(), int(1));
        assert_eq!(f.constant_term(), int(24));
        assert!(!f.scale(&rat(1, 48)).is_integral());

        let half = FracQSeries::from_terms(2, [(1, int(1))], 4);
        assert!(!WHForm::scalar(d.clone(), int(0), half).check_support());
        let zero = WHForm::scalar(d, int(0), FracQSeries::zero(1, 3));
        assert!(zero.is_integral());
        assert!(zero.principal_part().is_empty());
    }
}
