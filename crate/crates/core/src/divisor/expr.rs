use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::lattice::Coset;

/// A divisor symbol: `Z(m, μ)` with `m > 0`, or `ω`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Z { m: Rational, mu: Coset },
    Omega,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Z { m, mu } => write!(f, "Z({m},{mu})"),
            Symbol::Omega => write!(f, "ω"),
        }
    }
}

/// A formal rational combination of divisor symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DivisorExpr {
    terms: BTreeMap<Symbol, Rational>,
}

impl DivisorExpr {
    pub fn zero() -> Self {
        DivisorExpr::default()
    }

    pub fn omega() -> Self {
        let mut d = DivisorExpr::zero();
        d.add_symbol(Symbol::Omega, Rational::one());
        d
    }

    /// `Z(m, μ)` with `Z(0, 0) = −ω` and `Z(0, μ) = 0` for `μ ≠ 0`.
    pub fn z(m: &Rational, mu: &Coset) -> Result<Self> {
        let mut d = DivisorExpr::zero();
        d.add_z(m, mu, &Rational::one())?;
        Ok(d)
    }

    /// Adds `c · Z(m, μ)` with the rewriting rules of [`DivisorExpr::z`].
    pub fn add_z(&mut self, m: &Rational, mu: &Coset, c: &Rational) -> Result<()> {
        if m.is_negative() {
            return Err(Error::InvalidInput(format!("Z({m}, {mu}) has negative index")));
        }
        if m.is_zero() {
            if mu.is_zero() {
                self.add_symbol(Symbol::Omega, -c);
            }
            return Ok(());
        }
        self.add_symbol(Symbol::Z { m: m.clone(), mu: mu.clone() }, c.clone());
        Ok(())
    }

    pub fn add_symbol(&mut self, s: Symbol, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Symbol, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, s: &Symbol) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_symbol(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return DivisorExpr::zero();
        }
        DivisorExpr { terms: self.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect() }
    }

    /// Largest `m` among the `Z(m, μ)` symbols.
    pub fn max_index(&self) -> Option<Rational> {
        self.terms.keys().filter_map(|s| match s {
            Symbol::Z { m, .. } => Some(m.clone()),
            Symbol::Omega => None,
        }).max()
    }
}

/// One `coeff * symbol` line per term, in symbol order.
impl fmt::Display for DivisorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (s, c) in &self.terms {
            writeln!(f, "{c} * {s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn rewriting_rules() {
        let zero = Coset(vec![0]);
        let one = Coset(vec![1]);
        assert_eq!(DivisorExpr::z(&int(0), &zero).unwrap(), DivisorExpr::omega().scale(&int(-1)));
        assert!(DivisorExpr::z(&int(0), &one).unwrap().is_zero());
        assert!(DivisorExpr::z(&int(-1), &one).is_err());
        let a = DivisorExpr::z(&int(1), &zero).unwrap();
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.add(&DivisorExpr::omega().scale(&int(-24))).to_string(), "1 * Z(1,(0))\n-24 * ω\n");
        assert_eq!(DivisorExpr::zero().to_string(), "0\n");
    }
}
