//! Representation numbers and theta series of positive definite lattices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::arith::{common_denominator, int, Rational, RatMatrix};
use crate::error::{Error, Result};
use crate::lattice::enumerate::{for_each_short_vector, Congruence};
use crate::lattice::{Coset, DiscriminantForm, GramLattice};
use crate::series::FracQSeries;

/// The form `x ↦ Q(x)` on `μ + L` rewritten on integer vectors `y = δ x`,
/// with the congruence `y ≡ δ μ̃ (mod δ)`.
fn coset_form(lattice: &GramLattice, rep: &[Rational]) -> (RatMatrix, Option<Congruence>, i64) {
    let delta = common_denominator(rep).to_i64().expect("coset denominator fits i64");
    let scale = int(2 * delta * delta);
    let a: RatMatrix = lattice.gram_rat().into_iter().map(|r| r.into_iter().map(|x| x / &scale).collect()).collect();
    if delta == 1 {
        return (a, None, 1);
    }
    let residues = rep
        .iter()
        .map(|x| (x * int(delta)).to_integer().to_i64().unwrap().rem_euclid(delta))
        .collect();
    (a, Some(Congruence { modulus: delta, residues }), delta)
}

fn require_definite(lattice: &GramLattice) -> Result<()> {
    if lattice.is_positive_definite() {
        Ok(())
    } else {
        Err(Error::NotPositiveDefinite)
    }
}

/// Visits every `λ ∈ μ + L` with `Q(λ) ≤ bound`, passing lattice coordinates and `Q(λ)`.
pub fn for_each_coset_vector(
    lattice: &GramLattice,
    form: &DiscriminantForm,
    mu: &Coset,
    bound: &Rational,
    mut visit: impl FnMut(Vec<Rational>, &Rational),
) -> Result<()> {
    require_definite(lattice)?;
    let rep = form.representative(mu);
    let (a, congruence, delta) = coset_form(lattice, &rep);
    let d = int(delta);
    for_each_short_vector(&a, bound, congruence.as_ref(), |y, q| {
        visit(y.iter().map(|&v| int(v) / &d).collect(), q);
    })
}

/// `R_L(m, μ) = {λ ∈ μ + L : Q(λ) = m}`, sorted lexicographically.
pub fn short_vectors(lattice: &GramLattice, m: &Rational, mu: &Coset) -> Result<Vec<Vec<Rational>>> {
    let form = DiscriminantForm::of(lattice)?;
    if !form.contains(mu) {
        return Err(Error::IncompatibleDiscriminant(format!("{mu} is not a coset")));
    }
    let mut out = Vec::new();
    for_each_coset_vector(lattice, &form, mu, m, |x, q| {
        if q == m {
            out.push(x);
        }
    })?;
    out.sort();
    Ok(out)
}

/// `m ↦ r_L(m, μ)` for all `m ≤ bound`.
pub fn representation_numbers(lattice: &GramLattice, mu: &Coset, bound: &Rational) -> Result<BTreeMap<Rational, u64>> {
    let form = DiscriminantForm::of(lattice)?;
    if !form.contains(mu) {
        return Err(Error::IncompatibleDiscriminant(format!("{mu} is not a coset")));
    }
    let mut counts = BTreeMap::new();
    for_each_coset_vector(lattice, &form, mu, bound, |_, q| *counts.entry(q.clone()).or_insert(0u64) += 1)?;
    Ok(counts)
}

/// `θ_{μ+L} = Σ q^{Q(λ)}` over the coset, known for exponents `≤ bound`.
pub fn coset_theta(lattice: &GramLattice, mu: &Coset, bound: i64) -> Result<FracQSeries> {
    let form = DiscriminantForm::of(lattice)?;
    let level = form.level();
    let counts = representation_numbers(lattice, mu, &int(bound))?;
    let terms = counts.into_iter().map(|(q, c)| {
        let e = (q * int(level)).to_integer().to_i64().expect("exponent fits i64");
        (e, Rational::from_integer(BigInt::from(c)))
    });
    Ok(FracQSeries::from_terms(level, terms, bound * level + 1))
}

/// Theta series through `q^bound` by direct enumeration of `L`.
pub fn theta_series_direct(lattice: &GramLattice, bound: i64) -> Result<FracQSeries> {
    let zero = DiscriminantForm::of(lattice)?.zero();
    Ok(coset_theta(lattice, &zero, bound)?.normalized().truncate(&int(bound + 1)))
}

/// Theta series through `q^bound`. Glued lattices sum products of block
/// coset theta series over the code; others are enumerated directly.
pub fn theta_series(lattice: &GramLattice, bound: i64) -> Result<FracQSeries> {
    require_definite(lattice)?;
    let Some(glue) = lattice.glue() else {
        return theta_series_direct(lattice, bound);
    };
    // distinct blocks, so equal blocks share their coset series
    let mut kinds: Vec<&GramLattice> = Vec::new();
    let kind_of: Vec<usize> = glue
        .blocks
        .iter()
        .map(|b| match kinds.iter().position(|k| k.gram() == b.gram()) {
            Some(i) => i,
            None => {
                kinds.push(b);
                kinds.len() - 1
            }
        })
        .collect();
    // group codewords by the multiset of (block kind, coset)
    let mut groups: BTreeMap<BTreeMap<(usize, Coset), u32>, u64> = BTreeMap::new();
    for word in glue.codewords()? {
        let mut key = BTreeMap::new();
        for (i, mu) in word.into_iter().enumerate() {
            *key.entry((kind_of[i], mu)).or_insert(0) += 1;
        }
        *groups.entry(key).or_insert(0) += 1;
    }
    let keys: std::collections::BTreeSet<(usize, Coset)> = groups.keys().flat_map(|k| k.keys().cloned()).collect();
    let needed: BTreeMap<(usize, Coset), FracQSeries> = keys
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(kind, mu)| coset_theta(kinds[kind], &mu, bound).map(|s| ((kind, mu), s)))
        .collect::<Result<_>>()?;
    let groups: Vec<_> = groups.into_iter().collect();
    let products: Vec<FracQSeries> = groups
        .par_iter()
        .map(|(key, count)| {
            let mut acc = FracQSeries::one(bound + 1);
            for (k, e) in key {
                acc = acc.mul(&needed[k].pow(*e));
            }
            acc.scale(&Rational::from_integer(BigInt::from(*count)))
        })
        .collect();
    let mut total = FracQSeries::zero(1, bound + 1);
    for p in &products {
        total = total.add(p);
    }
    let total = total.normalized().truncate(&int(bound + 1));
    if total.denominator() != 1 {
        return Err(Error::InvalidGlue("theta series has fractional exponents".into()));
    }
    Ok(total)
}

/// Theta series of the dual lattice, `Σ_μ θ_{μ+L}`, known for exponents `≤ bound`.
pub fn dual_theta_series(lattice: &GramLattice, bound: i64) -> Result<FracQSeries> {
    let form = DiscriminantForm::of(lattice)?;
    let mut total = FracQSeries::zero(form.level(), bound * form.level() + 1);
    for mu in form.elements() {
        total = total.add(&coset_theta(lattice, &mu, bound)?);
    }
    Ok(total)
}

/// Number of lattice vectors with `Q = m`, used for cheap consistency checks.
pub fn count_norm(lattice: &GramLattice, m: i64) -> Result<u64> {
    let zero = DiscriminantForm::of(lattice)?.zero();
    Ok(representation_numbers(lattice, &zero, &int(m))?.get(&int(m)).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::database;
    use crate::series::eisenstein;

    #[test]
    fn small_theta_series() {
        let a1 = database::a1();
        let t = theta_series(&a1, 4).unwrap();
        assert_eq!(t.integer_coefficients(0, 5).unwrap(), vec![int(1), int(2), int(0), int(0), int(2)]);
        assert_eq!(theta_series(&GramLattice::zero(), 3).unwrap(), FracQSeries::one(4));
    }

    #[test]
    fn e8_theta_is_e4() {
        let t = theta_series(&database::e8(), 3).unwrap();
        assert_eq!(t, eisenstein(4, 3).unwrap());
        assert_eq!(short_vectors(&database::e8(), &int(1), &Coset(vec![])).unwrap().len(), 240);
    }

    #[test]
    fn a2_coset_vectors() {
        let a2 = database::a2();
        let d = DiscriminantForm::of(&a2).unwrap();
        let g = Coset(vec![1]);
        assert_eq!(d.q(&g), rat(1, 3));
        let v = short_vectors(&a2, &rat(1, 3), &g).unwrap();
        assert_eq!(v.len(), 3);
        for x in &v {
            assert_eq!(a2.quadratic_value(x).unwrap(), rat(1, 3));
        }
        // no vectors when m ≢ Q(μ)
        assert!(short_vectors(&a2, &int(1), &g).unwrap().is_empty());
    }

    #[test]
    fn coset_symmetry_and_dual_sum() {
        let a2 = database::a2();
        let d = DiscriminantForm::of(&a2).unwrap();
        let b = int(6);
        for mu in d.elements() {
            assert_eq!(
                representation_numbers(&a2, &mu, &b).unwrap(),
                representation_numbers(&a2, &d.neg(&mu), &b).unwrap()
            );
        }
        // the dual of A2 is A2(1/3) up to a change of basis: Q values scale by 1/3
        let dual = dual_theta_series(&a2, 6).unwrap();
        let t = theta_series(&a2, 18).unwrap();
        for k in 0..=18 {
            assert_eq!(dual.coefficient(&rat(k, 3)).unwrap(), t.coeff(k).unwrap());
        }
    }

    #[test]
    fn indefinite_rejected() {
        assert_eq!(theta_series(&database::u(), 2), Err(Error::NotPositiveDefinite));
    }
}
