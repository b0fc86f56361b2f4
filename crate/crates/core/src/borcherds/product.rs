use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{dot, int, is_integer, mat_vec, Rational};
use crate::borcherds::chamber::{cone_norm, dual_coset, verify_chamber, DualLattice, WeylChamber};
use crate::borcherds::form::WHForm;
use crate::error::{Error, Result};
use crate::lattice::enumerate::for_each_short_vector;
use crate::lattice::{Coset, CuspData};
use crate::series::{lattice_binomial, LatticeQSeries};
use crate::weil::CycScalar;

/// `c₀(m, λ) = Σ_{μ∼λ} c(m, μ)`, a form on `D(V0)`.
pub fn reduce_f0(f: &WHForm, data: &CuspData) -> Result<WHForm> {
    if f.form != data.form {
        return Err(Error::IncompatibleDiscriminant("form and cusp data come from different lattices".into()));
    }
    let mut sums: BTreeMap<Coset, crate::series::FracQSeries> = BTreeMap::new();
    for (mu, s) in f.series.components() {
        let Some(lambda) = data.coset_reduce(mu) else { continue };
        let entry = sums.remove(&lambda);
        sums.insert(lambda, match entry {
            Some(acc) => acc.add(s),
            None => s.clone(),
        });
    }
    let mut series = crate::series::VectorQSeries::new(f.precision().clone());
    for (lambda, s) in sums {
        series.insert(lambda, s.normalized());
    }
    Ok(WHForm::new(data.v0_form.clone(), &f.weight + int(1), series))
}

/// `ζ_μ = e([μ̃, k])`.
pub fn zeta_mu(mu: &Coset, data: &CuspData) -> Result<CycScalar> {
    Ok(CycScalar::e(&data.phase(mu)?))
}

/// `A = ∏_{0<x<N} (1 − e(x/N))^{c(0, xℓ/N)}`.
pub fn constant_a(f: &WHForm, data: &CuspData) -> Result<CycScalar> {
    let mut a = CycScalar::rational(int(1));
    let ell: Vec<Rational> = data.ell.iter().map(|&v| int(v)).collect();
    for x in 1..data.n {
        let t = Rational::new(x.into(), data.n.into());
        let point: Vec<Rational> = ell.iter().map(|v| v * &t).collect();
        let mu = data.form.reduce(&point)?;
        let c = f.coefficient(&Rational::zero(), &mu)?;
        if c.is_zero() {
            continue;
        }
        if !is_integer(&c) {
            return Err(Error::NonIntegral(format!("c(0, {mu}) = {c}")));
        }
        let e = c.to_integer().to_i64().ok_or_else(|| Error::NonIntegral(format!("c(0, {mu}) too large")))?;
        let base = CycScalar::rational(int(1)).sub(&CycScalar::root_of_unity(x, data.n));
        a = a.mul(&base.pow(e).expect("1 − ζ is nonzero for ζ ≠ 1"));
    }
    Ok(a)
}

/// True when `ϱ` (in `V0` coordinates) lies in `V0^∨`.
pub fn check_weyl_integrality(rho: &[Rational], data: &CuspData) -> bool {
    rho.len() == data.v0.rank() && mat_vec(&data.v0.gram_rat(), rho).iter().all(is_integer)
}

/// One factor `(1 − ζ q_λ)^e` of the product.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    /// `λ` in dual coordinates.
    pub z: Vec<i64>,
    pub mu: Coset,
    /// `ζ_μ = e(phase)`.
    pub phase: Rational,
    pub exponent: BigInt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductExpansion {
    /// `∏ (1 − ζ_μ q_λ)^{c(−Q(λ), μ)}` truncated by the chamber grading.
    pub body: LatticeQSeries<CycScalar>,
    /// `ϱ` in dual coordinates.
    pub weyl_exponent: Vec<i64>,
    pub constant_a: CycScalar,
    /// `c(0, 0)`.
    pub weight_out: BigInt,
    pub n: i64,
    pub factors: Vec<Factor>,
    /// Exponents `λ` in range whose coefficients all vanish.
    pub skipped: usize,
}

/// Every `λ ∈ V0^∨` with `0 < [λ, w] ≤ max_grade` and `Q(λ) ≤ depth`.
fn positive_exponents(dual: &DualLattice, w: &[Rational], qw: &Rational, max_grade: &Rational, depth: &Rational) -> Result<Vec<Vec<i64>>> {
    let a = dual.majorant(w, qw);
    let bound = depth + max_grade * max_grade / (int(2) * qw.abs());
    let mut out = Vec::new();
    for_each_short_vector(&a, &bound, None, |z, _| {
        let t = dot(&z.iter().map(|&v| int(v)).collect::<Vec<_>>(), w);
        if t.is_positive() && &t <= max_grade && &dual.norm(z) <= depth {
            out.push(z.to_vec());
        }
    })?;
    Ok(out)
}

fn expand<C: crate::series::Coefficient>(one: &LatticeQSeries<C>, factors: Vec<(Vec<i64>, C, BigInt)>) -> Result<LatticeQSeries<C>> {
    let pieces: Vec<LatticeQSeries<C>> =
        factors.par_iter().map(|(z, zeta, e)| lattice_binomial(z, zeta, e, one)).collect::<Result<_>>()?;
    pieces.into_iter().try_fold(one.clone(), |acc, p| acc.mul(&p))
}

/// The truncated product attached to `f` at the cusp of `data` in `chamber`.
///
/// Terms with `[α, w] ≤ cutoff · g` are kept, where `g` is the smallest
/// positive value of `[λ, w]` on `V0^∨`.
pub fn product_expand(
    f: &WHForm,
    data: &CuspData,
    chamber: &WeylChamber,
    weyl_vector: &[Rational],
    cutoff: &Rational,
) -> Result<ProductExpansion> {
    f.require_integral()?;
    if !check_weyl_integrality(weyl_vector, data) {
        return Err(Error::WeylNotIntegral);
    }
    let w = &chamber.w;
    let qw = cone_norm(data, w)?;
    let f0 = reduce_f0(f, data)?;
    verify_chamber(chamber, &f0, data)?;
    let one = LatticeQSeries::<Rational>::one(w.clone(), cutoff)?;
    let max_grade = one.max_grade().clone();
    // timelike exponents in range have −Q(λ) ≤ T² / (4|Q(w)|)
    let needed = &max_grade * &max_grade / (int(4) * qw.abs());
    if &needed >= f.precision() {
        return Err(Error::Precision(format!("coefficients up to q^{needed} are needed, form known below q^{}", f.precision())));
    }
    let dual = DualLattice::new(&data.v0)?;
    let mut zs = positive_exponents(&dual, w, &qw, &max_grade, &f.pole_order())?;
    zs.sort_by(|a, b| one.grade(a).cmp(&one.grade(b)).then_with(|| a.cmp(b)));

    let mut factors = Vec::new();
    let mut skipped = 0;
    for z in zs {
        let m = -dual.norm(&z);
        let lambda = dual_coset(data, &dual, &z)?;
        let before = factors.len();
        for mu in data.cosets_over(&lambda) {
            let c = f.coefficient(&m, &mu)?;
            if c.is_zero() {
                continue;
            }
            let exponent = c.to_integer();
            factors.push(Factor { z: z.clone(), phase: data.phase(&mu)?, mu, exponent });
        }
        if factors.len() == before {
            skipped += 1;
        }
    }

    let body = if factors.iter().all(|x| x.phase.is_zero()) {
        let mut merged: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for x in &factors {
            *merged.entry(x.z.clone()).or_default() += &x.exponent;
        }
        let mut list: Vec<_> = merged.into_iter().filter(|(_, e)| !e.is_zero()).map(|(z, e)| (z, int(1), e)).collect();
        list.sort_by(|a, b| one.grade(&a.0).cmp(&one.grade(&b.0)).then_with(|| a.0.cmp(&b.0)));
        expand(&one, list)?.map_coefficients(|c| CycScalar::rational(c.clone()))
    } else {
        let one = one.map_coefficients(|c| CycScalar::rational(c.clone()));
        let list = factors.iter().map(|x| (x.z.clone(), CycScalar::e(&x.phase), x.exponent.clone())).collect();
        expand(&one, list)?
    };

    let weyl_exponent = mat_vec(&data.v0.gram_rat(), weyl_vector).iter().map(|x| x.to_integer().to_i64().unwrap_or(0)).collect();
    Ok(ProductExpansion {
        body,
        weyl_exponent,
        constant_a: constant_a(f, data)?,
        weight_out: f.constant_term().to_integer(),
        n: data.n,
        factors,
        skipped,
    })
}

impl ProductExpansion {
    /// True when every coefficient of the body is a rational integer.
    pub fn is_integral(&self) -> bool {
        self.body.terms().values().all(|c| c.as_rational().is_some_and(|r| is_integer(&r)))
    }

    /// The body as rational coefficients, when all are rational.
    pub fn rational_body(&self) -> Option<BTreeMap<Vec<i64>, Rational>> {
        self.body.terms().iter().map(|(z, c)| c.as_rational().map(|r| (z.clone(), r))).collect()
    }
}
